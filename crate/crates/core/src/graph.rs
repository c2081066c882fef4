//! Simple undirected graphs and their triangle lines.

use crate::betweenness::{BetweennessRelation, GroundSet, Pair};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    universe: GroundSet,
    adj: Vec<PointSet>,
}

impl Graph {
    pub fn empty(universe: GroundSet) -> Self {
        let n = universe.len();
        Graph {
            adj: vec![PointSet::empty(n); n],
            universe,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops and repeats.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(GroundSet::new(n)?);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidEdge { a, b, reason: "endpoint out of range" });
            }
            if a == b {
                return Err(Error::InvalidEdge { a, b, reason: "self-loop" });
            }
            if g.has_edge(a, b) {
                return Err(Error::InvalidEdge { a, b, reason: "duplicate edge" });
            }
            g.add_edge_unchecked(a, b);
        }
        Ok(g)
    }

    /// Graph whose edge set is given by `mask`, bit `i` standing for the
    /// `i`-th pair in lexicographic order `(0,1), (0,2), …, (n-2,n-1)`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self> {
        if n * n.saturating_sub(1) / 2 > 64 {
            return Err(Error::Domain(format!("edge masks support n <= 11, got {n}")));
        }
        let mut g = Graph::empty(GroundSet::new(n)?);
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge_unchecked(a, b);
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    pub fn edge_mask(&self) -> u64 {
        let n = self.n();
        let mut mask = 0u64;
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.has_edge(a, b) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    pub(crate) fn add_edge_unchecked(&mut self, a: usize, b: usize) {
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn universe(&self) -> &GroundSet {
        &self.universe
    }

    pub fn universe_mut(&mut self) -> &mut GroundSet {
        &mut self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, a: usize) -> &PointSet {
        &self.adj[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].len()
    }

    pub fn edges(&self) -> Vec<Pair> {
        (0..self.n())
            .flat_map(|a| self.adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(PointSet::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = PointSet::empty(n);
        seen.insert(0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.adj[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == n
    }
}

/// `[a x b]` iff `a`, `x`, `b` span a triangle.
pub fn graph_betweenness(g: &Graph) -> BetweennessRelation {
    let mut rel = BetweennessRelation::new(g.universe.clone());
    for a in 0..g.n() {
        for b in g.adj[a].iter().filter(|&b| b > a) {
            for x in g.adj[a].intersection(&g.adj[b]).iter() {
                rel.insert_unchecked(a, x, b);
            }
        }
    }
    rel
}

/// Vertices adjacent to every other vertex.
pub fn universal_vertices(g: &Graph) -> PointSet {
    let n = g.n();
    PointSet::from_points(n, (0..n).filter(|&v| g.degree(v) == n - 1))
}

/// For `n >= 3` a line is universal exactly when both generators are
/// universal vertices, so the smallest witness is the two smallest such
/// vertices. On two vertices the only line is the whole vertex set.
pub fn graph_has_universal_line(g: &Graph) -> Result<Option<Pair>> {
    match g.n() {
        0 | 1 => return Err(Error::TooFewPoints { n: g.n(), needed: 2 }),
        2 => return Ok(Some((0, 1))),
        _ => {}
    }
    let universal = universal_vertices(g);
    let mut u = universal.iter();
    Ok(match (u.next(), u.next()) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    })
}

/// Some vertex has at most one neighbour and the rest form a clique.
pub(crate) fn clique_plus_sparse_vertex(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|v| {
        g.degree(v) <= 1
            && (0..n)
                .filter(|&u| u != v)
                .all(|u| g.degree(u) - usize::from(g.has_edge(u, v)) == n - 2)
    })
}

/// Shape attaining exactly `n` lines: a clique on `n - 1` vertices plus a
/// vertex with at most one neighbour in it.
pub fn is_extremal_graph(g: &Graph) -> Result<bool> {
    if g.n() < 4 {
        return Err(Error::TooFewPoints { n: g.n(), needed: 4 });
    }
    Ok(clique_plus_sparse_vertex(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::{all_lines, has_universal_line, line_of};

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn mask_round_trip() {
        for mask in 0..64u64 {
            assert_eq!(Graph::from_edge_mask(4, mask).unwrap().edge_mask(), mask);
        }
    }

    #[test]
    fn triangle_plus_isolated_vertex() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let rel = graph_betweenness(&g);
        let l = line_of(&rel, 0, 1).unwrap();
        assert_eq!(l.members.to_vec(), vec![0, 1, 2]);
        let sys = all_lines(&rel).unwrap();
        let lines: Vec<_> = sys.entries.iter().map(|e| e.members.to_vec()).collect();
        assert_eq!(lines, vec![vec![0, 1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn triangle_free_has_only_pair_lines() {
        let rel = graph_betweenness(&cycle(5));
        assert!(rel.is_empty());
        assert_eq!(all_lines(&rel).unwrap().line_count(), 10);
    }

    #[test]
    fn k4_minus_edge() {
        // missing edge {0,1}; vertices 2 and 3 are universal
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(universal_vertices(&g).to_vec(), vec![2, 3]);
        assert_eq!(graph_has_universal_line(&g).unwrap(), Some((2, 3)));
        let rel = graph_betweenness(&g);
        assert_eq!(has_universal_line(&rel).unwrap(), Some((2, 3)));
        // lines: {0,1}, {0,2,3} x3 generators, {1,2,3} x2, {0,1,2,3}
        let sys = all_lines(&rel).unwrap();
        let lines: Vec<_> = sys.entries.iter().map(|e| e.members.to_vec()).collect();
        assert_eq!(
            lines,
            vec![vec![0, 1], vec![0, 1, 2, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
    }

    #[test]
    fn two_vertices_always_universal() {
        for mask in 0..2 {
            let g = Graph::from_edge_mask(2, mask).unwrap();
            assert_eq!(graph_has_universal_line(&g).unwrap(), Some((0, 1)));
            assert_eq!(has_universal_line(&graph_betweenness(&g)).unwrap(), Some((0, 1)));
        }
    }

    #[test]
    fn universal_vertex_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(universal_vertices(&star).to_vec(), vec![0]);
        assert_eq!(graph_has_universal_line(&star).unwrap(), None);
        assert_eq!(universal_vertices(&complete(5)).len(), 5);
        assert!(universal_vertices(&cycle(5)).is_empty());
        assert_eq!(graph_has_universal_line(&complete(4)).unwrap(), Some((0, 1)));
        assert_eq!(has_universal_line(&graph_betweenness(&complete(4))).unwrap(), Some((0, 1)));
    }

    #[test]
    fn extremal_shapes() {
        let mut edges: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let k4_isolated = Graph::from_edges(5, &edges).unwrap();
        assert!(is_extremal_graph(&k4_isolated).unwrap());
        edges.push((2, 4));
        let pendant = Graph::from_edges(5, &edges).unwrap();
        assert!(is_extremal_graph(&pendant).unwrap());
        let sys = all_lines(&graph_betweenness(&pendant)).unwrap();
        assert_eq!(sys.line_count(), 5);
        assert!(!is_extremal_graph(&cycle(5)).unwrap());
        assert!(is_extremal_graph(&cycle(3)).is_err());
    }
}
