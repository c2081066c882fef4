//! Finite metric spaces with exact rational distances and Menger betweenness.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::betweenness::{BetweennessRelation, GroundSet};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSpace {
    universe: GroundSet,
    dist: Vec<BigRational>,
}

impl MetricSpace {
    /// Validates the metric axioms, reporting the first violation found.
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        let universe = GroundSet::new(n)?;
        let violation = |axiom, i, j, k| Err(Error::MetricViolation { axiom, i, j, k });
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Domain(format!("row {i} has {} entries, expected {n}", row.len())));
            }
        }
        for i in 0..n {
            if !rows[i][i].is_zero() {
                return violation("d(x, x) must be 0", i, i, None);
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if rows[i][j] <= BigRational::zero() {
                    return violation("distinct points must have positive distance", i, j, None);
                }
                if rows[i][j] != rows[j][i] {
                    return violation("distance must be symmetric", i, j, None);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rows[i][k] > &rows[i][j] + &rows[j][k] {
                        return violation("triangle inequality d(i, k) <= d(i, j) + d(j, k)", i, j, Some(k));
                    }
                }
            }
        }
        Ok(MetricSpace {
            universe,
            dist: rows.into_iter().flatten().collect(),
        })
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

    pub fn dist(&self, a: usize, b: usize) -> &BigRational {
        &self.dist[a * self.n() + b]
    }
}

/// `[a x b]` iff `d(a, x) + d(x, b) = d(a, b)`, compared exactly.
pub fn metric_betweenness(m: &MetricSpace) -> BetweennessRelation {
    let n = m.n();
    let mut rel = BetweennessRelation::new(m.universe.clone());
    for a in 0..n {
        for b in a + 1..n {
            for x in (0..n).filter(|&x| x != a && x != b) {
                if &(m.dist(a, x) + m.dist(x, b)) == m.dist(a, b) {
                    rel.insert_unchecked(a, x, b);
                }
            }
        }
    }
    rel
}

/// Hop-count distances of a connected graph.
pub fn graph_shortest_path_metric(g: &Graph) -> Result<MetricSpace> {
    let n = g.n();
    let mut rows = Vec::with_capacity(n);
    for src in 0..n {
        let mut d = vec![usize::MAX; n];
        d[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v).iter() {
                if d[w] == usize::MAX {
                    d[w] = d[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if let Some(t) = d.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Disconnected(src, t));
        }
        rows.push(d.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect());
    }
    let mut m = MetricSpace::new(rows)?;
    m.universe = g.universe().clone();
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::{all_lines, has_universal_line, line_of};

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn collinear_points() {
        let m = MetricSpace::new(int_rows(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]])).unwrap();
        let rel = metric_betweenness(&m);
        assert_eq!(line_of(&rel, 0, 2).unwrap().members.to_vec(), vec![0, 1, 2]);
        assert_eq!(has_universal_line(&rel).unwrap(), Some((0, 1)));
    }

    #[test]
    fn uniform_metric_has_no_betweenness() {
        let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i != j)).collect()).collect();
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let rel = metric_betweenness(&MetricSpace::new(int_rows(&rows)).unwrap());
        assert!(rel.is_empty());
        assert_eq!(all_lines(&rel).unwrap().line_count(), 6);
        assert_eq!(has_universal_line(&rel).unwrap(), None);
    }

    #[test]
    fn c5_metric() {
        let m = graph_shortest_path_metric(&cycle(5)).unwrap();
        assert!((0..5).all(|a| (0..5).all(|b| a == b || *m.dist(a, b) <= BigRational::from_integer(2.into()))));
        let rel = metric_betweenness(&m);
        let sys = all_lines(&rel).unwrap();
        assert_eq!(sys.line_count(), 10);
        assert!(sys.universal().is_none());
        // adjacent pair: 4 points, distance-two pair: 3 points
        assert_eq!(line_of(&rel, 0, 1).unwrap().members.to_vec(), vec![0, 1, 2, 4]);
        assert_eq!(line_of(&rel, 0, 2).unwrap().members.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn path_and_triangle_metrics() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let m = graph_shortest_path_metric(&p3).unwrap();
        assert_eq!(*m.dist(0, 2), BigRational::from_integer(2.into()));
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = graph_shortest_path_metric(&k3).unwrap();
        assert!((0..3).all(|a| (0..3).all(|b| a == b || *m.dist(a, b) == BigRational::from_integer(1.into()))));
        let split = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(graph_shortest_path_metric(&split), Err(Error::Disconnected(0, 2)));
    }

    #[test]
    fn axiom_violations() {
        let bad_tri = int_rows(&[&[0, 1, 5], &[1, 0, 1], &[5, 1, 0]]);
        assert!(matches!(
            MetricSpace::new(bad_tri),
            Err(Error::MetricViolation { i: 0, j: 1, k: Some(2), .. })
        ));
        let asym = int_rows(&[&[0, 1], &[2, 0]]);
        assert!(matches!(MetricSpace::new(asym), Err(Error::MetricViolation { i: 0, j: 1, k: None, .. })));
        let zero = int_rows(&[&[0, 0], &[0, 0]]);
        assert!(MetricSpace::new(zero).is_err());
        let diag = int_rows(&[&[1, 1], &[1, 0]]);
        assert!(matches!(MetricSpace::new(diag), Err(Error::MetricViolation { i: 0, j: 0, .. })));
    }

    #[test]
    fn rational_betweenness_is_exact() {
        // 1/3 + 2/3 = 1 exactly; floats would also pass here but 1/10+2/10 vs 3/10 would not
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        let rows = vec![
            vec![r(0, 1), r(1, 10), r(3, 10)],
            vec![r(1, 10), r(0, 1), r(2, 10)],
            vec![r(3, 10), r(2, 10), r(0, 1)],
        ];
        let rel = metric_betweenness(&MetricSpace::new(rows).unwrap());
        assert!(rel.contains(0, 1, 2));
    }
}
