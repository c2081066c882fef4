//! Finite posets: closure, Mirsky levels, chains and the induced lines.
//!
//! A poset induces `[a x b]` iff `a ≺ x ≺ b` or `b ≺ x ≺ a`. The line of an
//! incomparable pair is the pair itself; the line of a comparable pair is the
//! pair together with every point comparable to both.

mod bounds;
mod construct;

pub use bounds::{dbe_bound, lemma1_bound};
pub use construct::{constructive_lines, ConstructiveCertificate, Iteration, ProcessLine, Step};

use crate::betweenness::{BetweennessRelation, GroundSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pointset::PointSet;

/// Strict partial order stored as a transitively closed relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    universe: GroundSet,
    /// `above[x]` = `{y : x ≺ y}`
    above: Vec<PointSet>,
    /// `below[x]` = `{y : y ≺ x}`
    below: Vec<PointSet>,
    levels: Vec<usize>,
    height: usize,
}

impl Poset {
    /// Takes the transitive closure of `covers`. A full order relation is
    /// accepted as well.
    pub fn from_cover_relations(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let universe = GroundSet::new(n)?;
        let mut above = vec![PointSet::empty(n); n];
        for &(a, b) in covers {
            universe.check(a)?;
            universe.check(b)?;
            if a == b {
                return Err(Error::Cycle(a));
            }
            above[a].insert(b);
        }
        // Repeated squaring: each pass at least doubles the path length covered.
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut row = above[x].clone();
                for y in above[x].iter() {
                    row.union_with(&above[y]);
                }
                if row != above[x] {
                    above[x] = row;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(x) = (0..n).find(|&x| above[x].contains(x)) {
            return Err(Error::Cycle(x));
        }
        Ok(Self::from_closed(universe, above))
    }

    /// `above` must already be irreflexive, antisymmetric and transitive.
    pub(crate) fn from_closed(universe: GroundSet, above: Vec<PointSet>) -> Self {
        let n = universe.len();
        let mut below = vec![PointSet::empty(n); n];
        for x in 0..n {
            for y in above[x].iter() {
                below[y].insert(x);
            }
        }
        // In a closed order every predecessor has strictly fewer predecessors.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| below[x].len());
        let mut levels = vec![0; n];
        for &x in &order {
            levels[x] = 1 + below[x].iter().map(|y| levels[y]).max().unwrap_or(0);
        }
        let height = levels.iter().copied().max().unwrap_or(0);
        Poset {
            universe,
            above,
            below,
            levels,
            height,
        }
    }

    /// Poset encoded by [`Poset::order_mask`].
    pub fn from_order_mask(n: usize, mask: u64) -> Result<Self> {
        if n * n > 64 {
            return Err(Error::Domain(format!("order masks support n <= 8, got {n}")));
        }
        let pairs: Vec<_> = (0..n * n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i / n, i % n))
            .collect();
        let p = Self::from_cover_relations(n, &pairs)?;
        if p.order_mask() != mask {
            return Err(Error::Domain(format!("mask {mask:#x} is not transitively closed")));
        }
        Ok(p)
    }

    /// Bit `a·n + b` is set iff `a ≺ b`. Requires `n <= 8`.
    pub fn order_mask(&self) -> u64 {
        let n = self.n();
        let mut mask = 0u64;
        for a in 0..n {
            for b in self.above[a].iter() {
                mask |= 1 << (a * n + b);
            }
        }
        mask
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

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn above(&self, x: usize) -> &PointSet {
        &self.above[x]
    }

    pub fn below(&self, x: usize) -> &PointSet {
        &self.below[x]
    }

    /// Size of the longest chain ending at `x`.
    pub fn level(&self, x: usize) -> usize {
        self.levels[x]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Points comparable to `x`.
    pub fn comparable_to(&self, x: usize) -> PointSet {
        let mut s = self.above[x].clone();
        s.union_with(&self.below[x]);
        s
    }
}

pub fn poset_betweenness(p: &Poset) -> BetweennessRelation {
    let mut rel = BetweennessRelation::new(p.universe.clone());
    for a in 0..p.n() {
        for b in p.above[a].iter() {
            for x in p.above[a].intersection(&p.below[b]).iter() {
                rel.insert_unchecked(a, x, b);
            }
        }
    }
    rel
}

/// Antichains `A_1, …, A_H`, indexed from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntichainPartition {
    pub layers: Vec<Vec<usize>>,
}

/// Groups points by Mirsky level; there are exactly `height` layers.
pub fn mirsky_partition(p: &Poset) -> AntichainPartition {
    let mut layers = vec![Vec::new(); p.height];
    for x in 0..p.n() {
        layers[p.levels[x] - 1].push(x);
    }
    AntichainPartition { layers }
}

/// Maximum chain `c_1 ≺ … ≺ c_H` with `c_i` at level `i`.
///
/// Descends from the smallest point at level `H`, each time taking the
/// smallest predecessor one level down.
pub fn maximum_chain_through_levels(p: &Poset) -> Vec<usize> {
    let h = p.height;
    let mut top = (0..p.n()).find(|&x| p.levels[x] == h).expect("nonempty poset");
    let mut chain = vec![top];
    for level in (1..h).rev() {
        top = p.below[top]
            .iter()
            .find(|&y| p.levels[y] == level)
            .expect("level recurrence gives a predecessor one level down");
        chain.push(top);
    }
    chain.reverse();
    chain
}

pub fn comparability_graph(p: &Poset) -> Graph {
    let mut g = Graph::empty(p.universe.clone());
    for a in 0..p.n() {
        for b in p.above[a].iter() {
            g.add_edge_unchecked(a, b);
        }
    }
    g
}

/// A chain on `n - 1` points plus one point comparable to at most one of them.
pub fn is_extremal_poset(p: &Poset) -> bool {
    let n = p.n();
    (0..n).any(|v| {
        let cv = p.comparable_to(v);
        cv.len() <= 1
            && (0..n).filter(|&u| u != v).all(|u| {
                let mut cu = p.comparable_to(u);
                cu.remove(v);
                cu.len() == n - 2
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::{all_lines, line_of};

    fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_cover_relations(n, &covers).unwrap()
    }

    fn y_shape() -> Poset {
        Poset::from_cover_relations(4, &[(0, 1), (1, 2), (3, 2)]).unwrap()
    }

    #[test]
    fn closure_and_levels() {
        let c = chain(3);
        assert_eq!(c.height(), 3);
        assert_eq!(c.levels(), &[1, 2, 3]);
        assert!(c.less(0, 2));

        let a = Poset::from_cover_relations(4, &[]).unwrap();
        assert_eq!(a.height(), 1);
        assert_eq!(a.levels(), &[1, 1, 1, 1]);

        let p = y_shape();
        assert_eq!(p.height(), 3);
        assert_eq!(p.levels(), &[1, 2, 3, 1]);
        assert_eq!(p.comparable_to(3).to_vec(), vec![2]);
        assert!(p.less(0, 2));
        assert!(!p.comparable(3, 0) && !p.comparable(3, 1));
    }

    #[test]
    fn cycles_and_range_errors() {
        assert_eq!(
            Poset::from_cover_relations(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::Cycle(0))
        );
        assert_eq!(Poset::from_cover_relations(2, &[(1, 1)]), Err(Error::Cycle(1)));
        assert!(matches!(
            Poset::from_cover_relations(2, &[(0, 2)]),
            Err(Error::UnknownPoint { .. })
        ));
    }

    #[test]
    fn full_relation_input_is_idempotent() {
        let full = Poset::from_cover_relations(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(full, chain(3));
        assert_eq!(Poset::from_order_mask(3, chain(3).order_mask()).unwrap(), chain(3));
    }

    #[test]
    fn betweenness_examples() {
        let rel = poset_betweenness(&chain(3));
        let mut t: Vec<_> = rel.triples().collect();
        t.sort();
        assert_eq!(t, vec![(0, 1, 2), (2, 1, 0)]);
        assert_eq!(line_of(&rel, 0, 2).unwrap().members.to_vec(), vec![0, 1, 2]);

        let anti = Poset::from_cover_relations(3, &[]).unwrap();
        let rel = poset_betweenness(&anti);
        assert!(rel.is_empty());
        assert_eq!(all_lines(&rel).unwrap().line_count(), 3);

        let rel = poset_betweenness(&y_shape());
        assert_eq!(line_of(&rel, 0, 2).unwrap().members.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn partition_and_chain() {
        assert_eq!(mirsky_partition(&chain(3)).layers, vec![vec![0], vec![1], vec![2]]);
        let anti = Poset::from_cover_relations(4, &[]).unwrap();
        assert_eq!(mirsky_partition(&anti).layers, vec![vec![0, 1, 2, 3]]);
        assert_eq!(maximum_chain_through_levels(&anti), vec![0]);
        assert_eq!(mirsky_partition(&y_shape()).layers, vec![vec![0, 3], vec![1], vec![2]]);
        assert_eq!(maximum_chain_through_levels(&y_shape()), vec![0, 1, 2]);
        assert_eq!(maximum_chain_through_levels(&chain(3)), vec![0, 1, 2]);
    }

    #[test]
    fn comparability_graph_examples() {
        let g = comparability_graph(&chain(3));
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(comparability_graph(&Poset::from_cover_relations(4, &[]).unwrap()).edge_count(), 0);
        // a≺b≺c, s≺c
        let p = Poset::from_cover_relations(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        let g = comparability_graph(&p);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
        let from_poset = all_lines(&poset_betweenness(&p)).unwrap();
        let from_graph = all_lines(&crate::graph::graph_betweenness(&g)).unwrap();
        assert_eq!(from_poset.entries, from_graph.entries);
    }

    #[test]
    fn extremal_poset_shape() {
        assert!(is_extremal_poset(&y_shape()));
        let chain_plus_isolated = Poset::from_cover_relations(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_extremal_poset(&chain_plus_isolated));
        assert!(!is_extremal_poset(&chain(4)));
        // 3 below both 1 and 2: comparable to two chain points
        let p = Poset::from_cover_relations(4, &[(0, 1), (1, 2), (3, 1)]).unwrap();
        assert!(!is_extremal_poset(&p));
    }
}
