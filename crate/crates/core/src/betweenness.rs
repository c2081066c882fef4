//! Ground sets, betweenness relations and the lines they induce.
//!
//! Every structure kind (poset, graph, metric space, 3-uniform hypergraph)
//! compiles into a [`BetweennessRelation`]; lines are then computed by one
//! evaluator:
//!
//! ```text
//! line(a, b) = {a, b} ∪ { x : [x a b] or [a x b] or [a b x] }
//! ```
//!
//! where `[a x b]` reads "x lies between a and b".

use std::fmt;

use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Points `0..n`, optionally carrying external labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External label of `p`, or its index when no labels were given.
    pub fn label(&self, p: usize) -> String {
        match &self.labels {
            Some(l) => l[p].clone(),
            None => p.to_string(),
        }
    }

    pub fn check(&self, p: usize) -> Result<()> {
        if p < self.n {
            Ok(())
        } else {
            Err(Error::UnknownPoint { point: p, n: self.n })
        }
    }

    fn require_pairs(&self) -> Result<()> {
        if self.n < 2 {
            Err(Error::TooFewPoints { n: self.n, needed: 2 })
        } else {
            Ok(())
        }
    }
}

/// A set of triples `[a x b]`, symmetric in the outer pair.
///
/// Two indexes are kept per ordered pair `(a, b)`: the points strictly
/// between them, and the points `x` for which `a` lies between `x` and `b`.
#[derive(Clone, PartialEq, Eq)]
pub struct BetweennessRelation {
    universe: GroundSet,
    mid: Vec<PointSet>,
    beyond: Vec<PointSet>,
}

impl BetweennessRelation {
    pub fn new(universe: GroundSet) -> Self {
        let n = universe.len();
        BetweennessRelation {
            mid: vec![PointSet::empty(n); n * n],
            beyond: vec![PointSet::empty(n); n * n],
            universe,
        }
    }

    pub fn universe(&self) -> &GroundSet {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    /// Records `[a x b]` (and therefore `[b x a]`).
    pub fn insert(&mut self, a: usize, x: usize, b: usize) -> Result<()> {
        for p in [a, x, b] {
            self.universe.check(p)?;
        }
        if a == x || x == b || a == b {
            return Err(Error::Domain(format!(
                "betweenness triple ({a}, {x}, {b}) must have three distinct points"
            )));
        }
        self.insert_unchecked(a, x, b);
        Ok(())
    }

    #[inline]
    pub(crate) fn insert_unchecked(&mut self, a: usize, x: usize, b: usize) {
        let n = self.n();
        self.mid[a * n + b].insert(x);
        self.mid[b * n + a].insert(x);
        self.beyond[x * n + b].insert(a);
        self.beyond[x * n + a].insert(b);
    }

    pub fn contains(&self, a: usize, x: usize, b: usize) -> bool {
        let n = self.n();
        a < n && b < n && self.mid[a * n + b].contains(x)
    }

    /// Points strictly between `a` and `b`.
    pub fn between(&self, a: usize, b: usize) -> &PointSet {
        &self.mid[a * self.n() + b]
    }

    /// All stored triples `(a, x, b)`, both outer orientations included.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n();
        (0..n * n).flat_map(move |i| self.mid[i].iter().map(move |x| (i / n, x, i % n)))
    }

    pub fn is_empty(&self) -> bool {
        self.mid.iter().all(PointSet::is_empty)
    }

    fn members(&self, a: usize, b: usize) -> PointSet {
        let n = self.n();
        let mut m = self.mid[a * n + b].clone();
        m.union_with(&self.beyond[a * n + b]);
        m.union_with(&self.beyond[b * n + a]);
        m.insert(a);
        m.insert(b);
        m
    }
}

impl fmt::Debug for BetweennessRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BetweennessRelation")
            .field("n", &self.n())
            .field("triples", &self.triples().collect::<Vec<_>>())
            .finish()
    }
}

/// Unordered pair stored as `(min, max)`.
pub type Pair = (usize, usize);

fn pair(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub generator: Pair,
    pub members: PointSet,
}

/// Computes the line through `a` and `b`.
pub fn line_of(rel: &BetweennessRelation, a: usize, b: usize) -> Result<Line> {
    rel.universe.check(a)?;
    rel.universe.check(b)?;
    if a == b {
        return Err(Error::IdenticalPoints(a));
    }
    Ok(Line {
        generator: pair(a, b),
        members: rel.members(a, b),
    })
}

/// One distinct line together with every pair generating it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineEntry {
    pub members: PointSet,
    pub generators: Vec<Pair>,
}

/// The deduplicated family of lines of a relation, sorted by member set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSystem {
    pub universe: GroundSet,
    pub entries: Vec<LineEntry>,
}

impl LineSystem {
    pub fn line_count(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn universal(&self) -> Option<&LineEntry> {
        let n = self.n();
        self.entries.iter().find(|e| e.members.len() == n)
    }

    pub fn contains_members(&self, members: &PointSet) -> bool {
        self.entries
            .binary_search_by(|e| e.members.cmp(members))
            .is_ok()
    }

    /// Index pairs `(i, j)` where line `i` is a proper subset of line `j`.
    pub fn nested_lines(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in self.entries.iter().enumerate() {
                if i != j && a.members.is_subset(&b.members) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Index pairs `(i, j)`, `i < j`, of lines sharing two or more points.
    pub fn multi_point_intersections(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.entries.len() {
            for j in i + 1..self.entries.len() {
                if self.entries[i]
                    .members
                    .intersection(&self.entries[j].members)
                    .len()
                    >= 2
                {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Evaluates every pair of distinct points and groups equal member sets.
pub fn all_lines(rel: &BetweennessRelation) -> Result<LineSystem> {
    rel.universe.require_pairs()?;
    let n = rel.n();
    let mut lines: Vec<(PointSet, Pair)> = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            lines.push((rel.members(a, b), (a, b)));
        }
    }
    lines.sort();
    let mut entries: Vec<LineEntry> = Vec::new();
    for (members, gen) in lines {
        match entries.last_mut() {
            Some(last) if last.members == members => last.generators.push(gen),
            _ => entries.push(LineEntry {
                members,
                generators: vec![gen],
            }),
        }
    }
    Ok(LineSystem {
        universe: rel.universe.clone(),
        entries,
    })
}

/// Returns the lexicographically smallest pair whose line is universal.
pub fn has_universal_line(rel: &BetweennessRelation) -> Result<Option<Pair>> {
    rel.universe.require_pairs()?;
    let n = rel.n();
    for a in 0..n {
        for b in a + 1..n {
            if rel.members(a, b).len() == n {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Relation of a 3-uniform hypergraph: `[a x b]` for every ordering of
/// every edge, so that `line(a, b) = {a, b} ∪ {x : {a, b, x} is an edge}`.
pub fn hypergraph_relation(n: usize, edges: &[Vec<usize>]) -> Result<BetweennessRelation> {
    let mut rel = BetweennessRelation::new(GroundSet::new(n)?);
    for edge in edges {
        let malformed = |reason| Error::MalformedEdge {
            edge: edge.clone(),
            reason,
        };
        if edge.len() != 3 {
            return Err(malformed("edge must have exactly 3 vertices"));
        }
        if edge.iter().any(|&v| v >= n) {
            return Err(malformed("vertex out of range"));
        }
        let (a, b, c) = (edge[0], edge[1], edge[2]);
        if a == b || b == c || a == c {
            return Err(malformed("repeated vertex"));
        }
        rel.insert_unchecked(a, b, c);
        rel.insert_unchecked(b, a, c);
        rel.insert_unchecked(a, c, b);
    }
    Ok(rel)
}
