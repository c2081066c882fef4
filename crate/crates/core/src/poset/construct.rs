//! The iterative line-finding process for posets.
//!
//! Lines inside each Mirsky layer are all distinct pair lines (`L0`). A
//! window `[b, t]` over a maximum chain `c_1 ≺ … ≺ c_H` then shrinks: while
//! `b < t` a point `s` outside `line(c_b, c_t)` is picked and lines
//! `line(c_i, s)` are collected, until the window closes (Step 1) or `s` is
//! incomparable to both ends (Step 2a). Both exits add `line(c_1, c_H)`.
//! Chain positions in the certificate are 1-based.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{dbe_bound, maximum_chain_through_levels, mirsky_partition, poset_betweenness, Poset};
use crate::betweenness::{line_of, BetweennessRelation, Line};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "2b")]
    TwoB,
    #[serde(rename = "2c")]
    TwoC,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::One => "1",
            Step::TwoA => "2a",
            Step::TwoB => "2b",
            Step::TwoC => "2c",
        })
    }
}

/// State at the start of iteration `k`, and the branch it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iteration {
    pub k: usize,
    pub step: Step,
    pub bottom: usize,
    pub top: usize,
    /// The point `s_k`; absent when the iteration stops at Step 1.
    pub pivot: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessLine {
    pub iteration: usize,
    pub step: Step,
    pub line: Line,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructiveCertificate {
    pub n: usize,
    pub height: usize,
    pub chain: Vec<usize>,
    pub layers: Vec<Vec<usize>>,
    pub l0_lines: Vec<Line>,
    pub iterations: Vec<Iteration>,
    pub process_lines: Vec<ProcessLine>,
    pub total_distinct: usize,
    pub bound: u64,
}

pub fn constructive_lines(p: &Poset) -> Result<ConstructiveCertificate> {
    let h = p.height();
    if h < 2 {
        return Err(Error::Height(h));
    }
    let rel = poset_betweenness(p);
    let layers = mirsky_partition(p).layers;
    let chain = maximum_chain_through_levels(p);
    let c = |i: usize| chain[i - 1];

    let mut l0_lines = Vec::new();
    for layer in &layers {
        for (i, &a) in layer.iter().enumerate() {
            for &b in &layer[i + 1..] {
                l0_lines.push(line_of(&rel, a, b)?);
            }
        }
    }

    let mut iterations = Vec::new();
    let mut process_lines = Vec::new();
    let (mut b, mut t) = (1, h);
    for k in 1.. {
        if b == t {
            iterations.push(Iteration { k, step: Step::One, bottom: b, top: t, pivot: None });
            process_lines.push(ProcessLine { iteration: k, step: Step::One, line: line_of(&rel, c(1), c(h))? });
            break;
        }
        let window = line_of(&rel, c(b), c(t))?;
        let s = window
            .members
            .first_missing(p.n())
            .ok_or(Error::UniversalLine { a: window.generator.0, b: window.generator.1 })?;
        let below_free = !p.comparable(s, c(b));
        let above_free = !p.comparable(s, c(t));
        let mut add = |step, i| -> Result<()> {
            process_lines.push(ProcessLine { iteration: k, step, line: line_of(&rel, c(i), s)? });
            Ok(())
        };
        if below_free && above_free {
            iterations.push(Iteration { k, step: Step::TwoA, bottom: b, top: t, pivot: Some(s) });
            for i in b..=t {
                add(Step::TwoA, i)?;
            }
            process_lines.push(ProcessLine { iteration: k, step: Step::TwoA, line: line_of(&rel, c(1), c(h))? });
            break;
        } else if below_free {
            iterations.push(Iteration { k, step: Step::TwoB, bottom: b, top: t, pivot: Some(s) });
            let next_b = (b..t).filter(|&i| !p.comparable(c(i), s)).max().expect("c_b is incomparable") + 1;
            for i in b..=next_b {
                add(Step::TwoB, i)?;
            }
            b = next_b;
        } else {
            // s lies outside line(c_b, c_t), so it misses at least one end.
            iterations.push(Iteration { k, step: Step::TwoC, bottom: b, top: t, pivot: Some(s) });
            let next_t = (b + 1..=t).filter(|&i| !p.comparable(c(i), s)).min().expect("c_t is incomparable") - 1;
            for i in next_t..=t {
                add(Step::TwoC, i)?;
            }
            t = next_t;
        }
    }

    let total_distinct = distinct_count(l0_lines.iter().chain(process_lines.iter().map(|pl| &pl.line)));
    Ok(ConstructiveCertificate {
        n: p.n(),
        height: h,
        chain,
        layers,
        l0_lines,
        iterations,
        process_lines,
        total_distinct,
        bound: dbe_bound(p.n() as u64, h as u64)?,
    })
}

fn distinct_count<'a>(lines: impl Iterator<Item = &'a Line>) -> usize {
    lines.map(|l| &l.members).collect::<HashSet<&PointSet>>().len()
}

impl ConstructiveCertificate {
    /// Both sides of the incomparable-line count identity
    /// `Σ_{k<K} (b_{k+1} − b_k + t_k − t_{k+1} − 1) = H − K − (t_K − b_K)`.
    pub fn accounting_identity(&self) -> (i64, i64) {
        let it = &self.iterations;
        let lhs = it
            .windows(2)
            .map(|w| {
                let (cur, next) = (&w[0], &w[1]);
                next.bottom as i64 - cur.bottom as i64 + cur.top as i64 - next.top as i64 - 1
            })
            .sum();
        let last = it.last().expect("at least one iteration");
        let rhs = self.height as i64 - it.len() as i64 - (last.top as i64 - last.bottom as i64);
        (lhs, rhs)
    }

    /// Rechecks the certificate against `p` using only the generic line
    /// evaluator and the order relation.
    pub fn validate(&self, p: &Poset) -> Result<()> {
        let fail = |msg: String| Err(Error::Certificate(msg));
        let rel = poset_betweenness(p);
        let h = self.height;
        if h != p.height() || self.n != p.n() {
            return fail("height or size does not match the poset".into());
        }
        if self.chain.len() != h
            || self.chain.windows(2).any(|w| !p.less(w[0], w[1]))
            || self.chain.iter().enumerate().any(|(i, &x)| p.level(x) != i + 1)
        {
            return fail(format!("chain {:?} is not a level-aligned maximum chain", self.chain));
        }
        if self.layers.len() != h {
            return fail("layer count differs from height".into());
        }
        for layer in &self.layers {
            for (i, &a) in layer.iter().enumerate() {
                if layer[i + 1..].iter().any(|&b| p.comparable(a, b)) {
                    return fail(format!("layer {layer:?} is not an antichain"));
                }
            }
        }
        let mut seen = PointSet::empty(p.n());
        for x in self.layers.iter().flatten() {
            if seen.contains(*x) {
                return fail(format!("point {x} in two layers"));
            }
            seen.insert(*x);
        }
        if seen.len() != p.n() {
            return fail("layers do not cover the ground set".into());
        }
        let l0_expected: usize = self.layers.iter().map(|l| l.len() * l.len().saturating_sub(1) / 2).sum();
        if self.l0_lines.len() != l0_expected || distinct_count(self.l0_lines.iter()) != l0_expected {
            return fail("antichain lines are not pairwise distinct".into());
        }
        for line in self.l0_lines.iter().chain(self.process_lines.iter().map(|pl| &pl.line)) {
            recheck(&rel, line)?;
        }

        let it = &self.iterations;
        let Some(last) = it.last() else {
            return fail("no iterations recorded".into());
        };
        if it[0].bottom != 1 || it[0].top != h {
            return fail("window must start at [1, H]".into());
        }
        for (i, rec) in it.iter().enumerate() {
            if rec.k != i + 1 {
                return fail(format!("iteration numbering breaks at {}", rec.k));
            }
            let final_step = matches!(rec.step, Step::One | Step::TwoA);
            if final_step != (i + 1 == it.len()) {
                return fail(format!("step {} at iteration {}", rec.step, rec.k));
            }
            if rec.step == Step::One && rec.bottom != rec.top {
                return fail("step 1 with an open window".into());
            }
            if let Some(s) = rec.pivot {
                let window = line_of(&rel, self.chain[rec.bottom - 1], self.chain[rec.top - 1])?;
                if window.members.contains(s) {
                    return fail(format!("pivot {s} lies on the window line"));
                }
            }
        }
        for w in it.windows(2) {
            let (cur, next) = (&w[0], &w[1]);
            let ok = match cur.step {
                Step::TwoB => cur.bottom < next.bottom && next.bottom <= cur.top && next.top == cur.top,
                Step::TwoC => cur.bottom <= next.top && next.top < cur.top && next.bottom == cur.bottom,
                _ => false,
            };
            if !ok || next.bottom > next.top {
                return fail(format!("window moves illegally at iteration {}", cur.k));
            }
        }
        let closing = &self.process_lines.last().expect("closing line").line;
        if closing.generator != pair(self.chain[0], self.chain[h - 1]) || !matches!(last.step, Step::One | Step::TwoA) {
            return fail("process must end with line(c_1, c_H)".into());
        }

        let total = distinct_count(self.l0_lines.iter().chain(self.process_lines.iter().map(|pl| &pl.line)));
        if total != self.total_distinct {
            return fail(format!("recorded total {} but recount gives {total}", self.total_distinct));
        }
        let bound = dbe_bound(self.n as u64, h as u64)?;
        if bound != self.bound || (total as u64) < bound {
            return fail(format!("total {total} below bound {bound}"));
        }
        Ok(())
    }
}

fn pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn recheck(rel: &BetweennessRelation, line: &Line) -> Result<()> {
    let (a, b) = line.generator;
    if line_of(rel, a, b)?.members != line.members {
        return Err(Error::Certificate(format!("line through ({a}, {b}) does not recompute")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::all_lines;

    #[test]
    fn hand_traced_step_2b_then_step_1() {
        // a=0 ≺ b=1 ≺ c=2, s=3 ≺ c
        let p = Poset::from_cover_relations(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        let cert = constructive_lines(&p).unwrap();
        assert_eq!(cert.layers, vec![vec![0, 3], vec![1], vec![2]]);
        let l0: Vec<_> = cert.l0_lines.iter().map(|l| l.members.to_vec()).collect();
        assert_eq!(l0, vec![vec![0, 3]]);
        assert_eq!(
            cert.iterations,
            vec![
                Iteration { k: 1, step: Step::TwoB, bottom: 1, top: 3, pivot: Some(3) },
                Iteration { k: 2, step: Step::One, bottom: 3, top: 3, pivot: None },
            ]
        );
        let added: Vec<_> = cert
            .process_lines
            .iter()
            .map(|pl| (pl.iteration, pl.step, pl.line.members.to_vec()))
            .collect();
        assert_eq!(
            added,
            vec![
                (1, Step::TwoB, vec![0, 3]),
                (1, Step::TwoB, vec![1, 3]),
                (1, Step::TwoB, vec![2, 3]),
                (2, Step::One, vec![0, 1, 2]),
            ]
        );
        assert_eq!(cert.total_distinct, 4);
        assert_eq!(cert.bound, 4);
        cert.validate(&p).unwrap();
        assert_eq!(all_lines(&poset_betweenness(&p)).unwrap().line_count(), 4);
        let (lhs, rhs) = cert.accounting_identity();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn step_2c_mirror_image() {
        // chain 0 ≺ 1 ≺ 2 with 3 above 0 only
        let p = Poset::from_cover_relations(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let cert = constructive_lines(&p).unwrap();
        assert_eq!(cert.iterations[0].step, Step::TwoC);
        assert_eq!(cert.iterations[1].bottom, 1);
        assert_eq!(cert.iterations[1].top, 1);
        cert.validate(&p).unwrap();
    }

    #[test]
    fn step_2a_stops_immediately() {
        // chain 0 ≺ 1, isolated 2
        let p = Poset::from_cover_relations(3, &[(0, 1)]).unwrap();
        let cert = constructive_lines(&p).unwrap();
        assert_eq!(cert.iterations.len(), 1);
        assert_eq!(cert.iterations[0].step, Step::TwoA);
        assert_eq!(cert.iterations[0].pivot, Some(2));
        cert.validate(&p).unwrap();
        assert!(cert.total_distinct as u64 >= cert.bound);
    }

    #[test]
    fn weak_order_meets_bound() {
        let p = Poset::from_cover_relations(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let cert = constructive_lines(&p).unwrap();
        assert_eq!(cert.bound, 4);
        assert!(cert.total_distinct >= 4);
        cert.validate(&p).unwrap();
        // every certified member set is a genuine line of the poset
        let sys = all_lines(&poset_betweenness(&p)).unwrap();
        for l in cert.l0_lines.iter().chain(cert.process_lines.iter().map(|pl| &pl.line)) {
            assert!(sys.contains_members(&l.members));
        }
    }

    #[test]
    fn rejects_universal_and_flat_posets() {
        let chain = Poset::from_cover_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(constructive_lines(&chain), Err(Error::UniversalLine { a: 0, b: 2 })));
        let anti = Poset::from_cover_relations(3, &[]).unwrap();
        assert_eq!(constructive_lines(&anti), Err(Error::Height(1)));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let p = Poset::from_cover_relations(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        let mut cert = constructive_lines(&p).unwrap();
        cert.process_lines[1].line.members.insert(0);
        assert!(cert.validate(&p).is_err());
        let mut cert = constructive_lines(&p).unwrap();
        cert.total_distinct += 1;
        assert!(cert.validate(&p).is_err());
    }
}
