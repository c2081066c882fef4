use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{extend_prefix, graph_count, mask_to_poset, poset_prefixes, GRAPH_CAP, POSET_CAP};
use super::report::{StructureKind, SweepOutcome, SweepSummary, VerificationReport, Violation, ViolationKind};
use crate::betweenness::{all_lines, BetweennessRelation, LineSystem};
use crate::error::{Error, Result};
use crate::graph::{clique_plus_sparse_vertex, graph_betweenness, graph_has_universal_line, Graph};
use crate::metric::{graph_shortest_path_metric, metric_betweenness, MetricSpace};
use crate::poset::{constructive_lines, dbe_bound, is_extremal_poset, lemma1_bound, poset_betweenness, Poset};

const GRAPH_CHUNK: u64 = 1 << 12;

/// A report together with whatever went wrong on that instance.
#[derive(Clone, Debug)]
pub struct Checked {
    pub report: VerificationReport,
    pub violations: Vec<Violation>,
    pub certificate_checked: bool,
}

fn lines(rel: &BetweennessRelation) -> LineSystem {
    all_lines(rel).expect("sweeps only run with n >= 2")
}

fn violation(id: &str, kind: ViolationKind, detail: impl Into<String>) -> Violation {
    Violation {
        instance_id: id.to_owned(),
        kind,
        detail: detail.into(),
    }
}

/// Checks the graph line bound: no universal line implies at least `n`
/// lines, with exactly `n` only for the clique-plus-sparse-vertex shape
/// (for `n = 3` the empty graph is a further equality case).
pub fn check_graph(g: &Graph, instance_id: String) -> Checked {
    let n = g.n();
    let sys = lines(&graph_betweenness(g));
    let has_universal = sys.universal().is_some();
    let extremal = clique_plus_sparse_vertex(g) || (n == 3 && g.edge_count() == 0);
    let report = VerificationReport::new(StructureKind::Graph, n, instance_id, sys.line_count(), n as u64, has_universal, extremal);
    let mut violations = Vec::new();
    let id = &report.instance_id;
    let shortcut = graph_has_universal_line(g).expect("n >= 2").is_some();
    if shortcut != has_universal {
        violations.push(violation(id, ViolationKind::UniversalShortcut, format!("generic {has_universal}, shortcut {shortcut}")));
    }
    if !report.meets_bound {
        violations.push(violation(id, ViolationKind::BelowBound, format!("{} lines < {n}", report.line_count)));
    }
    if !has_universal && n >= 3 && report.is_equality_case != extremal {
        violations.push(violation(
            id,
            ViolationKind::EqualityShape,
            format!("{} lines, extremal shape {extremal}", report.line_count),
        ));
    }
    Checked { report, violations, certificate_checked: false }
}

/// Checks the height bound on a poset of height at least 2, both through
/// the brute-force line count and through a rechecked certificate.
/// Returns `None` for antichains, which lie outside the bound's hypotheses.
pub fn check_poset(p: &Poset, instance_id: String) -> Option<Checked> {
    let (n, h) = (p.n(), p.height());
    if h < 2 {
        return None;
    }
    let bound = dbe_bound(n as u64, h as u64).expect("2 <= h <= n");
    let sys = lines(&poset_betweenness(p));
    let has_universal = sys.universal().is_some();
    let extremal = is_extremal_poset(p);
    let report = VerificationReport::new(StructureKind::Poset, n, instance_id, sys.line_count(), bound, has_universal, extremal);
    let id = &report.instance_id;
    let mut violations = Vec::new();
    if !report.meets_bound {
        violations.push(violation(id, ViolationKind::BelowBound, format!("{} lines < {bound}", report.line_count)));
    }
    // Equality with the bound only happens at bound = n, i.e. on the extremal shape.
    if !has_universal && (report.is_equality_case != extremal || (report.line_count == n) != extremal) {
        violations.push(violation(
            id,
            ViolationKind::EqualityShape,
            format!("{} lines on {n} points, extremal shape {extremal}", report.line_count),
        ));
    }
    let mut certificate_checked = false;
    if !has_universal {
        certificate_checked = true;
        match constructive_lines(p) {
            Err(e) => violations.push(violation(id, ViolationKind::Certificate, e.to_string())),
            Ok(cert) => {
                if let Err(e) = cert.validate(p) {
                    violations.push(violation(id, ViolationKind::Certificate, e.to_string()));
                }
                let stray = cert
                    .l0_lines
                    .iter()
                    .chain(cert.process_lines.iter().map(|pl| &pl.line))
                    .find(|l| !sys.contains_members(&l.members));
                if let Some(l) = stray {
                    violations.push(violation(id, ViolationKind::Certificate, format!("{:?} is not a line", l.members)));
                }
                let (lhs, rhs) = cert.accounting_identity();
                if lhs != rhs {
                    violations.push(violation(id, ViolationKind::Accounting, format!("{lhs} != {rhs}")));
                }
            }
        }
    }
    Some(Checked { report, violations, certificate_checked })
}

/// Lines of a metric space against the `n`-lines-or-universal-line claim.
pub fn check_metric(m: &MetricSpace, instance_id: String) -> Checked {
    let n = m.n();
    let sys = lines(&metric_betweenness(m));
    let has_universal = sys.universal().is_some();
    let report = VerificationReport::new(StructureKind::Metric, n, instance_id, sys.line_count(), n as u64, has_universal, false);
    let mut violations = Vec::new();
    if !report.meets_bound {
        violations.push(violation(
            &report.instance_id,
            ViolationKind::ConjectureCounterexample,
            format!("{} lines < {n} and no universal line", report.line_count),
        ));
    }
    Checked { report, violations, certificate_checked: false }
}

/// Hypergraphs may have far fewer than `n` lines, so nothing is a violation.
pub fn check_hypergraph(rel: &BetweennessRelation, instance_id: String) -> Checked {
    let n = rel.n();
    let sys = lines(rel);
    let has_universal = sys.universal().is_some();
    let report = VerificationReport::new(StructureKind::Hypergraph, n, instance_id, sys.line_count(), n as u64, has_universal, false);
    Checked { report, violations: Vec::new(), certificate_checked: false }
}

fn in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn merge(kind: StructureKind, n: usize, enumerated: u64, checked: Vec<Checked>) -> SweepOutcome {
    let mut summary = SweepSummary {
        structure_kind: kind,
        n,
        enumerated,
        reported: checked.len(),
        no_universal: 0,
        equality_cases: 0,
        extremal_matches: 0,
        certificates_checked: 0,
        violations: Vec::new(),
    };
    let mut reports = Vec::with_capacity(checked.len());
    for c in checked {
        summary.no_universal += usize::from(!c.report.has_universal);
        summary.equality_cases += usize::from(c.report.is_equality_case);
        summary.extremal_matches += usize::from(c.report.extremal_shape_match);
        summary.certificates_checked += usize::from(c.certificate_checked);
        summary.violations.extend(c.violations);
        reports.push(c.report);
    }
    SweepOutcome { reports, summary }
}

fn graph_id(mask: u64) -> String {
    format!("{mask:#x}")
}

fn sweep_graph_masks<F>(n: usize, workers: usize, check: F) -> Result<Vec<Checked>>
where
    F: Fn(u64) -> Option<Checked> + Sync,
{
    let total = graph_count(n);
    let chunks = total.div_ceil(GRAPH_CHUNK);
    in_pool(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * GRAPH_CHUNK;
                (lo..(lo + GRAPH_CHUNK).min(total)).filter_map(&check).collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    })
}

/// Every labeled graph on `n` vertices, `3 <= n <= 8`.
pub fn verify_theorem3_sweep(n: usize, workers: usize) -> Result<SweepOutcome> {
    if n > GRAPH_CAP {
        return Err(Error::CapExceeded { n, cap: GRAPH_CAP });
    }
    if n < 3 {
        return Err(Error::TooFewPoints { n, needed: 3 });
    }
    let checked = sweep_graph_masks(n, workers, |mask| {
        let g = Graph::from_edge_mask(n, mask).expect("n within cap");
        Some(check_graph(&g, graph_id(mask)))
    })?;
    Ok(merge(StructureKind::Graph, n, graph_count(n), checked))
}

/// Every labeled poset on `n` points, `2 <= n <= 6`; antichains are
/// enumerated but not reported.
pub fn verify_theorem2_sweep(n: usize, workers: usize) -> Result<SweepOutcome> {
    if n > POSET_CAP {
        return Err(Error::CapExceeded { n, cap: POSET_CAP });
    }
    if n < 2 {
        return Err(Error::TooFewPoints { n, needed: 2 });
    }
    let prefixes = poset_prefixes(n);
    let per_prefix: Vec<(u64, Vec<Checked>)> = in_pool(workers, || {
        prefixes
            .par_iter()
            .map(|prefix| {
                let masks = extend_prefix(prefix, n);
                let checked = masks
                    .iter()
                    .filter_map(|&m| check_poset(&mask_to_poset(n, m), format!("{m:#x}")))
                    .collect();
                (masks.len() as u64, checked)
            })
            .collect()
    })?;
    let enumerated = per_prefix.iter().map(|(c, _)| c).sum();
    let checked = per_prefix.into_iter().flat_map(|(_, c)| c).collect();
    Ok(merge(StructureKind::Poset, n, enumerated, checked))
}

/// Shortest-path metrics of every connected labeled graph on `n` vertices.
pub fn verify_conjecture_sweep(n: usize, workers: usize) -> Result<SweepOutcome> {
    if n > GRAPH_CAP {
        return Err(Error::CapExceeded { n, cap: GRAPH_CAP });
    }
    if n < 2 {
        return Err(Error::TooFewPoints { n, needed: 2 });
    }
    let checked = sweep_graph_masks(n, workers, |mask| {
        let g = Graph::from_edge_mask(n, mask).expect("n within cap");
        let m = graph_shortest_path_metric(&g).ok()?;
        Some(check_metric(&m, graph_id(mask)))
    })?;
    Ok(merge(StructureKind::Metric, n, graph_count(n), checked))
}

/// Minimum of `Σ C(part, 2)` over every composition of `n` into `r`
/// nonnegative parts, by exhaustive search.
pub fn composition_minimum(n: u64, r: u64) -> u64 {
    fn go(left: u64, parts: u64, acc: u64, best: &mut u64) {
        let c2 = |m: u64| m * m.saturating_sub(1) / 2;
        if parts == 1 {
            *best = (*best).min(acc + c2(left));
            return;
        }
        for p in 0..=left {
            go(left - p, parts - 1, acc + c2(p), best);
        }
    }
    let mut best = u64::MAX;
    go(n, r, 0, &mut best);
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Summary {
    pub max_n: u64,
    pub pairs_checked: usize,
    /// `(n, r, formula, exhaustive)` where the two disagree.
    pub mismatches: Vec<(u64, u64, u64, u64)>,
    pub smoothing_checked: usize,
    /// `(larger, smaller)` part sizes where moving a point increased the sum.
    pub smoothing_failures: Vec<(u64, u64)>,
}

impl Lemma1Summary {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.smoothing_failures.is_empty()
    }
}

/// Compares the closed form with exhaustive search for `1 <= r <= n <= max_n`
/// and checks that moving one point from a part to a part at least two
/// smaller never increases `C(a, 2) + C(b, 2)`.
pub fn verify_lemma1_sweep(max_n: u64) -> Result<Lemma1Summary> {
    if max_n > 12 {
        return Err(Error::CapExceeded { n: max_n as usize, cap: 12 });
    }
    let mut summary = Lemma1Summary {
        max_n,
        pairs_checked: 0,
        mismatches: Vec::new(),
        smoothing_checked: 0,
        smoothing_failures: Vec::new(),
    };
    for n in 1..=max_n {
        for r in 1..=n {
            let formula = lemma1_bound(n, r)?;
            let exhaustive = composition_minimum(n, r);
            summary.pairs_checked += 1;
            if formula != exhaustive {
                summary.mismatches.push((n, r, formula, exhaustive));
            }
        }
    }
    let c2 = |m: u64| m * m.saturating_sub(1) / 2;
    for a in 0..=max_n {
        for b in 0..=max_n {
            if a >= b + 2 {
                summary.smoothing_checked += 1;
                if c2(a - 1) + c2(b + 1) > c2(a) + c2(b) {
                    summary.smoothing_failures.push((a, b));
                }
            }
        }
    }
    Ok(summary)
}
