use std::fmt;
use std::io::{self, Write};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Graph,
    Poset,
    Metric,
    Hypergraph,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Graph => "graph",
            StructureKind::Poset => "poset",
            StructureKind::Metric => "metric",
            StructureKind::Hypergraph => "hypergraph",
        })
    }
}

/// One checked instance. Field order is the jsonl key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub structure_kind: StructureKind,
    pub n: usize,
    pub instance_id: String,
    pub line_count: usize,
    pub bound: u64,
    pub has_universal: bool,
    pub meets_bound: bool,
    pub is_equality_case: bool,
    pub extremal_shape_match: bool,
}

impl VerificationReport {
    pub(crate) fn new(
        structure_kind: StructureKind,
        n: usize,
        instance_id: String,
        line_count: usize,
        bound: u64,
        has_universal: bool,
        extremal_shape_match: bool,
    ) -> Self {
        let meets_bound = has_universal || line_count as u64 >= bound;
        VerificationReport {
            structure_kind,
            n,
            instance_id,
            line_count,
            bound,
            has_universal,
            meets_bound,
            is_equality_case: !has_universal && line_count as u64 == bound,
            extremal_shape_match,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Fewer lines than the bound and no universal line.
    BelowBound,
    /// Exactly `n` lines without the extremal shape, or the reverse.
    EqualityShape,
    /// The constructive certificate failed to build or to recheck.
    Certificate,
    /// The window bookkeeping of a certificate does not telescope.
    Accounting,
    /// The universal-vertex shortcut disagrees with the generic detector.
    UniversalShortcut,
    /// A metric space with neither a universal line nor `n` lines.
    ConjectureCounterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance_id: String,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub structure_kind: StructureKind,
    pub n: usize,
    /// Instances enumerated, including those outside the theorem's hypotheses.
    pub enumerated: u64,
    pub reported: usize,
    /// Reported instances with no universal line.
    pub no_universal: usize,
    pub equality_cases: usize,
    pub extremal_matches: usize,
    pub certificates_checked: usize,
    pub violations: Vec<Violation>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}  n: {}", self.structure_kind, self.n)?;
        writeln!(f, "enumerated: {}", self.enumerated)?;
        writeln!(f, "reported: {}", self.reported)?;
        writeln!(f, "no universal line: {}", self.no_universal)?;
        writeln!(f, "equality cases: {}", self.equality_cases)?;
        writeln!(f, "extremal shape matches: {}", self.extremal_matches)?;
        if self.certificates_checked > 0 {
            writeln!(f, "certificates checked: {}", self.certificates_checked)?;
        }
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {} {:?}: {}", v.instance_id, v.kind, v.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub reports: Vec<VerificationReport>,
    pub summary: SweepSummary,
}

/// One JSON object per report, keys in declaration order.
pub fn write_jsonl<W: Write>(reports: &[VerificationReport], mut out: W) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_key_order() {
        let r = VerificationReport::new(StructureKind::Graph, 4, "0x7".into(), 4, 4, false, true);
        let mut buf = Vec::new();
        write_jsonl(&[r], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"structure_kind\":\"graph\",\"n\":4,\"instance_id\":\"0x7\",\"line_count\":4,\"bound\":4,\
             \"has_universal\":false,\"meets_bound\":true,\"is_equality_case\":true,\"extremal_shape_match\":true}\n"
        );
    }

    #[test]
    fn flags_follow_definitions() {
        let univ = VerificationReport::new(StructureKind::Poset, 5, "0x0".into(), 3, 6, true, false);
        assert!(univ.meets_bound && !univ.is_equality_case);
        let short = VerificationReport::new(StructureKind::Poset, 5, "0x0".into(), 5, 6, false, false);
        assert!(!short.meets_bound && !short.is_equality_case);
    }
}
