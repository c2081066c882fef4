//! Exhaustive enumeration of small graphs and posets, and theorem sweeps
//! that count lines only through the generic evaluator.

mod enumerate;
mod report;
mod sweep;

pub use enumerate::{enumerate_graphs, enumerate_posets, graph_count, poset_masks, GRAPH_CAP, POSET_CAP};
pub use report::{write_jsonl, StructureKind, SweepOutcome, SweepSummary, VerificationReport, Violation, ViolationKind};
pub use sweep::{
    check_graph, check_hypergraph, check_metric, check_poset, composition_minimum, verify_conjecture_sweep,
    verify_lemma1_sweep, verify_theorem2_sweep, verify_theorem3_sweep, Checked, Lemma1Summary,
};
