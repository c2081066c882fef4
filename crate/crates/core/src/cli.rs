//! Command-line front end.
//!
//! Exit status: 0 success, 1 input or precondition error, 2 internal
//! invariant violation, 3 theorem (or conjecture) violation.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::betweenness::{all_lines, BetweennessRelation, GroundSet, LineSystem};
use crate::error::Error;
use crate::graph::graph_betweenness;
use crate::io::{parse_graph, parse_hypergraph_relation, parse_metric, parse_poset};
use crate::metric::metric_betweenness;
use crate::oracle::{
    check_graph, check_hypergraph, check_metric, check_poset, verify_conjecture_sweep, verify_lemma1_sweep,
    verify_theorem2_sweep, verify_theorem3_sweep, write_jsonl, Checked, SweepOutcome, Violation, ViolationKind,
};
use crate::pointset::PointSet;
use crate::poset::{constructive_lines, dbe_bound, lemma1_bound, poset_betweenness, Poset};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INTERNAL: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "linesys", version, about = "Lines induced by betweenness in posets, graphs, metrics and hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Graph,
    Poset,
    Metric,
    Hypergraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Graph,
    Poset,
    Metric,
    Lemma,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Jsonl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the distinct lines of a structure
    Lines {
        #[arg(long, value_enum)]
        kind: Kind,
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Comma-separated point labels, one per point
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
    },
    /// Evaluate the poset line bound and the antichain-pair bound
    Bound {
        #[arg(long = "poset-n")]
        n: u64,
        #[arg(long)]
        height: u64,
        /// Number of parts for the antichain-pair bound (defaults to the height)
        #[arg(long)]
        parts: Option<u64>,
    },
    /// Run the constructive line-finding process on a poset
    Construct {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
    },
    /// Check a single instance against its line-count bound
    Verify {
        #[arg(long, value_enum)]
        kind: Kind,
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exhaustively check every instance of a given size
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        /// Number of points (maximum n for `lemma`)
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write jsonl reports here; the summary goes to stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    status: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { status: EXIT_INPUT, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { status: EXIT_INPUT, message: e.to_string() }
    }
}

type CliResult = std::result::Result<u8, Failure>;

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Lines { kind, input, format, labels } => cmd_lines(*kind, input, *format, labels.as_deref(), out),
        Command::Bound { n, height, parts } => cmd_bound(*n, *height, *parts, out),
        Command::Construct { input, format, labels } => cmd_construct(input, *format, labels.as_deref(), out),
        Command::Verify { kind, input, format } => cmd_verify(*kind, input, *format, out),
        Command::Sweep { kind, n, workers, format, output } => {
            cmd_sweep(*kind, *n, *workers, *format, output.as_ref(), out, err)
        }
    };
    match result {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        status: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_relation(kind: Kind, text: &str) -> Result<BetweennessRelation, Error> {
    Ok(match kind {
        Kind::Graph => graph_betweenness(&parse_graph(text)?),
        Kind::Poset => poset_betweenness(&parse_poset(text)?),
        Kind::Metric => metric_betweenness(&parse_metric(text)?),
        Kind::Hypergraph => parse_hypergraph_relation(text)?,
    })
}

fn relabel(universe: &mut GroundSet, labels: Option<&[String]>) -> Result<(), Error> {
    if let Some(l) = labels {
        universe.set_labels(l.to_vec())?;
    }
    Ok(())
}

fn fmt_set(universe: &GroundSet, s: &PointSet) -> String {
    s.iter().map(|p| universe.label(p)).collect::<Vec<_>>().join(" ")
}

fn json_point(universe: &GroundSet, p: usize) -> Value {
    match universe.labels() {
        Some(l) => json!(l[p]),
        None => json!(p),
    }
}

fn json_set(universe: &GroundSet, s: &PointSet) -> Value {
    Value::Array(s.iter().map(|p| json_point(universe, p)).collect())
}

fn cmd_lines(kind: Kind, input: &PathBuf, format: Format, labels: Option<&[String]>, out: &mut dyn Write) -> CliResult {
    let text = read(input)?;
    let rel = load_relation(kind, &text)?;
    let mut universe = rel.universe().clone();
    relabel(&mut universe, labels)?;
    let sys = all_lines(&rel)?;
    print_line_system(&sys, &universe, format, out)?;
    Ok(EXIT_OK)
}

/// Text form: one line per row as its sorted points, then `lines: <count>`.
fn print_line_system(sys: &LineSystem, universe: &GroundSet, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for e in &sys.entries {
                writeln!(out, "{}", fmt_set(universe, &e.members))?;
            }
            writeln!(out, "lines: {}", sys.line_count())?;
            match sys.universal() {
                Some(e) => {
                    let (a, b) = e.generators[0];
                    writeln!(out, "universal: {} {}", universe.label(a), universe.label(b))?;
                }
                None => writeln!(out, "universal: none")?,
            }
        }
        Format::Jsonl => {
            for e in &sys.entries {
                let gens: Vec<Value> = e
                    .generators
                    .iter()
                    .map(|&(a, b)| json!([json_point(universe, a), json_point(universe, b)]))
                    .collect();
                let row = json!({ "members": json_set(universe, &e.members), "generators": gens });
                writeln!(out, "{row}")?;
            }
        }
    }
    Ok(())
}

fn cmd_bound(n: u64, height: u64, parts: Option<u64>, out: &mut dyn Write) -> CliResult {
    let r = parts.unwrap_or(height);
    let lemma = lemma1_bound(n, r)?;
    let dbe = dbe_bound(n, height)?;
    writeln!(out, "dbe_bound(n={n}, H={height}) = {dbe}")?;
    writeln!(out, "lemma1_bound(n={n}, r={r}) = {lemma}")?;
    Ok(EXIT_OK)
}

fn cmd_construct(input: &PathBuf, format: Format, labels: Option<&[String]>, out: &mut dyn Write) -> CliResult {
    let mut p: Poset = parse_poset(&read(input)?)?;
    relabel(p.universe_mut(), labels)?;
    let cert = constructive_lines(&p)?;
    if let Err(e) = cert.validate(&p) {
        return Err(Failure { status: EXIT_INTERNAL, message: e.to_string() });
    }
    let u = p.universe();
    let label = |x: usize| u.label(x);
    match format {
        Format::Text => {
            writeln!(out, "height: {}", cert.height)?;
            writeln!(out, "chain: {}", cert.chain.iter().map(|&x| label(x)).collect::<Vec<_>>().join(" "))?;
            let layers: Vec<String> = cert
                .layers
                .iter()
                .map(|l| format!("{{{}}}", l.iter().map(|&x| label(x)).collect::<Vec<_>>().join(" ")))
                .collect();
            writeln!(out, "layers: {}", layers.join(" "))?;
            let l0: Vec<String> = cert.l0_lines.iter().map(|l| format!("{{{}}}", fmt_set(u, &l.members))).collect();
            writeln!(out, "L0 ({}): {}", l0.len(), l0.join(" "))?;
            for it in &cert.iterations {
                let added: Vec<String> = cert
                    .process_lines
                    .iter()
                    .filter(|pl| pl.iteration == it.k)
                    .map(|pl| format!("{{{}}}", fmt_set(u, &pl.line.members)))
                    .collect();
                let pivot = it.pivot.map(|s| format!(" s={}", label(s))).unwrap_or_default();
                writeln!(out, "k={} step {} b={} t={}{pivot}: {}", it.k, it.step, it.bottom, it.top, added.join(" "))?;
            }
            writeln!(out, "distinct lines: {}", cert.total_distinct)?;
            writeln!(out, "bound: {}", cert.bound)?;
            writeln!(out, "meets bound: {}", cert.total_distinct as u64 >= cert.bound)?;
        }
        Format::Jsonl => {
            for it in &cert.iterations {
                let added: Vec<Value> = cert
                    .process_lines
                    .iter()
                    .filter(|pl| pl.iteration == it.k)
                    .map(|pl| json_set(u, &pl.line.members))
                    .collect();
                let row = json!({
                    "k": it.k,
                    "step": it.step,
                    "b": it.bottom,
                    "t": it.top,
                    "s": it.pivot.map(|s| json_point(u, s)),
                    "lines": added,
                });
                writeln!(out, "{row}")?;
            }
            let row = json!({
                "height": cert.height,
                "l0_lines": cert.l0_lines.len(),
                "total_distinct": cert.total_distinct,
                "bound": cert.bound,
            });
            writeln!(out, "{row}")?;
        }
    }
    Ok(EXIT_OK)
}

fn violation_status(violations: &[Violation]) -> u8 {
    let theorem = violations.iter().any(|v| {
        matches!(
            v.kind,
            ViolationKind::BelowBound | ViolationKind::EqualityShape | ViolationKind::ConjectureCounterexample
        )
    });
    if theorem {
        EXIT_VIOLATION
    } else if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    }
}

fn cmd_verify(kind: Kind, input: &PathBuf, format: Format, out: &mut dyn Write) -> CliResult {
    let text = read(input)?;
    let id = input.display().to_string();
    let checked: Checked = match kind {
        Kind::Graph => {
            let g = parse_graph(&text)?;
            if g.n() < 3 {
                return Err(Error::TooFewPoints { n: g.n(), needed: 3 }.into());
            }
            check_graph(&g, id)
        }
        Kind::Poset => {
            let p = parse_poset(&text)?;
            check_poset(&p, id).ok_or(Error::Height(p.height()))?
        }
        Kind::Metric => {
            let m = parse_metric(&text)?;
            if m.n() < 2 {
                return Err(Error::TooFewPoints { n: m.n(), needed: 2 }.into());
            }
            check_metric(&m, id)
        }
        Kind::Hypergraph => {
            let rel = parse_hypergraph_relation(&text)?;
            if rel.n() < 2 {
                return Err(Error::TooFewPoints { n: rel.n(), needed: 2 }.into());
            }
            check_hypergraph(&rel, id)
        }
    };
    match format {
        Format::Jsonl => write_jsonl(std::slice::from_ref(&checked.report), &mut *out)?,
        Format::Text => {
            let r = &checked.report;
            writeln!(out, "kind: {}", r.structure_kind)?;
            writeln!(out, "n: {}", r.n)?;
            writeln!(out, "lines: {}", r.line_count)?;
            writeln!(out, "bound: {}", r.bound)?;
            writeln!(out, "has universal line: {}", r.has_universal)?;
            writeln!(out, "meets bound: {}", r.meets_bound)?;
            writeln!(out, "equality case: {}", r.is_equality_case)?;
            writeln!(out, "extremal shape: {}", r.extremal_shape_match)?;
            for v in &checked.violations {
                writeln!(out, "VIOLATION {:?}: {}", v.kind, v.detail)?;
            }
        }
    }
    Ok(violation_status(&checked.violations))
}

fn cmd_sweep(
    kind: SweepKind,
    n: usize,
    workers: usize,
    format: Format,
    output: Option<&PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let outcome: SweepOutcome = match kind {
        SweepKind::Lemma => {
            let s = verify_lemma1_sweep(n as u64)?;
            match format {
                Format::Text => {
                    writeln!(out, "pairs checked: {}", s.pairs_checked)?;
                    writeln!(out, "mismatches: {}", s.mismatches.len())?;
                    for (n, r, f, e) in &s.mismatches {
                        writeln!(out, "  n={n} r={r}: formula {f}, exhaustive {e}")?;
                    }
                    writeln!(out, "smoothing moves checked: {}", s.smoothing_checked)?;
                    writeln!(out, "smoothing failures: {}", s.smoothing_failures.len())?;
                }
                Format::Jsonl => writeln!(out, "{}", serde_json::to_string(&s).expect("serializable"))?,
            }
            return Ok(if s.is_clean() { EXIT_OK } else { EXIT_VIOLATION });
        }
        SweepKind::Graph => verify_theorem3_sweep(n, workers)?,
        SweepKind::Poset => verify_theorem2_sweep(n, workers)?,
        SweepKind::Metric => verify_conjecture_sweep(n, workers)?,
    };
    match (output, format) {
        (Some(path), _) => {
            let file = fs::File::create(path)?;
            let mut w = std::io::BufWriter::new(file);
            write_jsonl(&outcome.reports, &mut w)?;
            w.flush()?;
            write!(out, "{}", outcome.summary)?;
        }
        (None, Format::Jsonl) => {
            write_jsonl(&outcome.reports, &mut *out)?;
            write!(err, "{}", outcome.summary)?;
        }
        (None, Format::Text) => write!(out, "{}", outcome.summary)?,
    }
    let status = violation_status(&outcome.summary.violations);
    if status != EXIT_OK {
        writeln!(err, "sweep found {} violation(s)", outcome.summary.violations.len())?;
    }
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(kind: ViolationKind) -> Violation {
        Violation { instance_id: "0x0".into(), kind, detail: String::new() }
    }

    #[test]
    fn exit_status_mapping() {
        assert_eq!(violation_status(&[]), EXIT_OK);
        assert_eq!(violation_status(&[v(ViolationKind::Certificate)]), EXIT_INTERNAL);
        assert_eq!(violation_status(&[v(ViolationKind::ConjectureCounterexample)]), EXIT_VIOLATION);
        assert_eq!(
            violation_status(&[v(ViolationKind::Accounting), v(ViolationKind::BelowBound)]),
            EXIT_VIOLATION
        );
    }
}
