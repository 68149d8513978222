//! Command-line front end. Data goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
//! 3 resource bound.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::closed_form::{self, deficiency_classification, CmFlags};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graphs::complete_bipartite;
use crate::ideals::{edge_binomials, minimal_primes};
use crate::oracle::{FieldConfig, Oracle, DEFAULT_ROW_BOUND};
use crate::series::BettiTable;
use crate::verify::{self, Perturbation, VerifyConfig, VerifyReport, DEFAULT_BETTI_MAX_SIZE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "binedge", version, about = "Invariants of binomial edge ideals of complete bipartite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, depth, regularity, multiplicity, projective dimension, prime count.
    Invariants(PairArgs),
    /// Minimal primes with cut sets, components, heights and dimensions.
    Primes(PairArgs),
    /// Hilbert series and its first coefficients.
    Hilbert(PairArgs),
    /// Graded Betti diagram.
    Betti(PairArgs),
    /// Deficiency-module table and Cohen-Macaulay flags.
    Deficiency(PairArgs),
    /// Compare closed forms against the oracle for every pair with m + n <= max size.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    /// Highest degree for oracle expansions.
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
    /// Field characteristic for the oracle; 0 selects the rationals.
    #[arg(long, default_value = "32003", value_parser = parse_field)]
    pub field: FieldConfig,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Refuse any elimination with more rows than this.
    #[arg(long, default_value_t = DEFAULT_ROW_BOUND)]
    pub strand_row_bound: usize,
    /// Run the oracle on a single thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    /// Recompute with the oracle and compare.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: OracleArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Largest m + n to check.
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    /// Largest m + n whose Koszul homology is recomputed.
    #[arg(long, default_value_t = DEFAULT_BETTI_MAX_SIZE)]
    pub betti_max_size: usize,
    /// Add one to the closed-form beta_{I,J} before comparing.
    #[arg(long, value_name = "I,J", value_parser = parse_index_pair, conflicts_with = "perturb_hilbert")]
    pub perturb_betti: Option<(usize, usize)>,
    /// Add one to the closed-form coefficient of t^D before comparing.
    #[arg(long, value_name = "D")]
    pub perturb_hilbert: Option<usize>,
    #[command(flatten)]
    pub common: OracleArgs,
}

fn parse_field(s: &str) -> std::result::Result<FieldConfig, String> {
    s.parse::<FieldConfig>().map_err(|e| e.to_string())
}

fn parse_index_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected I,J but got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// One prime of the decomposition in machine-readable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub cut_set: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub height: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MinimalPrimes {
    Count(usize),
    List(Vec<PrimeRecord>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyJson {
    pub case: String,
    pub indices: Vec<usize>,
    pub rows: Vec<[usize; 3]>,
    pub flags: CmFlags,
}

/// The single JSON object emitted by every per-pair command; absent fields are
/// omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub m: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pd: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minimal_primes: Option<MinimalPrimes>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hilbert_numerator: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub denom_power: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hilbert_function: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_hilbert_function: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub betti: Option<Vec<[u64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_betti: Option<Vec<[u64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deficiency: Option<DeficiencyJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_matches: Option<bool>,
}

fn betti_triples(t: &BettiTable) -> Vec<[u64; 3]> {
    t.nonzero().map(|(i, j, b)| [i as u64, j as u64, b]).collect()
}

impl OracleArgs {
    fn oracle(&self) -> Oracle {
        let exec = if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        };
        Oracle::new(self.field)
            .with_row_bound(self.strand_row_bound)
            .with_execution(exec)
    }
}

/// Outcome of one command before rendering.
struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

impl Outcome {
    fn report(report: &Report, text: String, ok: bool) -> Result<Outcome> {
        Ok(Outcome {
            text,
            json: to_json(report)?,
            ok,
        })
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Overflow(format!("json encoding: {e}")))
}

/// Sizes in the canonical orientation `m >= n`.
fn normalized(args: &PairArgs) -> Result<(usize, usize)> {
    let g = complete_bipartite(args.m, args.n)?;
    let p = g.partition().expect("complete bipartite graphs carry their parts");
    Ok((p.m(), p.n()))
}

fn invariants(args: &PairArgs) -> Result<Outcome> {
    let (m, n) = normalized(args)?;
    let r = closed_form::invariant_report(m, n)?;
    let report = Report {
        m: args.m,
        n: args.n,
        dim: Some(r.dim),
        depth: Some(r.depth),
        reg: Some(r.reg),
        multiplicity: Some(r.multiplicity),
        pd: Some(r.pd),
        minimal_primes: Some(MinimalPrimes::Count(r.num_minimal_primes)),
        ..Report::default()
    };
    let mut text = format!("K_{{{},{}}}\n", args.m, args.n);
    for (k, v) in [
        ("dim", r.dim),
        ("depth", r.depth),
        ("reg", r.reg),
        ("multiplicity", r.multiplicity),
        ("pd", r.pd),
        ("minimal_primes", r.num_minimal_primes),
    ] {
        let _ = writeln!(text, "{k:<15}{v}");
    }
    let mut ok = true;
    if args.oracle {
        let o = args.common.oracle();
        let j = edge_binomials(&complete_bipartite(m, n)?);
        let depth = o.depth_via_ab(&j)?;
        let reg = o.regularity_via_betti(&j)?;
        ok = depth == r.depth && reg == r.reg;
        let _ = writeln!(text, "oracle depth   {depth}\noracle reg     {reg}\nmatch          {ok}");
    }
    let report = Report {
        oracle_matches: args.oracle.then_some(ok),
        ..report
    };
    Outcome::report(&report, text, ok)
}

fn primes(args: &PairArgs) -> Result<Outcome> {
    let g = complete_bipartite(args.m, args.n)?;
    let list: Vec<PrimeRecord> = minimal_primes(&g, args.common.oracle().exec)?
        .into_iter()
        .map(|p| PrimeRecord {
            cut_set: p.cut_set.into_iter().collect(),
            components: p.components.into_iter().map(|c| c.into_iter().collect()).collect(),
            height: p.height,
            dim: p.dim,
        })
        .collect();
    let mut text = format!("K_{{{},{}}}: {} minimal primes\n", args.m, args.n, list.len());
    for p in &list {
        let _ = writeln!(
            text,
            "T = {:?}  components {:?}  height {}  dim {}",
            p.cut_set, p.components, p.height, p.dim
        );
    }
    let report = Report {
        m: args.m,
        n: args.n,
        dim: list.iter().map(|p| p.dim).max(),
        minimal_primes: Some(MinimalPrimes::List(list)),
        ..Report::default()
    };
    Outcome::report(&report, text, true)
}

fn hilbert(args: &PairArgs) -> Result<Outcome> {
    let (m, n) = normalized(args)?;
    let d = args.common.max_degree;
    let series = closed_form::hilbert_series(m, n)?;
    let coeffs = series
        .expand(d)
        .iter()
        .map(|c| u64::try_from(c).map_err(|_| Error::Overflow(format!("coefficient {c}"))))
        .collect::<Result<Vec<u64>>>()?;
    let mut text = format!("H(t) = {series}\nH(d), d <= {d}: {coeffs:?}\n");
    let mut ok = true;
    let mut computed = None;
    if args.oracle {
        let o = args.common.oracle();
        let h = o.hilbert_functions(&edge_binomials(&complete_bipartite(m, n)?), d)?;
        ok = h == coeffs;
        let _ = writeln!(text, "oracle over {}: {h:?}\nmatch: {ok}", o.field);
        computed = Some(h);
    }
    let report = Report {
        m: args.m,
        n: args.n,
        hilbert_numerator: Some(series.numerator_i64()?),
        denom_power: Some(series.denom_power()),
        hilbert_function: Some(coeffs),
        oracle_hilbert_function: computed,
        oracle_matches: args.oracle.then_some(ok),
        ..Report::default()
    };
    Outcome::report(&report, text, ok)
}

fn betti(args: &PairArgs) -> Result<Outcome> {
    let (m, n) = normalized(args)?;
    let table = closed_form::betti_table(m, n)?;
    let mut text = format!("Betti diagram of S/J for K_{{{},{}}}\n{table}", args.m, args.n);
    let mut ok = true;
    let mut computed = None;
    if args.oracle {
        let o = args.common.oracle();
        let t = o.betti_table(&edge_binomials(&complete_bipartite(m, n)?))?;
        ok = t == table;
        let _ = write!(text, "oracle over {} (strands 0..={}):\n{t}", o.field, o.max_strand);
        for (i, j) in betti_triples(&table)
            .iter()
            .chain(&betti_triples(&t))
            .map(|e| (e[0] as usize, e[1] as usize))
            .collect::<std::collections::BTreeSet<_>>()
        {
            if table.get(i, j) != t.get(i, j) {
                let _ = writeln!(text, "differs at beta_{{{i},{j}}}: closed form {}, oracle {}", table.get(i, j), t.get(i, j));
            }
        }
        let _ = writeln!(text, "match: {ok}");
        computed = Some(betti_triples(&t));
    }
    let report = Report {
        m: args.m,
        n: args.n,
        reg: table.regularity(),
        pd: table.projective_dimension(),
        betti: Some(betti_triples(&table)),
        oracle_betti: computed,
        oracle_matches: args.oracle.then_some(ok),
        ..Report::default()
    };
    Outcome::report(&report, text, ok)
}

fn deficiency(args: &PairArgs) -> Result<Outcome> {
    let (m, n) = normalized(args)?;
    let r = deficiency_classification(m, n)?;
    let mut text = format!("K_{{{},{}}}: case {}\n", args.m, args.n, r.case.label());
    match r.nonvanishing_indices() {
        Some(idx) => {
            let _ = writeln!(text, "nonvanishing indices {idx:?}");
            for row in &r.rows {
                let _ = writeln!(
                    text,
                    "  i = {:>2}  depth {:>2}  dim {:>2}  {}",
                    row.index, row.depth, row.dim, row.description
                );
            }
        }
        None => {
            let _ = writeln!(text, "no generic table applies");
        }
    }
    let _ = writeln!(
        text,
        "Cohen-Macaulay {}  sequentially CM {}  canonically CM {}",
        r.flags.cohen_macaulay, r.flags.sequentially_cm, r.flags.canonically_cm
    );
    let report = Report {
        m: args.m,
        n: args.n,
        depth: Some(closed_form::depth(m, n)?),
        dim: Some(closed_form::krull_dim(m, n)?),
        deficiency: Some(DeficiencyJson {
            case: r.case.label().into(),
            indices: r.nonvanishing_indices().unwrap_or_default(),
            rows: r.rows.iter().map(|x| [x.index, x.depth, x.dim]).collect(),
            flags: r.flags,
        }),
        ..Report::default()
    };
    Outcome::report(&report, text, true)
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let cfg = VerifyConfig {
        max_size: args.max_size,
        max_degree: args.common.max_degree,
        betti_max_size: args.betti_max_size,
        perturbation: match (args.perturb_betti, args.perturb_hilbert) {
            (Some((i, j)), _) => Some(Perturbation::Betti { i, j }),
            (None, Some(degree)) => Some(Perturbation::Hilbert { degree }),
            (None, None) => None,
        },
    };
    let report: VerifyReport = verify::verify(&cfg, &args.common.oracle())?;
    let mut text = String::new();
    for c in &report.checks {
        let _ = writeln!(text, "{c}");
    }
    let failed = report.failures().count();
    let _ = writeln!(
        text,
        "{} of {} checks passed over {}",
        report.checks.len() - failed,
        report.checks.len(),
        report.field
    );
    Ok(Outcome {
        json: to_json(&report)?,
        ok: report.passed(),
        text,
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => EXIT_INVALID,
        Error::Unsupported(_) | Error::TooLarge { .. } | Error::ZeroModule | Error::Overflow(_) => EXIT_RESOURCE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (format, result) = match &cli.command {
        Command::Invariants(a) => (a.common.format, invariants(a)),
        Command::Primes(a) => (a.common.format, primes(a)),
        Command::Hilbert(a) => (a.common.format, hilbert(a)),
        Command::Betti(a) => (a.common.format, betti(a)),
        Command::Deficiency(a) => (a.common.format, deficiency(a)),
        Command::Verify(a) => (a.common.format, run_verify(a)),
    };
    match result {
        Ok(o) => {
            let body = match format {
                Format::Text => o.text,
                Format::Json => o.json + "\n",
            };
            let _ = out.write_all(body.as_bytes());
            if o.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: closed form and oracle disagree");
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
