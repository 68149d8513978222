//! Closed-form versus oracle comparisons over every pair `n <= m` with
//! `m + n <= max_size`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::closed_form::{self, deficiency_classification, DeficiencyCase};
use crate::error::{invalid, Error, Result};
use crate::graphs::{complete_bipartite, Graph};
use crate::ideals::{edge_binomials, krull_dim_from_primes, minimal_primes, minor_ideal, prime_ideal, variable_ideal, BinomialIdeal};
use crate::oracle::{monomial_count, strand_row_count, Oracle};
use crate::series::{series_from_betti, BettiTable};

/// Default largest `m + n` whose Koszul homology is recomputed.
pub const DEFAULT_BETTI_MAX_SIZE: usize = 5;

/// A deliberate error injected into a closed-form value before comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Perturbation {
    /// Add one to `beta_{i,j}`.
    Betti { i: usize, j: usize },
    /// Add one to the coefficient of `t^degree` in the Hilbert series.
    Hilbert { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_size: usize,
    pub max_degree: usize,
    pub betti_max_size: usize,
    pub perturbation: Option<Perturbation>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_size: 4,
            max_degree: 6,
            betti_max_size: DEFAULT_BETTI_MAX_SIZE,
            perturbation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, m: usize, n: usize, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            m,
            n,
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} (m={}, n={}): {}", self.name, self.m, self.n, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub field: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// All `(m, n)` with `1 <= n <= m` and `m + n <= max_size`, by size then `m`.
pub fn pairs(max_size: usize) -> Vec<(usize, usize)> {
    (2..=max_size)
        .flat_map(|s| (1..=s / 2).rev().map(move |n| (s - n, n)))
        .collect()
}

/// Refuses configurations whose strands exceed the oracle row bound, before
/// any elimination is attempted.
pub fn preflight(cfg: &VerifyConfig, oracle: &Oracle) -> Result<()> {
    if cfg.max_size < 2 {
        return invalid(format!("max size must be at least 2, got {}", cfg.max_size));
    }
    match cfg.perturbation {
        Some(Perturbation::Hilbert { degree }) if degree > cfg.max_degree => {
            return invalid(format!(
                "perturbed degree {degree} exceeds max degree {}",
                cfg.max_degree
            ))
        }
        _ => {}
    }
    let bound = oracle.row_bound as u128;
    for (m, n) in pairs(cfg.max_size) {
        let nv = 2 * (m + n);
        let strand = strand_row_count(&edge_binomials(&complete_bipartite(m, n)?), cfg.max_degree);
        let columns = monomial_count(nv, cfg.max_degree);
        let rows = strand.max(2 * columns);
        if rows > bound {
            return Err(Error::TooLarge {
                what: format!("degree-{} strands of K_{{{m},{n}}}", cfg.max_degree),
                rows: usize::try_from(rows).unwrap_or(usize::MAX),
                bound: oracle.row_bound,
            });
        }
    }
    Ok(())
}

/// Runs every comparison and collects one line per check.
pub fn verify(cfg: &VerifyConfig, oracle: &Oracle) -> Result<VerifyReport> {
    preflight(cfg, oracle)?;
    let mut checks = Vec::new();
    for (m, n) in pairs(cfg.max_size) {
        checks.extend(check_pair(cfg, oracle, m, n)?);
    }
    Ok(VerifyReport {
        config: cfg.clone(),
        field: oracle.field.to_string(),
        checks,
    })
}

/// The closed-form table with the configured perturbation applied.
fn closed_betti(cfg: &VerifyConfig, m: usize, n: usize) -> Result<BettiTable> {
    let mut t = closed_form::betti_table(m, n)?;
    if let Some(Perturbation::Betti { i, j }) = cfg.perturbation {
        t.set(i, j, t.get(i, j) + 1);
    }
    Ok(t)
}

/// The closed-form Hilbert function with the configured perturbation applied.
fn closed_hilbert(cfg: &VerifyConfig, m: usize, n: usize) -> Result<Vec<BigInt>> {
    let mut h = closed_form::hilbert_series(m, n)?.expand(cfg.max_degree);
    if let Some(Perturbation::Hilbert { degree }) = cfg.perturbation {
        h[degree] += 1;
    }
    Ok(h)
}

pub fn check_pair(cfg: &VerifyConfig, oracle: &Oracle, m: usize, n: usize) -> Result<Vec<Check>> {
    let g = complete_bipartite(m, n)?;
    let table = closed_betti(cfg, m, n)?;
    let mut out = vec![
        hilbert_check(cfg, oracle, &g, m, n)?,
        dimension_check(oracle, &g, m, n)?,
        multiplicity_check(m, n)?,
        series_identity_check(&table, m, n)?,
        deficiency_check(m, n)?,
    ];
    if m + n <= cfg.betti_max_size {
        out.extend(betti_checks(oracle, &g, &table, m, n)?);
    }
    out.push(decomposition_check(cfg, oracle, &g, m, n)?);
    out.extend(intersection_checks(cfg, oracle, m, n)?);
    out.push(additivity_check(cfg, oracle, &g, m, n)?);
    Ok(out)
}

fn first_mismatch<T: PartialEq + fmt::Display, U: PartialEq + fmt::Display>(
    a: &[T],
    b: &[U],
    eq: impl Fn(&T, &U) -> bool,
) -> Option<String> {
    a.iter()
        .zip(b)
        .enumerate()
        .find(|(_, (x, y))| !eq(x, y))
        .map(|(d, (x, y))| format!("degree {d}: closed form {x}, oracle {y}"))
}

fn hilbert_check(cfg: &VerifyConfig, oracle: &Oracle, g: &Graph, m: usize, n: usize) -> Result<Check> {
    let closed = closed_hilbert(cfg, m, n)?;
    let computed = oracle.hilbert_functions(&edge_binomials(g), cfg.max_degree)?;
    let detail = first_mismatch(&closed, &computed, |x, y| *x == BigInt::from(*y))
        .unwrap_or_else(|| format!("H(d) for d <= {}: {computed:?}", cfg.max_degree));
    let passed = closed.iter().zip(&computed).all(|(x, y)| *x == BigInt::from(*y));
    Ok(Check::new("hilbert-function", m, n, passed, detail))
}

fn dimension_check(oracle: &Oracle, g: &Graph, m: usize, n: usize) -> Result<Check> {
    let from_primes = krull_dim_from_primes(g, oracle.exec)?;
    let primes = minimal_primes(g, oracle.exec)?.len();
    let (dim, count) = (closed_form::krull_dim(m, n)?, closed_form::num_minimal_primes(m, n)?);
    let passed = from_primes == dim && primes == count;
    Ok(Check::new(
        "dimension",
        m,
        n,
        passed,
        format!("closed form dim {dim} with {count} primes, enumeration dim {from_primes} with {primes} primes"),
    ))
}

fn multiplicity_check(m: usize, n: usize) -> Result<Check> {
    let (order, e) = closed_form::hilbert_series(m, n)?.dimension_and_multiplicity()?;
    let (dim, mult) = (closed_form::krull_dim(m, n)?, closed_form::multiplicity(m, n)?);
    let passed = order as usize == dim && e == BigInt::from(mult);
    Ok(Check::new(
        "multiplicity",
        m,
        n,
        passed,
        format!("pole order {order}, leading value {e}; expected ({dim}, {mult})"),
    ))
}

fn series_identity_check(table: &BettiTable, m: usize, n: usize) -> Result<Check> {
    let from_table = series_from_betti(table);
    let series = closed_form::hilbert_series(m, n)?;
    let passed = from_table == series;
    let detail = if passed {
        format!("{}", series.canonical())
    } else {
        format!("table gives {}, series is {}", from_table.canonical(), series.canonical())
    };
    Ok(Check::new("betti-series-identity", m, n, passed, detail))
}

fn deficiency_check(m: usize, n: usize) -> Result<Check> {
    let r = deficiency_classification(m, n)?;
    let (depth, dim) = (closed_form::depth(m, n)?, closed_form::krull_dim(m, n)?);
    let (passed, detail) = match r.nonvanishing_indices() {
        None => (r.case == DeficiencyCase::SmallSpecial, format!("case {}", r.case.label())),
        Some(idx) => {
            let size_ok = match r.case {
                DeficiencyCase::Star => idx.len() == 2,
                DeficiencyCase::Generic => idx.len() == 5,
                _ => idx.len() == 4,
            };
            let ok = size_ok && idx.first() == Some(&depth) && idx.last() == Some(&dim);
            (ok, format!("case {}, indices {idx:?}, depth {depth}, dim {dim}", r.case.label()))
        }
    };
    Ok(Check::new("deficiency", m, n, passed, detail))
}

fn betti_checks(oracle: &Oracle, g: &Graph, closed: &BettiTable, m: usize, n: usize) -> Result<Vec<Check>> {
    let computed = oracle.betti_table(&edge_binomials(g))?;
    let keys: BTreeSet<(usize, usize)> = closed
        .nonzero()
        .chain(computed.nonzero())
        .map(|(i, j, _)| (i, j))
        .collect();
    let diff: Vec<String> = keys
        .iter()
        .filter(|&&(i, j)| closed.get(i, j) != computed.get(i, j))
        .map(|&(i, j)| format!("beta_{{{i},{j}}}: closed form {}, oracle {}", closed.get(i, j), computed.get(i, j)))
        .collect();
    let table_ok = diff.is_empty();
    let table_detail = if table_ok {
        format!("{} nonzero entries in strands 0..={}", keys.len(), oracle.max_strand)
    } else {
        diff.join("; ")
    };
    let nv = 2 * (m + n);
    let top_clear = (0..=nv).all(|i| computed.get(i, oracle.max_strand) == 0);
    let depth = nv - computed.projective_dimension().unwrap_or(0);
    let reg = computed.regularity().unwrap_or(0);
    let (cf_depth, cf_reg) = (closed_form::depth(m, n)?, closed_form::regularity(m, n)?);
    Ok(vec![
        Check::new("betti-table", m, n, table_ok, table_detail),
        Check::new(
            "purity",
            m,
            n,
            computed.get(2, 1) == 0 && computed.is_pure(),
            format!("oracle beta_{{2,1}} = {}", computed.get(2, 1)),
        ),
        Check::new(
            "depth",
            m,
            n,
            top_clear && depth == cf_depth,
            format!("Auslander-Buchsbaum depth {depth}, closed form {cf_depth}"),
        ),
        Check::new(
            "regularity",
            m,
            n,
            top_clear && reg == cf_reg,
            format!("oracle regularity {reg}, closed form {cf_reg}, strand {} clear: {top_clear}", oracle.max_strand),
        ),
    ])
}

fn decomposition_check(cfg: &VerifyConfig, oracle: &Oracle, g: &Graph, m: usize, n: usize) -> Result<Check> {
    let primes = minimal_primes(g, oracle.exec)?
        .iter()
        .map(|p| prime_ideal(g, p))
        .collect::<Result<Vec<_>>>()?;
    let passed = oracle.intersection_equals(&primes, &edge_binomials(g), cfg.max_degree)?;
    Ok(Check::new(
        "primary-decomposition",
        m,
        n,
        passed,
        format!("J_G against the intersection of {} prime strands, d <= {}", primes.len(), cfg.max_degree),
    ))
}

/// The complete-graph ideal and the two coordinate ideals of the parts.
struct Pieces {
    complete: BinomialIdeal,
    small: BinomialIdeal,
    large: BinomialIdeal,
}

fn pieces(m: usize, n: usize) -> Result<Pieces> {
    let total = m + n;
    let all: Vec<usize> = (1..=total).collect();
    Ok(Pieces {
        complete: minor_ideal(&all, total)?,
        small: variable_ideal(&all[..n], total)?,
        large: variable_ideal(&all[n..], total)?,
    })
}

/// Complete graph on `m + n` vertices without the edges inside one part.
fn complete_minus_part(m: usize, n: usize, drop_small: bool) -> Result<BinomialIdeal> {
    let total = m + n;
    let inside = |v: usize| if drop_small { v <= n } else { v > n };
    let edges: Vec<(usize, usize)> = (1..=total)
        .flat_map(|a| (a + 1..=total).map(move |b| (a, b)))
        .filter(|&(a, b)| !(inside(a) && inside(b)))
        .collect();
    Ok(edge_binomials(&Graph::from_edges(total, &edges)?))
}

fn intersection_checks(cfg: &VerifyConfig, oracle: &Oracle, m: usize, n: usize) -> Result<Vec<Check>> {
    let p = pieces(m, n)?;
    let d = cfg.max_degree;
    let span = oracle.intersections_span(&p.complete, &p.small, &p.large, d)?;
    let with_small = oracle.intersection_equals(&[p.complete.clone(), p.small.clone()], &complete_minus_part(m, n, false)?, d)?;
    let with_large = oracle.intersection_equals(&[p.complete.clone(), p.large.clone()], &complete_minus_part(m, n, true)?, d)?;
    Ok(vec![
        Check::new(
            "ideal-sum",
            m,
            n,
            span,
            format!("two intersections span the complete-graph ideal, d <= {d}"),
        ),
        Check::new(
            "intersections-as-edge-ideals",
            m,
            n,
            with_small && with_large,
            format!("small part {with_small}, large part {with_large}, d <= {d}"),
        ),
    ])
}

fn additivity_check(cfg: &VerifyConfig, oracle: &Oracle, g: &Graph, m: usize, n: usize) -> Result<Check> {
    let p = pieces(m, n)?;
    let j = edge_binomials(g);
    let plus_small = p.complete.sum(&p.small)?;
    let plus_large = p.complete.sum(&p.large)?;
    let expected = [
        closed_form::complete_graph_hilbert_series(m + n)?,
        closed_form::complete_graph_hilbert_series(m)?,
        closed_form::complete_graph_hilbert_series(n)?,
    ]
    .map(|s| s.expand(cfg.max_degree));
    for d in 0..=cfg.max_degree {
        let h = |i: &BinomialIdeal| oracle.hilbert_function(i, d).map(|v| v as i128);
        let (hj, hc) = (h(&j)?, h(&p.complete)?);
        let (ha, hb) = (h(&p.small)?, h(&p.large)?);
        let (hca, hcb) = (h(&plus_small)?, h(&plus_large)?);
        let ia = oracle.intersection_hilbert_function(&p.complete, &p.small, d)? as i128;
        let ib = oracle.intersection_hilbert_function(&p.complete, &p.large, d)? as i128;
        let sequences = [
            (hj + hc, ia + ib),
            (ia + hca, hc + ha),
            (ib + hcb, hc + hb),
        ];
        if let Some(k) = sequences.iter().position(|(l, r)| l != r) {
            let (l, r) = sequences[k];
            return Ok(Check::new(
                "hilbert-additivity",
                m,
                n,
                false,
                format!("sequence {} fails in degree {d}: {l} vs {r}", k + 1),
            ));
        }
        let closed = [&expected[0][d], &expected[1][d], &expected[2][d]];
        let computed = [hc, hca, hcb].map(BigInt::from);
        if let Some(k) = (0..3).find(|&k| *closed[k] != computed[k]) {
            return Ok(Check::new(
                "hilbert-additivity",
                m,
                n,
                false,
                format!("piece {} in degree {d}: closed form {}, oracle {}", k + 1, closed[k], computed[k]),
            ));
        }
    }
    Ok(Check::new(
        "hilbert-additivity",
        m,
        n,
        true,
        format!("three sequences and their closed-form pieces agree, d <= {}", cfg.max_degree),
    ))
}
