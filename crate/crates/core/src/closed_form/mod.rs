//! Closed-form invariants of `S/J_G` for `G = K_{m,n}`, `m >= n >= 1`.
//!
//! Every function takes the part sizes already normalized (`m >= n`) and
//! rejects anything else.

mod deficiency;

pub use deficiency::{
    cm_classification, deficiency_classification, CmFlags, DeficiencyCase, DeficiencyReport,
    DeficiencyRow,
};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::series::{BettiTable, HilbertSeries};

pub(crate) fn check_sizes(m: usize, n: usize) -> Result<()> {
    if n == 0 || m < n {
        return invalid(format!("part sizes must satisfy m >= n >= 1, got m={m}, n={n}"));
    }
    Ok(())
}

pub fn krull_dim(m: usize, n: usize) -> Result<usize> {
    check_sizes(m, n)?;
    Ok((m + n + 1).max(2 * m))
}

pub fn depth(m: usize, n: usize) -> Result<usize> {
    check_sizes(m, n)?;
    Ok(if n == 1 { m + 2 } else { n + 2 })
}

/// Castelnuovo-Mumford regularity; a single quadric (`K_{1,1}`) has 1.
pub fn regularity(m: usize, n: usize) -> Result<usize> {
    check_sizes(m, n)?;
    Ok(if (m, n) == (1, 1) { 1 } else { 2 })
}

pub fn multiplicity(m: usize, n: usize) -> Result<usize> {
    check_sizes(m, n)?;
    Ok(if m > n + 1 || (n == 1 && m > 2) { 1 } else { 2 * m })
}

pub fn projective_dimension(m: usize, n: usize) -> Result<usize> {
    check_sizes(m, n)?;
    Ok(if n == 1 { m } else { 2 * m + n - 2 })
}

/// Number of minimal primes of `J_{K_{m,n}}`.
pub fn num_minimal_primes(m: usize, n: usize) -> Result<usize> {
    check_sizes(m, n)?;
    Ok(match (m, n) {
        (1, 1) => 1,
        (_, 1) => 2,
        _ => 3,
    })
}

/// Hilbert series of the determinantal ring of the complete graph on `r`
/// vertices (in its own `2r` variables): `(1 + (r-1)t) / (1-t)^(r+1)`.
pub fn complete_graph_hilbert_series(r: usize) -> Result<HilbertSeries> {
    if r == 0 {
        return invalid("complete graph needs at least one vertex");
    }
    Ok(HilbertSeries::linear_over(r as i64 - 1, r as u32 + 1))
}

/// Hilbert series of a polynomial ring in `vars` variables.
pub(crate) fn free_series(vars: usize) -> HilbertSeries {
    HilbertSeries::from_i64(&[1], vars as u32)
}

/// `H(S/J_G)` assembled from the complete-graph ring, the two coordinate
/// subspaces `S/A_n`, `S/B_m`, and their intersections with the complete-graph
/// variety, over the common denominator `(1-t)^(2m+2n)`.
pub fn hilbert_series(m: usize, n: usize) -> Result<HilbertSeries> {
    check_sizes(m, n)?;
    let s = complete_graph_hilbert_series(m + n)?
        .add(&free_series(2 * m))
        .add(&free_series(2 * n))
        .sub(&complete_graph_hilbert_series(m)?)
        .sub(&complete_graph_hilbert_series(n)?);
    Ok(align_to(&s, 2 * (m + n) as u32))
}

/// Rewrites `s` over `(1-t)^d` when `d` is at least its current pole order.
pub(crate) fn align_to(s: &HilbertSeries, d: u32) -> HilbertSeries {
    s.add(&HilbertSeries::new(Vec::new(), d))
}

/// `b_i(r) = i * C(r, i+1)`, the linear-strand Betti numbers of the
/// complete-graph ideal on `r` vertices; zero outside `1 <= i <= r-1`.
pub fn linear_strand_betti(i: usize, r: usize) -> u64 {
    if i == 0 || i + 1 > r {
        return 0;
    }
    let b = BigInt::from(i) * binomial(BigInt::from(r), BigInt::from(i + 1));
    b.to_u64().expect("linear strand Betti number fits in u64")
}

fn c(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::from(0)
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// `beta_{i,2}` for `2 <= i <= p`.
pub fn quadratic_strand_betti(m: usize, n: usize, i: usize) -> Result<BigInt> {
    check_sizes(m, n)?;
    let p = projective_dimension(m, n)?;
    if i < 2 || i > p {
        return Ok(BigInt::from(0));
    }
    let b = if n == 1 {
        BigInt::from(m) * c(m, i) - c(m, i + 1) - c(m + 1, i + 1)
    } else {
        c(m + n, i + 2) + c(2 * n, i + 2) + c(2 * m, i + 2)
            + BigInt::from(m) * c(m + 2 * n - 1, i + 1)
            + BigInt::from(n) * c(2 * m + n - 1, i + 1)
            - c(m + 2 * n, i + 2)
            - c(2 * m + n, i + 2)
            - BigInt::from(m + n) * c(m + n - 1, i + 1)
    };
    Ok(b)
}

/// The pure Betti table: `beta_{0,0} = 1`, `beta_{1,1} = mn`, and
/// `beta_{i,2}` for `2 <= i <= p`; everything else vanishes.
pub fn betti_table(m: usize, n: usize) -> Result<BettiTable> {
    check_sizes(m, n)?;
    let mut t = BettiTable::new(2 * (m + n));
    t.set(0, 0, 1);
    t.set(1, 1, (m * n) as u64);
    for i in 2..=projective_dimension(m, n)? {
        let b = quadratic_strand_betti(m, n, i)?;
        let v = b
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("beta_{{{i},2}}(K_{{{m},{n}}}) = {b}")))?;
        t.set(i, 2, v);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub m: usize,
    pub n: usize,
    pub dim: usize,
    pub depth: usize,
    pub reg: usize,
    pub multiplicity: usize,
    pub pd: usize,
    pub num_minimal_primes: usize,
}

pub fn invariant_report(m: usize, n: usize) -> Result<InvariantReport> {
    Ok(InvariantReport {
        m,
        n,
        dim: krull_dim(m, n)?,
        depth: depth(m, n)?,
        reg: regularity(m, n)?,
        multiplicity: multiplicity(m, n)?,
        pd: projective_dimension(m, n)?,
        num_minimal_primes: num_minimal_primes(m, n)?,
    })
}
