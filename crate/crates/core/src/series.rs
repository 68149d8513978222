//! Rational generating functions `numerator / (1 - t)^D` with exact integer
//! coefficients, and graded Betti tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// `numerator(t) / (1 - t)^denom_power`.
///
/// Equality is equality of the represented series, so `(1 - t) / (1 - t)^2`
/// equals `1 / (1 - t)`.
#[derive(Clone, Debug)]
pub struct HilbertSeries {
    numerator: Vec<BigInt>,
    denom_power: u32,
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Multiplies `p` by `(1 - t)^k`.
fn times_one_minus_t(p: &[BigInt], k: u32) -> Vec<BigInt> {
    let mut out = p.to_vec();
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (d, c) in out.iter().enumerate() {
            next[d] += c;
            next[d + 1] -= c;
        }
        out = next;
    }
    trim(out)
}

impl HilbertSeries {
    pub fn new(numerator: Vec<BigInt>, denom_power: u32) -> HilbertSeries {
        HilbertSeries {
            numerator: trim(numerator),
            denom_power,
        }
    }

    pub fn from_i64(numerator: &[i64], denom_power: u32) -> HilbertSeries {
        HilbertSeries::new(numerator.iter().map(|&c| BigInt::from(c)).collect(), denom_power)
    }

    /// `(1 + a t) / (1 - t)^d`, the shape of every summand in the closed forms.
    pub(crate) fn linear_over(a: i64, d: u32) -> HilbertSeries {
        HilbertSeries::from_i64(&[1, a], d)
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Coefficients `c_0 ..= c_dmax` of the power series.
    pub fn expand(&self, dmax: usize) -> Vec<BigInt> {
        let d = self.denom_power as usize;
        (0..=dmax)
            .map(|deg| {
                self.numerator
                    .iter()
                    .enumerate()
                    .take(deg + 1)
                    .map(|(k, a)| {
                        let weight = if d == 0 {
                            if k == deg { BigInt::one() } else { BigInt::zero() }
                        } else {
                            binomial(BigInt::from(deg - k + d - 1), BigInt::from(d - 1))
                        };
                        a * weight
                    })
                    .sum()
            })
            .collect()
    }

    /// Both numerators over the common denominator `(1 - t)^max(Da, Db)`.
    fn aligned(&self, other: &HilbertSeries) -> (Vec<BigInt>, Vec<BigInt>, u32) {
        let d = self.denom_power.max(other.denom_power);
        (
            times_one_minus_t(&self.numerator, d - self.denom_power),
            times_one_minus_t(&other.numerator, d - other.denom_power),
            d,
        )
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        let (mut a, b, d) = self.aligned(other);
        if a.len() < b.len() {
            a.resize(b.len(), BigInt::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        HilbertSeries::new(a, d)
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HilbertSeries {
        HilbertSeries::new(self.numerator.iter().map(|c| -c).collect(), self.denom_power)
    }

    /// Divides out `(1 - t)` while the numerator vanishes at `t = 1`.
    ///
    /// Returns `(R, d)` with `self = R / (1 - t)^d` and `R(1) != 0`. For the
    /// Hilbert series of a graded quotient `d` is the Krull dimension and
    /// `R(1)` the multiplicity.
    pub fn reduce_pole_order(&self) -> Result<(Vec<BigInt>, u32)> {
        if self.is_zero() {
            return Err(Error::ZeroModule);
        }
        let mut num = self.numerator.clone();
        let mut d = self.denom_power;
        while num.iter().sum::<BigInt>().is_zero() {
            if d == 0 {
                return invalid("numerator vanishes at t = 1 with no pole left to cancel");
            }
            // synthetic division by (1 - t): q_k = sum_{i <= k} a_i
            let mut acc = BigInt::zero();
            let mut q = Vec::with_capacity(num.len() - 1);
            for a in &num[..num.len() - 1] {
                acc += a;
                q.push(acc.clone());
            }
            num = trim(q);
            d -= 1;
        }
        Ok((num, d))
    }

    /// Fully reduced representative; the zero series maps to `0 / (1 - t)^0`.
    pub fn canonical(&self) -> HilbertSeries {
        match self.reduce_pole_order() {
            Ok((num, d)) => HilbertSeries::new(num, d),
            Err(_) if self.is_zero() => HilbertSeries::new(Vec::new(), 0),
            // a polynomial whose value at 1 is zero: nothing to cancel
            Err(_) => HilbertSeries::new(self.numerator.clone(), 0),
        }
    }

    /// `(dimension, multiplicity)` read off the reduced form.
    pub fn dimension_and_multiplicity(&self) -> Result<(u32, BigInt)> {
        let (num, d) = self.reduce_pole_order()?;
        Ok((d, num.iter().sum()))
    }

    pub fn numerator_i64(&self) -> Result<Vec<i64>> {
        self.numerator
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| Error::Overflow(format!("coefficient {c}"))))
            .collect()
    }
}

impl PartialEq for HilbertSeries {
    fn eq(&self, other: &HilbertSeries) -> bool {
        let (a, b, _) = self.aligned(other);
        a == b
    }
}

impl Eq for HilbertSeries {}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.numerator.is_empty() {
            write!(f, "0")?;
        }
        for (k, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let first = self.numerator[..k].iter().all(Zero::is_zero);
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        write!(f, ")/(1-t)^{}", self.denom_power)
    }
}

/// Graded Betti numbers `beta_{i,j} = dim Tor_i(K, M)_{i+j}`; `j` is the
/// strand (row of the Betti diagram), `i` the homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub num_vars: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(num_vars: usize) -> BettiTable {
        BettiTable {
            num_vars,
            entries: BTreeMap::new(),
        }
    }

    /// Zero values are not stored.
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(i, j, beta)` in `(i, j)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(_, j)| j).max()
    }

    /// Whether every homological degree is concentrated in a single strand.
    pub fn is_pure(&self) -> bool {
        let mut strand_of = BTreeMap::new();
        self.entries
            .keys()
            .all(|&(i, j)| *strand_of.entry(i).or_insert(j) == j)
    }
}

impl fmt::Display for BettiTable {
    /// Strands as rows, homological degrees as columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.projective_dimension().unwrap_or(0);
        let r = self.regularity().unwrap_or(0);
        let width = self
            .entries
            .values()
            .map(|b| b.to_string().len())
            .max()
            .unwrap_or(1)
            .max(p.to_string().len());
        write!(f, "   |")?;
        for i in 0..=p {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        writeln!(f, "---+{}", "-".repeat((width + 1) * (p + 1)))?;
        for j in 0..=r {
            write!(f, "{j:>2} |")?;
            for i in 0..=p {
                write!(f, " {:>width$}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Hilbert series of a module with the given graded Betti numbers:
/// `sum (-1)^i beta_{i,j} t^{i+j} / (1 - t)^num_vars`.
pub fn series_from_betti(b: &BettiTable) -> HilbertSeries {
    let len = b.nonzero().map(|(i, j, _)| i + j + 1).max().unwrap_or(0);
    let mut num = vec![BigInt::zero(); len];
    for (i, j, beta) in b.nonzero() {
        if i % 2 == 0 {
            num[i + j] += beta;
        } else {
            num[i + j] -= beta;
        }
    }
    HilbertSeries::new(num, b.num_vars as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Power-series coefficients by repeated prefix sums, independent of the
    /// binomial closed form used in `expand`.
    fn expand_by_prefix_sums(s: &HilbertSeries, dmax: usize) -> Vec<BigInt> {
        let mut c: Vec<BigInt> = (0..=dmax)
            .map(|k| s.numerator().get(k).cloned().unwrap_or_default())
            .collect();
        for _ in 0..s.denom_power() {
            for k in 1..=dmax {
                let prev = c[k - 1].clone();
                c[k] += prev;
            }
        }
        c
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(HilbertSeries::from_i64(&[1, 1], 3).expand(2), ints(&[1, 4, 9]));
        assert_eq!(HilbertSeries::from_i64(&[1], 1).expand(3), ints(&[1, 1, 1, 1]));
        assert_eq!(HilbertSeries::from_i64(&[1, -1], 1).expand(5), ints(&[1, 0, 0, 0, 0, 0]));
        assert_eq!(HilbertSeries::from_i64(&[2, 3], 0).expand(3), ints(&[2, 3, 0, 0]));
    }

    #[test]
    fn addition_examples() {
        let g = HilbertSeries::from_i64(&[1], 1);
        assert_eq!(g.add(&g), HilbertSeries::from_i64(&[2], 1));
        let h = HilbertSeries::from_i64(&[1], 2);
        assert!(h.sub(&h).is_zero());
        let s = HilbertSeries::from_i64(&[1, 1], 3).add(&h);
        assert_eq!(s.numerator(), &ints(&[2])[..]);
        assert_eq!(s.denom_power(), 3);
    }

    #[test]
    fn pole_reduction_examples() {
        let k22 = HilbertSeries::from_i64(&[1, 0, -4, 0, 9, -8, 2], 8);
        let (r, d) = k22.reduce_pole_order().unwrap();
        assert_eq!(d, 5);
        assert_eq!(r.iter().sum::<BigInt>(), BigInt::from(4));

        let k31 = HilbertSeries::from_i64(&[1, 0, -3, 0, 4, -2], 8);
        let (r, d) = k31.reduce_pole_order().unwrap();
        assert_eq!(d, 6);
        assert_eq!(r.iter().sum::<BigInt>(), BigInt::from(1));

        let (r, d) = HilbertSeries::from_i64(&[1, -1], 2).reduce_pole_order().unwrap();
        assert_eq!((r, d), (ints(&[1]), 1));

        assert_eq!(HilbertSeries::new(vec![], 3).reduce_pole_order(), Err(Error::ZeroModule));
        assert!(HilbertSeries::from_i64(&[1, -1], 0).reduce_pole_order().is_err());
    }

    #[test]
    fn betti_to_series() {
        let mut b = BettiTable::new(8);
        b.set(0, 0, 1);
        b.set(1, 1, 3);
        b.set(2, 2, 4);
        b.set(3, 2, 2);
        assert_eq!(series_from_betti(&b), HilbertSeries::from_i64(&[1, 0, -3, 0, 4, -2], 8));

        let mut b = BettiTable::new(8);
        for (i, j, v) in [(0, 0, 1), (1, 1, 4), (2, 2, 9), (3, 2, 8), (4, 2, 2)] {
            b.set(i, j, v);
        }
        assert_eq!(series_from_betti(&b), HilbertSeries::from_i64(&[1, 0, -4, 0, 9, -8, 2], 8));
        assert!(b.is_pure());
        assert_eq!((b.projective_dimension(), b.regularity()), (Some(4), Some(2)));

        let mut free = BettiTable::new(2);
        free.set(0, 0, 1);
        assert_eq!(series_from_betti(&free), HilbertSeries::from_i64(&[1], 2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(HilbertSeries::from_i64(&[1, 0, -4, 0, 9], 8).to_string(), "(1 - 4*t^2 + 9*t^4)/(1-t)^8");
        assert_eq!(HilbertSeries::from_i64(&[1, 1], 3).to_string(), "(1 + t)/(1-t)^3");
        let mut b = BettiTable::new(4);
        b.set(0, 0, 1);
        b.set(1, 1, 1);
        let text = b.to_string();
        assert!(text.contains(" 0 | 1 0"));
        assert!(text.contains(" 1 | 0 1"));
    }

    proptest! {
        #[test]
        fn expansion_matches_prefix_sums(
            num in proptest::collection::vec(-20i64..20, 0..8),
            d in 0u32..7,
        ) {
            let s = HilbertSeries::from_i64(&num, d);
            prop_assert_eq!(s.expand(12), expand_by_prefix_sums(&s, 12));
        }

        #[test]
        fn reduction_preserves_the_series(
            core in proptest::collection::vec(-20i64..20, 1..6),
            extra in 0u32..4,
            d in 0u32..5,
        ) {
            // build R * (1 - t)^extra / (1 - t)^(d + extra) with R(1) != 0
            let mut r = core.clone();
            let s: i64 = r.iter().sum();
            if s == 0 { r[0] += 1; }
            let num = times_one_minus_t(&ints(&r), extra);
            let series = HilbertSeries::new(num, d + extra);
            let (red, order) = series.reduce_pole_order().unwrap();
            prop_assert_eq!(order, d);
            prop_assert!(!red.iter().sum::<BigInt>().is_zero());
            let reduced = HilbertSeries::new(red, order);
            prop_assert_eq!(reduced.expand(12), series.expand(12));
            prop_assert_eq!(&reduced, &series);
        }
    }
}
