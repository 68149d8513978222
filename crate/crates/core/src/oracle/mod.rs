//! Brute-force verification engine: every quantity is computed by linear
//! algebra on graded strands over a prime field or the rationals, with no use
//! of the closed forms.

mod echelon;
mod field;
mod koszul;
mod monomials;
mod strand;

pub use echelon::{Echelon, SparseVec};
pub use field::{Field, PrimeField, Rat, Rationals};
pub use koszul::KoszulComplex;
pub use monomials::{monomial_count, MonomialBasis};
pub use strand::{ideal_strand, strand_row_count, GradedStrand, QuotientStrand};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::error::{invalid, Error, Result};
use crate::exec::Execution;
use crate::ideals::BinomialIdeal;
use crate::series::BettiTable;

pub const DEFAULT_PRIME: u32 = 32003;
pub const DEFAULT_ROW_BOUND: usize = 200_000;
/// Koszul strands computed by default: 0..=3, one past the expected regularity.
pub const DEFAULT_MAX_STRAND: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldConfig {
    Rational,
    Prime(u32),
}

impl FieldConfig {
    /// Characteristic 0 selects the rationals; anything else must be a prime
    /// below `2^31`.
    pub fn from_characteristic(c: u64) -> Result<FieldConfig> {
        if c == 0 {
            return Ok(FieldConfig::Rational);
        }
        if c >= 1 << 31 {
            return invalid(format!("characteristic {c} is too large (limit 2^31)"));
        }
        let prime = c >= 2 && (2..).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d));
        if !prime {
            return invalid(format!("characteristic {c} is not prime"));
        }
        Ok(FieldConfig::Prime(c as u32))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldConfig::Rational => 0,
            FieldConfig::Prime(p) => p as u64,
        }
    }
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rational => write!(f, "QQ"),
            FieldConfig::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldConfig> {
        let c: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("field characteristic {s:?} is not an integer")))?;
        FieldConfig::from_characteristic(c)
    }
}

macro_rules! with_field {
    ($cfg:expr, $f:ident => $body:expr) => {
        match $cfg {
            FieldConfig::Rational => {
                let $f = Rationals;
                $body
            }
            FieldConfig::Prime(p) => {
                let $f = PrimeField::new(p);
                $body
            }
        }
    };
}

pub struct Oracle {
    pub field: FieldConfig,
    pub row_bound: usize,
    pub exec: Execution,
    pub max_strand: usize,
    bases: Mutex<HashMap<(usize, usize), Arc<MonomialBasis>>>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(FieldConfig::default())
    }
}

impl Clone for Oracle {
    fn clone(&self) -> Self {
        Oracle {
            bases: Mutex::new(self.bases.lock().expect("basis cache").clone()),
            ..*self
        }
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("field", &self.field)
            .field("row_bound", &self.row_bound)
            .field("exec", &self.exec)
            .field("max_strand", &self.max_strand)
            .finish()
    }
}

impl Oracle {
    pub fn new(field: FieldConfig) -> Oracle {
        Oracle {
            field,
            row_bound: DEFAULT_ROW_BOUND,
            exec: Execution::default(),
            max_strand: DEFAULT_MAX_STRAND,
            bases: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_row_bound(mut self, bound: usize) -> Oracle {
        self.row_bound = bound;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Oracle {
        self.exec = exec;
        self
    }

    pub fn with_max_strand(mut self, j: usize) -> Oracle {
        self.max_strand = j;
        self
    }

    /// Shared monomial basis of degree `d` in `nvars` variables.
    pub fn basis(&self, nvars: usize, d: usize) -> Arc<MonomialBasis> {
        if let Some(b) = self.bases.lock().expect("basis cache").get(&(nvars, d)) {
            return b.clone();
        }
        let b = Arc::new(MonomialBasis::new(nvars, d));
        self.bases
            .lock()
            .expect("basis cache")
            .entry((nvars, d))
            .or_insert(b)
            .clone()
    }

    fn strand<F: Field>(&self, f: &F, ideal: &BinomialIdeal, d: usize) -> Result<GradedStrand<F>> {
        ideal_strand(f, ideal, self.basis(ideal.num_variables(), d), self.row_bound)
    }

    fn same_ambient(ideals: &[&BinomialIdeal]) -> Result<()> {
        if ideals.windows(2).any(|w| w[0].num_vertices() != w[1].num_vertices()) {
            return invalid("ideals live in different rings");
        }
        Ok(())
    }

    /// Rank of the degree-`d` piece of the ideal.
    pub fn strand_rank(&self, ideal: &BinomialIdeal, d: usize) -> Result<usize> {
        with_field!(self.field, f => Ok(self.strand(&f, ideal, d)?.rank()))
    }

    /// `dim_K (S/I)_d`.
    pub fn hilbert_function(&self, ideal: &BinomialIdeal, d: usize) -> Result<u64> {
        with_field!(self.field, f => Ok(self.strand(&f, ideal, d)?.codim() as u64))
    }

    /// `dim_K (S/I)_d` for `d = 0..=dmax`.
    pub fn hilbert_functions(&self, ideal: &BinomialIdeal, dmax: usize) -> Result<Vec<u64>> {
        let degrees: Vec<usize> = (0..=dmax).collect();
        self.exec.try_map(&degrees, |&d| self.hilbert_function(ideal, d))
    }

    /// Whether the two ideals agree in every degree up to `dmax`.
    pub fn strands_equal(&self, a: &BinomialIdeal, b: &BinomialIdeal, dmax: usize) -> Result<bool> {
        Oracle::same_ambient(&[a, b])?;
        let degrees: Vec<usize> = (0..=dmax).collect();
        let eq = self.exec.try_map(&degrees, |&d| {
            with_field!(self.field, f => {
                let (u, v) = (self.strand(&f, a, d)?, self.strand(&f, b, d)?);
                Ok::<bool, Error>(u.same_space(&v))
            })
        })?;
        Ok(eq.into_iter().all(|x| x))
    }

    /// `dim (A_d + B_d)`.
    pub fn strand_sum_rank(&self, a: &BinomialIdeal, b: &BinomialIdeal, d: usize) -> Result<usize> {
        Oracle::same_ambient(&[a, b])?;
        with_field!(self.field, f => Ok(self.strand(&f, a, d)?.sum(&self.strand(&f, b, d)?)?.rank()))
    }

    /// `dim (A_d ∩ B_d)`, computed from an explicit basis of the intersection.
    pub fn strand_intersection_dim(&self, a: &BinomialIdeal, b: &BinomialIdeal, d: usize) -> Result<usize> {
        Oracle::same_ambient(&[a, b])?;
        with_field!(self.field, f => {
            let (u, v) = (self.strand(&f, a, d)?, self.strand(&f, b, d)?);
            Ok(u.intersect(&v, self.row_bound)?.rank())
        })
    }

    /// `dim_K (S/(A ∩ B))_d`.
    pub fn intersection_hilbert_function(&self, a: &BinomialIdeal, b: &BinomialIdeal, d: usize) -> Result<u64> {
        let n = monomial_count(a.num_variables(), d) as u64;
        Ok(n - self.strand_intersection_dim(a, b, d)? as u64)
    }

    /// Whether `target_d` equals the intersection of the `parts_d`, for every
    /// `d <= dmax`.
    pub fn intersection_equals(&self, parts: &[BinomialIdeal], target: &BinomialIdeal, dmax: usize) -> Result<bool> {
        if parts.is_empty() {
            return invalid("intersection of no ideals");
        }
        let all: Vec<&BinomialIdeal> = parts.iter().chain([target]).collect();
        Oracle::same_ambient(&all)?;
        let degrees: Vec<usize> = (0..=dmax).collect();
        let eq = self.exec.try_map(&degrees, |&d| {
            with_field!(self.field, f => {
                let mut cap = self.strand(&f, &parts[0], d)?;
                for p in &parts[1..] {
                    cap = cap.intersect(&self.strand(&f, p, d)?, self.row_bound)?;
                }
                Ok::<bool, Error>(cap.same_space(&self.strand(&f, target, d)?))
            })
        })?;
        Ok(eq.into_iter().all(|x| x))
    }

    /// Whether `(whole ∩ a)_d + (whole ∩ b)_d = whole_d` for every `d <= dmax`.
    pub fn intersections_span(&self, whole: &BinomialIdeal, a: &BinomialIdeal, b: &BinomialIdeal, dmax: usize) -> Result<bool> {
        Oracle::same_ambient(&[whole, a, b])?;
        let degrees: Vec<usize> = (0..=dmax).collect();
        let eq = self.exec.try_map(&degrees, |&d| {
            with_field!(self.field, f => {
                let w = self.strand(&f, whole, d)?;
                let left = w.intersect(&self.strand(&f, a, d)?, self.row_bound)?;
                let right = w.intersect(&self.strand(&f, b, d)?, self.row_bound)?;
                Ok::<bool, Error>(left.sum(&right)?.same_space(&w))
            })
        })?;
        Ok(eq.into_iter().all(|x| x))
    }

    /// `beta_{i,j}(S/I) = dim Tor_i(K, S/I)_{i+j}`.
    pub fn koszul_betti(&self, ideal: &BinomialIdeal, i: usize, j: usize) -> Result<u64> {
        with_field!(self.field, f => {
            let nv = ideal.num_variables();
            let basis = |d: usize| self.basis(nv, d);
            let k = KoszulComplex::new(&f, ideal, j, self.row_bound, self.exec, &basis)?;
            k.betti(i, j)
        })
    }

    /// Betti numbers in strands `0..=max_strand`.
    pub fn betti_table(&self, ideal: &BinomialIdeal) -> Result<BettiTable> {
        with_field!(self.field, f => {
            let nv = ideal.num_variables();
            let basis = |d: usize| self.basis(nv, d);
            let k = KoszulComplex::new(&f, ideal, self.max_strand, self.row_bound, self.exec, &basis)?;
            k.betti_table(self.exec)
        })
    }

    fn checked_table(&self, ideal: &BinomialIdeal) -> Result<BettiTable> {
        let t = self.betti_table(ideal)?;
        if (0..=ideal.num_variables()).any(|i| t.get(i, self.max_strand) != 0) {
            return Err(Error::Unsupported(format!(
                "strand {} is nonzero; regularity may exceed the computed strands",
                self.max_strand
            )));
        }
        Ok(t)
    }

    /// `depth S/I = #variables - projective dimension`.
    pub fn depth_via_ab(&self, ideal: &BinomialIdeal) -> Result<usize> {
        let t = self.checked_table(ideal)?;
        Ok(ideal.num_variables() - t.projective_dimension().unwrap_or(0))
    }

    pub fn regularity_via_betti(&self, ideal: &BinomialIdeal) -> Result<usize> {
        Ok(self.checked_table(ideal)?.regularity().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete_bipartite;
    use crate::ideals::{edge_binomials, minor_ideal};

    fn j(m: usize, n: usize) -> BinomialIdeal {
        edge_binomials(&complete_bipartite(m, n).unwrap())
    }

    #[test]
    fn field_config_parsing() {
        assert_eq!("0".parse::<FieldConfig>(), Ok(FieldConfig::Rational));
        assert_eq!("32003".parse::<FieldConfig>(), Ok(FieldConfig::Prime(32003)));
        assert!("32004".parse::<FieldConfig>().is_err());
        assert!("1".parse::<FieldConfig>().is_err());
        assert!("abc".parse::<FieldConfig>().is_err());
        assert!(FieldConfig::from_characteristic(1 << 31).is_err());
    }

    #[test]
    fn hilbert_function_examples() {
        let o = Oracle::default();
        assert_eq!(o.hilbert_function(&j(1, 1), 2), Ok(9));
        assert_eq!(o.hilbert_function(&j(2, 1), 2), Ok(19));
        assert_eq!(o.hilbert_function(&j(2, 2), 0), Ok(1));
        assert_eq!(o.hilbert_functions(&j(2, 2), 2), Ok(vec![1, 8, 32]));
    }

    #[test]
    fn koszul_examples() {
        let o = Oracle::default();
        let k22 = j(2, 2);
        assert_eq!(o.koszul_betti(&k22, 1, 1), Ok(4));
        assert_eq!(o.koszul_betti(&k22, 2, 1), Ok(0));
        assert_eq!(o.koszul_betti(&k22, 2, 2), Ok(9));
        assert_eq!(o.koszul_betti(&k22, 0, 0), Ok(1));
    }

    #[test]
    fn depth_and_regularity() {
        let o = Oracle::default();
        assert_eq!(o.depth_via_ab(&j(1, 1)), Ok(3));
        assert_eq!(o.regularity_via_betti(&j(1, 1)), Ok(1));
        assert_eq!(o.depth_via_ab(&j(3, 1)), Ok(5));
        assert_eq!(o.regularity_via_betti(&j(3, 1)), Ok(2));
    }

    #[test]
    fn truncated_strands_are_reported() {
        let o = Oracle::default().with_max_strand(1);
        assert!(matches!(o.regularity_via_betti(&j(2, 1)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn complete_graph_linear_strand() {
        let o = Oracle::default();
        let i4 = minor_ideal(&[1, 2, 3, 4], 4).unwrap();
        assert_eq!(o.koszul_betti(&i4, 2, 1), Ok(8));
        assert_eq!(o.koszul_betti(&i4, 2, 2), Ok(0));
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let o = Oracle::default();
        assert!(o.strands_equal(&j(1, 1), &j(2, 1), 2).is_err());
    }

    #[test]
    fn koszul_guard() {
        let o = Oracle::default().with_row_bound(50);
        assert!(matches!(o.koszul_betti(&j(2, 1), 2, 2), Err(Error::TooLarge { .. })));
    }
}
