//! Graded pieces of ideals as row spaces over the monomial basis, and the
//! standard-monomial model of the quotient.

use std::sync::Arc;

use super::echelon::{sparse_from_pairs, Echelon, SparseVec};
use super::field::Field;
use super::monomials::{generator_terms, monomial_count, MonomialBasis};
use crate::error::{invalid, Error, Result};
use crate::ideals::BinomialIdeal;

/// The degree-`d` piece of an ideal.
#[derive(Clone, Debug)]
pub struct GradedStrand<F: Field> {
    basis: Arc<MonomialBasis>,
    space: Echelon<F>,
}

pub(crate) fn guard(what: impl FnOnce() -> String, rows: u128, bound: usize) -> Result<()> {
    if rows > bound as u128 {
        return Err(Error::TooLarge {
            what: what(),
            rows: usize::try_from(rows).unwrap_or(usize::MAX),
            bound,
        });
    }
    Ok(())
}

/// Rows `g * u` for every generator `g` of degree `e <= d` and every monomial
/// `u` of degree `d - e`, without building them.
pub fn strand_row_count(ideal: &BinomialIdeal, degree: usize) -> u128 {
    let nv = ideal.num_variables();
    ideal
        .generators()
        .iter()
        .filter(|g| g.degree() <= degree)
        .map(|g| monomial_count(nv, degree - g.degree()))
        .sum()
}

pub fn ideal_strand<F: Field>(
    field: &F,
    ideal: &BinomialIdeal,
    basis: Arc<MonomialBasis>,
    row_bound: usize,
) -> Result<GradedStrand<F>> {
    let nv = ideal.num_variables();
    let d = basis.degree();
    if basis.nvars() != nv {
        return invalid(format!("basis has {} variables, ideal lives in {nv}", basis.nvars()));
    }
    guard(|| format!("degree-{d} strand of {}", ideal.label), strand_row_count(ideal, d), row_bound)?;
    guard(|| format!("degree-{d} monomial basis in {nv} variables"), basis.len() as u128, row_bound)?;

    let mut space = Echelon::new(field.clone(), basis.len());
    let mut scratch = vec![0u8; nv];
    for g in ideal.generators() {
        let e = g.degree();
        if e > d {
            continue;
        }
        let terms = generator_terms(g, ideal.num_vertices());
        let cofactors = MonomialBasis::new(nv, d - e);
        for u in cofactors.monomials() {
            let pairs = terms
                .iter()
                .map(|(c, t)| {
                    for k in 0..nv {
                        scratch[k] = u[k] + t[k];
                    }
                    let col = basis.index_of(&scratch).expect("product has the strand degree");
                    (col, field.from_i64(*c))
                })
                .collect();
            space.insert(sparse_from_pairs(field, pairs));
        }
    }
    Ok(GradedStrand { basis, space })
}

impl<F: Field> GradedStrand<F> {
    /// The zero subspace of the given degree.
    pub fn zero(field: &F, basis: Arc<MonomialBasis>) -> GradedStrand<F> {
        let space = Echelon::new(field.clone(), basis.len());
        GradedStrand { basis, space }
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon<F> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// Dimension of the quotient in this degree.
    pub fn codim(&self) -> usize {
        self.basis.len() - self.rank()
    }

    pub fn contains(&self, other: &GradedStrand<F>) -> bool {
        other.space.rows().iter().all(|r| self.space.contains(r.clone()))
    }

    pub fn same_space(&self, other: &GradedStrand<F>) -> bool {
        self.rank() == other.rank() && self.contains(other)
    }

    fn check_ambient(&self, other: &GradedStrand<F>) -> Result<()> {
        if self.basis.nvars() != other.basis.nvars() || self.degree() != other.degree() {
            return invalid("strands live in different ambient spaces");
        }
        Ok(())
    }

    pub fn sum(&self, other: &GradedStrand<F>) -> Result<GradedStrand<F>> {
        self.check_ambient(other)?;
        let mut space = self.space.clone();
        for r in other.space.rows() {
            space.insert(r.clone());
        }
        Ok(GradedStrand {
            basis: self.basis.clone(),
            space,
        })
    }

    /// Intersection by the Zassenhaus construction: rows `(u | u)` for `u` in
    /// `self` and `(v | 0)` for `v` in `other`; rows leading in the right block
    /// span the intersection.
    pub fn intersect(&self, other: &GradedStrand<F>, row_bound: usize) -> Result<GradedStrand<F>> {
        self.check_ambient(other)?;
        let n = self.basis.len() as u32;
        guard(
            || format!("degree-{} intersection", self.degree()),
            (self.rank() + other.rank()) as u128,
            row_bound,
        )?;
        let field = self.space.field();
        let mut stacked = Echelon::new(field.clone(), 2 * n as usize);
        for u in self.space.rows() {
            let mut row = u.clone();
            row.extend(u.iter().map(|(c, v)| (c + n, v.clone())));
            stacked.insert(row);
        }
        for v in other.space.rows() {
            stacked.insert(v.clone());
        }
        let mut space = Echelon::new(field.clone(), n as usize);
        for row in stacked.rows() {
            if row[0].0 >= n {
                space.insert(row.iter().map(|(c, v)| (c - n, v.clone())).collect());
            }
        }
        Ok(GradedStrand {
            basis: self.basis.clone(),
            space,
        })
    }
}

const NOT_STANDARD: u32 = u32::MAX;

/// Degree-`d` piece of `S/I`, with the monomials outside the leading-term set
/// as basis.
#[derive(Clone, Debug)]
pub struct QuotientStrand<F: Field> {
    strand: GradedStrand<F>,
    standard_of: Vec<u32>,
    standard: Vec<u32>,
}

impl<F: Field> QuotientStrand<F> {
    pub fn new(mut strand: GradedStrand<F>) -> QuotientStrand<F> {
        strand.space.make_reduced();
        let mut standard_of = vec![NOT_STANDARD; strand.basis.len()];
        let mut standard = Vec::new();
        for col in 0..strand.basis.len() as u32 {
            if !strand.space.is_pivot(col) {
                standard_of[col as usize] = standard.len() as u32;
                standard.push(col);
            }
        }
        QuotientStrand {
            strand,
            standard_of,
            standard,
        }
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.strand.basis
    }

    /// Monomial indices of the standard monomials, ascending.
    pub fn standard_monomials(&self) -> &[u32] {
        &self.standard
    }

    /// Coordinates of a monomial of this degree in the standard basis.
    pub fn normal_form(&self, monomial: u32) -> SparseVec<F::Elem> {
        let field = self.strand.space.field();
        match self.standard_of[monomial as usize] {
            NOT_STANDARD => {
                let row = self
                    .strand
                    .space
                    .pivot_row(monomial)
                    .expect("non-standard monomial leads a row");
                row[1..]
                    .iter()
                    .map(|(c, v)| (self.standard_of[*c as usize], field.neg(v)))
                    .collect()
            }
            s => vec![(s, field.one())],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete_bipartite;
    use crate::ideals::{edge_binomials, variable_ideal};
    use crate::oracle::field::{PrimeField, Rationals};

    const P: PrimeField = PrimeField::new(32003);

    fn strand(ideal: &BinomialIdeal, d: usize) -> GradedStrand<PrimeField> {
        let basis = Arc::new(MonomialBasis::new(ideal.num_variables(), d));
        ideal_strand(&P, ideal, basis, 1_000_000).unwrap()
    }

    #[test]
    fn ranks_of_small_strands() {
        let j11 = edge_binomials(&complete_bipartite(1, 1).unwrap());
        assert_eq!(strand(&j11, 2).rank(), 1);
        let j21 = edge_binomials(&complete_bipartite(2, 1).unwrap());
        assert_eq!(strand(&j21, 2).rank(), 2);
        let j22 = edge_binomials(&complete_bipartite(2, 2).unwrap());
        // 120 cubic monomials in 8 variables, 88 survive in the quotient
        assert_eq!(strand(&j22, 3).rank(), 120 - 88);
        assert_eq!(strand(&j22, 0).codim(), 1);
    }

    #[test]
    fn intersection_dimension_formula() {
        let j = edge_binomials(&complete_bipartite(2, 2).unwrap());
        let a = variable_ideal(&[1, 2], 4).unwrap();
        for d in 0..=4 {
            let (u, v) = (strand(&j, d), strand(&a, d));
            let cap = u.intersect(&v, 1_000_000).unwrap();
            let sum = u.sum(&v).unwrap();
            assert_eq!(cap.rank() + sum.rank(), u.rank() + v.rank(), "degree {d}");
            assert!(u.contains(&cap) && v.contains(&cap));
        }
    }

    #[test]
    fn normal_forms_are_congruent() {
        let q = Rationals;
        let j = edge_binomials(&complete_bipartite(2, 1).unwrap());
        let basis = Arc::new(MonomialBasis::new(6, 3));
        let s = ideal_strand(&q, &j, basis.clone(), 1_000_000).unwrap();
        let quotient = QuotientStrand::new(s.clone());
        assert_eq!(quotient.dim(), 44);
        for mono in 0..basis.len() as u32 {
            // monomial minus its normal form lies in the ideal
            let nf = quotient.normal_form(mono);
            let mut pairs = vec![(mono, q.one())];
            pairs.extend(nf.iter().map(|(sidx, v)| (quotient.standard_monomials()[*sidx as usize], q.neg(v))));
            assert!(s.echelon().contains(sparse_from_pairs(&q, pairs)));
        }
    }

    #[test]
    fn guard_refuses_large_strands() {
        let j = edge_binomials(&complete_bipartite(2, 2).unwrap());
        let basis = Arc::new(MonomialBasis::new(8, 6));
        let err = ideal_strand(&P, &j, basis, 100).unwrap_err();
        assert!(matches!(err, Error::TooLarge { bound: 100, .. }));
    }
}
