//! Graded Betti numbers as Koszul homology.
//!
//! `beta_{i,j}(S/I)` is the homology at `Lambda^i(V) (x) (S/I)_j` of
//!
//! ```text
//! Lambda^{i+1} (x) (S/I)_{j-1}  ->  Lambda^i (x) (S/I)_j  ->  Lambda^{i-1} (x) (S/I)_{j+1}
//! ```
//!
//! where `V` has one basis vector per variable and the differential sends
//! `e_K (x) u` to `sum_{k in K} +-e_{K - k} (x) x_k u`. Only the strand of
//! total degree `i + j` is ever materialized.

use std::sync::Arc;

use super::echelon::{Echelon, SparseVec};
use super::field::Field;
use super::monomials::MonomialBasis;
use super::strand::{guard, ideal_strand, QuotientStrand};
use crate::error::Result;
use crate::exec::Execution;
use crate::ideals::BinomialIdeal;
use crate::series::BettiTable;

fn binomial_table(n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 2]; n + 2];
    for a in 0..=n + 1 {
        t[a][0] = 1;
        for b in 1..=a {
            t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
        }
    }
    t
}

/// Subsets of `0..n` of size `k` as bitmasks, in colexicographic order.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u64 = (1 << k) - 1;
    while s < 1 << n {
        out.push(s as u32);
        // Gosper's hack: next integer with the same popcount
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

pub struct KoszulComplex<F: Field> {
    field: F,
    nvars: usize,
    binom: Vec<Vec<u64>>,
    /// `quotients[j]` models `(S/I)_j`.
    quotients: Vec<QuotientStrand<F>>,
    /// `times_var[j][s][k]`: normal form of `x_k` times standard monomial `s`
    /// of degree `j`, in the standard basis of degree `j + 1`.
    times_var: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
    row_bound: usize,
}

impl<F: Field> KoszulComplex<F> {
    /// Prepares the quotient strands `(S/I)_0 ..= (S/I)_{max_strand + 1}`.
    pub fn new(
        field: &F,
        ideal: &BinomialIdeal,
        max_strand: usize,
        row_bound: usize,
        exec: Execution,
        basis: &(dyn Fn(usize) -> Arc<MonomialBasis> + Sync),
    ) -> Result<KoszulComplex<F>> {
        let nvars = ideal.num_variables();
        assert!(nvars <= 31, "exterior basis is indexed by u32 bitmasks");
        let degrees: Vec<usize> = (0..=max_strand + 1).collect();
        let quotients = exec.try_map(&degrees, |&d| {
            ideal_strand(field, ideal, basis(d), row_bound).map(QuotientStrand::new)
        })?;
        let times_var = exec.map(&degrees[..=max_strand], |&j| {
            let (src, dst) = (&quotients[j], &quotients[j + 1]);
            let mut scratch = vec![0u8; nvars];
            src.standard_monomials()
                .iter()
                .map(|&mono| {
                    let e = &src.basis().monomials()[mono as usize];
                    (0..nvars)
                        .map(|k| {
                            scratch.copy_from_slice(e);
                            scratch[k] += 1;
                            let target = dst.basis().index_of(&scratch).expect("degree j+1 monomial");
                            dst.normal_form(target)
                        })
                        .collect()
                })
                .collect()
        });
        Ok(KoszulComplex {
            field: field.clone(),
            nvars,
            binom: binomial_table(nvars),
            quotients,
            times_var,
            row_bound,
        })
    }

    pub fn max_strand(&self) -> usize {
        self.quotients.len() - 2
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `dim (S/I)_j`.
    pub fn quotient_dim(&self, j: usize) -> usize {
        self.quotients[j].dim()
    }

    fn exterior_dim(&self, i: usize) -> u64 {
        if i > self.nvars {
            0
        } else {
            self.binom[self.nvars][i]
        }
    }

    /// `dim Lambda^i (x) (S/I)_j`.
    pub fn chain_dim(&self, i: usize, j: usize) -> u128 {
        self.exterior_dim(i) as u128 * self.quotient_dim(j) as u128
    }

    fn colex_rank(&self, mask: u32) -> u32 {
        let mut rank = 0;
        let mut bits = mask;
        let mut k = 1;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            rank += self.binom[b][k];
            k += 1;
            bits &= bits - 1;
        }
        rank as u32
    }

    /// Rank of `Lambda^i (x) (S/I)_j -> Lambda^{i-1} (x) (S/I)_{j+1}`.
    pub fn differential_rank(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i > self.nvars || j > self.max_strand() {
            return Ok(0);
        }
        let rows = self.chain_dim(i, j);
        guard(|| format!("Koszul differential at (i={i}, j={j})"), rows, self.row_bound)?;
        let q_next = self.quotient_dim(j + 1) as u32;
        let ncols = self.exterior_dim(i - 1) as usize * q_next as usize;
        guard(|| format!("Koszul target at (i={}, j={})", i - 1, j + 1), ncols as u128, self.row_bound)?;
        if rows == 0 || ncols == 0 {
            return Ok(0);
        }
        let f = &self.field;
        let mut space = Echelon::new(f.clone(), ncols);
        for mask in subsets(self.nvars, i) {
            for products in &self.times_var[j] {
                let mut row: Vec<(u32, F::Elem)> = Vec::new();
                let mut below = 0;
                let mut bits = mask;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    let block = self.colex_rank(mask ^ (1 << k)) * q_next;
                    for (t, v) in &products[k] {
                        let v = if below % 2 == 0 { v.clone() } else { f.neg(v) };
                        row.push((block + t, v));
                    }
                    below += 1;
                    bits &= bits - 1;
                }
                row.sort_by_key(|e| e.0);
                space.insert(row);
            }
        }
        Ok(space.rank())
    }

    /// `beta_{i,j}` from the two adjacent differential ranks.
    pub fn betti(&self, i: usize, j: usize) -> Result<u64> {
        if i > self.nvars || j > self.max_strand() {
            return Ok(0);
        }
        let outgoing = self.differential_rank(i, j)?;
        let incoming = if j == 0 { 0 } else { self.differential_rank(i + 1, j - 1)? };
        Ok((self.chain_dim(i, j) - outgoing as u128 - incoming as u128) as u64)
    }

    /// All `beta_{i,j}` with `j <= max_strand`; the differential ranks are
    /// independent and run under `exec`.
    pub fn betti_table(&self, exec: Execution) -> Result<BettiTable> {
        let js = self.max_strand();
        let jobs: Vec<(usize, usize)> = (0..=js)
            .flat_map(|j| (1..=self.nvars).map(move |i| (i, j)))
            .collect();
        let ranks = exec.try_map(&jobs, |&(i, j)| self.differential_rank(i, j))?;
        let rank = |i: usize, j: usize| -> u128 {
            jobs.iter()
                .position(|&job| job == (i, j))
                .map_or(0, |p| ranks[p] as u128)
        };
        let mut table = BettiTable::new(self.nvars);
        for j in 0..=js {
            for i in 0..=self.nvars {
                let incoming = if j == 0 { 0 } else { rank(i + 1, j - 1) };
                let b = self.chain_dim(i, j) - rank(i, j) - incoming;
                table.set(i, j, b as u64);
            }
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_enumerates_colex() {
        let s = subsets(4, 2);
        assert_eq!(s, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(subsets(5, 0), vec![0]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(subsets(10, 4).len(), 210);
    }

    #[test]
    fn colex_ranks_are_positions() {
        use crate::oracle::field::PrimeField;
        let ideal = BinomialIdeal::zero(3);
        let f = PrimeField::new(7);
        let k = KoszulComplex::new(&f, &ideal, 0, 1000, Execution::Sequential, &|d| {
            Arc::new(MonomialBasis::new(6, d))
        })
        .unwrap();
        for size in 0..=6 {
            for (pos, mask) in subsets(6, size).into_iter().enumerate() {
                assert_eq!(k.colex_rank(mask) as usize, pos);
            }
        }
    }
}
