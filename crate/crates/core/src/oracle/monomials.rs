//! Degree-d monomial bases in the variables `x_1..x_N, y_1..y_N`.
//!
//! Variable `x_i` has index `i - 1`, `y_i` has index `N + i - 1`. Bases are
//! listed in descending lexicographic order of exponent vectors, so the
//! first column of a row is its lex-leading monomial.

use std::collections::HashMap;

use crate::ideals::Generator;

pub type Exponents = Box<[u8]>;

#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, u32>,
}

fn fill(nvars: usize, left: usize, var: usize, cur: &mut Vec<u8>, out: &mut Vec<Exponents>) {
    if var + 1 == nvars {
        cur.push(left as u8);
        out.push(cur.clone().into_boxed_slice());
        cur.pop();
        return;
    }
    for e in (0..=left).rev() {
        cur.push(e as u8);
        fill(nvars, left - e, var + 1, cur, out);
        cur.pop();
    }
}

/// `C(degree + nvars - 1, nvars - 1)` without building anything.
pub fn monomial_count(nvars: usize, degree: usize) -> u128 {
    if nvars == 0 {
        return u128::from(degree == 0);
    }
    let (n, k) = ((degree + nvars - 1) as u128, (nvars - 1).min(degree) as u128);
    (0..k).fold(1u128, |acc, t| acc.saturating_mul(n - t) / (t + 1))
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> MonomialBasis {
        assert!(degree < 256, "exponents are stored as u8");
        let mut monomials = Vec::new();
        if nvars > 0 {
            fill(nvars, degree, 0, &mut Vec::with_capacity(nvars), &mut monomials);
        } else if degree == 0 {
            monomials.push(Vec::new().into_boxed_slice());
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k as u32))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn index_of(&self, e: &[u8]) -> Option<u32> {
        self.index.get(e).copied()
    }
}

/// A generator as `(coefficient, exponent vector)` terms.
pub fn generator_terms(g: &Generator, num_vertices: usize) -> Vec<(i64, Vec<u8>)> {
    let nv = 2 * num_vertices;
    let x = |i: usize| i - 1;
    let y = |i: usize| num_vertices + i - 1;
    let mono = |vars: &[usize]| {
        let mut e = vec![0u8; nv];
        for &v in vars {
            e[v] += 1;
        }
        e
    };
    match *g {
        Generator::X(i) => vec![(1, mono(&[x(i)]))],
        Generator::Y(i) => vec![(1, mono(&[y(i)]))],
        Generator::Minor(i, j) => vec![(1, mono(&[x(i), y(j)])), (-1, mono(&[x(j), y(i)]))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let b = MonomialBasis::new(3, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(&*b.monomials()[0], &[2, 0, 0]);
        assert_eq!(&*b.monomials()[5], &[0, 0, 2]);
        let mut sorted = b.monomials().to_vec();
        sorted.sort();
        sorted.reverse();
        assert_eq!(sorted, b.monomials());
        assert_eq!(b.index_of(&[0, 1, 1]), Some(4));
        for (nv, d) in [(8, 3), (10, 6), (1, 4), (4, 0)] {
            assert_eq!(MonomialBasis::new(nv, d).len() as u128, monomial_count(nv, d));
        }
        assert_eq!(monomial_count(10, 7), 11440);
        assert_eq!(MonomialBasis::new(0, 0).len(), 1);
    }

    #[test]
    fn minor_terms() {
        let t = generator_terms(&Generator::Minor(1, 2), 2);
        assert_eq!(t, vec![(1, vec![1, 0, 0, 1]), (-1, vec![0, 1, 1, 0])]);
        assert_eq!(generator_terms(&Generator::Y(2), 2), vec![(1, vec![0, 0, 0, 1])]);
    }
}
