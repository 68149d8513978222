//! Sparse row echelon forms over a [`Field`].

use super::field::Field;

/// Sorted by column, no explicit zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

const NO_PIVOT: u32 = u32::MAX;

/// Row space of a set of sparse vectors, kept in echelon form: every row has
/// leading coefficient 1 at a column no other row leads at.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Echelon<F> {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
            reduced: true,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_PIVOT
    }

    /// The row leading at `col`, if any.
    pub fn pivot_row(&self, col: u32) -> Option<&SparseVec<F::Elem>> {
        match self.pivot_row[col as usize] {
            NO_PIVOT => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    /// `v - c * row`, where `v[..start]` is known not to meet `row`.
    fn axpy(&self, v: &SparseVec<F::Elem>, start: usize, c: &F::Elem, row: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(v.len() + row.len());
        out.extend_from_slice(&v[..start]);
        let (mut a, mut b) = (start, 0);
        while a < v.len() || b < row.len() {
            let ca = v.get(a).map_or(u32::MAX, |e| e.0);
            let cb = row.get(b).map_or(u32::MAX, |e| e.0);
            if ca < cb {
                out.push(v[a].clone());
                a += 1;
            } else if cb < ca {
                out.push((cb, f.neg(&f.mul(c, &row[b].1))));
                b += 1;
            } else {
                let val = f.sub(&v[a].1, &f.mul(c, &row[b].1));
                if !f.is_zero(&val) {
                    out.push((ca, val));
                }
                a += 1;
                b += 1;
            }
        }
        out
    }

    /// Reduces `v` against the pivots; the result has no entry in a pivot column
    /// that was reachable, so it is zero iff `v` lies in the row space.
    pub fn reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut k = 0;
        while k < v.len() {
            let col = v[k].0;
            match self.pivot_row[col as usize] {
                NO_PIVOT => k += 1,
                r => {
                    let c = v[k].1.clone();
                    v = self.axpy(&v, k, &c, &self.rows[r as usize]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let mut v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let lead_inv = self.field.inv(&v[0].1);
        for e in v.iter_mut() {
            e.1 = self.field.mul(&e.1, &lead_inv);
        }
        let col = v[0].0;
        self.pivot_row[col as usize] = self.rows.len() as u32;
        self.rows.push(v);
        self.reduced = self.rows.len() == 1 && self.reduced;
        true
    }

    /// Back-substitutes so every row is zero in every other pivot column.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let lead = row[0].clone();
            let tail = self.reduce(row[1..].to_vec());
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push(lead);
            full.extend(tail);
            self.rows[r] = full;
        }
        self.reduced = true;
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }
}

/// Collects `(col, value)` pairs into a sparse vector, summing repeats.
pub fn sparse_from_pairs<F: Field>(field: &F, mut pairs: Vec<(u32, F::Elem)>) -> SparseVec<F::Elem> {
    pairs.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(pairs.len());
    for (c, v) in pairs {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = field.add(&last.1, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !field.is_zero(&e.1));
    out
}
