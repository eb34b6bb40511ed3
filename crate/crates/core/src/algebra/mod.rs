//! Finite fields GF(p^m) and dense linear algebra over them.

mod field;
mod matrix;

pub use field::Field;
pub(crate) use field::is_prime;
pub use matrix::{Matrix, Rref};

use crate::{Error, Result};

/// Incrementally built echelon basis of a subspace of GF(q)^len.
///
/// Each stored row is monic at its pivot and zero at every earlier pivot, so
/// reduction is a single pass in insertion order.
#[derive(Clone, Debug)]
pub struct VectorBasis {
    field: Field,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl VectorBasis {
    pub fn new(field: &Field, len: usize) -> VectorBasis {
        VectorBasis { field: field.clone(), len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[p]);
        for x in w.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Fills the `None` positions of `partial` so that `H cᵀ = 0`.
///
/// Fails with [`Error::Uncorrectable`] when the erased columns of `H` are
/// dependent and with [`Error::Inconsistent`] when no completion exists.
pub fn solve_erasures(h: &Matrix, partial: &[Option<u32>]) -> Result<Vec<u32>> {
    if partial.len() != h.cols() {
        return Err(Error::Dimension(format!("word of length {} for {} columns", partial.len(), h.cols())));
    }
    let f = h.field();
    let erased: Vec<usize> = (0..partial.len()).filter(|&i| partial[i].is_none()).collect();
    let mut syndrome = vec![0u32; h.rows()];
    for (j, v) in partial.iter().enumerate() {
        if let Some(v) = *v {
            f.check(v)?;
            if v == 0 {
                continue;
            }
            for (i, s) in syndrome.iter_mut().enumerate() {
                *s = f.add(*s, f.mul(h.get(i, j), v));
            }
        }
    }
    let e = erased.len();
    let mut aug = h.select_columns(&erased);
    let rhs: Vec<Vec<u32>> = syndrome.iter().map(|&s| vec![f.neg(s)]).collect();
    aug = aug.hstack(&Matrix::from_rows(f, &rhs, 1)?)?;
    let r = aug.rref();
    if r.pivots.contains(&e) {
        return Err(Error::Inconsistent);
    }
    if r.rank < e {
        return Err(Error::Uncorrectable);
    }
    let mut out: Vec<u32> = partial.iter().map(|v| v.unwrap_or(0)).collect();
    for (i, &pc) in r.pivots.iter().enumerate() {
        out[erased[pc]] = r.matrix.get(i, e);
    }
    Ok(out)
}
