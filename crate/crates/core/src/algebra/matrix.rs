use std::fmt;

use super::Field;
use crate::{Error, Result};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for &v in &data {
            field.check(v)?;
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from rows. An empty row list gives a 0x`cols` matrix.
    pub fn from_rows(field: &Field, rows: &[Vec<u32>], cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend_from_slice(r);
        }
        Matrix::from_vec(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &a) in v.iter().enumerate() {
            f.check(a)?;
            if a == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, g));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn right_mul(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + jj] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols, data })
    }

    /// `row[dst] -= factor * row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, factor: u32) {
        let c = self.cols;
        let f = self.field.clone();
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * c);
            (&mut lo[dst * c..(dst + 1) * c], &hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * c);
            (&mut hi[..c], &lo[src * c..(src + 1) * c])
        };
        if factor == 1 {
            for (x, &y) in a.iter_mut().zip(b) {
                *x = f.sub(*x, y);
            }
        } else {
            for (x, &y) in a.iter_mut().zip(b) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, col));
            if inv != 1 {
                for j in 0..m.cols {
                    let v = m.get(r, j);
                    m.set(r, j, f.mul(inv, v));
                }
            }
            for i in 0..m.rows {
                let factor = m.get(i, col);
                if i != r && factor != 0 {
                    m.sub_row(i, r, factor);
                }
            }
            pivots.push(col);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : M xᵀ = 0}` as rows.
    pub fn null_space(&self) -> Matrix {
        let Rref { matrix: r, rank, pivots } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            out.set(b, fc, 1);
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(b, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Text form: a `q rows cols` header line followed by one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.q(), self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Format("empty matrix text".into()))?;
        let nums: Vec<u64> = parse_numbers(header)?;
        let [q, rows, cols] = nums[..] else {
            return Err(Error::Format(format!("bad matrix header {header:?}")));
        };
        let field = Field::from_order(q)?;
        let mut data = Vec::new();
        for _ in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Format("missing matrix row".into()))?;
            let row = parse_numbers(line)?;
            if row.len() as u64 != cols {
                return Err(Error::Format(format!("row {line:?} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row.into_iter().map(|v| v as u32));
        }
        if lines.next().is_some() {
            return Err(Error::Format("trailing data after matrix rows".into()));
        }
        Matrix::from_vec(&field, rows as usize, cols as usize, data)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| Error::Format(format!("not a number: {t:?}"))))
        .collect()
}
