use crate::algebra::{Field, Matrix};
use crate::code::{CodeMeta, LinearCode};
use crate::{Error, Result};

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let mut out = Matrix::zeros(f, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x == 0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, f.mul(x, b.get(k, l)));
                }
            }
        }
    }
    out
}

/// ℓ-dimensional product of single-parity codes [s+1, s] with s = r/ℓ.
///
/// Symbol index is the mixed-radix number of its array coordinates, first
/// axis most significant; position s on an axis is that axis' parity.
pub fn product_code(field: &Field, r: usize, ell: usize) -> Result<LinearCode> {
    if ell == 0 || r == 0 || !r.is_multiple_of(ell) {
        return Err(Error::Params(format!("ℓ = {ell} must divide r = {r}")));
    }
    let s = r / ell;
    let side = s + 1;
    let n = side.checked_pow(ell as u32).filter(|&n| n <= 1 << 16).ok_or_else(|| Error::Params("product code too long".into()))?;
    let mut base = Matrix::zeros(field, s, side);
    for i in 0..s {
        base.set(i, i, 1);
        base.set(i, s, 1);
    }
    let mut g = base.clone();
    for _ in 1..ell {
        g = kron(&g, &base);
    }
    let mut groups = Vec::new();
    for axis in 0..ell {
        let stride = side.pow((ell - 1 - axis) as u32);
        for start in 0..n {
            if (start / stride).is_multiple_of(side) {
                groups.push((0..side).map(|t| start + t * stride).collect());
            }
        }
    }
    let meta = CodeMeta::new("product").with("q", field.q()).with("r", r).with("ell", ell).with("side", s);
    LinearCode::from_generator(g, meta)?.with_groups(groups)
}
