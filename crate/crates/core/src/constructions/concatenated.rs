use serde::{Deserialize, Serialize};

use super::mds::mds_code;
use crate::algebra::{is_prime, Field, Matrix};
use crate::code::{CodeMeta, LinearCode, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcatenationParams {
    /// Inner code is [r/ℓ + x, r/ℓ, x + 1] MDS.
    pub x: usize,
    /// Number of outer local groups.
    pub outer_groups: usize,
}

impl ConcatenationParams {
    pub fn new(x: usize) -> ConcatenationParams {
        ConcatenationParams { x, outer_groups: 1 }
    }
}

/// `(x+1)/(x+1+⌊ℓ/(x+1)⌋) · r/(r+xℓ)`
pub fn concatenated_rate(r: usize, ell: usize, x: usize) -> Rational {
    let b = ell / (x + 1);
    let (r, ell, x, b) = (r as i64, ell as i64, x as i64, b as i64);
    Rational::new(x + 1, x + 1 + b) * Rational::new(r, r + x * ell)
}

fn check_params(q: u64, r: usize, ell: usize, x: usize) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::Params(format!("concatenated codes need a prime q, got {q}")));
    }
    if ell == 0 || r == 0 || !r.is_multiple_of(ell) {
        return Err(Error::Params(format!("ℓ = {ell} must divide r = {r}")));
    }
    if ell % 2 == 1 {
        if ell != 3 {
            return Err(Error::Params(format!("odd ℓ = {ell} is only supported for ℓ = 3")));
        }
        if x != 1 {
            return Err(Error::Params("ℓ = 3 uses x = 1".into()));
        }
    } else if x == 0 || x >= ell {
        return Err(Error::Params(format!("x must satisfy 1 ≤ x ≤ ℓ−1, got {x}")));
    }
    Ok(())
}

/// Inner [r/ℓ+x, r/ℓ, x+1] MDS code over GF(q) under an outer partition-style
/// code over GF(q^{r/ℓ}) whose groups hold x+1 data super symbols and
/// ⌊ℓ/(x+1)⌋ parity super symbols.
///
/// A super symbol maps to inner messages through its base-q digits.
pub fn concatenated_code(q: u64, r: usize, ell: usize, params: ConcatenationParams) -> Result<LinearCode> {
    let x = params.x;
    check_params(q, r, ell, x)?;
    if params.outer_groups == 0 {
        return Err(Error::Params("at least one outer group required".into()));
    }
    let s = r / ell;
    let base = Field::new(q, 1)?;
    let ext = Field::new(q, s as u32)?;
    let inner = mds_code(&base, s + x, s)?;
    let b = ell / (x + 1);
    let outer_local = mds_code(&ext, x + 1 + b, x + 1)?;
    let groups = params.outer_groups;
    let (n_loc, k_loc) = (x + 1 + b, x + 1);
    let (n_out, k_out) = (groups * n_loc, groups * k_loc);
    let n_in = s + x;
    let n = n_out * n_in;
    let k = k_out * s;

    let mut g = Matrix::zeros(&base, k, n);
    for grp in 0..groups {
        for i in 0..k_loc {
            for d in 0..s {
                let row = (grp * k_loc + i) * s + d;
                let unit = ext.pow(q as u32, d as u64);
                for j in 0..n_loc {
                    let y = ext.mul(unit, outer_local.generator().get(i, j));
                    let digits = ext.to_digits(y);
                    let sym = inner.generator().left_mul(&digits)?;
                    let col0 = (grp * n_loc + j) * n_in;
                    for (t, &v) in sym.iter().enumerate() {
                        g.set(row, col0 + t, v);
                    }
                }
            }
        }
    }
    let inner_groups: Vec<Vec<usize>> = (0..n_out).map(|j| (j * n_in..(j + 1) * n_in).collect()).collect();
    let meta = CodeMeta::new("concatenated")
        .with("q", q)
        .with("r", r)
        .with("ell", ell)
        .with("x", x)
        .with("outer_groups", groups)
        .with("outer_parities", b)
        .with("r_tilde", x + 1);
    LinearCode::from_generator(g, meta)?.with_groups(inner_groups)
}
