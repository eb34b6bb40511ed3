use crate::algebra::{Field, Matrix};
use crate::code::{CodeMeta, LinearCode};
use crate::{Error, Result};

/// [n0, k0, n0−k0+1] Reed–Solomon code over GF(q) with a Vandermonde
/// generator evaluated at the first n0 field elements.
pub fn rs_mds(q: u64, n0: usize, k0: usize) -> Result<LinearCode> {
    rs_mds_over(&Field::from_order(q)?, n0, k0)
}

pub fn rs_mds_over(field: &Field, n0: usize, k0: usize) -> Result<LinearCode> {
    if k0 == 0 || k0 > n0 {
        return Err(Error::Params(format!("need 1 ≤ k0 ≤ n0, got [{n0},{k0}]")));
    }
    if n0 > field.q() as usize {
        return Err(Error::Params(format!("length {n0} exceeds field size {}", field.q())));
    }
    let mut g = Matrix::zeros(field, k0, n0);
    for j in 0..n0 {
        let a = j as u32;
        for i in 0..k0 {
            g.set(i, j, field.pow(a, i as u64));
        }
    }
    let meta = CodeMeta::new("mds").with("q", field.q()).with("n", n0).with("k", k0).with("family", "reed-solomon");
    LinearCode::from_generator(g, meta)
}

/// An [n0, k0] MDS code, using the identity, single-parity or repetition
/// code when those apply (any field) and Reed–Solomon otherwise.
pub fn mds_code(field: &Field, n0: usize, k0: usize) -> Result<LinearCode> {
    if k0 == 0 || k0 > n0 {
        return Err(Error::Params(format!("need 1 ≤ k0 ≤ n0, got [{n0},{k0}]")));
    }
    let family = if k0 == n0 {
        "identity"
    } else if k0 + 1 == n0 {
        "single-parity"
    } else if k0 == 1 {
        "repetition"
    } else {
        return rs_mds_over(field, n0, k0);
    };
    let mut g = Matrix::zeros(field, k0, n0);
    for i in 0..k0 {
        g.set(i, i, 1);
        if n0 > k0 {
            for j in k0..n0 {
                g.set(i, j, 1);
            }
        }
    }
    let meta = CodeMeta::new("mds").with("q", field.q()).with("n", n0).with("k", k0).with("family", family);
    LinearCode::from_generator(g, meta)
}
