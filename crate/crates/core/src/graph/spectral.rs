use serde::Serialize;

use super::types::Graph;
use crate::{Error, Result};

pub const MAX_SPECTRAL_VERTICES: usize = 512;
pub const SPECTRAL_TOLERANCE: f64 = 1e-9;
const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralData {
    pub eigen_top: f64,
    /// max(λ₂, |λ_N|)
    pub lambda: f64,
    /// λ₂ alone.
    pub second: f64,
    pub tolerance: f64,
    /// Adjacency eigenvalues in descending order.
    pub spectrum: Vec<f64>,
}

/// Eigenvalues of a symmetric matrix (row-major, `n × n`) by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    let idx = |i: usize, j: usize| i * n + j;
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[idx(i, j)].powi(2)).sum();
        if off.sqrt() <= 1e-14 * scale {
            let mut ev: Vec<f64> = (0..n).map(|i| a[idx(i, i)]).collect();
            ev.sort_by(|x, y| y.total_cmp(x));
            return Ok(ev);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[idx(k, p)], a[idx(k, q)]);
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[idx(p, k)], a[idx(q, k)]);
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(Error::NoConvergence)
}

pub fn lambda2(g: &Graph) -> Result<SpectralData> {
    let n = g.vertex_count();
    if n == 0 || n > MAX_SPECTRAL_VERTICES {
        return Err(Error::Params(format!("spectral analysis needs 1 ≤ N ≤ {MAX_SPECTRAL_VERTICES}, got {n}")));
    }
    let mut a = vec![0.0; n * n];
    for &(u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    let spectrum = symmetric_eigenvalues(a, n)?;
    let eigen_top = spectrum[0];
    let second = if n == 1 { 0.0 } else { spectrum[1] };
    let lambda = if n == 1 { 0.0 } else { second.max(spectrum[n - 1].abs()) };
    Ok(SpectralData { eigen_top, lambda, second, tolerance: SPECTRAL_TOLERANCE, spectrum })
}
