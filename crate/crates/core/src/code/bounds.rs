use num_rational::Ratio;
use serde::Serialize;

use crate::{Error, Result};

pub type Rational = Ratio<i64>;

/// Distance and rate upper bounds for codes with (r, ℓ)-cooperative locality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub ell: usize,
    /// `n − k + 1 − ℓ⌊(k−ℓ)/r⌋`
    pub dmin_bound_general: i64,
    /// `n − k + 1 − ℓ(⌈k/r⌉ − 1)`, only when r ≥ ℓ.
    pub dmin_bound_r_ge_ell: Option<i64>,
    /// `r/(r+ℓ) + ℓ²/(rn)`
    pub rate_bound_general: Rational,
    /// `r/(r+ℓ)`, only when r ≥ ℓ.
    pub rate_bound_r_ge_ell: Option<Rational>,
    /// Alphabet-dependent bound on k for a given distance.
    pub alphabet_bound_k: Option<i64>,
    /// The alphabet bound replaces A_q by its Singleton upper bound, so it is
    /// weaker than the exact expression.
    pub alphabet_bound_relaxed: bool,
}

/// Evaluates the distance and rate bounds for parameters (n, k, r, ℓ).
pub fn dmin_bound(n: usize, k: usize, r: usize, ell: usize) -> Result<BoundReport> {
    if k == 0 || k > n || r == 0 || ell == 0 {
        return Err(Error::Params(format!("need 0 < k ≤ n, r ≥ 1, ℓ ≥ 1; got n={n} k={k} r={r} ℓ={ell}")));
    }
    let (ni, ki, ri, li) = (n as i64, k as i64, r as i64, ell as i64);
    let general = ni - ki + 1 - li * (ki - li).div_euclid(ri);
    let r_ge = (r >= ell).then(|| ni - ki + 1 - li * ((ki + ri - 1) / ri - 1));
    let rate_general = Rational::new(ri, ri + li) + Rational::new(li * li, ri * ni);
    let rate_r_ge = (r >= ell).then(|| Rational::new(ri, ri + li));
    Ok(BoundReport {
        n,
        k,
        r,
        ell,
        dmin_bound_general: general,
        dmin_bound_r_ge_ell: r_ge,
        rate_bound_general: rate_general,
        rate_bound_r_ge_ell: rate_r_ge,
        alphabet_bound_k: None,
        alphabet_bound_relaxed: true,
    })
}

/// `min_t [ r t + log_q A_q(n − t(r+ℓ), d) ]` over
/// `0 ≤ t ≤ min(⌊n/(r+ℓ)⌋, ⌊(k−1)/r⌋)`, with `log_q A_q(n′, d) ≤ max(0, n′−d+1)`.
pub fn alphabet_bound_k(n: usize, k: usize, r: usize, ell: usize, d: usize) -> i64 {
    let t_max = (n / (r + ell)).min(k.saturating_sub(1) / r);
    (0..=t_max)
        .map(|t| {
            let rest = (n - t * (r + ell)) as i64;
            (r * t) as i64 + (rest - d as i64 + 1).max(0)
        })
        .min()
        .expect("t = 0 is always in range")
}

impl BoundReport {
    pub fn with_alphabet(mut self, d: usize) -> BoundReport {
        self.alphabet_bound_k = Some(alphabet_bound_k(self.n, self.k, self.r, self.ell, d));
        self
    }

    /// Bound violations for a code of the report's (n, k) with distance `d`.
    pub fn violations(&self, d: usize) -> Vec<String> {
        let mut v = Vec::new();
        let d = d as i64;
        if d > self.dmin_bound_general {
            v.push(format!("d_min {d} exceeds general bound {}", self.dmin_bound_general));
        }
        if let Some(b) = self.dmin_bound_r_ge_ell {
            if d > b {
                v.push(format!("d_min {d} exceeds r ≥ ℓ bound {b}"));
            }
        }
        let rate = Rational::new(self.k as i64, self.n as i64);
        if rate > self.rate_bound_general {
            v.push(format!("rate {rate} exceeds {}", self.rate_bound_general));
        }
        if let Some(b) = self.rate_bound_r_ge_ell {
            if rate > b {
                v.push(format!("rate {rate} exceeds {b}"));
            }
        }
        if let Some(kb) = self.alphabet_bound_k {
            if self.k as i64 > kb {
                v.push(format!("k {} exceeds alphabet bound {kb}", self.k));
            }
        }
        v
    }
}
