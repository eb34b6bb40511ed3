use serde::Serialize;

use super::mds::mds_code;
use crate::algebra::{Field, Matrix};
use crate::code::{min_distance, CodeMeta, LinearCode, Rational};
use crate::{Error, Parallelism, Result};

/// Block-diagonal code with `blocks` copies of `local`; each block is a local group.
pub fn partition_from_local(local: &LinearCode, blocks: usize) -> Result<LinearCode> {
    if blocks == 0 {
        return Err(Error::Params("at least one block required".into()));
    }
    let (n0, k0) = (local.n(), local.k());
    let f = local.field();
    let mut g = Matrix::zeros(f, k0 * blocks, n0 * blocks);
    for b in 0..blocks {
        for i in 0..k0 {
            for j in 0..n0 {
                g.set(b * k0 + i, b * n0 + j, local.generator().get(i, j));
            }
        }
    }
    let groups: Vec<Vec<usize>> = (0..blocks).map(|b| (b * n0..(b + 1) * n0).collect()).collect();
    let meta = CodeMeta::new("partition")
        .with("q", f.q())
        .with("blocks", blocks)
        .with("local_kind", local.meta.kind.clone())
        .with("local_n", n0)
        .with("local_k", k0);
    LinearCode::from_generator(g, meta)?.with_groups(groups)
}

/// Partition code for (r, ℓ): k information symbols in kℓ/r groups of r/ℓ,
/// each group encoded by `local` (default: an [r/ℓ+ℓ, r/ℓ] MDS code).
pub fn partition_code(field: &Field, k: usize, r: usize, ell: usize, local: Option<&LinearCode>) -> Result<LinearCode> {
    if ell == 0 || r == 0 || !r.is_multiple_of(ell) {
        return Err(Error::Params(format!("ℓ = {ell} must divide r = {r}")));
    }
    let s = r / ell;
    if k == 0 || !k.is_multiple_of(s) {
        return Err(Error::Params(format!("r/ℓ = {s} must divide k = {k}")));
    }
    let owned;
    let local = match local {
        Some(l) => {
            if l.k() != s {
                return Err(Error::Params(format!("local code dimension {} differs from r/ℓ = {s}", l.k())));
            }
            let d = min_distance(l, Parallelism::Sequential)?;
            if d <= ell {
                return Err(Error::Params(format!("local code distance {d} must exceed ℓ = {ell}")));
            }
            l
        }
        None => {
            owned = mds_code(field, s + ell, s)?;
            &owned
        }
    };
    let mut code = partition_from_local(local, k / s)?;
    code.meta = code.meta.with("r", r).with("ell", ell);
    Ok(code)
}

/// Partition code with groups `[s + t, s]` MDS, repairing at most t
/// erasures per group.
pub fn partition_weakened(field: &Field, groups: usize, s: usize, t: usize) -> Result<LinearCode> {
    let local = mds_code(field, s + t, s)?;
    let mut code = partition_from_local(&local, groups)?;
    code.meta = code.meta.with("local_t", t);
    Ok(code)
}

/// Repair cost per local group: `cost[x-1]` symbols to repair x erasures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairCostProfile {
    pub cost: Vec<Rational>,
    /// Vertices of the upper concave envelope as (x, value).
    pub hull: Vec<(i64, Rational)>,
}

impl RepairCostProfile {
    pub fn new(cost: Vec<Rational>) -> Result<RepairCostProfile> {
        if cost.is_empty() {
            return Err(Error::Params("empty cost profile".into()));
        }
        let pts: Vec<(i64, Rational)> = cost.iter().enumerate().map(|(i, &c)| (i as i64 + 1, c)).collect();
        let mut hull: Vec<(i64, Rational)> = Vec::new();
        for p in pts {
            // pop while the last vertex lies on or below the chord to p
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (b.1 - a.1) * Rational::from(p.0 - a.0) - (p.1 - a.1) * Rational::from(b.0 - a.0);
                if cross <= Rational::from(0) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Ok(RepairCostProfile { cost, hull })
    }

    pub fn from_integers(cost: &[i64]) -> Result<RepairCostProfile> {
        RepairCostProfile::new(cost.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn ell(&self) -> usize {
        self.cost.len()
    }

    /// Envelope value at x ∈ [1, ℓ].
    pub fn envelope(&self, x: Rational) -> Option<Rational> {
        let lo = Rational::from(1);
        let hi = Rational::from(self.ell() as i64);
        if x < lo || x > hi {
            return None;
        }
        for w in self.hull.windows(2) {
            let (a, b) = (w[0], w[1]);
            if x <= Rational::from(b.0) {
                let span = Rational::from(b.0 - a.0);
                return Some(a.1 + (b.1 - a.1) * (x - Rational::from(a.0)) / span);
            }
        }
        Some(self.hull[self.hull.len() - 1].1)
    }
}

/// Block count p among `candidates` minimising `p·r*(ℓ/p)`; ties go to the
/// smaller p. Candidates with ℓ/p outside [1, ℓ] are skipped.
pub fn envelope_optimize(profile: &RepairCostProfile, candidates: &[usize], ell: usize) -> Result<(usize, Rational)> {
    candidates
        .iter()
        .filter(|&&p| p > 0)
        .filter_map(|&p| {
            let x = Rational::new(ell as i64, p as i64);
            profile.envelope(x).map(|v| (p, v * Rational::from(p as i64)))
        })
        .fold(None, |best: Option<(usize, Rational)>, cur| match best {
            Some(b) if b.1 < cur.1 || (b.1 == cur.1 && b.0 <= cur.0) => Some(b),
            _ => Some(cur),
        })
        .ok_or_else(|| Error::Params("no admissible block count".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{locality_oracle, LocalityOptions};

    #[test]
    fn default_partition_shape() {
        let f = Field::from_order(5).unwrap();
        let c = partition_code(&f, 4, 4, 2, None).unwrap();
        assert_eq!((c.n(), c.k()), (8, 4));
        assert_eq!(c.rate(), Rational::new(4, 4 + 4));
        let cert = locality_oracle(&c, 2, LocalityOptions::default()).unwrap();
        assert_eq!(cert.r_achieved, Some(4));
        assert!(partition_code(&f, 4, 3, 2, None).is_err());
        assert!(partition_code(&f, 3, 4, 2, None).is_err());
    }

    #[test]
    fn envelope_examples() {
        let had = RepairCostProfile::from_integers(&[2, 3, 4]).unwrap();
        assert_eq!(had.envelope(Rational::new(3, 2)), Some(Rational::new(5, 2)));
        assert_eq!(envelope_optimize(&had, &[2], 3).unwrap(), (2, Rational::from(5)));
        let flat = RepairCostProfile::from_integers(&[3, 3, 3]).unwrap();
        assert_eq!(envelope_optimize(&flat, &[2], 3).unwrap().1, Rational::from(6));
        assert!(envelope_optimize(&flat, &[], 3).is_err());
        // a dip at x = 2 is filled in by the envelope
        let dip = RepairCostProfile::from_integers(&[2, 2, 4]).unwrap();
        assert_eq!(dip.envelope(Rational::from(2)), Some(Rational::from(3)));
    }
}
