use serde::Serialize;

use super::{min_distance, repair_set_check, CodeMeta, LinearCode};
use crate::algebra::Matrix;
use crate::{Error, Parallelism, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRound {
    /// The ℓ coordinates picked in this round.
    pub chosen: Vec<usize>,
    /// Repair set fixed in this round (the reduced set in a fallback round).
    pub repair_set: Vec<usize>,
    pub newly_fixed: Vec<usize>,
    pub a: usize,
    pub dim_before: usize,
    pub dim_after: usize,
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTrace {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub ell: usize,
    pub rounds: Vec<WitnessRound>,
    pub t: usize,
    pub fixed: Vec<usize>,
    /// Dimension of the final subcode.
    pub punctured_dim: usize,
    /// Minimum distance of the subcode with the fixed coordinates removed.
    pub dmin_punctured: Option<usize>,
    /// `n − |I_t| − dim + 1`
    pub singleton_rhs: i64,
    pub singleton_check: bool,
    /// `⌊(k−ℓ)/r⌋`
    pub t_lower_bound: i64,
    pub t_check: bool,
    /// Every non-fallback round lost at most `a_j − ℓ` dimensions.
    pub dimension_drop_check: bool,
    /// Every round had `a_j ≤ r + ℓ`.
    pub a_check: bool,
    /// `dim ≥ k − |I_t| + t′ℓ`, which gives `singleton_rhs ≤ n − k − t′ℓ + 1`;
    /// t′ counts the non-fallback rounds.
    pub dim_chain_check: bool,
    /// `n − k − t′ℓ + 1`
    pub theorem_rhs: i64,
    pub ended_by_fallback: bool,
}

impl WitnessTrace {
    pub fn all_checks(&self) -> bool {
        self.singleton_check && self.t_check && self.dimension_drop_check && self.a_check && self.dim_chain_check
    }
}

/// Basis of the subspace of `b`'s row space vanishing on `coords`.
fn restrict_zero(b: &Matrix, coords: &[usize]) -> Result<Matrix> {
    if b.rows() == 0 || coords.is_empty() {
        return Ok(b.clone());
    }
    let u = b.select_columns(coords).transpose().null_space();
    if u.rows() == 0 {
        return Ok(Matrix::zeros(b.field(), 0, b.cols()));
    }
    u.mul(b)
}

fn nonconstant_coords(b: &Matrix) -> Vec<usize> {
    (0..b.cols()).filter(|&j| (0..b.rows()).any(|i| b.get(i, j) != 0)).collect()
}

/// Runs the subcode construction behind the distance bound and checks each
/// inequality it relies on.
///
/// Subcodes are kept linear by fixing coordinates to zero. Coordinates are
/// chosen lowest-index first; if a round collapses the subcode to zero, the
/// lexicographically first maximal subset of the repair set that keeps it
/// nonzero is fixed instead.
pub fn subcode_witness<F>(code: &LinearCode, r: usize, ell: usize, repair_fn: F) -> Result<WitnessTrace>
where
    F: Fn(&[usize]) -> Vec<usize>,
{
    let (n, k) = (code.n(), code.k());
    if r == 0 || ell == 0 || ell >= n {
        return Err(Error::Params(format!("need r ≥ 1 and 1 ≤ ℓ < n; got r={r} ℓ={ell}")));
    }
    let mut basis = code.generator().clone();
    let mut fixed = vec![false; n];
    let mut rounds = Vec::new();
    let mut ended_by_fallback = false;

    while basis.rows() > ell {
        let chosen: Vec<usize> = nonconstant_coords(&basis).into_iter().take(ell).collect();
        let mut rset = repair_fn(&chosen);
        rset.sort_unstable();
        if rset.len() > r || !repair_set_check(code, &chosen, &rset).unwrap_or(false) {
            return Err(Error::InvalidRepairSet(chosen));
        }
        let dim_before = basis.rows();
        let mut both = rset.clone();
        both.extend_from_slice(&chosen);
        let next = restrict_zero(&basis, &both)?;
        if next.rows() > 0 {
            let mut newly: Vec<usize> = both.iter().copied().filter(|&i| !fixed[i]).collect();
            newly.sort_unstable();
            newly.dedup();
            for &i in &newly {
                fixed[i] = true;
            }
            rounds.push(WitnessRound {
                chosen,
                repair_set: rset,
                a: newly.len(),
                newly_fixed: newly,
                dim_before,
                dim_after: next.rows(),
                fallback: false,
            });
            basis = next;
            continue;
        }
        // the round would leave only the zero word
        let mut reduced: Vec<usize> = Vec::new();
        let mut cur = basis.clone();
        for &i in &rset {
            let trial = restrict_zero(&cur, &[i])?;
            if trial.rows() > 0 {
                reduced.push(i);
                cur = trial;
            }
        }
        let newly: Vec<usize> = reduced.iter().copied().filter(|&i| !fixed[i]).collect();
        for &i in &newly {
            fixed[i] = true;
        }
        rounds.push(WitnessRound {
            chosen,
            repair_set: reduced,
            a: newly.len(),
            newly_fixed: newly,
            dim_before,
            dim_after: cur.rows(),
            fallback: true,
        });
        basis = cur;
        ended_by_fallback = true;
        break;
    }

    let fixed_list: Vec<usize> = (0..n).filter(|&i| fixed[i]).collect();
    let keep: Vec<usize> = (0..n).filter(|&i| !fixed[i]).collect();
    let dim = basis.rows();
    let t = rounds.len();
    // a fallback round fixes no chosen coordinate, so it contributes no ℓ term
    let full_rounds = rounds.iter().filter(|w| !w.fallback).count();
    let dmin_punctured = if dim > 0 && !keep.is_empty() {
        let sub = LinearCode::from_generator(basis.select_columns(&keep), CodeMeta::new("witness-subcode"))?;
        Some(min_distance(&sub, Parallelism::Sequential)?)
    } else {
        None
    };
    let singleton_rhs = n as i64 - fixed_list.len() as i64 - dim as i64 + 1;
    let t_lower_bound = (k as i64 - ell as i64).div_euclid(r as i64);
    Ok(WitnessTrace {
        n,
        k,
        r,
        ell,
        t,
        singleton_check: dmin_punctured.is_some_and(|d| d as i64 <= singleton_rhs),
        dimension_drop_check: rounds
            .iter()
            .filter(|w| !w.fallback)
            .all(|w| w.dim_before - w.dim_after + ell <= w.a),
        a_check: rounds.iter().all(|w| w.a <= r + ell),
        dim_chain_check: dim as i64 >= k as i64 - fixed_list.len() as i64 + (full_rounds * ell) as i64,
        theorem_rhs: n as i64 - k as i64 - (full_rounds * ell) as i64 + 1,
        t_check: t as i64 >= t_lower_bound,
        t_lower_bound,
        rounds,
        fixed: fixed_list,
        punctured_dim: dim,
        dmin_punctured,
        singleton_rhs,
        ended_by_fallback,
    })
}
