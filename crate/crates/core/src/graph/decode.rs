use serde::Serialize;

use super::codes::{ConstraintCode, LocalConstraint, Side};
use crate::algebra::solve_erasures;
use crate::repair::{ErasedWord, RepairReport, RepairState};
use crate::{Error, Result};

fn unknown_positions(st: &RepairState, c: &LocalConstraint) -> Vec<usize> {
    (0..c.symbols.len()).filter(|&j| !st.known(c.symbols[j])).collect()
}

/// The erased positions can be solved from the rest of the constraint.
fn solvable(c: &LocalConstraint, positions: &[usize]) -> bool {
    !positions.is_empty() && positions.len() <= c.parity.rows() && c.parity.select_columns(positions).rank() == positions.len()
}

/// Fills the unknown symbols of `c`, reading `local_k` known symbols when
/// they suffice (already contacted or rebuilt ones first) and every known
/// symbol otherwise. Returns (targets, reads).
fn decode_local(st: &mut RepairState, c: &LocalConstraint) -> Result<(Vec<usize>, Vec<usize>)> {
    let len = c.symbols.len();
    let mut known: Vec<usize> = (0..len).filter(|&j| st.known(c.symbols[j])).collect();
    known.sort_by_key(|&j| {
        let s = c.symbols[j];
        (st.is_intact(s) && !st.was_contacted(s), j)
    });
    let attempt = |chosen: &[usize], st: &RepairState| {
        let mut partial = vec![None; len];
        for &j in chosen {
            partial[j] = st.value(c.symbols[j]);
        }
        solve_erasures(&c.parity, &partial)
    };
    let k0 = c.local_k().min(known.len());
    let mut chosen: Vec<usize> = known[..k0].to_vec();
    let solved = match attempt(&chosen, st) {
        Ok(v) => v,
        Err(_) => {
            chosen = known.clone();
            attempt(&chosen, st)?
        }
    };
    chosen.sort_unstable();
    let reads: Vec<usize> = chosen.iter().map(|&j| c.symbols[j]).collect();
    for &s in &reads {
        st.read(s);
    }
    let targets: Vec<usize> = (0..len).filter(|&j| !st.known(c.symbols[j])).map(|j| c.symbols[j]).collect();
    for (&sym, &v) in c.symbols.iter().zip(&solved) {
        if !st.known(sym) {
            st.set(sym, v);
        }
    }
    Ok((targets, reads))
}

/// Repeatedly decodes the lowest-index constraint whose erasures it can
/// solve on its own. Covers peeling on edge codes (one erasure per
/// constraint) and expander repair (up to t per constraint). On a stall the
/// remaining erasures are reported as the stopping set.
pub fn local_iterative_repair(cc: &ConstraintCode, word: &ErasedWord, rule: &str) -> Result<RepairReport> {
    if word.len() != cc.code.n() {
        return Err(Error::Dimension(format!("word of length {} for n = {}", word.len(), cc.code.n())));
    }
    let mut st = RepairState::new(word);
    loop {
        let next = cc.constraints.iter().find(|c| solvable(c, &unknown_positions(&st, c)));
        let Some(c) = next else { break };
        let (targets, reads) = match decode_local(&mut st, c) {
            Ok(x) => x,
            Err(e) => return Ok(st.fail(format!("local decode failed: {e}"))),
        };
        st.step(rule, targets, reads);
    }
    if st.remaining().is_empty() {
        Ok(st.finish())
    } else {
        Ok(st.fail("no constraint can resolve the remaining erasures"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZemorRound {
    pub side: Side,
    /// Vertices that decoded in this round.
    pub decoded: Vec<usize>,
    /// |S^i|: vertices on the active side holding erasures they could not decode.
    pub s_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeTrace {
    pub rounds: Vec<ZemorRound>,
    pub converged: bool,
    pub contacts: usize,
    pub report: RepairReport,
}

/// Alternating-side decoder for double-cover codes, starting on the left.
/// Each round uses the erasure state at its start; a vertex decodes when it
/// can solve its erasures locally.
pub fn zemor_decode(cc: &ConstraintCode, word: &ErasedWord, max_rounds: Option<usize>) -> Result<DecodeTrace> {
    let left = cc.side(Side::Left);
    let right = cc.side(Side::Right);
    if left.is_empty() || right.is_empty() {
        return Err(Error::Strategy("alternating decoding needs constraints on both sides".into()));
    }
    if word.len() != cc.code.n() {
        return Err(Error::Dimension(format!("word of length {} for n = {}", word.len(), cc.code.n())));
    }
    let ell = word.erased().len();
    let limit = max_rounds.unwrap_or(2 * ell + 4);
    let mut st = RepairState::new(word);
    let mut rounds = Vec::new();
    let mut side = Side::Left;
    let mut idle = 0;
    let mut failure = None;
    while !st.remaining().is_empty() {
        if rounds.len() >= limit {
            failure = Some(format!("round limit {limit} reached"));
            break;
        }
        let active = if side == Side::Left { &left } else { &right };
        // same-side vertices have disjoint supports, so sequential order
        // within the round matches the synchronous rule
        let plan: Vec<(usize, bool)> = active
            .iter()
            .filter_map(|&ci| {
                let pos = unknown_positions(&st, &cc.constraints[ci]);
                (!pos.is_empty()).then(|| (ci, solvable(&cc.constraints[ci], &pos)))
            })
            .collect();
        let mut decoded = Vec::new();
        for &(ci, ok) in &plan {
            if !ok {
                continue;
            }
            let c = &cc.constraints[ci];
            match decode_local(&mut st, c) {
                Ok((targets, reads)) => {
                    st.step(format!("{}-{}", if side == Side::Left { "left" } else { "right" }, c.vertex), targets, reads);
                    decoded.push(c.vertex);
                }
                Err(e) => failure = Some(format!("local decode failed at vertex {}: {e}", c.vertex)),
            }
        }
        let s_size = plan.iter().filter(|p| !p.1).count();
        idle = if decoded.is_empty() { idle + 1 } else { 0 };
        rounds.push(ZemorRound { side, decoded, s_size });
        if failure.is_some() {
            break;
        }
        if idle >= 2 {
            failure = Some("no progress on either side".into());
            break;
        }
        side = side.other();
    }
    let report = match failure {
        Some(f) => st.fail(f),
        None => st.finish(),
    };
    Ok(DecodeTrace { rounds, converged: report.success, contacts: report.contact_count, report })
}

/// Largest ε with d ≥ (1+ε)λ and 2ℓ/(Nδ) ≤ ελ where δ = d/Δ, if any ε > 0
/// satisfies both.
pub fn lemma2_epsilon(local_dmin: usize, degree: usize, lambda: f64, vertices: usize, ell: usize) -> Option<f64> {
    if lambda <= 1e-12 || vertices == 0 || degree == 0 {
        return None;
    }
    let eps = local_dmin as f64 / lambda - 1.0;
    let delta = local_dmin as f64 / degree as f64;
    let need = 2.0 * ell as f64 / (vertices as f64 * delta);
    (eps > 0.0 && need <= eps * lambda + 1e-12).then_some(eps)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceCheck {
    /// |S¹| ≤ ℓ / d_min(C₀).
    pub round_one: bool,
    /// |S^{i+1}| ≤ |S^i|/(1+ε) at every consecutive pair, when ε is given.
    pub contraction: Option<bool>,
}

pub fn check_trace(trace: &DecodeTrace, local_dmin: usize, ell: usize, epsilon: Option<f64>) -> TraceCheck {
    let s1 = trace.rounds.first().map_or(0, |r| r.s_size);
    let contraction = epsilon.map(|eps| trace.rounds.windows(2).all(|w| w[1].s_size as f64 * (1.0 + eps) <= w[0].s_size as f64 + 1e-9));
    TraceCheck { round_one: s1 * local_dmin <= ell, contraction }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::combin::next_combination;
    use crate::graph::codes::{edge_code, unbalanced_expander_code, zemor_code};
    use crate::graph::library::{heawood, projective_plane};
    use crate::graph::spectral::lambda2;
    use crate::graph::types::Graph;
    use crate::LinearCode;

    fn codeword(code: &LinearCode, seed: u32) -> Vec<u32> {
        let q = code.field().q();
        let msg: Vec<u32> = (0..code.k() as u32).map(|i| (i * 7 + seed * 3 + 1) % q).collect();
        code.encode(&msg).unwrap()
    }

    #[test]
    fn single_erasure_peels_with_two_contacts() {
        let cc = edge_code(&heawood(), &Field::gf2()).unwrap();
        let c = codeword(&cc.code, 1);
        let r = local_iterative_repair(&cc, &ErasedWord::new(&c, &[4]).unwrap(), "peel").unwrap();
        assert!(r.success);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.contact_count, 2);
    }

    #[test]
    fn six_cycle_is_a_stopping_set() {
        let cc = edge_code(&heawood(), &Field::gf2()).unwrap();
        let (_, w) = crate::code::min_weight_codeword(&cc.code, crate::Parallelism::Sequential).unwrap();
        let cycle: Vec<usize> = (0..21).filter(|&i| w[i] != 0).collect();
        let c = codeword(&cc.code, 2);
        let r = local_iterative_repair(&cc, &ErasedWord::new(&c, &cycle).unwrap(), "peel").unwrap();
        assert!(!r.success);
        assert_eq!(r.stopping_set, Some(cycle));
    }

    #[test]
    fn heawood_five_erasures_exhaustive_small_slice() {
        let cc = edge_code(&heawood(), &Field::gf2()).unwrap();
        let c = codeword(&cc.code, 3);
        let mut s: Vec<usize> = (0..5).collect();
        for _ in 0..500 {
            let r = local_iterative_repair(&cc, &ErasedWord::new(&c, &s).unwrap(), "peel").unwrap();
            assert!(r.success && r.contact_count <= 10);
            assert_eq!(r.recovered.as_deref(), Some(&c[..]));
            assert!(r.contacts.iter().all(|x| !s.contains(x)));
            next_combination(&mut s, 21);
        }
    }

    #[test]
    fn expander_repair_reads_local_dimension() {
        let f7 = Field::from_order(7).unwrap();
        let cc = unbalanced_expander_code(&projective_plane(2).unwrap(), &f7, 2).unwrap();
        let c = codeword(&cc.code, 4);
        let r = local_iterative_repair(&cc, &ErasedWord::new(&c, &[3]).unwrap(), "expander").unwrap();
        assert!(r.success);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.contact_count, 1);
    }

    #[test]
    fn concentrated_pattern_fails_on_poor_expander() {
        // two left vertices with identical neighbourhoods and t = 1
        let g = crate::graph::types::BipartiteGraph::new(3, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 0)]).unwrap();
        let bad = unbalanced_expander_code(&g, &Field::gf2(), 1);
        assert!(bad.is_err()); // right degrees differ
        let g = crate::graph::types::BipartiteGraph::new(4, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (3, 1)]).unwrap();
        let cc = unbalanced_expander_code(&g, &Field::gf2(), 1).unwrap();
        let c = codeword(&cc.code, 0);
        let r = local_iterative_repair(&cc, &ErasedWord::new(&c, &[0, 1]).unwrap(), "expander").unwrap();
        assert!(!r.success);
        assert_eq!(r.stopping_set, Some(vec![0, 1]));
    }

    #[test]
    fn zemor_k4_all_small_patterns() {
        let f4 = Field::from_order(4).unwrap();
        let cc = zemor_code(&Graph::complete(4), &f4, 2).unwrap();
        let c = codeword(&cc.code, 5);
        let t = zemor_decode(&cc, &ErasedWord::new(&c, &[7]).unwrap(), None).unwrap();
        assert!(t.converged);
        assert_eq!(t.rounds.len(), 1);
        for ell in 1..=2 {
            let mut s: Vec<usize> = (0..ell).collect();
            loop {
                let t = zemor_decode(&cc, &ErasedWord::new(&c, &s).unwrap(), None).unwrap();
                assert!(t.converged, "{s:?}");
                assert_eq!(t.report.recovered.as_deref(), Some(&c[..]));
                assert!(t.rounds.windows(2).all(|w| w[1].s_size <= w[0].s_size));
                assert!(check_trace(&t, 2, ell, None).round_one);
                if !next_combination(&mut s, 12) {
                    break;
                }
            }
        }
    }

    #[test]
    fn zemor_contraction_under_lemma_conditions() {
        let f4 = Field::from_order(4).unwrap();
        let g = Graph::complete(4);
        let lam = lambda2(&g).unwrap().lambda;
        let cc = zemor_code(&g, &f4, 3).unwrap();
        let c = codeword(&cc.code, 6);
        for ell in 1..=4 {
            let eps = lemma2_epsilon(3, 3, lam, 4, ell);
            assert!(eps.is_some(), "ℓ = {ell}");
            let mut s: Vec<usize> = (0..ell).collect();
            loop {
                let t = zemor_decode(&cc, &ErasedWord::new(&c, &s).unwrap(), None).unwrap();
                let chk = check_trace(&t, 3, ell, eps);
                assert!(chk.round_one && chk.contraction == Some(true), "{s:?}");
                if !next_combination(&mut s, 12) {
                    break;
                }
            }
        }
        assert_eq!(lemma2_epsilon(3, 3, lam, 4, 5), None);
    }

    #[test]
    fn wrong_shape_rejected() {
        let cc = edge_code(&heawood(), &Field::gf2()).unwrap();
        let c = codeword(&cc.code, 0);
        let exp = unbalanced_expander_code(&projective_plane(2).unwrap(), &Field::from_order(7).unwrap(), 1).unwrap();
        assert!(zemor_decode(&exp, &ErasedWord::new(&[0; 7], &[0]).unwrap(), None).is_err());
        assert!(local_iterative_repair(&cc, &ErasedWord::new(&c[..20], &[0]).unwrap(), "peel").is_err());
    }
}
