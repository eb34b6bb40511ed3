use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::types::BipartiteGraph;
use crate::code::Rational;
use crate::combin::{binomial, sample_combination, unrank_combination, next_combination};
use crate::par::{chunked, suggested_chunk};
use crate::{Error, Parallelism, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionCertificate {
    /// Left degree.
    pub h: usize,
    pub s_max: usize,
    /// max over checked S of 1 − |Γ(S)|/(h|S|).
    pub epsilon_worst: Rational,
    pub epsilon_worst_f64: f64,
    pub worst_set: Vec<usize>,
    pub exhaustive: bool,
    pub subsets_checked: u64,
}

fn neighborhood_size(adj: &[Vec<usize>], set: &[usize], mark: &mut [u32], stamp: u32) -> usize {
    let mut count = 0;
    for &u in set {
        for &v in &adj[u] {
            if mark[v] != stamp {
                mark[v] = stamp;
                count += 1;
            }
        }
    }
    count
}

fn epsilon_of(h: usize, size: usize, gamma: usize) -> Rational {
    Rational::from(1) - Rational::new(gamma as i64, (h * size) as i64)
}

type Worst = Option<(Rational, Vec<usize>)>;

fn keep_worse(best: Worst, cand: Worst) -> Worst {
    match (best, cand) {
        (Some(b), Some(c)) => Some(if c.0 > b.0 { c } else { b }),
        (b, None) => b,
        (None, c) => c,
    }
}

/// Checks Γ(S) ≥ (1 − ε)h|S| over left subsets with 1 ≤ |S| ≤ `s_max`.
/// Exhaustive when the subset count fits in `budget`, otherwise `budget`
/// subsets are sampled with sizes cycling through 1..=s_max.
pub fn expansion_check(g: &BipartiteGraph, s_max: usize, budget: u128, seed: u64, par: Parallelism) -> Result<ExpansionCertificate> {
    if s_max == 0 {
        return Err(Error::Params("expansion check needs s_max ≥ 1".into()));
    }
    let h = g.left_regular_degree().filter(|&h| h > 0).ok_or_else(|| Error::Params("graph is not left-regular with positive degree".into()))?;
    let n = g.left_count();
    let s_max = s_max.min(n);
    let adj = g.left_neighbors();
    let total: u128 = (1..=s_max).map(|s| binomial(n, s)).sum();
    let (worst, checked, exhaustive) = if total <= budget {
        let mut worst: Worst = None;
        for s in 1..=s_max {
            let count = binomial(n, s) as u64;
            let parts = chunked(par, count, suggested_chunk(count), |start, end| {
                let mut mark = vec![0u32; g.right_count()];
                let mut c = unrank_combination(n, s, start as u128);
                let mut local: Worst = None;
                for i in start..end {
                    let gamma = neighborhood_size(&adj, &c, &mut mark, (i - start + 1) as u32);
                    let eps = epsilon_of(h, s, gamma);
                    if local.as_ref().is_none_or(|b| eps > b.0) {
                        local = Some((eps, c.clone()));
                    }
                    next_combination(&mut c, n);
                }
                local
            });
            worst = parts.into_iter().fold(worst, keep_worse);
        }
        (worst, total as u64, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mark = vec![0u32; g.right_count()];
        let mut worst: Worst = None;
        for i in 0..budget as u64 {
            let s = 1 + (i as usize % s_max);
            let mut c = sample_combination(&mut rng, n, s);
            c.sort_unstable();
            let gamma = neighborhood_size(&adj, &c, &mut mark, (i % u32::MAX as u64) as u32 + 1);
            worst = keep_worse(worst, Some((epsilon_of(h, s, gamma), c)));
        }
        (worst, budget as u64, false)
    };
    let (eps, set) = worst.unwrap_or((Rational::from(0), Vec::new()));
    Ok(ExpansionCertificate {
        h,
        s_max,
        epsilon_worst: eps,
        epsilon_worst_f64: *eps.numer() as f64 / *eps.denom() as f64,
        worst_set: set,
        exhaustive,
        subsets_checked: checked,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceBound {
    pub bound: usize,
    /// Set when the certificate does not cover all sets up to αn.
    pub advisory: bool,
}

/// ⌈(2 − ε − ε/t)·αn⌉, floored at zero.
pub fn expander_distance_bound(cert: &ExpansionCertificate, t: usize, alpha_n: usize) -> Result<DistanceBound> {
    if t == 0 {
        return Err(Error::Params("t must be positive".into()));
    }
    let eps = cert.epsilon_worst;
    let factor = Rational::from(2) - eps - eps / Rational::from(t as i64);
    let value = (factor * Rational::from(alpha_n as i64)).ceil().to_integer().max(0) as usize;
    Ok(DistanceBound { bound: value, advisory: !cert.exhaustive || cert.s_max < alpha_n })
}

/// Tanner's girth bound `d·((d−1)^{g/2} − 1)/(d − 2)`, read as
/// `d·Σ_{i<g/2} (d−1)^i` so that d = 2 gives g.
pub fn tanner_bound(local_dmin: usize, girth: usize) -> u128 {
    let d = local_dmin as u128;
    (0..girth / 2).map(|i| d.saturating_sub(1).saturating_pow(i as u32)).fold(0u128, |a, b| a.saturating_add(b)).saturating_mul(d)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingReport {
    /// max over checked pairs of |E(S,T) − Δ|S||T|/N| − λ√(|S||T|).
    pub worst_slack: f64,
    pub worst_pair: (Vec<usize>, Vec<usize>),
    pub pairs_checked: u64,
    pub exhaustive: bool,
}

fn subsets_upto(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for s in 1..=max.min(n) {
        let mut c: Vec<usize> = (0..s).collect();
        loop {
            out.push(c.clone());
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    out
}

/// Slack of a set pair, with the pair.
type Scored = (f64, (Vec<usize>, Vec<usize>));

/// Expander mixing check on a Δ-regular double cover with N vertices per
/// side, S on the left and T on the right, sizes 0..=`max_size`.
pub fn mixing_check(cover: &BipartiteGraph, lambda: f64, max_size: usize, budget: u128, seed: u64, par: Parallelism) -> Result<MixingReport> {
    let delta = cover.regular_degree().ok_or_else(|| Error::Params("mixing check needs a regular bipartite graph".into()))?;
    let n = cover.left_count();
    if n != cover.right_count() || n == 0 {
        return Err(Error::Params("mixing check needs equal nonempty sides".into()));
    }
    let adj = cover.left_neighbors();
    let slack = |s: &[usize], t: &[usize], inside: &mut Vec<bool>| -> f64 {
        inside.iter_mut().for_each(|x| *x = false);
        t.iter().for_each(|&v| inside[v] = true);
        let e = s.iter().map(|&u| adj[u].iter().filter(|&&v| inside[v]).count()).sum::<usize>() as f64;
        let (a, b) = (s.len() as f64, t.len() as f64);
        (e - delta as f64 * a * b / n as f64).abs() - lambda * (a * b).sqrt()
    };
    let per_side: u128 = (0..=max_size.min(n)).map(|s| binomial(n, s)).sum();
    let better = |best: Option<Scored>, cand: Option<Scored>| match (best, cand) {
        (Some(b), Some(c)) => Some(if c.0 > b.0 { c } else { b }),
        (b, None) => b,
        (None, c) => c,
    };
    if per_side.saturating_mul(per_side) <= budget {
        let subsets = subsets_upto(n, max_size);
        let m = subsets.len() as u64;
        let parts = chunked(par, m, suggested_chunk(m), |start, end| {
            let mut inside = vec![false; n];
            let mut local = None;
            for i in start..end {
                let s = &subsets[i as usize];
                for t in &subsets {
                    let x = slack(s, t, &mut inside);
                    if local.as_ref().is_none_or(|b: &(f64, (Vec<usize>, Vec<usize>))| x > b.0) {
                        local = Some((x, (s.clone(), t.clone())));
                    }
                }
            }
            local
        });
        let (worst, pair) = parts.into_iter().fold(None, better).expect("empty pair is always checked");
        Ok(MixingReport { worst_slack: worst, worst_pair: pair, pairs_checked: m * m, exhaustive: true })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut inside = vec![false; n];
        let mut best = None;
        let cap = max_size.min(n);
        for _ in 0..budget as u64 {
            let (a, b) = (rng.gen_range(0..=cap), rng.gen_range(0..=cap));
            let mut s = sample_combination(&mut rng, n, a);
            let mut t = sample_combination(&mut rng, n, b);
            s.sort_unstable();
            t.sort_unstable();
            let x = slack(&s, &t, &mut inside);
            best = better(best, Some((x, (s, t))));
        }
        let (worst, pair) = best.unwrap_or((0.0, (Vec::new(), Vec::new())));
        Ok(MixingReport { worst_slack: worst, worst_pair: pair, pairs_checked: budget as u64, exhaustive: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::library::complete_bipartite;
    use crate::graph::spectral::lambda2;
    use crate::graph::types::{double_cover, Graph};

    #[test]
    fn complete_bipartite_singletons_expand() {
        let c = expansion_check(&complete_bipartite(3, 5), 1, 1 << 20, 0, Parallelism::Sequential).unwrap();
        assert_eq!((c.h, c.epsilon_worst), (5, Rational::from(0)));
        assert!(c.exhaustive);
        let c2 = expansion_check(&complete_bipartite(3, 5), 2, 1 << 20, 0, Parallelism::Sequential).unwrap();
        assert_eq!(c2.epsilon_worst, Rational::new(1, 2));
        assert!(expansion_check(&complete_bipartite(3, 5), 0, 10, 0, Parallelism::Sequential).is_err());
    }

    #[test]
    fn shared_neighborhood_detected() {
        // left 0 and 1 share both right vertices; left 2 is separate
        let g = BipartiteGraph::new(3, 4, vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3)]).unwrap();
        let c = expansion_check(&g, 2, 100, 0, Parallelism::Sequential).unwrap();
        assert_eq!(c.epsilon_worst, Rational::new(1, 2));
        assert_eq!(c.worst_set, vec![0, 1]);
        let sampled = expansion_check(&g, 2, 3, 9, Parallelism::Sequential).unwrap();
        assert!(!sampled.exhaustive);
        assert_eq!(sampled.subsets_checked, 3);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = crate::graph::library::projective_plane(3).unwrap();
        let a = expansion_check(&g, 3, 1 << 20, 0, Parallelism::Sequential).unwrap();
        let b = expansion_check(&g, 3, 1 << 20, 0, Parallelism::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn distance_bound_formula() {
        let mut cert = ExpansionCertificate {
            h: 3,
            s_max: 4,
            epsilon_worst: Rational::from(0),
            epsilon_worst_f64: 0.0,
            worst_set: vec![],
            exhaustive: true,
            subsets_checked: 0,
        };
        assert_eq!(expander_distance_bound(&cert, 1, 3).unwrap(), DistanceBound { bound: 6, advisory: false });
        cert.epsilon_worst = Rational::new(1, 4);
        assert_eq!(expander_distance_bound(&cert, 1, 4).unwrap().bound, 6);
        cert.exhaustive = false;
        assert!(expander_distance_bound(&cert, 1, 4).unwrap().advisory);
    }

    #[test]
    fn tanner() {
        assert_eq!(tanner_bound(2, 6), 6);
        assert_eq!(tanner_bound(2, 10), 10);
        assert_eq!(tanner_bound(3, 6), 3 * (1 + 2 + 4));
    }

    #[test]
    fn mixing_on_k4_cover() {
        let g = Graph::complete(4);
        let lam = lambda2(&g).unwrap().lambda;
        let r = mixing_check(&double_cover(&g), lam, 4, 1 << 20, 0, Parallelism::Parallel).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.pairs_checked, 256);
        assert!(r.worst_slack <= 1e-9);
        // too small a λ is caught
        let tight = mixing_check(&double_cover(&g), 0.0, 4, 1 << 20, 0, Parallelism::Sequential).unwrap();
        assert!(tight.worst_slack > 0.0);
    }
}
