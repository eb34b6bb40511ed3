use serde::Serialize;

use super::LinearCode;
use crate::algebra::VectorBasis;
use crate::combin::{binomial, next_combination, subsets_up_to, unrank_combination};
use crate::par::{chunked, suggested_chunk, Parallelism};
use crate::{Error, Result};

/// Largest message space enumerated by the distance oracle.
pub const DISTANCE_CAP: u64 = 1 << 24;

fn validate_set(n: usize, set: &[usize], mask: &mut [bool]) -> Result<()> {
    for &i in set {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        if mask[i] {
            return Err(Error::Duplicate(i));
        }
        mask[i] = true;
    }
    Ok(())
}

/// True iff every erased column of G lies in the span of the Γ columns,
/// i.e. `c_S` is a function of `c_Γ` on every codeword.
pub fn repair_set_check(code: &LinearCode, erased: &[usize], gamma: &[usize]) -> Result<bool> {
    let n = code.n();
    let mut ms = vec![false; n];
    validate_set(n, erased, &mut ms)?;
    let mut mg = vec![false; n];
    validate_set(n, gamma, &mut mg)?;
    if let Some(&i) = gamma.iter().find(|&&i| ms[i]) {
        return Err(Error::Overlap(i));
    }
    Ok(span_covers(code, gamma, erased))
}

fn span_covers(code: &LinearCode, gamma: &[usize], erased: &[usize]) -> bool {
    let mut b = VectorBasis::new(code.field(), code.k());
    for c in code.columns(gamma) {
        b.insert(&c);
    }
    code.columns(erased).iter().all(|c| b.contains(c))
}

/// True iff the erased positions are determined by all remaining symbols.
pub fn is_recoverable(code: &LinearCode, erased: &[usize]) -> bool {
    let mut mask = vec![false; code.n()];
    for &e in erased {
        mask[e] = true;
    }
    let rest: Vec<usize> = (0..code.n()).filter(|&i| !mask[i]).collect();
    span_covers(code, &rest, erased)
}

/// Values at `erased` computed from the values of a codeword on `gamma`.
///
/// Solves `G_Γ x = g_s` for every erased `s` and returns `c_Γ · x`.
pub fn recover_symbols(code: &LinearCode, erased: &[usize], gamma: &[usize], gamma_values: &[u32]) -> Result<Vec<u32>> {
    if !repair_set_check(code, erased, gamma)? {
        return Err(Error::Uncorrectable);
    }
    if gamma_values.len() != gamma.len() {
        return Err(Error::Dimension("one value per repair-set symbol required".into()));
    }
    let f = code.field();
    let g = code.generator();
    let sys = g.select_columns(gamma).hstack(&g.select_columns(erased))?;
    let r = sys.rref();
    let w = gamma.len();
    Ok((0..erased.len())
        .map(|s| {
            r.pivots.iter().enumerate().fold(0, |acc, (row, &pc)| {
                // pivots past the Γ block cannot occur once the span check passed
                debug_assert!(pc < w);
                f.add(acc, f.mul(r.matrix.get(row, w + s), gamma_values[pc]))
            })
        })
        .collect())
}

/// Outcome of the minimal repair-set search for one erasure pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RepairSearch {
    /// Smallest repair set; lexicographically first among the smallest.
    Minimal(Vec<usize>),
    /// Nothing of size ≤ r_max works; the greedy set is valid but larger.
    AboveLimit(Vec<usize>),
    /// Valid but not proven minimal (greedy mode).
    Greedy(Vec<usize>),
    Unrepairable,
}

impl RepairSearch {
    pub fn set(&self) -> Option<&[usize]> {
        match self {
            RepairSearch::Minimal(g) | RepairSearch::AboveLimit(g) | RepairSearch::Greedy(g) => Some(g),
            RepairSearch::Unrepairable => None,
        }
    }
}

fn greedy_repair_set(code: &LinearCode, comp: &[usize], targets: &[Vec<u32>]) -> Option<Vec<usize>> {
    let mut b = VectorBasis::new(code.field(), code.k());
    let mut chosen = Vec::new();
    if targets.iter().all(|t| b.contains(t)) {
        return Some(chosen);
    }
    for &j in comp {
        if b.insert(&code.generator().column(j)) {
            chosen.push(j);
            if targets.iter().all(|t| b.contains(t)) {
                return Some(chosen);
            }
        }
    }
    None
}

fn search(code: &LinearCode, erased: &[usize], r_max: usize, exhaustive: bool) -> RepairSearch {
    let mut mask = vec![false; code.n()];
    for &e in erased {
        mask[e] = true;
    }
    let comp: Vec<usize> = (0..code.n()).filter(|&i| !mask[i]).collect();
    let targets = code.columns(erased);
    let Some(greedy) = greedy_repair_set(code, &comp, &targets) else {
        return RepairSearch::Unrepairable;
    };
    if !exhaustive {
        return RepairSearch::Greedy(greedy);
    }
    let cols = code.columns(&comp);
    let limit = greedy.len().saturating_sub(1).min(r_max);
    for size in 0..=limit.min(comp.len()) {
        if size == greedy.len() {
            break;
        }
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            let mut b = VectorBasis::new(code.field(), code.k());
            for &i in &c {
                b.insert(&cols[i]);
            }
            if targets.iter().all(|t| b.contains(t)) {
                return RepairSearch::Minimal(c.iter().map(|&i| comp[i]).collect());
            }
            if !next_combination(&mut c, comp.len()) {
                break;
            }
        }
    }
    if greedy.len() <= r_max {
        RepairSearch::Minimal(greedy)
    } else {
        RepairSearch::AboveLimit(greedy)
    }
}

/// Smallest Γ repairing `erased`, searching sizes in ascending order up to `r_max`.
pub fn minimal_repair_set(code: &LinearCode, erased: &[usize], r_max: usize) -> Result<RepairSearch> {
    let mut mask = vec![false; code.n()];
    validate_set(code.n(), erased, &mut mask)?;
    Ok(search(code, erased, r_max, true))
}

#[derive(Clone, Copy, Debug)]
pub struct LocalityOptions {
    /// Largest repair-set size searched exhaustively; defaults to k.
    pub r_max: Option<usize>,
    /// Budget on `C(n,ℓ)·Σ_{s≤r_max} C(n−ℓ,s)` before falling back to greedy mode.
    pub cap: u128,
    pub parallelism: Parallelism,
}

impl Default for LocalityOptions {
    fn default() -> Self {
        LocalityOptions { r_max: None, cap: 200_000_000, parallelism: Parallelism::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityCertificate {
    pub ell: usize,
    pub r_max: usize,
    /// Worst case over all ℓ-subsets of the minimal repair-set size. `None`
    /// when some ℓ-subset cannot be repaired at all.
    pub r_achieved: Option<usize>,
    pub witness_worst: Option<(Vec<usize>, Vec<usize>)>,
    /// Every ℓ-subset received the exact minimal search.
    pub exhaustive: bool,
    /// Some ℓ-subset needs more than `r_max` symbols; `r_achieved` is then
    /// the size of a valid (greedy) set, an upper bound.
    pub exceeds_r_max: bool,
    pub unrepairable: Option<Vec<usize>>,
    pub subsets_checked: u64,
}

impl LocalityCertificate {
    /// Whether (r, ℓ)-cooperative locality holds; `None` when undecided.
    pub fn certifies(&self, r: usize) -> Option<bool> {
        let ra = match self.r_achieved {
            None => return Some(false),
            Some(v) => v,
        };
        if ra <= r {
            return Some(true);
        }
        if self.exhaustive && (!self.exceeds_r_max || r <= self.r_max) {
            return Some(false);
        }
        None
    }
}

/// Brute-force (r, ℓ)-cooperative locality of a linear code.
pub fn locality_oracle(code: &LinearCode, ell: usize, opts: LocalityOptions) -> Result<LocalityCertificate> {
    let n = code.n();
    if ell == 0 || ell >= n {
        return Err(Error::Params(format!("ℓ must satisfy 1 ≤ ℓ < n = {n}")));
    }
    let r_max = opts.r_max.unwrap_or(code.k()).min(n - ell);
    let total = binomial(n, ell);
    let work = total.saturating_mul(subsets_up_to(n - ell, r_max));
    let exhaustive = work <= opts.cap;
    let total64 = u64::try_from(total).map_err(|_| Error::Budget("too many ℓ-subsets".into()))?;

    // per chunk: (worst size, worst S, worst Γ, above-limit seen, first unrepairable S)
    type Part = (Option<(usize, Vec<usize>, Vec<usize>)>, bool, Option<Vec<usize>>);
    let parts: Vec<Part> = chunked(opts.parallelism, total64, suggested_chunk(total64), |a, b| {
        let mut worst: Option<(usize, Vec<usize>, Vec<usize>)> = None;
        let mut above = false;
        let mut c = unrank_combination(n, ell, a as u128);
        for _ in a..b {
            match search(code, &c, r_max, exhaustive) {
                RepairSearch::Unrepairable => return (worst, above, Some(c)),
                res => {
                    above |= matches!(res, RepairSearch::AboveLimit(_));
                    let g = res.set().unwrap().to_vec();
                    if worst.as_ref().is_none_or(|w| g.len() > w.0) {
                        worst = Some((g.len(), c.clone(), g));
                    }
                }
            }
            next_combination(&mut c, n);
        }
        (worst, above, None)
    });

    let mut worst: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut above = false;
    for (w, a, u) in parts {
        if let Some(s) = u {
            return Ok(LocalityCertificate {
                ell,
                r_max,
                r_achieved: None,
                witness_worst: None,
                exhaustive,
                exceeds_r_max: false,
                unrepairable: Some(s),
                subsets_checked: total64,
            });
        }
        above |= a;
        if let Some(w) = w {
            if worst.as_ref().is_none_or(|cur| w.0 > cur.0) {
                worst = Some(w);
            }
        }
    }
    let (ra, s, g) = worst.expect("at least one ℓ-subset");
    Ok(LocalityCertificate {
        ell,
        r_max,
        r_achieved: Some(ra),
        witness_worst: Some((s, g)),
        exhaustive,
        exceeds_r_max: above,
        unrepairable: None,
        subsets_checked: total64,
    })
}

fn message_space(code: &LinearCode) -> Result<u64> {
    if code.k() == 0 {
        return Err(Error::Params("zero-dimensional code has no nonzero codeword".into()));
    }
    let q = code.field().q() as u64;
    match q.checked_pow(code.k() as u32) {
        Some(s) if s <= DISTANCE_CAP => Ok(s),
        _ => Err(Error::Budget(format!("q^k = {}^{} exceeds 2^24", q, code.k()))),
    }
}

/// Digits of `idx` in base q, least significant first.
fn message_of(idx: u64, q: u64, k: usize) -> Vec<u32> {
    let mut m = Vec::with_capacity(k);
    let mut x = idx;
    for _ in 0..k {
        m.push((x % q) as u32);
        x /= q;
    }
    m
}

/// A nonzero codeword of least weight, with its weight. Among ties the one
/// with the smallest message index wins.
pub fn min_weight_codeword(code: &LinearCode, par: Parallelism) -> Result<(usize, Vec<u32>)> {
    let size = message_space(code)?;
    let f = code.field();
    let q = f.q() as u64;
    let k = code.k();
    let n = code.n();
    let g = code.generator();
    let total = size - 1;
    let parts = chunked(par, total, suggested_chunk(total).max(256), |a, b| {
        // messages a+1 ..= b
        let mut msg = message_of(a + 1, q, k);
        let mut c = g.left_mul(&msg).expect("message length");
        let mut best = (usize::MAX, a + 1);
        for idx in a + 1..=b {
            let w = c.iter().filter(|&&v| v != 0).count();
            if w < best.0 {
                best = (w, idx);
            }
            if idx == b {
                break;
            }
            // odometer step on the message digits, updating c incrementally
            for (pos, digit) in msg.iter_mut().enumerate() {
                let old = *digit;
                let new = if old as u64 + 1 == q { 0 } else { old + 1 };
                let delta = f.sub(new, old);
                for (cj, &gj) in c.iter_mut().zip(g.row(pos)) {
                    *cj = f.add(*cj, f.mul(delta, gj));
                }
                *digit = new;
                if new != 0 {
                    break;
                }
            }
        }
        best
    });
    let (w, idx) = parts.into_iter().fold((usize::MAX, 0), |acc, p| if p.0 < acc.0 { p } else { acc });
    debug_assert!(w <= n);
    let c = g.left_mul(&message_of(idx, q, k))?;
    Ok((w, c))
}

/// Exact minimum distance by enumerating all q^k messages.
pub fn min_distance(code: &LinearCode, par: Parallelism) -> Result<usize> {
    Ok(min_weight_codeword(code, par)?.0)
}

/// All codewords in message-index order; capped at 2^16 of them.
pub fn codewords(code: &LinearCode) -> Result<Vec<Vec<u32>>> {
    let q = code.field().q() as u64;
    let size = q
        .checked_pow(code.k() as u32)
        .filter(|&s| s <= 1 << 16)
        .ok_or_else(|| Error::Budget("more than 2^16 codewords".into()))?;
    (0..size).map(|i| code.encode(&message_of(i, q, code.k()))).collect()
}
