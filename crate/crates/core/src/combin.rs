//! Subset enumeration helpers shared by the oracles and sweeps.

use rand::Rng;

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Binomial coefficient clamped into `u64`.
pub fn binomial_u64(n: usize, k: usize) -> u64 {
    binomial(n, k).min(u64::MAX as u128) as u64
}

/// The `rank`-th k-subset of `[0, n)` in lexicographic order.
pub fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0usize;
    for slot in 0..k {
        loop {
            let rest = binomial(n - x - 1, k - slot - 1);
            if rank < rest {
                break;
            }
            rank -= rest;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Advances `c` to the next k-subset of `[0, n)` in lexicographic order.
/// Returns false when `c` was the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Uniform k-subset of `[0, n)` without replacement, sorted.
pub fn sample_combination<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut v = rand::seq::index::sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}

/// Number of subsets of `[0, n)` with size at most `s`.
pub fn subsets_up_to(n: usize, s: usize) -> u128 {
    (0..=s.min(n)).fold(0u128, |acc, i| acc.saturating_add(binomial(n, i)))
}
