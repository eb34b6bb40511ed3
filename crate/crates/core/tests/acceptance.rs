//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p cooprepair --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cooprepair::code::{dmin_bound, locality_oracle, min_distance, minimal_repair_set, subcode_witness, LocalityOptions, Rational};
use cooprepair::constructions::{
    concatenated_code, hadamard_code, partition_code, partition_from_local, partition_weakened, product_code, rs_mds, simplex_listed_order, ConcatenationParams,
};
use cooprepair::graph::{check_trace, double_cover, edge_code, heawood, lambda2, lemma2_epsilon, mixing_check, zemor_code, Graph};
use cooprepair::sim::{adversarial_sweep, failing_patterns, random_sweep, repairer, sample_codeword, StrategyKind, StrategyParams};
use cooprepair::{ErasedWord, Field, LinearCode, Parallelism};

const SIMPLEX_LIMIT: Duration = Duration::from_secs(1);
const HADAMARD_LIMIT: Duration = Duration::from_secs(60);
const GIRTH_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_LIMIT: Duration = Duration::from_secs(120);
const MIXING_TOLERANCE: f64 = 1e-9;
const SIGMA_BAND: f64 = 3.0;
const RANDOM_TRIALS: u64 = 100_000;
const HADAMARD_SAMPLES: u64 = 10_000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let el = start.elapsed();
    ensure(el < limit, format!("took {el:.2?}, limit {limit:?}"))
}

fn exhaustive_locality(code: &LinearCode, ell: usize) -> Result<usize, String> {
    // the per-pattern search stops at the greedy size, far below the cap's estimate
    let opts = LocalityOptions { cap: u128::MAX, ..LocalityOptions::default() };
    let cert = locality_oracle(code, ell, opts).map_err(|e| e.to_string())?;
    ensure(cert.exhaustive && !cert.exceeds_r_max, "locality search not exhaustive")?;
    cert.r_achieved.ok_or_else(|| "unrepairable pattern".to_string())
}

fn c1_simplex() -> Outcome {
    let start = Instant::now();
    let code = simplex_listed_order();
    let cert = locality_oracle(&code, 2, LocalityOptions::default()).map_err(|e| e.to_string())?;
    ensure(cert.exhaustive && cert.subsets_checked == 21, "not exhaustive over 21 pairs")?;
    ensure(cert.r_achieved == Some(3), format!("r_achieved {:?}", cert.r_achieved))?;
    // every 5-coordinate puncturing has distance below ℓ + 1 = 3
    let mut best = 0;
    for a in 0..7 {
        for b in a + 1..7 {
            let p = code.puncture(&[a, b]).map_err(|e| e.to_string())?;
            best = best.max(min_distance(&p, Parallelism::Sequential).map_err(|e| e.to_string())?);
        }
    }
    ensure(best < 3, format!("a 5-coordinate puncturing has d_min {best}"))?;
    within(start, SIMPLEX_LIMIT)?;
    Ok(format!("r(ℓ=2) = 3 over 21 pairs; best 5-coordinate puncturing d_min = {best}; {:.1?}", start.elapsed()))
}

fn c2_hadamard() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for k in 2..=4usize {
        let code = hadamard_code(k).map_err(|e| e.to_string())?;
        let rep = repairer(&code, StrategyKind::HadamardRecursive, &StrategyParams::default()).map_err(|e| e.to_string())?;
        let n = code.n();
        for ell in 1..=(n - 1) / 2 {
            let r = adversarial_sweep(rep.as_ref(), ell, u64::MAX, 0, Parallelism::Parallel).map_err(|e| e.to_string())?;
            ensure(r.exhaustive && r.successes == r.patterns_checked, format!("k={k} ℓ={ell}: {}/{} succeed", r.successes, r.patterns_checked))?;
            ensure(r.max_contacts <= ell + 1, format!("k={k} ℓ={ell}: max contacts {}", r.max_contacts))?;
            if k == 4 && ell > 4 {
                let s = random_sweep(rep.as_ref(), ell, HADAMARD_SAMPLES, 17 + ell as u64, Parallelism::Parallel).map_err(|e| e.to_string())?;
                ensure(s.successes == s.patterns_checked && s.max_contacts <= ell + 1, format!("k=4 ℓ={ell}: sampled failure"))?;
            }
            notes.push(format!("k{k}ℓ{ell}:{}", r.max_contacts));
        }
    }
    within(start, HADAMARD_LIMIT)?;
    Ok(format!("all patterns repaired, max contacts {}; {:.1?}", notes.join(" "), start.elapsed()))
}

fn c3_partition_example() -> Outcome {
    let had = partition_from_local(&hadamard_code(3).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    let mds = partition_from_local(&rs_mds(8, 7, 3).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    ensure((had.n(), had.k(), mds.n(), mds.k()) == (14, 6, 14, 6), "wrong code sizes")?;
    let rh = exhaustive_locality(&had, 3)?;
    let rm = exhaustive_locality(&mds, 3)?;
    ensure(rh == 5 && rm == 6, format!("Hadamard blocks r = {rh}, MDS blocks r = {rm}"))?;
    Ok("Hadamard blocks (5,3), MDS blocks over GF(8) (6,3)".into())
}

fn heawood_cycles() -> BTreeSet<Vec<usize>> {
    // 6-edge subgraphs with every vertex of degree 0 or 2
    let h = heawood();
    let edges = h.edges().to_vec();
    let mut out = BTreeSet::new();
    let mut pick: Vec<usize> = (0..6).collect();
    loop {
        let mut deg = [[0u8; 7]; 2];
        for &e in &pick {
            deg[0][edges[e].0] += 1;
            deg[1][edges[e].1] += 1;
        }
        if deg.iter().flatten().all(|&d| d == 0 || d == 2) {
            out.insert(pick.clone());
        }
        // next 6-subset of 21
        let mut i = 6;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] < 21 - 6 + i {
                pick[i] += 1;
                for j in i + 1..6 {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn c4_girth() -> Outcome {
    let start = Instant::now();
    let cc = edge_code(&heawood(), &Field::gf2()).map_err(|e| e.to_string())?;
    let rep = repairer(&cc.code, StrategyKind::Peeling, &StrategyParams::default()).map_err(|e| e.to_string())?;
    let r5 = adversarial_sweep(rep.as_ref(), 5, u64::MAX, 0, Parallelism::Parallel).map_err(|e| e.to_string())?;
    ensure(r5.patterns_checked == 20349 && r5.successes == 20349, format!("ℓ=5: {}/{}", r5.successes, r5.patterns_checked))?;
    ensure(r5.max_contacts <= 10, format!("ℓ=5 max contacts {}", r5.max_contacts))?;
    let fails: BTreeSet<Vec<usize>> = failing_patterns(rep.as_ref(), 6, 0, Parallelism::Parallel).map_err(|e| e.to_string())?.into_iter().collect();
    let cycles = heawood_cycles();
    ensure(!fails.is_empty() && fails == cycles, format!("{} failing 6-sets vs {} six-cycles", fails.len(), cycles.len()))?;
    within(start, GIRTH_LIMIT)?;
    Ok(format!("ℓ=5 20349/20349, max contacts {}; ℓ=6 failures = the {} six-cycles; {:.1?}", r5.max_contacts, cycles.len(), start.elapsed()))
}

fn suite_codes() -> Result<Vec<(String, LinearCode, usize)>, String> {
    let e = |x: cooprepair::Error| x.to_string();
    let f5 = Field::from_order(5).map_err(e)?;
    let f8 = Field::from_order(8).map_err(e)?;
    let gf2 = Field::gf2();
    Ok(vec![
        ("simplex".into(), simplex_listed_order(), 2),
        ("hadamard k=2".into(), hadamard_code(2).map_err(e)?, 1),
        ("hadamard k=4".into(), hadamard_code(4).map_err(e)?, 2),
        ("hadamard blocks".into(), partition_from_local(&hadamard_code(3).map_err(e)?, 2).map_err(e)?, 3),
        ("mds blocks".into(), partition_from_local(&rs_mds(8, 7, 3).map_err(e)?, 2).map_err(e)?, 3),
        ("partition q5".into(), partition_code(&f5, 4, 4, 2, None).map_err(e)?, 2),
        ("partition q8".into(), partition_code(&f8, 6, 6, 3, None).map_err(e)?, 3),
        ("product 4,2".into(), product_code(&gf2, 4, 2).map_err(e)?, 2),
        ("product 6,3".into(), product_code(&gf2, 6, 3).map_err(e)?, 3),
        ("concatenated 6,3".into(), concatenated_code(2, 6, 3, ConcatenationParams::new(1)).map_err(e)?, 3),
        ("heawood".into(), edge_code(&heawood(), &gf2).map_err(e)?.code, 2),
        ("weakened partition".into(), partition_weakened(&f5, 3, 3, 1).map_err(e)?, 1),
    ])
}

fn c5_bounds() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, code, ell) in suite_codes()? {
        let r = exhaustive_locality(&code, ell).map_err(|m| format!("{name}: {m}"))?;
        let d = min_distance(&code, Parallelism::Parallel).map_err(|e| e.to_string())?;
        let rep = dmin_bound(code.n(), code.k(), r, ell).map_err(|e| e.to_string())?;
        let v = rep.violations(d);
        ensure(v.is_empty(), format!("{name} (r={r}, ℓ={ell}, d={d}): {}", v.join("; ")))?;
        checked += 1;
    }
    Ok(format!("{checked} codes, zero violations of distance and rate bounds; {:.1?}", start.elapsed()))
}

fn c6_rates() -> Outcome {
    let e = |x: cooprepair::Error| x.to_string();
    let gf2 = Field::gf2();
    let r = |a: i64, b: i64| Rational::new(a, b);
    for (q, k, rr, ell) in [(5u64, 4usize, 4usize, 2usize), (8, 6, 6, 3), (7, 6, 2, 2)] {
        let c = partition_code(&Field::from_order(q).map_err(e)?, k, rr, ell, None).map_err(e)?;
        let want = r(rr as i64, (rr + ell * ell) as i64);
        ensure(c.rate() == want, format!("partition r={rr} ℓ={ell}: {} ≠ {want}", c.rate()))?;
    }
    for (rr, ell) in [(4usize, 2usize), (6, 3), (2, 2)] {
        let c = product_code(&gf2, rr, ell).map_err(e)?;
        let base = r(rr as i64, (rr + ell) as i64);
        let want = (0..ell).fold(r(1, 1), |acc, _| acc * base);
        ensure(c.rate() == want, format!("product r={rr} ℓ={ell}: {} ≠ {want}", c.rate()))?;
    }
    for rr in [6usize, 9] {
        let c = concatenated_code(2, rr, 3, ConcatenationParams::new(1)).map_err(e)?;
        let want = r(2 * rr as i64, 3 * (rr as i64 + 3));
        ensure(c.rate() == want, format!("concatenated r={rr}: {} ≠ {want}", c.rate()))?;
    }
    let hw = edge_code(&heawood(), &gf2).map_err(e)?.code;
    ensure(hw.rate() == r(8, 21) && hw.rate() >= r(1, 3), format!("Heawood rate {}", hw.rate()))?;
    Ok("partition r/(r+ℓ²), product (r/(r+ℓ))^ℓ, concatenated 2r/(3(r+3)), Heawood 8/21 ≥ 1/3".into())
}

fn c7_mixing() -> Outcome {
    let e = |x: cooprepair::Error| x.to_string();
    let k4 = Graph::complete(4);
    let spec = lambda2(&k4).map_err(e)?;
    ensure((spec.lambda - 1.0).abs() <= MIXING_TOLERANCE, format!("λ(K4) = {}", spec.lambda))?;
    let mix = mixing_check(&double_cover(&k4), spec.lambda, 4, 1 << 20, 0, Parallelism::Parallel).map_err(e)?;
    ensure(mix.exhaustive && mix.worst_slack <= MIXING_TOLERANCE, format!("mixing slack {}", mix.worst_slack))?;
    let f4 = Field::from_order(4).map_err(e)?;
    let (mut traces, mut contraction_checked) = (0, 0);
    for dmin in [2usize, 3] {
        let cc = zemor_code(&k4, &f4, dmin).map_err(e)?;
        let cw = sample_codeword(&cc.code, 0).map_err(e)?;
        for ell in 1..=4usize {
            let eps = lemma2_epsilon(dmin, 3, spec.lambda, 4, ell);
            let mut s: Vec<usize> = (0..ell).collect();
            loop {
                let t = cooprepair::graph::zemor_decode(&cc, &ErasedWord::new(&cw, &s).map_err(e)?, None).map_err(e)?;
                let chk = check_trace(&t, dmin, ell, eps);
                ensure(chk.round_one, format!("d={dmin} {s:?}: |S¹| = {}", t.rounds[0].s_size))?;
                ensure(chk.contraction != Some(false), format!("d={dmin} {s:?}: contraction fails"))?;
                traces += 1;
                contraction_checked += eps.is_some() as usize;
                if !cooprepair::combin::next_combination(&mut s, cc.code.n()) {
                    break;
                }
            }
        }
    }
    Ok(format!(
        "{} pairs, worst slack {:.3e}; {traces} traces satisfy |S¹| ≤ ℓ/d, {contraction_checked} under lemma conditions contract",
        mix.pairs_checked, mix.worst_slack
    ))
}

fn c8_witness() -> Outcome {
    let e = |x: cooprepair::Error| x.to_string();
    let cases = vec![
        ("simplex", simplex_listed_order(), 3usize, 2usize),
        ("hadamard blocks", partition_from_local(&hadamard_code(3).map_err(e)?, 2).map_err(e)?, 5, 3),
    ];
    let mut notes = Vec::new();
    for (name, code, r, ell) in cases {
        let repair = |s: &[usize]| minimal_repair_set(&code, s, r).ok().and_then(|x| x.set().map(<[usize]>::to_vec)).unwrap_or_default();
        let w = subcode_witness(&code, r, ell, repair).map_err(e)?;
        let d = min_distance(&code, Parallelism::Sequential).map_err(e)?;
        let bound = dmin_bound(code.n(), code.k(), r, ell).map_err(e)?;
        ensure(w.all_checks(), format!("{name}: witness checks fail: {w:?}"))?;
        ensure(w.t as i64 >= w.t_lower_bound, format!("{name}: t = {} < {}", w.t, w.t_lower_bound))?;
        let dp = w.dmin_punctured.ok_or(format!("{name}: empty subcode"))?;
        ensure(d <= dp && dp as i64 <= w.singleton_rhs && w.singleton_rhs <= w.theorem_rhs, format!("{name}: chain {d} ≤ {dp} ≤ {} ≤ {} broken", w.singleton_rhs, w.theorem_rhs))?;
        ensure(d as i64 <= bound.dmin_bound_general, format!("{name}: d = {d} above bound"))?;
        notes.push(format!("{name}: t={} ≥ {}, d={d} ≤ {dp} ≤ {} ≤ {}", w.t, w.t_lower_bound, w.singleton_rhs, w.theorem_rhs));
    }
    Ok(notes.join("; "))
}

/// P(no group of size g among p receives more than t of ℓ uniform erasures).
fn hypergeometric_oracle(p: usize, g: usize, t: usize, ell: usize) -> f64 {
    let binom = |n: usize, k: usize| -> f64 {
        if k > n {
            return 0.0;
        }
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    };
    let mut poly = vec![1.0];
    for _ in 0..p {
        let mut next = vec![0.0; poly.len() + t];
        for (i, &a) in poly.iter().enumerate() {
            for j in 0..=t {
                next[i + j] += a * binom(g, j);
            }
        }
        poly = next;
    }
    poly.get(ell).copied().unwrap_or(0.0) / binom(p * g, ell)
}

fn c9_random_gap() -> Outcome {
    let start = Instant::now();
    let e = |x: cooprepair::Error| x.to_string();
    let (groups, s, t, ell) = (6usize, 4usize, 2usize, 5usize);
    let code = partition_weakened(&Field::from_order(7).map_err(e)?, groups, s, t).map_err(e)?;
    let rep = repairer(&code, StrategyKind::Expander, &StrategyParams::default()).map_err(e)?;
    let rs = random_sweep(rep.as_ref(), ell, RANDOM_TRIALS, 2024, Parallelism::Parallel).map_err(e)?;
    let p = hypergeometric_oracle(groups, s + t, t, ell);
    let phat = rs.success_rate();
    let se = (p * (1.0 - p) / RANDOM_TRIALS as f64).sqrt();
    ensure((phat - p).abs() <= SIGMA_BAND * se, format!("p̂ = {phat:.5}, oracle {p:.5}, SE {se:.5}"))?;
    let adv = adversarial_sweep(rep.as_ref(), ell, u64::MAX, 0, Parallelism::Parallel).map_err(e)?;
    ensure(adv.successes < adv.patterns_checked, "adversarial sweep found no failure")?;
    within(start, RANDOM_LIMIT)?;
    Ok(format!(
        "p̂ = {phat:.5} vs exact {p:.5} (|Δ| = {:.2} SE); adversarial {}/{} fail, e.g. {:?}; {:.1?}",
        (phat - p).abs() / se,
        adv.patterns_checked - adv.successes,
        adv.patterns_checked,
        adv.worst_pattern,
        start.elapsed()
    ))
}

#[test]
fn hypergeometric_oracle_small_cases() {
    // two groups of 2, t = 1, ℓ = 2: 4 of the 6 pairs split across groups
    assert!((hypergeometric_oracle(2, 2, 1, 2) - 4.0 / 6.0).abs() < 1e-12);
    assert!((hypergeometric_oracle(3, 4, 4, 5) - 1.0).abs() < 1e-12);
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("1 simplex locality", c1_simplex),
        ("2 hadamard repair", c2_hadamard),
        ("3 partition example", c3_partition_example),
        ("4 girth peeling", c4_girth),
        ("5 bounds soundness", c5_bounds),
        ("6 rate formulas", c6_rates),
        ("7 mixing and contraction", c7_mixing),
        ("8 subcode witness", c8_witness),
        ("9 random-erasure gap", c9_random_gap),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
