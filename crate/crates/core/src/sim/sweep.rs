use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::strategy::Repairer;
use crate::combin::{binomial, next_combination, sample_combination, unrank_combination};
use crate::code::LinearCode;
use crate::par::{chunked, suggested_chunk};
use crate::repair::{ErasedWord, RepairReport};
use crate::{Error, Parallelism, Result};

/// Seed of the codeword used when a sweep is not given one.
pub const DEFAULT_CODEWORD_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub code_meta: Value,
    pub strategy: String,
    pub ell: usize,
    pub patterns_checked: u64,
    pub successes: u64,
    pub max_contacts: usize,
    pub mean_contacts: f64,
    /// First failing pattern, or the first pattern reaching `max_contacts`
    /// when every pattern succeeds.
    pub worst_pattern: Vec<usize>,
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

impl SweepReport {
    pub fn success_rate(&self) -> f64 {
        if self.patterns_checked == 0 {
            0.0
        } else {
            self.successes as f64 / self.patterns_checked as f64
        }
    }
}

/// Codeword of a uniformly random message drawn from `seed`.
pub fn sample_codeword(code: &LinearCode, seed: u64) -> Result<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = code.field().q();
    let msg: Vec<u32> = (0..code.k()).map(|_| rng.gen_range(0..q)).collect();
    code.encode(&msg)
}

/// Outcome of one repair attempt against the known codeword.
fn attempt(rep: &dyn Repairer, codeword: &[u32], pattern: &[usize]) -> (bool, usize) {
    let word = match ErasedWord::new(codeword, pattern) {
        Ok(w) => w,
        Err(_) => return (false, 0),
    };
    match rep.repair(&word) {
        Ok(r) => (r.success && r.recovered.as_deref() == Some(codeword), r.contact_count),
        Err(_) => (false, 0),
    }
}

#[derive(Default)]
struct Tally {
    count: u64,
    successes: u64,
    contacts: u64,
    max_contacts: usize,
    max_pattern: Option<Vec<usize>>,
    first_fail: Option<Vec<usize>>,
}

impl Tally {
    fn add(&mut self, pattern: &[usize], ok: bool, contacts: usize) {
        self.count += 1;
        self.contacts += contacts as u64;
        if ok {
            self.successes += 1;
        } else if self.first_fail.is_none() {
            self.first_fail = Some(pattern.to_vec());
        }
        if self.max_pattern.is_none() || contacts > self.max_contacts {
            self.max_contacts = contacts;
            self.max_pattern = Some(pattern.to_vec());
        }
    }

    /// Combines with a tally of later patterns; earlier patterns win ties.
    fn merge(mut self, later: Tally) -> Tally {
        self.count += later.count;
        self.successes += later.successes;
        self.contacts += later.contacts;
        if self.first_fail.is_none() {
            self.first_fail = later.first_fail;
        }
        if self.max_pattern.is_none() || (later.max_pattern.is_some() && later.max_contacts > self.max_contacts) {
            self.max_contacts = later.max_contacts;
            self.max_pattern = later.max_pattern;
        }
        self
    }

    fn report(self, rep: &dyn Repairer, ell: usize, exhaustive: bool, seed: Option<u64>) -> SweepReport {
        let mean = if self.count == 0 { 0.0 } else { self.contacts as f64 / self.count as f64 };
        SweepReport {
            code_meta: rep.code().summary(),
            strategy: rep.kind().name().to_string(),
            ell,
            patterns_checked: self.count,
            successes: self.successes,
            max_contacts: self.max_contacts,
            mean_contacts: mean,
            worst_pattern: self.first_fail.or(self.max_pattern).unwrap_or_default(),
            exhaustive,
            seed,
        }
    }
}

fn check_ell(code: &LinearCode, ell: usize) -> Result<()> {
    if ell == 0 || ell > code.n() {
        return Err(Error::Params(format!("ℓ = {ell} must lie in [1, n = {}]", code.n())));
    }
    Ok(())
}

/// Pattern `i` of a seeded sample: its own ChaCha8 stream, so any trial is
/// reproducible on its own.
pub fn sampled_pattern(n: usize, ell: usize, seed: u64, i: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    sample_combination(&mut rng, n, ell)
}

fn sampled(rep: &dyn Repairer, codeword: &[u32], ell: usize, trials: u64, seed: u64, par: Parallelism) -> Tally {
    let n = rep.code().n();
    chunked(par, trials, suggested_chunk(trials), |start, end| {
        let mut t = Tally::default();
        for i in start..end {
            let p = sampled_pattern(n, ell, seed, i);
            let (ok, c) = attempt(rep, codeword, &p);
            t.add(&p, ok, c);
        }
        t
    })
    .into_iter()
    .fold(Tally::default(), Tally::merge)
}

/// Runs the repairer on every ℓ-subset when there are at most `cap` of them,
/// otherwise on `cap` seeded samples. The codeword comes from `seed`.
pub fn adversarial_sweep(rep: &dyn Repairer, ell: usize, cap: u64, seed: u64, par: Parallelism) -> Result<SweepReport> {
    let code = rep.code();
    check_ell(code, ell)?;
    let codeword = sample_codeword(code, seed)?;
    let n = code.n();
    let total = binomial(n, ell);
    if total <= cap as u128 {
        let total = total as u64;
        let tally = chunked(par, total, suggested_chunk(total), |start, end| {
            let mut t = Tally::default();
            let mut c = unrank_combination(n, ell, start as u128);
            for _ in start..end {
                let (ok, k) = attempt(rep, &codeword, &c);
                t.add(&c, ok, k);
                next_combination(&mut c, n);
            }
            t
        })
        .into_iter()
        .fold(Tally::default(), Tally::merge);
        Ok(tally.report(rep, ell, true, None))
    } else {
        Ok(sampled(rep, &codeword, ell, cap, seed, par).report(rep, ell, false, Some(seed)))
    }
}

/// Monte Carlo over uniform ℓ-subsets.
pub fn random_sweep(rep: &dyn Repairer, ell: usize, trials: u64, seed: u64, par: Parallelism) -> Result<SweepReport> {
    check_ell(rep.code(), ell)?;
    if trials == 0 {
        return Err(Error::Params("at least one trial required".into()));
    }
    let codeword = sample_codeword(rep.code(), seed)?;
    Ok(sampled(rep, &codeword, ell, trials, seed, par).report(rep, ell, false, Some(seed)))
}

/// Every failing ℓ-subset, in lexicographic order.
pub fn failing_patterns(rep: &dyn Repairer, ell: usize, seed: u64, par: Parallelism) -> Result<Vec<Vec<usize>>> {
    let code = rep.code();
    check_ell(code, ell)?;
    let codeword = sample_codeword(code, seed)?;
    let n = code.n();
    let total = u64::try_from(binomial(n, ell)).map_err(|_| Error::Budget("too many patterns".into()))?;
    Ok(chunked(par, total, suggested_chunk(total), |start, end| {
        let mut out = Vec::new();
        let mut c = unrank_combination(n, ell, start as u128);
        for _ in start..end {
            if !attempt(rep, &codeword, &c).0 {
                out.push(c.clone());
            }
            next_combination(&mut c, n);
        }
        out
    })
    .concat())
}

/// One repair episode for bandwidth accounting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Episode {
    pub code: String,
    pub strategy: String,
    pub report: RepairReport,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BandwidthRow {
    pub strategy: String,
    pub repairs: u64,
    pub successes: u64,
    pub erasures: u64,
    pub symbols_contacted: u64,
    pub max_contacts: usize,
    pub contacts_per_erasure: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BandwidthTable {
    pub code: Option<String>,
    pub rows: Vec<BandwidthRow>,
}

/// Per-strategy totals over episodes of a single code.
pub fn bandwidth_account(episodes: &[Episode]) -> Result<BandwidthTable> {
    let code = episodes.first().map(|e| e.code.clone());
    if let Some(c) = &code {
        if let Some(other) = episodes.iter().find(|e| &e.code != c) {
            return Err(Error::Params(format!("episodes mix codes {c} and {}", other.code)));
        }
    }
    let mut rows: BTreeMap<&str, BandwidthRow> = BTreeMap::new();
    for e in episodes {
        let row = rows.entry(&e.strategy).or_insert_with(|| BandwidthRow { strategy: e.strategy.clone(), ..Default::default() });
        row.repairs += 1;
        row.successes += e.report.success as u64;
        row.erasures += e.report.erased.len() as u64;
        row.symbols_contacted += e.report.contact_count as u64;
        row.max_contacts = row.max_contacts.max(e.report.contact_count);
    }
    let rows = rows
        .into_values()
        .map(|mut r| {
            r.contacts_per_erasure = if r.erasures == 0 { 0.0 } else { r.symbols_contacted as f64 / r.erasures as f64 };
            r
        })
        .collect();
    Ok(BandwidthTable { code, rows })
}
