//! Punctured Hadamard (simplex) codes and their recursive cooperative repair.
//!
//! Position p carries the generator column equal to the binary expansion of
//! p + 1, least significant bit multiplying m₁. Writing c(v) for the symbol
//! whose column is v, the code satisfies c(u ⊕ v) = c(u) + c(v).
//!
//! The repair recursion halves the index range at each level. In the lower
//! half it either recurses directly (few erasures there) or first recovers
//! the top symbol c(h) from an intact pair {c(i), c(h ⊕ i)} and folds h into
//! every later lookup. The suffix is patched with c(h + m) = c(h) + c(m).
//!
//! Labels are taken in a frame adapted to the erasures: a basis whose first
//! vectors are the independent erased columns. Read accounting uses span
//! closure, so a symbol whose column is spanned by what was read costs
//! nothing. Together these keep the read count at most ℓ + 1.

use crate::algebra::{Field, Matrix};
use crate::code::{CodeMeta, LinearCode};
use crate::repair::{ErasedWord, RepairReport, RepairState};
use crate::{Error, Result};

/// [2^k − 1, k, 2^{k−1}] binary punctured Hadamard code.
pub fn hadamard_code(k: usize) -> Result<LinearCode> {
    hadamard_with_order(k, None)
}

/// The k = 3 code in the order (a, b, c, a+b, b+c, c+a, a+b+c).
pub fn simplex_listed_order() -> LinearCode {
    hadamard_with_order(3, Some(vec![0, 1, 3, 2, 5, 4, 6])).expect("k = 3")
}

/// Position i of the result carries canonical position `perm[i]`.
pub fn hadamard_with_order(k: usize, perm: Option<Vec<usize>>) -> Result<LinearCode> {
    if !(2..=20).contains(&k) {
        return Err(Error::Params(format!("k must lie in [2, 20], got {k}")));
    }
    let n = (1usize << k) - 1;
    let perm = perm.unwrap_or_else(|| (0..n).collect());
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Params("permutation of the positions expected".into()));
    }
    let f = Field::gf2();
    let mut g = Matrix::zeros(&f, k, n);
    for (i, &p) in perm.iter().enumerate() {
        for bit in 0..k {
            g.set(bit, i, (((p + 1) >> bit) & 1) as u32);
        }
    }
    let mut meta = CodeMeta::new("hadamard").with("k", k);
    if perm.iter().enumerate().any(|(i, &p)| i != p) {
        meta = meta.with("permutation", perm);
    }
    LinearCode::from_generator(g, meta)
}

/// Span of known labels over GF(2), carrying each basis vector's value.
struct Span {
    rows: Vec<Option<(u32, u32)>>,
}

impl Span {
    fn reduce(&self, mut v: u32) -> (u32, u32) {
        let mut acc = 0;
        while v != 0 {
            let p = 31 - v.leading_zeros();
            match self.rows[p as usize] {
                Some((b, val)) => {
                    v ^= b;
                    acc ^= val;
                }
                None => break,
            }
        }
        (v, acc)
    }

    fn contains(&self, v: u32) -> bool {
        self.reduce(v).0 == 0
    }

    fn value(&self, v: u32) -> Option<u32> {
        let (rest, acc) = self.reduce(v);
        (rest == 0).then_some(acc)
    }

    fn add(&mut self, v: u32, val: u32) {
        let (mut rest, mut acc) = (v, val);
        while rest != 0 {
            let p = (31 - rest.leading_zeros()) as usize;
            match self.rows[p] {
                Some((b, bv)) => {
                    rest ^= b;
                    acc ^= bv;
                }
                None => {
                    self.rows[p] = Some((rest, acc));
                    return;
                }
            }
        }
    }
}

struct Ctx {
    st: RepairState,
    span: Span,
    /// label → code position
    pos: Vec<usize>,
    erased: Vec<bool>,
    recovered: Vec<bool>,
    reads: Vec<usize>,
}

type Step = std::result::Result<(), String>;

impl Ctx {
    fn intact(&self, i: u32) -> bool {
        !self.erased[i as usize] || self.recovered[i as usize]
    }

    fn candidates(i: u32, folds: &[u32]) -> Vec<u32> {
        let mut out = vec![i];
        for &h in folds {
            let more: Vec<u32> = out.iter().map(|&c| c ^ h).collect();
            out.extend(more);
        }
        out
    }

    fn available(&self, i: u32, folds: &[u32]) -> bool {
        self.span.contains(i) || Self::candidates(i, folds).iter().any(|&c| self.intact(c))
    }

    fn cost(&self, i: u32) -> usize {
        usize::from(!self.span.contains(i))
    }

    /// Brings label i into the span, reading one intact or recovered symbol.
    fn acquire(&mut self, i: u32, folds: &[u32]) -> Step {
        if self.span.contains(i) {
            return Ok(());
        }
        for c in Self::candidates(i, folds) {
            let p = self.pos[c as usize];
            if !self.erased[c as usize] {
                let v = self.st.read(p).expect("intact symbol");
                self.reads.push(p);
                self.span.add(c, v);
                return Ok(());
            }
            if self.recovered[c as usize] {
                let v = self.st.value(p).expect("recovered symbol");
                self.reads.push(p);
                self.span.add(c, v);
                return Ok(());
            }
        }
        Err(format!("label {i} is unavailable"))
    }

    fn learn(&mut self, i: u32, rule: &str) -> Step {
        let v = self.span.value(i).ok_or_else(|| format!("label {i} not determined"))?;
        if self.erased[i as usize] && !self.recovered[i as usize] {
            self.recovered[i as usize] = true;
            let p = self.pos[i as usize];
            self.st.set(p, v);
            let reads = std::mem::take(&mut self.reads);
            self.st.step(rule, vec![p], reads);
        }
        Ok(())
    }

    fn rep(&mut self, kappa: u32, folds: &[u32]) -> Step {
        let n = (1u32 << kappa) - 1;
        let unavailable: Vec<u32> = (1..=n).filter(|&i| !self.available(i, folds)).collect();
        if unavailable.is_empty() {
            return Ok(());
        }
        if unavailable.len() as u32 > (1 << (kappa - 1)) - 1 {
            return Err(format!("{} unavailable symbols at level {kappa}", unavailable.len()));
        }
        if kappa == 2 {
            let i = unavailable[0];
            for j in 1..4 {
                if j != i {
                    self.acquire(j, folds)?;
                }
            }
            return self.learn(i, "base");
        }
        let h = 1u32 << (kappa - 1);
        let x = unavailable.iter().filter(|&&i| i < h).count() as u32;
        let mut folds2 = folds.to_vec();
        if x >= 1 << (kappa - 2) {
            if !unavailable.contains(&h) {
                self.acquire(h, folds)?;
            } else {
                let best = (1..h)
                    .filter(|&i| self.available(i, folds) && self.available(h + i, folds))
                    .min_by_key(|&i| (self.cost(i) + self.cost(h + i), i))
                    .ok_or_else(|| "no intact pair for the top symbol".to_string())?;
                self.acquire(best, folds)?;
                self.acquire(h + best, folds)?;
                self.learn(h, "top-from-pair")?;
            }
            folds2.push(h);
        }
        self.rep(kappa - 1, &folds2)?;
        if !self.available(h, &folds2) && !self.span.contains(h) {
            let j = (1..h)
                .filter(|&j| self.available(h + j, &folds2))
                .min_by_key(|&j| (self.cost(h + j) + self.cost(j), j))
                .ok_or_else(|| "top symbol unreachable".to_string())?;
            self.acquire(h + j, &folds2)?;
            self.acquire(j, &folds2)?;
            self.learn(h, "top-from-pair")?;
        }
        for &i in &unavailable {
            if i < h {
                self.acquire(i, &folds2)?;
                self.learn(i, "prefix")?;
            } else if i > h {
                if !self.span.contains(i) {
                    self.acquire(h, &folds2)?;
                    self.acquire(i - h, &folds2)?;
                }
                self.learn(i, "suffix")?;
            }
        }
        Ok(())
    }
}

/// Column of each position as an integer, checking the code is a punctured
/// Hadamard code in some coordinate order.
fn column_labels(code: &LinearCode) -> Result<Vec<u32>> {
    let k = code.k();
    if code.field().q() != 2 || !(2..=20).contains(&k) || code.n() != (1 << k) - 1 {
        return Err(Error::Strategy("not a binary punctured Hadamard code".into()));
    }
    let g = code.generator();
    let mut seen = vec![false; 1 << k];
    let mut cols = Vec::with_capacity(code.n());
    for j in 0..code.n() {
        let v = (0..k).fold(0u32, |acc, b| acc | (g.get(b, j) << b));
        if v == 0 || seen[v as usize] {
            return Err(Error::Strategy("generator columns are not the nonzero vectors".into()));
        }
        seen[v as usize] = true;
        cols.push(v);
    }
    Ok(cols)
}

/// Repairs up to (n−1)/2 erasures of a punctured Hadamard code with at most
/// ℓ + 1 reads.
pub fn hadamard_repair(code: &LinearCode, word: &ErasedWord) -> Result<RepairReport> {
    let cols = column_labels(code)?;
    let n = code.n();
    if word.len() != n {
        return Err(Error::Dimension("word length differs from code length".into()));
    }
    let erased_pos = word.erased();
    if erased_pos.len() > (n - 1) / 2 {
        return Err(Error::Params(format!("{} erasures exceed (n−1)/2 = {}", erased_pos.len(), (n - 1) / 2)));
    }
    let k = code.k();

    // frame: independent erased columns (ascending), then unit vectors
    let mut ecols: Vec<u32> = erased_pos.iter().map(|&p| cols[p]).collect();
    ecols.sort_unstable();
    let mut frame: Vec<u32> = Vec::with_capacity(k);
    let mut probe = Span { rows: vec![None; 32] };
    for v in ecols.iter().copied().chain((0..k).map(|b| 1u32 << b)) {
        if !probe.contains(v) {
            probe.add(v, 0);
            frame.push(v);
        }
    }
    let mut pos_of_col = vec![0usize; 1 << k];
    for (p, &c) in cols.iter().enumerate() {
        pos_of_col[c as usize] = p;
    }
    let mut pos = vec![usize::MAX; 1 << k];
    for label in 1u32..(1 << k) {
        let v = (0..k).filter(|&b| label >> b & 1 == 1).fold(0, |acc, b| acc ^ frame[b]);
        pos[label as usize] = pos_of_col[v as usize];
    }
    let mut label_of_pos = vec![0u32; n];
    for label in 1..(1 << k) {
        label_of_pos[pos[label]] = label as u32;
    }
    let mut erased = vec![false; 1 << k];
    for &p in &erased_pos {
        erased[label_of_pos[p] as usize] = true;
    }

    let mut ctx = Ctx {
        st: RepairState::new(word),
        span: Span { rows: vec![None; 32] },
        pos,
        erased,
        recovered: vec![false; 1 << k],
        reads: Vec::new(),
    };
    if let Err(e) = ctx.rep(k as u32, &[]) {
        return Ok(ctx.st.fail(e));
    }
    for &p in &erased_pos {
        let l = label_of_pos[p];
        if let Err(e) = ctx.learn(l, "final") {
            return Ok(ctx.st.fail(e));
        }
    }
    Ok(ctx.st.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::min_distance;
    use crate::combin::next_combination;
    use crate::Parallelism;

    #[test]
    fn encoding_rule() {
        let c = hadamard_code(3).unwrap();
        assert_eq!(c.encode(&[1, 0, 0]).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(c.encode(&[1, 0, 1]).unwrap(), vec![1, 0, 1, 1, 0, 1, 0]);
        assert_eq!(min_distance(&c, Parallelism::Sequential).unwrap(), 4);
        assert!(hadamard_code(1).is_err());
        assert!(hadamard_code(21).is_err());
    }

    #[test]
    fn listed_order() {
        let c = simplex_listed_order();
        // (a, b, c, a+b, b+c, c+a, a+b+c) at (a, b, c) = (1, 1, 0)
        assert_eq!(c.encode(&[1, 1, 0]).unwrap(), vec![1, 1, 0, 0, 1, 1, 0]);
    }

    #[test]
    fn prefix_is_smaller_hadamard() {
        let big = hadamard_code(4).unwrap();
        let small = hadamard_code(3).unwrap();
        for m in 0..16u32 {
            let msg: Vec<u32> = (0..4).map(|b| m >> b & 1).collect();
            let cw = big.encode(&msg).unwrap();
            assert_eq!(&cw[..7], small.encode(&msg[..3]).unwrap().as_slice());
        }
    }

    fn sweep(k: usize) {
        let code = hadamard_code(k).unwrap();
        let n = code.n();
        let msg: Vec<u32> = (0..k).map(|b| (0b1011_0110u32 >> b) & 1).collect();
        let cw = code.encode(&msg).unwrap();
        for ell in 1..=(n - 1) / 2 {
            let mut e: Vec<usize> = (0..ell).collect();
            loop {
                let rep = hadamard_repair(&code, &ErasedWord::new(&cw, &e).unwrap()).unwrap();
                assert!(rep.success, "{e:?}: {:?}", rep.failure);
                assert_eq!(rep.recovered.as_deref(), Some(cw.as_slice()));
                assert!(rep.contact_count <= ell + 1, "{e:?} used {}", rep.contact_count);
                assert!(rep.contacts.iter().all(|c| !e.contains(c)));
                if !next_combination(&mut e, n) {
                    break;
                }
            }
        }
    }

    #[test]
    fn exhaustive_small() {
        sweep(2);
        sweep(3);
    }

    #[test]
    fn base_case() {
        let c = hadamard_code(2).unwrap();
        let cw = c.encode(&[1, 1]).unwrap();
        let rep = hadamard_repair(&c, &ErasedWord::new(&cw, &[1]).unwrap()).unwrap();
        assert!(rep.success);
        assert_eq!(rep.contacts, vec![0, 2]);
    }

    #[test]
    fn too_many_erasures() {
        let c = hadamard_code(3).unwrap();
        let cw = c.encode(&[1, 1, 1]).unwrap();
        assert!(hadamard_repair(&c, &ErasedWord::new(&cw, &[0, 1, 2, 3]).unwrap()).is_err());
    }
}
