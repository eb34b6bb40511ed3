use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

const MAX_ORDER: u64 = 1 << 20;
// Addition tables are precomputed for odd-characteristic extensions up to this order.
const ADD_TABLE_MAX: u32 = 1024;

/// GF(p^m) with elements encoded as `Σ aᵢ pⁱ` over polynomial coefficients.
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.m == other.t.m && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.t.q)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (f as u64 * bc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, modulus, p)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut g = digits(v as u32, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u32, p: u32, m: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl Field {
    /// GF(p^m) with the lexicographically least monic irreducible modulus,
    /// comparing coefficient lists from the highest degree down.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        Self::check_order(p, m)?;
        let pp = p as u32;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            let count = pp.pow(m);
            (0..count)
                .map(|v| {
                    let mut f = digits(v, pp, m as usize);
                    f.push(1);
                    f
                })
                .find(|f| f[0] != 0 && is_irreducible(f, pp))
                .expect("an irreducible polynomial exists in every degree")
        };
        Ok(Self::build(pp, m, modulus))
    }

    /// GF(p^m) with a caller-supplied modulus, lowest degree first with the
    /// leading 1 included. Empty for prime fields.
    pub fn with_modulus(p: u64, m: u32, modulus: &[u32]) -> Result<Field> {
        Self::check_order(p, m)?;
        let pp = p as u32;
        if m == 1 {
            if !modulus.is_empty() {
                return Err(Error::InvalidField("prime fields take an empty modulus".into()));
            }
            return Ok(Self::build(pp, 1, Vec::new()));
        }
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= pp) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is not a monic degree-{m} polynomial over GF({p})")));
        }
        if !is_irreducible(modulus, pp) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible")));
        }
        Ok(Self::build(pp, m, modulus.to_vec()))
    }

    /// Field of order `q`, which must be a prime power.
    pub fn from_order(q: u64) -> Result<Field> {
        let f = prime_factors(q);
        if f.len() != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = f[0];
        let mut m = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            m += 1;
        }
        Field::new(p, m)
    }

    pub fn gf2() -> Field {
        Field::new(2, 1).expect("GF(2)")
    }

    fn check_order(p: u64, m: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_ORDER => Ok(()),
            _ => Err(Error::FieldTooLarge { p, m }),
        }
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(m);
        let mu = m as usize;
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp = vec![1, 1];
        } else {
            let g = Self::primitive(p, m, &modulus);
            let gd = digits(g, p, mu);
            let mut cur = vec![0u32; mu];
            cur[0] = 1;
            for (i, slot) in exp.iter_mut().enumerate().take((q - 1) as usize) {
                let v = undigits(&cur, p);
                *slot = v;
                log[v as usize] = i as u32;
                cur = if m == 1 {
                    vec![(cur[0] as u64 * g as u64 % p as u64) as u32]
                } else if g == p {
                    // multiply by x: shift then reduce the overflow coefficient
                    let top = cur[mu - 1];
                    let mut next = vec![0u32; mu];
                    next[1..mu].copy_from_slice(&cur[..mu - 1]);
                    for (j, nj) in next.iter_mut().enumerate() {
                        let sub = (top as u64 * modulus[j] as u64 % p as u64) as u32;
                        *nj = (*nj + p - sub) % p;
                    }
                    next
                } else {
                    let mut r = poly_mulmod(&cur, &gd, &modulus, p);
                    r.resize(mu, 0);
                    r
                };
            }
            for i in 0..(q - 1) as usize {
                exp[i + (q - 1) as usize] = exp[i];
            }
        }
        let (mut add, mut neg) = (Vec::new(), Vec::new());
        if m > 1 && p > 2 && q <= ADD_TABLE_MAX {
            add = vec![0u32; (q * q) as usize];
            neg = vec![0u32; q as usize];
            for a in 0..q {
                let da = digits(a, p, mu);
                let na: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
                neg[a as usize] = undigits(&na, p);
                for b in 0..q {
                    let db = digits(b, p, mu);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                    add[(a * q + b) as usize] = undigits(&s, p);
                }
            }
        }
        Field { t: Arc::new(Tables { p, m, q, modulus, exp, log, add, neg }) }
    }

    fn primitive(p: u32, m: u32, modulus: &[u32]) -> u32 {
        let q = p.pow(m);
        let factors = prime_factors(q as u64 - 1);
        let mu = m as usize;
        let pow = |g: u32, mut e: u64| -> u32 {
            if m == 1 {
                let mut acc = 1u64;
                let mut b = g as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * b % p as u64;
                    }
                    b = b * b % p as u64;
                    e >>= 1;
                }
                return acc as u32;
            }
            let mut acc = vec![1u32];
            let mut b = digits(g, p, mu);
            trim(&mut b);
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(&acc, &b, modulus, p);
                }
                b = poly_mulmod(&b, &b, modulus, p);
                e >>= 1;
            }
            acc.resize(mu, 0);
            undigits(&acc, p)
        };
        // try x first in extension fields so the table build can shift
        let order: Vec<u32> = if m > 1 { std::iter::once(p).chain(2..q).collect() } else { (2..q).collect() };
        order
            .into_iter()
            .find(|&g| factors.iter().all(|&f| pow(g, (q as u64 - 1) / f) != 1))
            .expect("multiplicative group is cyclic")
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn m(&self) -> u32 {
        self.t.m
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, lowest degree first including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.t.q
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if a < self.t.q {
            Ok(a)
        } else {
            Err(Error::OutOfRange { value: a as u64, q: self.t.q })
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let t = &*self.t;
        if t.p == 2 {
            a ^ b
        } else if t.m == 1 {
            let s = a + b;
            if s >= t.p {
                s - t.p
            } else {
                s
            }
        } else if !t.add.is_empty() {
            t.add[(a * t.q + b) as usize]
        } else {
            let (mut x, mut y, mut out, mut scale) = (a, b, 0u32, 1u32);
            for _ in 0..t.m {
                out += ((x % t.p + y % t.p) % t.p) * scale;
                x /= t.p;
                y /= t.p;
                scale *= t.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let t = &*self.t;
        if t.p == 2 {
            a
        } else if t.m == 1 {
            if a == 0 {
                0
            } else {
                t.p - a
            }
        } else if !t.neg.is_empty() {
            t.neg[a as usize]
        } else {
            let (mut x, mut out, mut scale) = (a, 0u32, 1u32);
            for _ in 0..t.m {
                out += ((t.p - x % t.p) % t.p) * scale;
                x /= t.p;
                scale *= t.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Inverse of a nonzero element. Panics on zero; see [`Field::checked_inv`].
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let t = &*self.t;
        t.exp[((t.q - 1 - t.log[a as usize]) % (t.q - 1)) as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.t;
        let l = (t.log[a as usize] as u64 * (e % (t.q as u64 - 1))) % (t.q as u64 - 1);
        t.exp[l as usize]
    }

    pub fn checked_mul(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn checked_add(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    pub fn checked_inv(&self, a: u32) -> Result<u32> {
        match self.check(a)? {
            0 => Err(Error::ZeroInverse),
            a => Ok(self.inv(a)),
        }
    }

    /// Image of an integer under the prime-subfield embedding.
    pub fn from_int(&self, v: u64) -> u32 {
        (v % self.t.p as u64) as u32
    }

    /// Polynomial coefficients of an element, lowest degree first.
    pub fn to_digits(&self, a: u32) -> Vec<u32> {
        digits(a, self.t.p, self.t.m as usize)
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        undigits(d, self.t.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::new(2, 1).unwrap();
        assert!(f.modulus().is_empty());
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.inv(1), 1);
        let g = Field::new(5, 1).unwrap();
        assert_eq!(g.mul(3, 4), 2);
        assert_eq!(g.inv(2), 3);
        assert_eq!(g.neg(2), 3);
    }

    #[test]
    fn gf4() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.inv(2), 3);
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        // x^2 + 1 is the least monic irreducible quadratic over GF(3)
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Field::new(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(Field::new(3, 13), Err(Error::FieldTooLarge { .. })));
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.checked_inv(0), Err(Error::ZeroInverse));
        assert!(matches!(f.checked_mul(5, 1), Err(Error::OutOfRange { .. })));
        assert!(Field::with_modulus(2, 2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn from_order() {
        assert_eq!(Field::from_order(8).unwrap().m(), 3);
        assert_eq!(Field::from_order(7).unwrap().p(), 7);
        assert!(Field::from_order(12).is_err());
        assert!(Field::from_order(1).is_err());
    }

    #[test]
    fn large_field_builds() {
        let f = Field::new(2, 20).unwrap();
        let a = 0x5_4321;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        let g = Field::new(3, 12).unwrap();
        assert_eq!(g.mul(12345, g.inv(12345)), 1);
        assert_eq!(g.add(12345, g.neg(12345)), 0);
    }
}
