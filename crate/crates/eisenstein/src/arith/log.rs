//! The discrete-logarithm surjection `log : F_N^x -> Z/p^r Z` and its
//! extension to F_{N^2}^x.

use std::collections::HashMap;

use super::field::{Field, FieldCtx, Fq2Elem};
use super::primes::{is_prime, numerator_n_minus_1_over_12, powmod, valuation};
use super::zmod::Zmod;
use crate::error::{Error, Result};

/// Largest N for which a full index table is built at construction.
const TABLE_LIMIT: u64 = 1 << 24;

/// A surjective homomorphism `(Z/NZ)^x -> Z/p^s Z`, normalised by
/// `log(gen_fn) = 1`.
#[derive(Clone, Debug)]
pub struct LogMap {
    n: u64,
    p: u64,
    /// Working exponent: values live in Z/p^r.
    r: u32,
    /// p-adic valuation of the numerator of (N-1)/12.
    t: u32,
    /// p-adic valuation of N^2 - 1.
    v: u32,
    ring: Zmod,
    gen: u64,
    /// `table[x] = log(x)` for `1 <= x < N` when N is small enough.
    table: Option<Vec<u64>>,
}

impl LogMap {
    /// The map at modulus `p^r` with `1 <= r <= t`.
    pub fn new(ctx: &FieldCtx, p: u64, r: u32) -> Result<Self> {
        let t = Self::eisenstein_valuation(ctx.n, p)?;
        if r == 0 || r > t {
            return Err(Error::RangeError { r, t });
        }
        Ok(Self::build(ctx, p, r, t))
    }

    /// The map at any modulus `p^s` with `1 <= s <= v_p(N-1)`.  Used for the
    /// lifted moduli that several identities are stated in.
    pub fn with_modulus(ctx: &FieldCtx, p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotEisensteinPrime { n: ctx.n, p });
        }
        let max = valuation(ctx.n - 1, p);
        if s == 0 || s > max {
            return Err(Error::RangeError { r: s, t: max });
        }
        let t = valuation(numerator_n_minus_1_over_12(ctx.n), p);
        Ok(Self::build(ctx, p, s, t))
    }

    /// `t = v_p(numerator((N-1)/12))`, or `NotEisensteinPrime` if it is zero.
    pub fn eisenstein_valuation(n: u64, p: u64) -> Result<u32> {
        let num = numerator_n_minus_1_over_12(n);
        if !is_prime(p) || num % p != 0 {
            return Err(Error::NotEisensteinPrime { n, p });
        }
        Ok(valuation(num, p))
    }

    fn build(ctx: &FieldCtx, p: u64, r: u32, t: u32) -> Self {
        let n = ctx.n;
        let ring = Zmod::new(p, r);
        let v = valuation(n - 1, p) + valuation(n + 1, p);
        let table = (n <= TABLE_LIMIT).then(|| {
            let m = ring.modulus();
            let mut tab = vec![0u64; n as usize];
            let mut x = 1u64;
            let mut i = 0u64;
            for _ in 0..n - 1 {
                tab[x as usize] = i;
                x = ctx.fp.mul(x, ctx.gen_fn);
                i = if i + 1 == m { 0 } else { i + 1 };
            }
            tab
        });
        LogMap { n, p, r, t, v, ring, gen: ctx.gen_fn, table }
    }

    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn t(&self) -> u32 {
        self.t
    }
    pub fn v(&self) -> u32 {
        self.v
    }
    /// The coefficient ring Z/p^r.
    pub fn ring(&self) -> Zmod {
        self.ring
    }
    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    /// `log(x)` for `x` prime to N (the argument is reduced mod N first).
    pub fn log(&self, x: u64) -> u64 {
        let x = x % self.n;
        assert!(x != 0, "log is undefined at 0");
        match &self.table {
            Some(t) => t[x as usize],
            None => self.log_ph(x),
        }
    }

    /// `log` of a signed integer.
    pub fn log_i64(&self, x: i64) -> u64 {
        self.log((x as i128).rem_euclid(self.n as i128) as u64)
    }

    /// Pohlig–Hellman: digits of the index of `x^((N-1)/p^r)` in base `p`,
    /// each found by baby-step/giant-step in the subgroup of order `p`.
    pub fn log_ph(&self, x: u64) -> u64 {
        let n = self.n;
        let p = self.p;
        let pr = self.ring.modulus();
        let cof = ((n - 1) / pr) as u128;
        let h = powmod(self.gen, cof, n);
        let y = powmod(x, cof, n);
        // gamma has order p.
        let gamma = powmod(h, (pr / p) as u128, n);
        let bsgs = Bsgs::new(gamma, p, n);
        let h_inv = powmod(h, (pr - 1) as u128, n);
        let mut known = 0u64;
        let mut pk = 1u64;
        for j in 0..self.r {
            let shifted = crate::arith::primes::mulmod(y, powmod(h_inv, known as u128, n), n);
            let e = pr / pk / p;
            let target = powmod(shifted, e as u128, n);
            let d = bsgs.solve(target).expect("element lies in the order-p subgroup");
            known += d * pk;
            if j + 1 < self.r {
                pk *= p;
            }
        }
        known % pr
    }
}

/// Baby-step/giant-step table for a cyclic subgroup of prime order of F_N^x.
struct Bsgs {
    n: u64,
    m: u64,
    baby: HashMap<u64, u64>,
    giant: u64,
}

impl Bsgs {
    fn new(g: u64, order: u64, n: u64) -> Self {
        let m = (order as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut x = 1u64;
        for j in 0..m {
            baby.entry(x).or_insert(j);
            x = crate::arith::primes::mulmod(x, g, n);
        }
        // g^{-m}
        let giant = powmod(powmod(g, (order - 1) as u128, n), m as u128, n);
        Bsgs { n, m, baby, giant }
    }

    fn solve(&self, target: u64) -> Option<u64> {
        let mut y = target;
        for i in 0..=self.m {
            if let Some(&j) = self.baby.get(&y) {
                return Some(i * self.m + j);
            }
            y = crate::arith::primes::mulmod(y, self.giant, self.n);
        }
        None
    }
}

/// The extension `Log(z) = (N+1)^{-1} · log(Norm z)` of a [`LogMap`] to
/// F_{N^2}^x, valid for odd `p` whenever `p^s | N - 1`.  Its restriction to
/// F_N^x is the original map since `Norm(x) = x^2` and `N + 1 ≡ 2`.
#[derive(Clone, Debug)]
pub struct ExtLog {
    lm: LogMap,
    fq2: super::field::QuadExt,
    inv_np1: u64,
}

impl ExtLog {
    pub fn new(ctx: &FieldCtx, lm: LogMap) -> Result<Self> {
        if lm.p == 2 {
            return Err(Error::UnsupportedPrime(2));
        }
        let ring = lm.ring;
        let inv_np1 = ring
            .inv(ring.reduce(ctx.n + 1))
            .ok_or(Error::UnsupportedPrime(lm.p))?;
        Ok(ExtLog { lm, fq2: ctx.fq2, inv_np1 })
    }

    pub fn base(&self) -> &LogMap {
        &self.lm
    }

    pub fn ring(&self) -> Zmod {
        self.lm.ring
    }

    /// `Log(z)` for non-zero `z`.
    pub fn log(&self, z: Fq2Elem) -> u64 {
        let nm = self.fq2.norm(z);
        self.lm.ring.mul(self.lm.log(nm), self.inv_np1)
    }
}
