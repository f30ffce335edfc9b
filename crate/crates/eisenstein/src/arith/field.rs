//! The prime field F_N, its quadratic extension F_{N^2}, and the shared
//! context [`FieldCtx`] fixing a non-residue and generators.

use std::fmt::Debug;
use std::hash::Hash;

use super::primes::{factorize, is_prime, powmod};
use crate::error::{Error, Result};

/// A finite field with a context object; elements are plain `Copy` values.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, x: u64) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// Number of elements of the field.
    fn order(&self) -> u128;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn from_i64(&self, x: i64) -> Self::Elem {
        let n = self.characteristic() as i128;
        self.from_u64((x as i128).rem_euclid(n) as u64)
    }

    fn pow(&self, mut a: Self::Elem, mut e: u128) -> Self::Elem {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Product of two dense coefficient slices (low degree first).
    fn poly_mul(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        out
    }

    /// A deterministic enumeration of field elements used as splitting
    /// parameters; index 0 is zero.
    fn nth_element(&self, i: u64) -> Self::Elem;
}

/// The prime field F_N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    n: u64,
}

impl PrimeField {
    /// Creates F_N without checking primality (see [`FieldCtx::new`]).
    pub fn new_unchecked(n: u64) -> Self {
        PrimeField { n }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Legendre symbol of `a` (0, 1 or -1).
    pub fn legendre(&self, a: u64) -> i32 {
        let a = a % self.n;
        if a == 0 {
            return 0;
        }
        if powmod(a, ((self.n - 1) / 2) as u128, self.n) == 1 {
            1
        } else {
            -1
        }
    }

    /// A square root of a quadratic residue (Tonelli–Shanks), `None` otherwise.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.n;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.legendre(z) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = powmod(z, q as u128, p);
        let mut t = powmod(a, q as u128, p);
        let mut r = powmod(a, q.div_ceil(2) as u128, p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = powmod(c, 1u128 << (m - i - 1), p);
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r.min(p - r))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, x: u64) -> u64 {
        x % self.n
    }
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }
    #[inline]
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.n < (1 << 32) {
            a * b % self.n
        } else {
            ((a as u128 * b as u128) % self.n as u128) as u64
        }
    }
    fn inv(&self, a: u64) -> Option<u64> {
        if a % self.n == 0 {
            return None;
        }
        // Extended Euclid on signed 128-bit integers.
        let (mut r0, mut r1) = (self.n as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.n as i128) as u64)
    }
    fn characteristic(&self) -> u64 {
        self.n
    }
    fn order(&self) -> u128 {
        self.n as u128
    }

    /// Schoolbook product with lazy reduction: partial sums are accumulated in
    /// 128 bits and reduced only when overflow could occur.
    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let n = self.n as u128;
        let len = a.len() + b.len() - 1;
        // Each product is < n^2; this many fit in a u128 accumulator.
        let chunk = if self.n < (1 << 32) { usize::MAX } else { 32 };
        let mut acc = vec![0u128; len];
        let mut pending = 0usize;
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                let x = x as u128;
                for (slot, &y) in acc[i..i + b.len()].iter_mut().zip(b) {
                    *slot += x * y as u128;
                }
            }
            pending += 1;
            if pending >= chunk {
                acc.iter_mut().for_each(|v| *v %= n);
                pending = 0;
            }
        }
        acc.into_iter().map(|v| (v % n) as u64).collect()
    }

    fn nth_element(&self, i: u64) -> u64 {
        i % self.n
    }
}

/// Element `a + b·x` of F_{N^2} = F_N[x]/(x^2 - nonresidue).
///
/// The derived order is lexicographic on `(a, b)`, which is the canonical
/// ordering used for root lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq2Elem {
    pub a: u64,
    pub b: u64,
}

impl Fq2Elem {
    pub const fn new(a: u64, b: u64) -> Self {
        Fq2Elem { a, b }
    }

    /// True when the element lies in the prime field.
    pub fn is_base(&self) -> bool {
        self.b == 0
    }
}

/// The quadratic extension F_{N^2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExt {
    base: PrimeField,
    nonres: u64,
}

impl QuadExt {
    pub fn new_unchecked(base: PrimeField, nonres: u64) -> Self {
        QuadExt { base, nonres }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonres
    }

    /// Embeds an element of F_N.
    pub fn embed(&self, a: u64) -> Fq2Elem {
        Fq2Elem::new(a % self.base.n, 0)
    }

    /// The generator `x` of the extension (a square root of the non-residue).
    pub fn x(&self) -> Fq2Elem {
        Fq2Elem::new(0, 1)
    }

    /// Frobenius `a + b x -> a - b x`, i.e. `z -> z^N`.
    pub fn frobenius(&self, z: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(z.a, self.base.neg(z.b))
    }

    /// Norm to F_N, equal to `z^(N+1)`.
    pub fn norm(&self, z: Fq2Elem) -> u64 {
        let f = &self.base;
        f.sub(f.mul(z.a, z.a), f.mul(self.nonres, f.mul(z.b, z.b)))
    }

    /// Some square root in F_{N^2}, or `None` if `z` is not a square there.
    ///
    /// Elements of F_N are always squares in F_{N^2}: a non-residue `d` has
    /// root `sqrt(d / nonresidue) · x`.
    pub fn sqrt(&self, z: Fq2Elem) -> Option<Fq2Elem> {
        let f = &self.base;
        if z.b == 0 {
            if let Some(r) = f.sqrt(z.a) {
                return Some(Fq2Elem::new(r, 0));
            }
            let q = f.mul(z.a, f.inv(self.nonres)?);
            let r = f.sqrt(q)?;
            return Some(Fq2Elem::new(0, r));
        }
        // (c + d x)^2 = z  <=>  c^2 + nr d^2 = a, 2cd = b.  With n = Norm(z) a
        // square in F_N: c^2 = (a ± sqrt(n)) / 2.
        let n = self.norm(z);
        let s = f.sqrt(n)?;
        let inv2 = f.inv(2)?;
        for s in [s, f.neg(s)] {
            let c2 = f.mul(f.add(z.a, s), inv2);
            if let Some(c) = f.sqrt(c2) {
                if c == 0 {
                    continue;
                }
                let d = f.mul(z.b, f.inv(f.mul(2, c))?);
                let cand = Fq2Elem::new(c, d);
                if self.mul(cand, cand) == z {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// True if `z` is a `k`-th power in F_{N^2}^x (for non-zero `z`).
    pub fn is_kth_power(&self, z: Fq2Elem, k: u64) -> bool {
        let order = self.order() - 1;
        let g = gcd_u128(order, k as u128);
        self.pow(z, order / g) == self.one()
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Field for QuadExt {
    type Elem = Fq2Elem;

    fn zero(&self) -> Fq2Elem {
        Fq2Elem::new(0, 0)
    }
    fn one(&self) -> Fq2Elem {
        Fq2Elem::new(1, 0)
    }
    fn from_u64(&self, x: u64) -> Fq2Elem {
        Fq2Elem::new(x % self.base.n, 0)
    }
    #[inline]
    fn add(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(self.base.add(x.a, y.a), self.base.add(x.b, y.b))
    }
    #[inline]
    fn sub(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(self.base.sub(x.a, y.a), self.base.sub(x.b, y.b))
    }
    #[inline]
    fn neg(&self, x: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(self.base.neg(x.a), self.base.neg(x.b))
    }
    #[inline]
    fn mul(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        let f = &self.base;
        let ac = f.mul(x.a, y.a);
        let bd = f.mul(x.b, y.b);
        let ad = f.mul(x.a, y.b);
        let bc = f.mul(x.b, y.a);
        Fq2Elem::new(f.add(ac, f.mul(bd, self.nonres)), f.add(ad, bc))
    }
    fn inv(&self, x: Fq2Elem) -> Option<Fq2Elem> {
        let n = self.norm(x);
        let ninv = self.base.inv(n)?;
        let c = self.frobenius(x);
        Some(Fq2Elem::new(self.base.mul(c.a, ninv), self.base.mul(c.b, ninv)))
    }
    fn characteristic(&self) -> u64 {
        self.base.n
    }
    fn order(&self) -> u128 {
        let n = self.base.n as u128;
        n * n
    }
    fn nth_element(&self, i: u64) -> Fq2Elem {
        let n = self.base.n;
        Fq2Elem::new(i % n, (i / n) % n)
    }
}

/// The pair (F_N, F_{N^2}) with the deterministic choices every other module
/// relies on: smallest quadratic non-residue and smallest generators.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    pub n: u64,
    pub fp: PrimeField,
    pub fq2: QuadExt,
    pub nonresidue: u64,
    /// Generator of F_N^x (order N-1).
    pub gen_fn: u64,
    /// Generator of F_{N^2}^x (order N^2-1).
    pub gen_fn2: Fq2Elem,
}

impl FieldCtx {
    /// Builds the context for an odd prime `N >= 5`.
    pub fn new(n: u64) -> Result<Self> {
        if n < 5 {
            return Err(if n == 4 { Error::CompositeModulus(n) } else { Error::BadPrime(n) });
        }
        if !is_prime(n) {
            return Err(Error::CompositeModulus(n));
        }
        if n >= 1 << 61 {
            return Err(Error::BadPrime(n));
        }
        let fp = PrimeField::new_unchecked(n);
        let nonresidue = (2..n).find(|&a| fp.legendre(a) == -1).expect("odd prime");
        let fq2 = QuadExt::new_unchecked(fp, nonresidue);

        let fac1 = factorize(n - 1);
        let gen_fn = (2..n)
            .find(|&g| fac1.iter().all(|&(q, _)| powmod(g, ((n - 1) / q) as u128, n) != 1))
            .expect("F_N^x is cyclic");

        let order2 = (n as u128) * (n as u128) - 1;
        let mut qs: Vec<u64> = fac1.iter().map(|&(q, _)| q).collect();
        qs.extend(factorize(n + 1).into_iter().map(|(q, _)| q));
        qs.sort_unstable();
        qs.dedup();
        let gen_fn2 = (0..n)
            .flat_map(|a| (1..n).map(move |b| Fq2Elem::new(a, b)))
            .find(|&g| qs.iter().all(|&q| fq2.pow(g, order2 / q as u128) != fq2.one()))
            .expect("F_{N^2}^x is cyclic");

        Ok(FieldCtx { n, fp, fq2, nonresidue, gen_fn, gen_fn2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonresidue_examples() {
        assert_eq!(FieldCtx::new(5).unwrap().nonresidue, 2);
        assert_eq!(FieldCtx::new(7).unwrap().nonresidue, 3);
        assert_eq!(FieldCtx::new(4).unwrap_err(), Error::CompositeModulus(4));
        assert_eq!(FieldCtx::new(3).unwrap_err(), Error::BadPrime(3));
    }

    #[test]
    fn generators_have_full_order() {
        for n in [5u64, 7, 11, 13, 181, 1571] {
            let ctx = FieldCtx::new(n).unwrap();
            let fp = ctx.fp;
            let mut x = 1;
            for k in 1..n - 1 {
                x = fp.mul(x, ctx.gen_fn);
                assert_ne!(x, 1, "order divides {k}");
            }
            assert_eq!(fp.mul(x, ctx.gen_fn), 1);
            let q = ctx.fq2;
            assert_eq!(q.pow(ctx.gen_fn2, (n as u128).pow(2) - 1), q.one());
        }
    }

    #[test]
    fn fq2_sqrt_and_norm() {
        let ctx = FieldCtx::new(13).unwrap();
        let q = ctx.fq2;
        for a in 0..13 {
            for b in 0..13 {
                let z = Fq2Elem::new(a, b);
                assert_eq!(q.embed(q.norm(z)), q.pow(z, 14));
                let sq = q.mul(z, z);
                let r = q.sqrt(sq).expect("square");
                assert_eq!(q.mul(r, r), sq);
            }
        }
    }

    #[test]
    fn prime_sqrt() {
        let f = PrimeField::new_unchecked(1_000_000_007);
        for a in [4u64, 9, 123_456_789, 2] {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(r, r), a);
            }
        }
    }

    #[test]
    fn lazy_poly_mul_matches_schoolbook() {
        let big = PrimeField::new_unchecked((1 << 61) - 1);
        let a: Vec<u64> = (0..100).map(|i| (i * 7_919_993_111 + 3) % ((1 << 61) - 1)).collect();
        let b: Vec<u64> = (0..77).map(|i| (i * 1_234_567_891_011 + 5) % ((1 << 61) - 1)).collect();
        let mut naive = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                naive[i + j] = big.add(naive[i + j], big.mul(x, y));
            }
        }
        assert_eq!(big.poly_mul(&a, &b), naive);
    }
}
