//! Arithmetic in the local ring Z/p^k Z.

use super::primes::mulmod;

/// The ring Z/p^k Z for a prime `p` and `k >= 1` with `p^k < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    p: u64,
    k: u32,
    m: u64,
}

impl Zmod {
    pub fn new(p: u64, k: u32) -> Self {
        assert!(k >= 1, "Z/p^k needs k >= 1");
        let m = p.checked_pow(k).expect("p^k fits in a word");
        assert!(m < 1 << 63);
        Zmod { p, k, m }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.m
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.m as i128) as u64
    }

    pub fn from_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.m as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.m <= 1 << 32 {
            a * b % self.m
        } else {
            mulmod(a, b, self.m)
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.m;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// p-adic valuation of a residue, `k` for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.m;
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    /// Inverse of a unit, `None` otherwise.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let (mut r0, mut r1) = (self.m as i128, (a % self.m) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.m as i128) as u64)
    }

    /// The rational `num / den` as an element of Z/p^k, after cancelling
    /// common factors of `p`; `None` if the reduced denominator is not a unit.
    pub fn from_ratio(&self, mut num: i128, mut den: i128) -> Option<u64> {
        assert!(den != 0);
        let p = self.p as i128;
        while den % p == 0 {
            if num % p != 0 {
                return None;
            }
            num /= p;
            den /= p;
        }
        let inv = self.inv(self.from_i128(den))?;
        Some(self.mul(self.from_i128(num), inv))
    }

    /// `a / u` for an integer `u` prime to `p`; panics otherwise.
    pub fn div_int(&self, a: u64, u: i64) -> u64 {
        self.mul(a, self.inv(self.from_i64(u)).expect("divisor must be a unit"))
    }

    /// Solves `b * x = a` when `v(b) <= v(a)`, returning one solution.
    pub fn divide(&self, a: u64, b: u64) -> Option<u64> {
        let vb = self.valuation(b);
        if self.valuation(a) < vb {
            return None;
        }
        if vb == self.k {
            return Some(0);
        }
        let pv = self.p.pow(vb);
        let sub = Zmod::new(self.p, self.k - vb);
        let u = sub.inv((b / pv) % sub.m)?;
        Some(sub.mul((a / pv) % sub.m, u))
    }

    /// Reduction to a smaller power `p^j`, `j <= k`.
    pub fn truncate(&self, a: u64, j: u32) -> u64 {
        a % self.p.pow(j)
    }
}
