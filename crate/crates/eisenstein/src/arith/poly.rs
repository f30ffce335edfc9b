//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored lowest degree first and are always normalised:
//! the leading coefficient is non-zero, and the zero polynomial is empty.

use super::field::Field;
use crate::error::{Error, Result};

/// A normalised dense polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Copy + Eq> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, `None` for the zero polynomial.
    pub fn lc(&self) -> Option<E> {
        self.coeffs.last().copied()
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize, zero: E) -> E {
        self.coeffs.get(i).copied().unwrap_or(zero)
    }
}

/// Polynomial arithmetic over a fixed field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    /// Builds a polynomial from coefficients (lowest degree first).
    pub fn from_coeffs(&self, mut c: Vec<F::Elem>) -> Poly<F::Elem> {
        while c.last().is_some_and(|&x| self.field.is_zero(x)) {
            c.pop();
        }
        Poly { coeffs: c }
    }

    pub fn from_u64s(&self, c: &[u64]) -> Poly<F::Elem> {
        self.from_coeffs(c.iter().map(|&x| self.field.from_u64(x)).collect())
    }

    pub fn from_i64s(&self, c: &[i64]) -> Poly<F::Elem> {
        self.from_coeffs(c.iter().map(|&x| self.field.from_i64(x)).collect())
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    /// The monomial `c · X^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut v = vec![self.field.zero(); k + 1];
        v[k] = c;
        self.from_coeffs(v)
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    /// `X - a`.
    pub fn linear(&self, a: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![self.field.neg(a), self.field.one()])
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(a.coeff(i, f.zero()), b.coeff(i, f.zero())))
            .collect();
        self.from_coeffs(c)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(a.coeff(i, f.zero()), b.coeff(i, f.zero())))
            .collect();
        self.from_coeffs(c)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|&x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_coeffs(self.field.poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut e: u64) -> Poly<F::Elem> {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let f = &self.field;
        let db = b.degree().expect("division by the zero polynomial");
        let Some(da) = a.degree() else {
            return (self.zero(), self.zero());
        };
        if da < db {
            return (self.zero(), a.clone());
        }
        let inv = f.inv(b.lc().unwrap()).expect("non-zero leading coefficient");
        let mut r = a.coeffs.clone();
        let mut q = vec![f.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = f.mul(r[k + db], inv);
            q[k] = c;
            if f.is_zero(c) {
                continue;
            }
            for (i, &bi) in b.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, bi));
            }
        }
        r.truncate(db);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Exact division; panics if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (q, r) = self.divrem(a, b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales to a monic polynomial (zero stays zero).
    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lc() {
            None => a.clone(),
            Some(c) => self.scale(a, self.field.inv(c).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        let c = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| f.mul(f.from_u64(i as u64), x))
            .collect();
        self.from_coeffs(c)
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &Poly<F::Elem>, x: F::Elem) -> F::Elem {
        let f = &self.field;
        a.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `a(b(X))`.
    pub fn compose(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        a.coeffs.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, b), &self.constant(c))
        })
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &Poly<F::Elem>, mut e: u128, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut b = self.rem(base, m);
        let mut r = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.rem(&self.mul(&r, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        r
    }

    /// Resultant `Res(a, b) = lc(a)^{deg b} · prod_{a(α)=0} b(α)`, computed by
    /// the Euclidean algorithm with leading-coefficient corrections.
    ///
    /// Equals the Sylvester determinant; in particular
    /// `Res(a, b) = (-1)^{deg a · deg b} Res(b, a)` and `Res(a, c) = c^{deg a}`
    /// for a non-zero constant `c`.  If exactly one input is zero the result
    /// is zero.
    pub fn resultant(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<F::Elem> {
        let f = &self.field;
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        if a.is_zero() || b.is_zero() {
            return Ok(f.zero());
        }
        let mut res = f.one();
        let (mut p, mut q) = (a.clone(), b.clone());
        loop {
            let dp = p.degree().unwrap();
            let dq = q.degree().unwrap();
            let lq = q.lc().unwrap();
            if dq == 0 {
                return Ok(f.mul(res, f.pow(lq, dp as u128)));
            }
            let r = self.rem(&p, &q);
            if r.is_zero() {
                return Ok(f.zero());
            }
            let dr = r.degree().unwrap();
            if (dp * dq) % 2 == 1 {
                res = f.neg(res);
            }
            res = f.mul(res, f.pow(lq, (dp - dr) as u128));
            p = q;
            q = r;
        }
    }

    /// Discriminant `(-1)^{d(d-1)/2} lc^{-1} Res(a, a')`.
    pub fn discriminant(&self, a: &Poly<F::Elem>) -> Result<F::Elem> {
        let f = &self.field;
        let d = a.degree().ok_or(Error::BothZero)?;
        let r = self.resultant(a, &self.derivative(a))?;
        let mut v = f.mul(r, f.inv(a.lc().unwrap()).unwrap());
        if (d * (d.saturating_sub(1)) / 2) % 2 == 1 {
            v = f.neg(v);
        }
        Ok(v)
    }

    /// The unique polynomial of degree `< n` through `n` points with distinct
    /// abscissae (Newton divided differences).
    pub fn interpolate(&self, pts: &[(F::Elem, F::Elem)]) -> Poly<F::Elem> {
        let f = &self.field;
        let n = pts.len();
        let mut dd: Vec<F::Elem> = pts.iter().map(|p| p.1).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = f.sub(dd[i], dd[i - 1]);
                let den = f.sub(pts[i].0, pts[i - j].0);
                dd[i] = f.mul(num, f.inv(den).expect("distinct abscissae"));
            }
        }
        let mut acc = self.zero();
        for i in (0..n).rev() {
            acc = self.add(&self.mul(&acc, &self.linear(pts[i].0)), &self.constant(dd[i]));
        }
        acc
    }

    /// Maps coefficients into another field (e.g. F_N into F_{N^2}).
    pub fn map<G: Field>(&self, a: &Poly<F::Elem>, target: &PolyRing<G>, m: impl Fn(F::Elem) -> G::Elem) -> Poly<G::Elem> {
        target.from_coeffs(a.coeffs.iter().map(|&c| m(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::PrimeField;

    fn ring(n: u64) -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new_unchecked(n))
    }

    /// Sylvester determinant by Gaussian elimination, used as an oracle.
    fn sylvester(r: &PolyRing<PrimeField>, a: &Poly<u64>, b: &Poly<u64>) -> u64 {
        let f = &r.field;
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return 1;
        }
        let mut mat = vec![vec![0u64; size]; size];
        for i in 0..n {
            for (j, &c) in a.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c;
            }
        }
        for i in 0..m {
            for (j, &c) in b.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c;
            }
        }
        let mut det = 1u64;
        for col in 0..size {
            let Some(piv) = (col..size).find(|&i| mat[i][col] != 0) else {
                return 0;
            };
            if piv != col {
                mat.swap(piv, col);
                det = f.neg(det);
            }
            det = f.mul(det, mat[col][col]);
            let inv = f.inv(mat[col][col]).unwrap();
            for i in col + 1..size {
                let c = f.mul(mat[i][col], inv);
                if c != 0 {
                    for j in col..size {
                        let v = f.mul(c, mat[col][j]);
                        mat[i][j] = f.sub(mat[i][j], v);
                    }
                }
            }
        }
        det
    }

    #[test]
    fn resultant_examples() {
        let r = ring(5);
        let f = r.from_u64s(&[1, 0, 1]);
        let g = r.from_u64s(&[4, 1]); // X - 1
        assert_eq!(r.resultant(&f, &g).unwrap(), 2);
        let h = r.from_u64s(&[1, 4, 1]);
        let hp = r.derivative(&h);
        assert_eq!(hp, r.from_u64s(&[4, 2]));
        assert_eq!(r.resultant(&h, &hp).unwrap(), 3);
        assert_eq!(r.discriminant(&h).unwrap(), 2);
        assert_eq!(r.resultant(&h, &r.constant(3)).unwrap(), 4);
        assert_eq!(r.resultant(&r.zero(), &r.zero()), Err(Error::BothZero));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let r = ring(101);
        let polys: Vec<Poly<u64>> = (1..7)
            .map(|d| r.from_u64s(&(0..=d).map(|i| (i * i * 7 + d * 3 + 1) % 101).collect::<Vec<_>>()))
            .collect();
        for a in &polys {
            for b in &polys {
                assert_eq!(r.resultant(a, b).unwrap(), sylvester(&r, a, b));
            }
        }
    }

    #[test]
    fn interpolation_roundtrip() {
        let r = ring(97);
        let p = r.from_u64s(&[3, 1, 4, 1, 5, 9, 2, 6]);
        let pts: Vec<(u64, u64)> = (0..8).map(|x| (x, r.eval(&p, x))).collect();
        assert_eq!(r.interpolate(&pts), p);
    }

    #[test]
    fn divrem_and_gcd() {
        let r = ring(13);
        let a = r.mul(&r.from_u64s(&[1, 1]), &r.from_u64s(&[2, 0, 1]));
        let b = r.mul(&r.from_u64s(&[1, 1]), &r.from_u64s(&[5, 1]));
        assert_eq!(r.gcd(&a, &b), r.from_u64s(&[1, 1]));
        let (q, rem) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
    }
}
