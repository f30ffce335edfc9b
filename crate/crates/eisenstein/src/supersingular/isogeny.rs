//! ℓ-isogenies between Legendre curves for `ℓ ∈ {3, 5}` by Vélu's formulas.
//!
//! For `E_λ : y^2 = x(x-1)(x-λ)` the cyclic subgroups of order ℓ are read off
//! the ℓ-division polynomial over F_{N^2}.  Each subgroup `K` is described by
//! its kernel polynomial `Π_{Q ∈ S} (X - x_Q)`, `S` a set of representatives
//! of `(K - {O}) / ±1`.  Vélu's map on x-coordinates is
//!
//! `φ(x) = x + Σ_{Q ∈ S} [t_Q / (x - x_Q) + u_Q / (x - x_Q)^2]`
//!
//! and the image curve is put back into Legendre form by sending the images
//! of `(0, 0)` and `(1, 0)` to `(0, 0)` and `(1, 0)`:
//! `λ' = (φ(λ) - φ(0)) / (φ(1) - φ(0))`.
//!
//! Symmetric functions of the `x_Q` are evaluated as traces in the algebra
//! `F_{N^2}[X] / (kernel polynomial)`, so kernels whose points are only
//! defined over F_{N^4} need no further extension.

use super::{Backing, SupersingularSet, Verdict};
use crate::arith::{low_degree_factors, Field, FieldCtx, Fq2Elem, Poly, PolyRing, QuadExt};
use crate::error::{Error, Result};

/// Coefficients `b2, b4, b6, b8` of `E_λ` (with `a1 = a3 = a6 = 0`).
struct Legendre {
    a2: Fq2Elem,
    a4: Fq2Elem,
    b2: Fq2Elem,
    b4: Fq2Elem,
    b6: Fq2Elem,
    b8: Fq2Elem,
}

impl Legendre {
    fn new(q: &QuadExt, l: Fq2Elem) -> Self {
        let a2 = q.neg(q.add(q.one(), l));
        let a4 = l;
        Legendre {
            a2,
            a4,
            b2: q.mul(q.from_u64(4), a2),
            b4: q.mul(q.from_u64(2), a4),
            b6: q.zero(),
            b8: q.neg(q.mul(a4, a4)),
        }
    }

    /// `ψ_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8`.
    fn psi3(&self, ring: &PolyRing<QuadExt>) -> Poly<Fq2Elem> {
        let q = &ring.field;
        let three = q.from_u64(3);
        ring.from_coeffs(vec![self.b8, q.mul(three, self.b6), q.mul(three, self.b4), self.b2, three])
    }

    /// `ψ_5 = ψ_2^4 (ψ_4 / ψ_2) - ψ_3^3`, where `ψ_2^4 = 16 f(x)^2`.
    fn psi5(&self, ring: &PolyRing<QuadExt>) -> Poly<Fq2Elem> {
        let q = &ring.field;
        let c = |k: u64| q.from_u64(k);
        let (b2, b4, b6, b8) = (self.b2, self.b4, self.b6, self.b8);
        let f4 = ring.from_coeffs(vec![
            q.sub(q.mul(b4, b8), q.mul(b6, b6)),
            q.sub(q.mul(b2, b8), q.mul(b4, b6)),
            q.mul(c(10), b8),
            q.mul(c(10), b6),
            q.mul(c(5), b4),
            b2,
            c(2),
        ]);
        let f = ring.from_coeffs(vec![q.zero(), self.a4, self.a2, q.one()]);
        let lhs = ring.scale(&ring.mul(&ring.mul(&f, &f), &f4), c(16));
        let p3 = self.psi3(ring);
        ring.sub(&lhs, &ring.mul(&ring.mul(&p3, &p3), &p3))
    }
}

/// `F_{N^2}[X] / (k)` for a monic `k` of degree 1 or 2; an element is
/// `a + bX` (with `b = 0` in degree 1).
struct Quotient<'a> {
    q: &'a QuadExt,
    deg: usize,
    /// `k = X^2 + c1 X + c0`, or `X + c0` in degree 1.
    c0: Fq2Elem,
    c1: Fq2Elem,
}

type Elt = (Fq2Elem, Fq2Elem);

impl<'a> Quotient<'a> {
    fn new(q: &'a QuadExt, k: &Poly<Fq2Elem>) -> Self {
        let deg = k.degree().expect("kernel polynomial is non-zero");
        assert!(deg == 1 || deg == 2);
        Quotient { q, deg, c0: k.coeff(0, q.zero()), c1: k.coeff(1, q.zero()) }
    }

    fn x(&self) -> Elt {
        if self.deg == 1 {
            (self.q.neg(self.c0), self.q.zero())
        } else {
            (self.q.zero(), self.q.one())
        }
    }

    fn scalar(&self, a: Fq2Elem) -> Elt {
        (a, self.q.zero())
    }

    fn add(&self, x: Elt, y: Elt) -> Elt {
        (self.q.add(x.0, y.0), self.q.add(x.1, y.1))
    }

    fn sub(&self, x: Elt, y: Elt) -> Elt {
        (self.q.sub(x.0, y.0), self.q.sub(x.1, y.1))
    }

    fn mul(&self, x: Elt, y: Elt) -> Elt {
        let q = self.q;
        let bd = q.mul(x.1, y.1);
        (
            q.sub(q.mul(x.0, y.0), q.mul(bd, self.c0)),
            q.sub(q.add(q.mul(x.0, y.1), q.mul(x.1, y.0)), q.mul(bd, self.c1)),
        )
    }

    fn inv(&self, x: Elt) -> Option<Elt> {
        let q = self.q;
        let (a, b) = x;
        // Norm of a + bX is (a + b x_1)(a + b x_2) = a^2 - ab c1 + b^2 c0.
        let norm = q.add(q.sub(q.mul(a, a), q.mul(q.mul(a, b), self.c1)), q.mul(q.mul(b, b), self.c0));
        let ni = q.inv(norm)?;
        Some((q.mul(q.sub(a, q.mul(b, self.c1)), ni), q.neg(q.mul(b, ni))))
    }

    fn trace(&self, x: Elt) -> Fq2Elem {
        let q = self.q;
        if self.deg == 1 {
            x.0
        } else {
            q.sub(q.mul(q.from_u64(2), x.0), q.mul(x.1, self.c1))
        }
    }

    /// Evaluates a polynomial at `X`.
    fn eval(&self, f: &[Fq2Elem]) -> Elt {
        let x = self.x();
        f.iter().rev().fold(self.scalar(self.q.zero()), |acc, &c| self.add(self.mul(acc, x), self.scalar(c)))
    }
}

/// `x(2P) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6)`
/// evaluated at `X` in the quotient algebra.
fn double_x(alg: &Quotient, e: &Legendre) -> Option<Elt> {
    let q = alg.q;
    let two = q.from_u64(2);
    let num = alg.eval(&[q.neg(e.b8), q.neg(q.mul(two, e.b6)), q.neg(e.b4), q.zero(), q.one()]);
    let den = alg.eval(&[e.b6, q.mul(two, e.b4), e.b2, q.from_u64(4)]);
    Some(alg.mul(num, alg.inv(den)?))
}

/// Kernel polynomials of the cyclic subgroups of order `ell` of `E_λ`.
fn kernel_polynomials(ctx: &FieldCtx, e: &Legendre, ell: u64) -> Result<Vec<Poly<Fq2Elem>>> {
    let q = &ctx.fq2;
    let ring = PolyRing::new(ctx.fq2);
    let bug = |s: String| Error::InternalInvariantViolation(s);
    let mut kernels = Vec::new();
    match ell {
        3 => {
            let fac = low_degree_factors(&ring, &e.psi3(&ring));
            kernels.extend(fac.roots.iter().map(|&x| ring.linear(x)));
        }
        5 => {
            let fac = low_degree_factors(&ring, &e.psi5(&ring));
            for &x in &fac.roots {
                let alg = Quotient::new(q, &ring.linear(x));
                let x2 = double_x(&alg, e).ok_or_else(|| bug("5-torsion point of order 2".into()))?.0;
                if fac.roots.binary_search(&x2).is_err() {
                    return Err(bug("x(2P) is not a root of the division polynomial".into()));
                }
                if x < x2 {
                    kernels.push(ring.mul(&ring.linear(x), &ring.linear(x2)));
                }
            }
            for k in &fac.quadratics {
                // The two roots of k must be x(P) and x(2P).
                let alg = Quotient::new(q, k);
                let x2 = double_x(&alg, e).ok_or_else(|| bug("5-torsion point of order 2".into()))?;
                let conj = (q.neg(k.coeff(1, q.zero())), q.neg(q.one()));
                if x2 != conj {
                    return Err(bug("quadratic factor of the division polynomial is not a kernel".into()));
                }
                kernels.push(k.clone());
            }
        }
        _ => return Err(Error::UnsupportedDegree(ell)),
    }
    if kernels.len() as u64 != ell + 1 {
        return Err(bug(format!("found {} kernels of degree {ell}, expected {}", kernels.len(), ell + 1)));
    }
    Ok(kernels)
}

/// Vélu's x-coordinate map at a point `a` outside the kernel.
fn velu_x(alg: &Quotient, e: &Legendre, a: Fq2Elem) -> Option<Fq2Elem> {
    let q = alg.q;
    let two = q.from_u64(2);
    // t_Q = 6x^2 + b2 x + b4, u_Q = 4x^3 + b2 x^2 + 2 b4 x + b6.
    let t = alg.eval(&[e.b4, e.b2, q.from_u64(6)]);
    let u = alg.eval(&[e.b6, q.mul(two, e.b4), e.b2, q.from_u64(4)]);
    let d = alg.inv(alg.sub(alg.scalar(a), alg.x()))?;
    let s = alg.add(alg.mul(t, d), alg.mul(u, alg.mul(d, d)));
    Some(q.add(a, alg.trace(s)))
}

/// The `ell + 1` Legendre invariants `λ'` of curves ℓ-isogenous to `E_λ`
/// with the 2-torsion level structure carried along; `ell ∈ {3, 5}`.
pub fn legendre_isogenies(ctx: &FieldCtx, l: Fq2Elem, ell: u64) -> Result<Vec<Fq2Elem>> {
    if !(ell == 3 || ell == 5) || ell == ctx.n {
        return Err(Error::UnsupportedDegree(ell));
    }
    let q = &ctx.fq2;
    let e = Legendre::new(q, l);
    let bug = || Error::InternalInvariantViolation("2-torsion point in an odd kernel".into());
    let mut out = Vec::with_capacity(ell as usize + 1);
    for k in kernel_polynomials(ctx, &e, ell)? {
        let alg = Quotient::new(q, &k);
        let f0 = velu_x(&alg, &e, q.zero()).ok_or_else(bug)?;
        let f1 = velu_x(&alg, &e, q.one()).ok_or_else(bug)?;
        let fl = velu_x(&alg, &e, l).ok_or_else(bug)?;
        let den = q.inv(q.sub(f1, f0)).ok_or_else(bug)?;
        out.push(q.mul(q.sub(fl, f0), den));
    }
    out.sort();
    Ok(out)
}

/// The isogeny correspondence `T_ℓ` on `L`: the indices of the λ' for
/// each λ.
pub fn hecke_correspondence(ss: &SupersingularSet, ell: u64) -> Result<Vec<Vec<usize>>> {
    ss.lambdas
        .iter()
        .map(|&l| {
            legendre_isogenies(ss.ctx(), l, ell)?
                .into_iter()
                .map(|z| {
                    ss.index_of(z).map_err(|_| {
                        Error::InternalInvariantViolation(format!("isogenous invariant {z:?} is not supersingular"))
                    })
                })
                .collect()
        })
        .collect()
}

/// For every `λ ∈ L`, over its ℓ-isogenous `λ'`:
///
/// * `Π H'(λ') = ℓ^{ℓ-1} H'(λ)^{ℓ+1}`;
/// * `Π λ' = λ^{ℓ+1}` and `Π (1 - λ') = (1 - λ)^{ℓ+1}`;
/// * every λ' lies in `L` and each λ is hit `ℓ + 1` times in total.
pub fn verify_hprime_product(ss: &SupersingularSet, ell: u64) -> Result<Vec<Verdict>> {
    let corr = hecke_correspondence(ss, ell)?;
    let ctx = ss.ctx();
    let q = &ctx.fq2;
    let e = (ell + 1) as u128;
    let c = q.pow(q.from_u64(ell), (ell - 1) as u128);
    let mut bad_h = Vec::new();
    let mut bad_l = Vec::new();
    let mut indeg = vec![0u64; ss.len()];
    for (i, row) in corr.iter().enumerate() {
        let l = ss.lambdas[i];
        let prod = |f: &dyn Fn(usize) -> Fq2Elem| row.iter().fold(q.one(), |a, &k| q.mul(a, f(k)));
        if prod(&|k| ss.hprime[k]) != q.mul(c, q.pow(ss.hprime[i], e)) {
            bad_h.push(i);
        }
        let om = |z: Fq2Elem| q.sub(q.one(), z);
        if prod(&|k| ss.lambdas[k]) != q.pow(l, e) || prod(&|k| om(ss.lambdas[k])) != q.pow(om(l), e) {
            bad_l.push(i);
        }
        for &k in row {
            indeg[k] += 1;
        }
    }
    let regular = indeg.iter().all(|&d| d == ell + 1);
    Ok(vec![
        Verdict::new(
            "hprime_product",
            Backing::Theorem,
            bad_h.is_empty(),
            format!("ell = {ell}, {} of {} lambda fail", bad_h.len(), ss.len()),
        ),
        Verdict::new(
            "lambda_product",
            Backing::Theorem,
            bad_l.is_empty(),
            format!("ell = {ell}, {} of {} lambda fail", bad_l.len(), ss.len()),
        ),
        Verdict::new(
            "correspondence_degree",
            Backing::Theorem,
            regular,
            format!("ell = {ell}, in-degrees {:?}", {
                let mut d = indeg.clone();
                d.sort_unstable();
                d.dedup();
                d
            }),
        ),
    ])
}
