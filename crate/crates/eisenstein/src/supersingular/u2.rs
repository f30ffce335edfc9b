//! The 2-isogeny correspondence through the polynomial
//! `φ_2(X, Y) = Y^2 (1-X)^2 + 16 X Y - 16 X`.
//!
//! For `λ ∈ L` the two roots of `φ_2(λ, Y)` are the λ-invariants of the
//! curves 2-isogenous to `E_λ` through the isogeny killing `(0, 0)`; they
//! give the operator `U_2 [λ] = [λ_1] + [λ_2]`.  The roots of `φ_2(X, λ)` are
//! the curves mapping to `E_λ` in the same way.

use super::{Backing, SupersingularSet, Verdict};
use crate::arith::{Field, FieldCtx, Fq2Elem, PolyRing};
use crate::error::{Error, Result};

/// Both roots of a monic quadratic `X^2 + bX + c` over F_{N^2}, or `None`
/// if they lie outside F_{N^2}.
fn monic_quadratic_roots(ctx: &FieldCtx, b: Fq2Elem, c: Fq2Elem) -> Option<(Fq2Elem, Fq2Elem)> {
    let q = &ctx.fq2;
    let disc = q.sub(q.mul(b, b), q.mul(q.from_u64(4), c));
    let s = q.sqrt(disc)?;
    let half = q.inv(q.from_u64(2)).unwrap();
    let mb = q.neg(b);
    let (r1, r2) = (q.mul(q.add(mb, s), half), q.mul(q.sub(mb, s), half));
    Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}

fn check_in_l(ss: &SupersingularSet, l: Fq2Elem, roots: Option<(Fq2Elem, Fq2Elem)>) -> Result<(Fq2Elem, Fq2Elem)> {
    let (a, b) = roots.ok_or_else(|| {
        Error::InternalInvariantViolation(format!("2-isogenous invariants of {l:?} are not in F_N^2"))
    })?;
    for z in [a, b] {
        ss.index_of(z).map_err(|_| {
            Error::InternalInvariantViolation(format!("2-isogenous invariant {z:?} of {l:?} is not supersingular"))
        })?;
    }
    Ok((a, b))
}

/// The roots `(λ_1, λ_2)` of `φ_2(λ, Y)`, sorted; equal for a double root.
pub fn u2_action(ss: &SupersingularSet, l: Fq2Elem) -> Result<(Fq2Elem, Fq2Elem)> {
    ss.index_of(l)?;
    let ctx = ss.ctx();
    let q = &ctx.fq2;
    // (1-λ)^2 Y^2 + 16 λ Y - 16 λ, made monic.
    let om = q.sub(q.one(), l);
    let inv = q.inv(q.mul(om, om)).expect("1 is not supersingular");
    let c = q.mul(q.mul(q.from_u64(16), l), inv);
    check_in_l(ss, l, monic_quadratic_roots(ctx, c, q.neg(c)))
}

/// The roots of `φ_2(X, λ)`, i.e. of `X^2 + ((-2λ^2 + 16λ - 16)/λ^2) X + 1`.
pub fn u2_dual_action(ss: &SupersingularSet, l: Fq2Elem) -> Result<(Fq2Elem, Fq2Elem)> {
    ss.index_of(l)?;
    let ctx = ss.ctx();
    let q = &ctx.fq2;
    let f = |k: i64| q.from_i64(k);
    let l2 = q.mul(l, l);
    let num = q.add(q.add(q.mul(f(-2), l2), q.mul(f(16), l)), f(-16));
    let b = q.mul(num, q.inv(l2).expect("0 is not supersingular"));
    check_in_l(ss, l, monic_quadratic_roots(ctx, b, q.one()))
}

/// `λ^{N-1} H'(λ_1) H'(λ_2) = λ^2 (λ-1) / 4 · H'(λ)^2` at every `λ ∈ L`,
/// with `λ_1, λ_2` the roots of `φ_2(X, λ)`.  Returns the failing λ.
pub fn verify_u2_multiplicative(ss: &SupersingularSet) -> Result<Vec<Fq2Elem>> {
    let ctx = ss.ctx();
    let q = &ctx.fq2;
    let quarter = q.inv(q.from_u64(4)).unwrap();
    let mut bad = Vec::new();
    for (i, &l) in ss.lambdas.iter().enumerate() {
        let (a, b) = u2_dual_action(ss, l)?;
        let ha = ss.hprime[ss.index_of(a)?];
        let hb = ss.hprime[ss.index_of(b)?];
        let lhs = q.mul(q.pow(l, (ctx.n - 1) as u128), q.mul(ha, hb));
        let h = ss.hprime[i];
        let rhs = q.mul(q.mul(q.mul(l, l), q.mul(q.sub(l, q.one()), quarter)), q.mul(h, h));
        if lhs != rhs {
            bad.push(l);
        }
    }
    Ok(bad)
}

/// `Res_X(H(X), φ_2(X, Y)) = H(Y)^2` as polynomials in `Y`.
///
/// Both sides have degree at most `N - 1` in `Y`, so agreement at every
/// `Y ∈ F_N` is equality of polynomials.
pub fn verify_res_phi2(ctx: &FieldCtx) -> Verdict {
    let fp = &ctx.fp;
    let ring = PolyRing::new(ctx.fp);
    let h = super::hasse_poly(ctx);
    let mut first_bad = None;
    for y in 0..ctx.n {
        let y2 = fp.mul(y, y);
        // φ_2(X, y) = y^2 X^2 + (-2y^2 + 16y - 16) X + y^2.
        let mid = fp.sub(fp.add(fp.neg(fp.mul(2, y2)), fp.mul(16, y)), 16 % ctx.n);
        let phi = ring.from_coeffs(vec![y2, mid, y2]);
        let lhs = ring.resultant(&h, &phi).expect("H is non-zero");
        let hy = ring.eval(&h, y);
        if lhs != fp.mul(hy, hy) {
            first_bad = Some(y);
            break;
        }
    }
    Verdict::new(
        "res_phi2",
        Backing::Theorem,
        first_bad.is_none(),
        match first_bad {
            None => format!("agree at all {} points", ctx.n),
            Some(y) => format!("differ at Y = {y}"),
        },
    )
}
