//! The supersingular module in characteristic `N`, seen through Legendre
//! λ-invariants.
//!
//! The supersingular λ-invariants are the roots of the Hasse polynomial
//! `H(X) = Σ_{i=0}^{m} C(m,i)^2 X^i` with `m = (N-1)/2`.  They all lie in
//! F_{N^2}, they are simple, and they fall into orbits of size 1, 2, 3 or 6
//! under the group generated by `λ ↦ 1/λ` and `λ ↦ 1-λ`; each orbit is one
//! supersingular curve `E`, with `w_E = 6 / |orbit|`.
//!
//! Submodules build the distinguished elements on top of this set:
//! [`pairing`] (the first higher element and its pairings), [`u2`] (the
//! 2-isogeny correspondence), [`isogeny`] (ℓ-isogenies by Vélu's formulas),
//! [`gamma2`] (elements at level `Γ_0(N) ∩ Γ(2)`) and [`conjectures`].

pub mod conjectures;
pub mod gamma2;
pub mod isogeny;
pub mod pairing;
pub mod u2;

use std::sync::OnceLock;

use crate::arith::{roots_in_fq2, Field, FieldCtx, Fq2Elem, Poly, PolyRing};
use crate::arith::primes::gcd;
use crate::error::{Error, Result};

pub use conjectures::{conjecture_suite, power_propositions, square_conjecture};
pub use gamma2::{gamma2_eisenstein_elements, Gamma2Elements};
pub use isogeny::{legendre_isogenies, verify_hprime_product};
pub use pairing::{
    e1_element, pairing_e1_e0, pairing_e1_e1, pairing_values, verify_pairings, verify_resultant_values, PairingValues,
};
pub use u2::{u2_action, verify_res_phi2, verify_u2_multiplicative};

/// What a verdict rests on: a proved statement, where a failure signals a
/// bug, or an open conjecture, which is reported but never asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backing {
    Theorem,
    Conjecture,
}

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// The hypothesis of the statement does not hold for this input.
    Skipped,
}

/// One verification record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub id: &'static str,
    pub backing: Backing,
    pub outcome: Outcome,
    pub detail: String,
}

impl Verdict {
    pub fn new(id: &'static str, backing: Backing, passed: bool, detail: String) -> Self {
        let outcome = if passed { Outcome::Pass } else { Outcome::Fail };
        Verdict { id, backing, outcome, detail }
    }

    pub fn skipped(id: &'static str, backing: Backing, reason: &str) -> Self {
        Verdict { id, backing, outcome: Outcome::Skipped, detail: reason.to_string() }
    }

    /// True for a failed theorem-backed check.
    pub fn is_theorem_failure(&self) -> bool {
        self.backing == Backing::Theorem && self.outcome == Outcome::Fail
    }
}

/// `C(m, i) mod N` for `i = 0..=m` by the multiplicative recurrence
/// `C(m, i+1) = C(m, i) · (m - i) / (i + 1)`.
fn binomials_mod(ctx: &FieldCtx, m: u64) -> Vec<u64> {
    let fp = &ctx.fp;
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut c = 1u64;
    out.push(c);
    for i in 0..m {
        c = fp.mul(c, fp.mul(m - i, fp.inv(i + 1).expect("i + 1 < N")));
        out.push(c);
    }
    out
}

/// The Hasse polynomial `H(X) = Σ_{i=0}^{m} C(m,i)^2 X^i` over F_N.
pub fn hasse_poly(ctx: &FieldCtx) -> Poly<u64> {
    let fp = &ctx.fp;
    let m = (ctx.n - 1) / 2;
    let ring = PolyRing::new(ctx.fp);
    ring.from_coeffs(binomials_mod(ctx, m).into_iter().map(|c| fp.mul(c, c)).collect())
}

/// `Disc(H) = (-1)^{m(m-1)/2} / m! · Π_{k=1}^{m} k^{4k}` in F_N.
pub fn hasse_disc_closed(ctx: &FieldCtx) -> u64 {
    let fp = &ctx.fp;
    let m = (ctx.n - 1) / 2;
    let mut prod = 1u64;
    let mut fact = 1u64;
    for k in 1..=m {
        prod = fp.mul(prod, fp.pow(k, 4 * k as u128));
        fact = fp.mul(fact, k);
    }
    let mut v = fp.mul(prod, fp.inv(fact).expect("m! is prime to N"));
    if (m * (m.saturating_sub(1)) / 2) % 2 == 1 {
        v = fp.neg(v);
    }
    v
}

/// `Disc(H)` from its definition `(-1)^{d(d-1)/2} lc(H)^{-1} Res(H, H')`.
pub fn hasse_disc_resultant(ctx: &FieldCtx) -> u64 {
    let ring = PolyRing::new(ctx.fp);
    ring.discriminant(&hasse_poly(ctx)).expect("H is non-zero")
}

/// The six images of `λ` under the anharmonic group, in the order
/// `λ, 1/λ, 1-λ, (λ-1)/λ, λ/(λ-1), 1/(1-λ)`.
pub fn anharmonic_orbit(ctx: &FieldCtx, l: Fq2Elem) -> [Fq2Elem; 6] {
    let q = &ctx.fq2;
    let one = q.one();
    let inv = |z| q.inv(z).expect("λ is not 0 or 1");
    let om = q.sub(one, l);
    [
        l,
        inv(l),
        om,
        q.mul(q.sub(l, one), inv(l)),
        q.mul(l, inv(q.neg(om))),
        inv(om),
    ]
}

/// `j = 256 (1 - λ + λ^2)^3 / (λ^2 (1-λ)^2)`.
pub fn j_invariant(ctx: &FieldCtx, l: Fq2Elem) -> Fq2Elem {
    let q = &ctx.fq2;
    let one = q.one();
    let s = q.add(q.sub(one, l), q.mul(l, l));
    let num = q.mul(q.from_u64(256), q.mul(s, q.mul(s, s)));
    let d = q.mul(l, q.sub(one, l));
    q.mul(num, q.inv(q.mul(d, d)).expect("λ is not 0 or 1"))
}

/// One supersingular curve: an orbit of λ-invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Indices into [`SupersingularSet::lambdas`], increasing; the first is
    /// the canonical representative.
    pub members: Vec<usize>,
    pub j: Fq2Elem,
    /// `w_E = 6 / |orbit|`.
    pub weight: u64,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The set `L` of supersingular λ-invariants with the derived data every
/// other computation needs.  Immutable once built.
#[derive(Clone, Debug)]
pub struct SupersingularSet {
    ctx: FieldCtx,
    hasse: Poly<u64>,
    /// The roots of `H`, sorted.
    pub lambdas: Vec<Fq2Elem>,
    /// `H'(λ)` for each λ, in the same order.
    pub hprime: Vec<Fq2Elem>,
    pub orbits: Vec<Orbit>,
    /// Orbit index of each λ.
    pub orbit_of: Vec<usize>,
    /// `P(j(E))` for each orbit, computed on first use.
    p_values: OnceLock<Vec<Fq2Elem>>,
}

/// Builds `L` and checks every structural invariant; a violation is
/// reported as [`Error::InternalInvariantViolation`].
pub fn supersingular_set(ctx: &FieldCtx) -> Result<SupersingularSet> {
    let bug = |s: String| Error::InternalInvariantViolation(s);
    let n = ctx.n;
    let m = ((n - 1) / 2) as usize;
    let q = &ctx.fq2;
    let ring = PolyRing::new(ctx.fp);
    let hasse = hasse_poly(ctx);
    let lambdas = roots_in_fq2(ctx, &hasse);
    if lambdas.len() != m {
        return Err(bug(format!("H has {} roots in F_N^2, expected {m}", lambdas.len())));
    }
    if lambdas.windows(2).any(|w| w[0] == w[1]) {
        return Err(bug("H has a repeated root".into()));
    }
    let dh = ring.derivative(&hasse);
    let ring2 = PolyRing::new(ctx.fq2);
    let dh2 = ring.map(&dh, &ring2, |c| q.embed(c));
    let hprime: Vec<Fq2Elem> = lambdas.iter().map(|&l| ring2.eval(&dh2, l)).collect();
    if hprime.iter().any(|&h| q.is_zero(h)) {
        return Err(bug("H' vanishes at a root of H".into()));
    }

    let index = |z: Fq2Elem| lambdas.binary_search(&z).ok();
    let mut orbit_of = vec![usize::MAX; m];
    let mut orbits = Vec::new();
    for i in 0..m {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let images = anharmonic_orbit(ctx, lambdas[i]);
        let mut members = Vec::with_capacity(6);
        for z in images {
            let k = index(z).ok_or_else(|| bug(format!("L is not stable under the anharmonic group at {z:?}")))?;
            members.push(k);
        }
        members.sort_unstable();
        members.dedup();
        let j = j_invariant(ctx, lambdas[i]);
        for &k in &members {
            if orbit_of[k] != usize::MAX {
                return Err(bug("anharmonic orbits overlap".into()));
            }
            if j_invariant(ctx, lambdas[k]) != j {
                return Err(bug("j is not constant on an orbit".into()));
            }
            orbit_of[k] = orbits.len();
        }
        let weight = 6 / members.len() as u64;
        if weight * members.len() as u64 != 6 {
            return Err(bug(format!("orbit of size {}", members.len())));
        }
        orbits.push(Orbit { members, j, weight });
    }
    for &l in &lambdas {
        if index(q.frobenius(l)).is_none() {
            return Err(bug("L is not stable under Frobenius".into()));
        }
    }
    let set = SupersingularSet {
        ctx: ctx.clone(),
        hasse,
        lambdas,
        hprime,
        orbits,
        orbit_of,
        p_values: OnceLock::new(),
    };
    let (num, den) = set.mass();
    if num * 12 != (n - 1) * den {
        return Err(bug(format!("mass {num}/{den} differs from (N-1)/12")));
    }
    Ok(set)
}

impl SupersingularSet {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn n(&self) -> u64 {
        self.ctx.n
    }

    pub fn hasse(&self) -> &Poly<u64> {
        &self.hasse
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Position of `λ` in [`Self::lambdas`], or `NotSupersingular`.
    pub fn index_of(&self, l: Fq2Elem) -> Result<usize> {
        self.lambdas.binary_search(&l).map_err(|_| Error::NotSupersingular)
    }

    /// `P(j(E))` for each orbit, in orbit order.
    pub fn p_values(&self) -> &[Fq2Elem] {
        self.p_values.get_or_init(|| {
            let p = p_resultant_poly(&self.ctx);
            self.orbits.iter().map(|o| eval_fq2(&self.ctx, &p, o.j)).collect()
        })
    }

    /// `Σ_E 1/w_E` as a reduced fraction.
    pub fn mass(&self) -> (u64, u64) {
        // 1/w_E = |orbit| / 6.
        let num: u64 = self.orbits.iter().map(|o| o.size() as u64).sum();
        let g = gcd(num, 6);
        (num / g, 6 / g)
    }
}

/// `P(Y) = Res_T(H'(T), 256 (1 - T + T^2)^3 - T^2 (1-T)^2 Y)` over F_N.
///
/// `P` has degree `(N-3)/2` in `Y`; it is obtained by specialising `Y` at
/// `(N-1)/2` points of F_N where the second argument keeps degree 6 and
/// interpolating.
pub fn p_resultant_poly(ctx: &FieldCtx) -> Poly<u64> {
    let fp = &ctx.fp;
    let n = ctx.n;
    let ring = PolyRing::new(ctx.fp);
    let dh = ring.derivative(&hasse_poly(ctx));
    let s = ring.from_i64s(&[1, -1, 1]);
    let a = ring.scale(&ring.pow(&s, 3), fp.from_u64(256));
    let b = ring.pow(&ring.from_i64s(&[0, 1, -1]), 2);
    let points = ((n - 1) / 2) as usize;
    let bad = 256 % n;
    let pts: Vec<(u64, u64)> = (0..n)
        .filter(|&y| y != bad)
        .take(points)
        .map(|y| {
            let g = ring.sub(&a, &ring.scale(&b, y));
            (y, ring.resultant(&dh, &g).expect("H' is non-zero"))
        })
        .collect();
    ring.interpolate(&pts)
}

/// Evaluates an F_N polynomial at a point of F_{N^2}.
pub(crate) fn eval_fq2(ctx: &FieldCtx, f: &Poly<u64>, z: Fq2Elem) -> Fq2Elem {
    let q = &ctx.fq2;
    f.coeffs().iter().rev().fold(q.zero(), |acc, &c| q.add(q.mul(acc, z), q.embed(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hasse_examples() {
        let ring = PolyRing::new(FieldCtx::new(5).unwrap().fp);
        assert_eq!(hasse_poly(&FieldCtx::new(5).unwrap()), ring.from_u64s(&[1, 4, 1]));
        let ring = PolyRing::new(FieldCtx::new(7).unwrap().fp);
        assert_eq!(hasse_poly(&FieldCtx::new(7).unwrap()), ring.from_u64s(&[1, 2, 2, 1]));
        for n in [11u64, 101, 997] {
            let h = hasse_poly(&FieldCtx::new(n).unwrap());
            assert_eq!(h.degree(), Some(((n - 1) / 2) as usize));
        }
    }

    #[test]
    fn discriminant_examples() {
        let ctx5 = FieldCtx::new(5).unwrap();
        assert_eq!(hasse_disc_closed(&ctx5), 2);
        assert_eq!(hasse_disc_resultant(&ctx5), 2);
        let ctx7 = FieldCtx::new(7).unwrap();
        assert_eq!(hasse_disc_closed(&ctx7), 4);
        assert_eq!(hasse_disc_resultant(&ctx7), 4);
        for n in crate::arith::primes::primes_in(5, 300) {
            let ctx = FieldCtx::new(n).unwrap();
            assert_eq!(hasse_disc_closed(&ctx), hasse_disc_resultant(&ctx), "N = {n}");
        }
    }

    #[test]
    fn level_eleven() {
        let ctx = FieldCtx::new(11).unwrap();
        let ss = supersingular_set(&ctx).unwrap();
        assert_eq!(ss.len(), 5);
        assert_eq!(ss.mass(), (5, 6));
        let mut js: Vec<Fq2Elem> = ss.orbits.iter().map(|o| o.j).collect();
        js.sort();
        assert_eq!(js, vec![ctx.fq2.embed(0), ctx.fq2.embed(1728 % 11)]);
        // 1728 ≡ 1 mod 11 has one automorphism pair (w = 2), j = 0 has w = 3.
        let mut ws: Vec<u64> = ss.orbits.iter().map(|o| o.weight).collect();
        ws.sort();
        assert_eq!(ws, vec![2, 3]);
    }

    #[test]
    fn level_thirteen_and_closure() {
        let ctx = FieldCtx::new(13).unwrap();
        let ss = supersingular_set(&ctx).unwrap();
        assert_eq!(ss.len(), 6);
        let q = &ctx.fq2;
        for &l in &ss.lambdas {
            assert!(ss.index_of(q.sub(q.one(), l)).is_ok());
        }
        assert_eq!(ss.index_of(q.embed(1)), Err(Error::NotSupersingular));
    }

    #[test]
    fn resultant_polynomial() {
        for n in [11u64, 13, 37, 101, 181] {
            let ctx = FieldCtx::new(n).unwrap();
            let q = &ctx.fq2;
            let p = p_resultant_poly(&ctx);
            assert_eq!(p.degree(), Some(((n - 3) / 2) as usize), "N = {n}");
            // Direct resultant over F_{N^2} at each j.
            let ring = PolyRing::new(ctx.fp);
            let ring2 = PolyRing::new(ctx.fq2);
            let dh = ring.map(&ring.derivative(&hasse_poly(&ctx)), &ring2, |c| q.embed(c));
            let s = ring.from_i64s(&[1, -1, 1]);
            let a = ring.scale(&ring.pow(&s, 3), 256 % n);
            let b = ring.pow(&ring.from_i64s(&[0, 1, -1]), 2);
            let ss = supersingular_set(&ctx).unwrap();
            for (o, &pj) in ss.orbits.iter().zip(ss.p_values()) {
                let a2 = ring.map(&a, &ring2, |c| q.embed(c));
                let b2 = ring.map(&b, &ring2, |c| q.embed(c));
                let g = ring2.sub(&a2, &ring2.scale(&b2, o.j));
                assert_eq!(ring2.resultant(&dh, &g).unwrap(), pj, "N = {n}");
                assert!(!q.is_zero(pj));
            }
        }
    }
}
