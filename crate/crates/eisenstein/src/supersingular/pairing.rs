//! The first higher Eisenstein element `e_1` of the supersingular module and
//! its pairings with `e_0` and with itself (for `p >= 5`).
//!
//! With `[E]•[E'] = w_E δ_{E,E'}` and `e_0 = Σ_E [E]/w_E`, the element is
//! `12·e_1 = Σ_E (Σ_{λ ∈ E} Log H'(λ))·[E]`, well defined modulo `e_0`: the
//! image of `Σ_λ Log H'(λ)·[λ]` under the map forgetting the level-2
//! structure.
//!
//! The resultant `P(Y)` packages the fibre products: exactly,
//! `P(j(E)) = 256^{m-1} · Π_{τ} H'(τ)` over the six anharmonic images `τ` of
//! any `λ ∈ E` (repeated when the orbit is small), so on orbits with
//! `w_E = 1` the coefficient is `Log P(j(E)) + 8 log 2`.  On the orbits of
//! `j = 0` and `j = 1728` the product counts each λ `w_E` times and
//! `Log P(j(E))` is not the fibre sum.

use super::{Backing, SupersingularSet, Verdict};
use crate::arith::{ExtLog, Field, Zmod};
use crate::criteria::merel_sum;
use crate::error::{Error, Result};

/// `e_1•e_0` and, when it vanishes, `e_1•e_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingValues {
    pub modulus: u64,
    pub e1_dot_e0: u64,
    pub e1_dot_e1: Option<u64>,
}

fn require_p_ge_5(log: &ExtLog) -> Result<Zmod> {
    let p = log.base().p();
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(log.ring())
}

/// Coefficients of `e_1` on the orbits: `(1/12) Σ_{λ ∈ E} Log H'(λ)`.
pub fn e1_element(ss: &SupersingularSet, log: &ExtLog) -> Result<Vec<u64>> {
    let z = require_p_ge_5(log)?;
    Ok(ss.orbits.iter().map(|o| z.div_int(fibre_sum(ss, log, &o.members), 12)).collect())
}

fn fibre_sum(ss: &SupersingularSet, log: &ExtLog, members: &[usize]) -> u64 {
    let z = log.ring();
    members.iter().fold(0, |a, &k| z.add(a, log.log(ss.hprime[k])))
}

/// The relations between `P(j(E))`, the fibre sums and `λ`:
///
/// * `P(j(E)) ≠ 0` and `P(j(E)) = 256^{m-1} Π_τ H'(τ)` exactly in F_{N^2};
/// * `w_E · Σ_{λ' ∈ E} Log H'(λ') = 6 Log H'(λ) + 4 Log λ + 4 Log(1-λ)` for
///   every `λ ∈ E`.
pub fn verify_resultant_values(ss: &SupersingularSet, log: &ExtLog) -> Result<Vec<Verdict>> {
    let z = require_p_ge_5(log)?;
    let ctx = ss.ctx();
    let q = &ctx.fq2;
    let m = (ctx.n - 1) / 2;
    let c = q.pow(q.from_u64(256), (m - 1) as u128);
    let mut bad_exact = 0;
    let mut bad_log = 0;
    for (o, &pj) in ss.orbits.iter().zip(ss.p_values()) {
        let l0 = ss.lambdas[o.members[0]];
        let six = super::anharmonic_orbit(ctx, l0)
            .iter()
            .try_fold(q.one(), |a, &t| Ok::<_, Error>(q.mul(a, ss.hprime[ss.index_of(t)?])))?;
        if q.is_zero(pj) || pj != q.mul(c, six) {
            bad_exact += 1;
        }
        let lhs = z.mul(z.reduce(o.weight), fibre_sum(ss, log, &o.members));
        for &k in &o.members {
            let l = ss.lambdas[k];
            let rhs = z.add(
                z.mul(6, log.log(ss.hprime[k])),
                z.mul(4, z.add(log.log(l), log.log(q.sub(q.one(), l)))),
            );
            if lhs != rhs {
                bad_log += 1;
            }
        }
    }
    Ok(vec![
        Verdict::new(
            "resultant_at_j",
            Backing::Theorem,
            bad_exact == 0,
            format!("{bad_exact} of {} orbits fail", ss.orbits.len()),
        ),
        Verdict::new(
            "fibre_log_relation",
            Backing::Theorem,
            bad_log == 0,
            format!("{bad_log} of {} lambda fail", ss.len()),
        ),
    ])
}

/// `e_1•e_0 = Σ_E coef_E(e_1)`.
pub fn pairing_e1_e0(ss: &SupersingularSet, log: &ExtLog) -> Result<u64> {
    let z = log.ring();
    Ok(e1_element(ss, log)?.into_iter().fold(0, |a, c| z.add(a, c)))
}

/// `e_1•e_1 = Σ_E w_E coef_E(e_1)^2`, defined only when `e_1•e_0 = 0`.
pub fn pairing_e1_e1(ss: &SupersingularSet, log: &ExtLog) -> Result<u64> {
    let z = log.ring();
    let e1 = e1_element(ss, log)?;
    if e1.iter().fold(0, |a, &c| z.add(a, c)) != 0 {
        return Err(Error::PairingUndefined);
    }
    Ok(ss
        .orbits
        .iter()
        .zip(&e1)
        .fold(0, |a, (o, &c)| z.add(a, z.mul(z.reduce(o.weight), z.mul(c, c)))))
}

/// Both pairings, the second only where defined.
pub fn pairing_values(ss: &SupersingularSet, log: &ExtLog) -> Result<PairingValues> {
    let e1_dot_e0 = pairing_e1_e0(ss, log)?;
    let e1_dot_e1 = match pairing_e1_e1(ss, log) {
        Ok(v) => Some(v),
        Err(Error::PairingUndefined) => None,
        Err(e) => return Err(e),
    };
    Ok(PairingValues { modulus: log.ring().modulus(), e1_dot_e0, e1_dot_e1 })
}

/// `(Σ_λ Log H'(λ), Σ_λ Log H'(λ)^2, Σ_λ Log(λ)^2)`.
pub(crate) fn lambda_log_sums(ss: &SupersingularSet, log: &ExtLog) -> (u64, u64, u64) {
    let z = log.ring();
    let mut s = (0, 0, 0);
    for (&l, &h) in ss.lambdas.iter().zip(&ss.hprime) {
        let lh = log.log(h);
        let ll = log.log(l);
        s.0 = z.add(s.0, lh);
        s.1 = z.add(s.1, z.mul(lh, lh));
        s.2 = z.add(s.2, z.mul(ll, ll));
    }
    s
}

/// The mass formulas for the pairings, all theorem-backed:
///
/// * `e_1•e_0 = (1/12) Σ_λ Log H'(λ) = (1/3) S_1`;
/// * `12·e_1•e_0 = Log(Disc H) = 4 S_1`;
/// * `e_1•e_0 = 0` exactly when `S_1 = 0`;
/// * if `e_1•e_0 = 0`: `72·e_1•e_1 = 3 Σ Log H'(λ)^2 - 4 Σ Log(λ)^2 = 12 S_2`.
///
/// Here `S_i = Σ_{k=1}^{(N-1)/2} k·log(k)^i`.
pub fn verify_pairings(ss: &SupersingularSet, log: &ExtLog) -> Result<Vec<Verdict>> {
    let z = require_p_ge_5(log)?;
    let lm = log.base();
    let s1 = merel_sum(lm, 1);
    let s2 = merel_sum(lm, 2);
    let (sum_h, sum_h2, sum_l2) = lambda_log_sums(ss, log);
    let e1e0 = pairing_e1_e0(ss, log)?;
    let disc = crate::supersingular::hasse_disc_closed(ss.ctx());
    let mut out = vec![
        Verdict::new(
            "e1_e0_mass",
            Backing::Theorem,
            e1e0 == z.div_int(sum_h, 12) && e1e0 == z.div_int(s1, 3),
            format!("e1.e0 = {e1e0}, (1/12) sum Log H' = {}, S1/3 = {}", z.div_int(sum_h, 12), z.div_int(s1, 3)),
        ),
        Verdict::new(
            "e1_e0_discriminant",
            Backing::Theorem,
            z.mul(12, e1e0) == lm.log(disc) && lm.log(disc) == z.mul(4, s1),
            format!("12 e1.e0 = {}, log Disc H = {}, 4 S1 = {}", z.mul(12, e1e0), lm.log(disc), z.mul(4, s1)),
        ),
        Verdict::new(
            "e1_e0_criterion",
            Backing::Theorem,
            (e1e0 == 0) == (s1 == 0),
            format!("e1.e0 = {e1e0}, S1 = {s1}"),
        ),
    ];
    if e1e0 == 0 {
        let e1e1 = pairing_e1_e1(ss, log)?;
        let quad = z.sub(z.mul(3, sum_h2), z.mul(4, sum_l2));
        out.push(Verdict::new(
            "e1_e1_mass",
            Backing::Theorem,
            z.mul(72, e1e1) == quad && quad == z.mul(12, s2),
            format!("72 e1.e1 = {}, 3 sum Log H'^2 - 4 sum Log^2 = {quad}, 12 S2 = {}", z.mul(72, e1e1), z.mul(12, s2)),
        ));
    } else {
        out.push(Verdict::skipped("e1_e1_mass", Backing::Theorem, "e1.e0 != 0"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldCtx, LogMap};
    use crate::supersingular::{supersingular_set, Outcome};

    fn setup(n: u64, p: u64, r: u32) -> (SupersingularSet, ExtLog) {
        let ctx = FieldCtx::new(n).unwrap();
        let ss = supersingular_set(&ctx).unwrap();
        let log = ExtLog::new(&ctx, LogMap::new(&ctx, p, r).unwrap()).unwrap();
        (ss, log)
    }

    #[test]
    fn level_181_has_vanishing_pairings() {
        let (ss, log) = setup(181, 5, 1);
        let v = pairing_values(&ss, &log).unwrap();
        assert_eq!(v, PairingValues { modulus: 5, e1_dot_e0: 0, e1_dot_e1: Some(0) });
        for verdict in verify_pairings(&ss, &log).unwrap() {
            assert_eq!(verdict.outcome, Outcome::Pass, "{verdict:?}");
        }
        for verdict in verify_resultant_values(&ss, &log).unwrap() {
            assert_eq!(verdict.outcome, Outcome::Pass, "{verdict:?}");
        }
    }

    #[test]
    fn resultant_values_with_special_orbits() {
        // N = 101 has an orbit with w_E = 3, N = 331 one with w_E = 2.
        for (n, p) in [(101, 5), (331, 11), (131, 5)] {
            let (ss, log) = setup(n, p, 1);
            assert!(ss.orbits.iter().any(|o| o.weight > 1) || n == 131);
            for verdict in verify_resultant_values(&ss, &log).unwrap() {
                assert_eq!(verdict.outcome, Outcome::Pass, "N = {n}: {verdict:?}");
            }
        }
    }

    #[test]
    fn level_11_pairing_is_nonzero() {
        let (ss, log) = setup(11, 5, 1);
        assert_ne!(pairing_e1_e0(&ss, &log).unwrap(), 0);
        assert_eq!(pairing_e1_e1(&ss, &log), Err(Error::PairingUndefined));
        for verdict in verify_pairings(&ss, &log).unwrap() {
            assert!(!verdict.is_theorem_failure(), "{verdict:?}");
        }
    }

    #[test]
    fn second_pairing_matches_quadratic_sum() {
        // At N = 131, p = 5: S_1 vanishes but S_2 does not.
        let (ss, log) = setup(131, 5, 1);
        let e1e1 = pairing_e1_e1(&ss, &log).unwrap();
        let z = log.ring();
        assert_ne!(e1e1, 0);
        assert_eq!(e1e1, z.div_int(merel_sum(log.base(), 2), 6));
        for verdict in verify_pairings(&ss, &log).unwrap() {
            assert_eq!(verdict.outcome, Outcome::Pass, "{verdict:?}");
        }
    }

    #[test]
    fn small_primes_are_rejected() {
        let (ss, log) = setup(181, 3, 1);
        assert_eq!(e1_element(&ss, &log), Err(Error::UnsupportedPrime(3)));
    }
}
