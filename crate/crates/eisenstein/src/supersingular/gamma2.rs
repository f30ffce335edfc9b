//! Eisenstein elements at level `Γ_0(N) ∩ Γ(2)`, on the free module `M'`
//! with basis `L` (for `p >= 5`).
//!
//! * `e_0^0 = Σ Log(λ) [λ]`, killed by `U_2`;
//! * `e_0^1 = Σ (Log(1-λ) - 2 Log(λ) - 4 log 2) [λ]`, killed by `U_2 - 1`;
//! * `e_0^2 = Σ [λ]`, killed by `U_2 - 2`;
//! * `e_1^2 = e_0^0 + e_0^1/2 + Σ Log(H'(λ))/2 [λ]`, with
//!   `(U_2 - 2) e_1^2 = log(2) e_0^2` and
//!   `(T_ℓ - ℓ - 1) e_1^2 = (ℓ-1)/2 · log(ℓ) · e_0^2`.
//!
//! All of them are fixed by `U_N : [λ] ↦ [λ^N]` and killed by `T_ℓ - ℓ - 1`
//! (`e_0^α`).

use super::isogeny::hecke_correspondence;
use super::u2::u2_action;
use super::{Backing, SupersingularSet, Verdict};
use crate::arith::{ExtLog, Field, Zmod};
use crate::error::{Error, Result};

/// Vectors on `L` with coefficients in Z/p^r, indexed like
/// [`SupersingularSet::lambdas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma2Elements {
    pub e0_0: Vec<u64>,
    pub e0_1: Vec<u64>,
    pub e0_2: Vec<u64>,
    pub e1_2: Vec<u64>,
}

/// `U_2 v` for a vector on `L`.
pub fn apply_u2(ss: &SupersingularSet, z: &Zmod, v: &[u64]) -> Result<Vec<u64>> {
    let mut out = vec![0; v.len()];
    for (i, &l) in ss.lambdas.iter().enumerate() {
        let (a, b) = u2_action(ss, l)?;
        for w in [a, b] {
            let k = ss.index_of(w)?;
            out[k] = z.add(out[k], v[i]);
        }
    }
    Ok(out)
}

/// `U_N v`, with `U_N [λ] = [λ^N]`.
pub fn apply_un(ss: &SupersingularSet, v: &[u64]) -> Result<Vec<u64>> {
    let q = &ss.ctx().fq2;
    let mut out = vec![0; v.len()];
    for (i, &l) in ss.lambdas.iter().enumerate() {
        out[ss.index_of(q.frobenius(l))?] = v[i];
    }
    Ok(out)
}

/// `T v` for a correspondence given by its rows.
fn apply_corr(z: &Zmod, corr: &[Vec<usize>], v: &[u64]) -> Vec<u64> {
    let mut out = vec![0; v.len()];
    for (i, row) in corr.iter().enumerate() {
        for &k in row {
            out[k] = z.add(out[k], v[i]);
        }
    }
    out
}

fn coordinatewise(id: &'static str, lhs: &[u64], rhs: &[u64]) -> Verdict {
    let first = lhs.iter().zip(rhs).position(|(a, b)| a != b);
    Verdict::new(
        id,
        Backing::Theorem,
        first.is_none(),
        match first {
            None => format!("holds on all {} coordinates", lhs.len()),
            Some(i) => format!("differs at coordinate {i}"),
        },
    )
}

fn lincomb(z: &Zmod, terms: &[(u64, &[u64])]) -> Vec<u64> {
    let len = terms[0].1.len();
    (0..len)
        .map(|i| terms.iter().fold(0, |a, &(c, v)| z.add(a, z.mul(c, v[i]))))
        .collect()
}

/// Builds the four elements and checks their Hecke relations.  The
/// operators `T_ℓ` are evaluated for each `ℓ` in `hecke_degrees` (a subset
/// of `{3, 5}`).
pub fn gamma2_eisenstein_elements(
    ss: &SupersingularSet,
    log: &ExtLog,
    hecke_degrees: &[u64],
) -> Result<(Gamma2Elements, Vec<Verdict>)> {
    let lm = log.base();
    if lm.p() < 5 {
        return Err(Error::UnsupportedPrime(lm.p()));
    }
    let z = log.ring();
    let q = &ss.ctx().fq2;
    let log2 = lm.log(2);
    let half = z.inv(2).unwrap();
    let mut e = Gamma2Elements { e0_0: vec![], e0_1: vec![], e0_2: vec![], e1_2: vec![] };
    for (&l, &h) in ss.lambdas.iter().zip(&ss.hprime) {
        let ll = log.log(l);
        let l1 = log.log(q.sub(q.one(), l));
        let a0 = ll;
        let a1 = z.sub(z.sub(l1, z.mul(2, ll)), z.mul(4, log2));
        e.e0_0.push(a0);
        e.e0_1.push(a1);
        e.e0_2.push(1);
        e.e1_2.push(z.add(a0, z.mul(half, z.add(a1, log.log(h)))));
    }

    let m1 = z.neg(1);
    let m2 = z.neg(2);
    let zero = vec![0u64; ss.len()];
    let mut out = Vec::new();
    let mut check = |id, lhs: Vec<u64>, rhs: &[u64]| out.push(coordinatewise(id, &lhs, rhs));
    let u2 = |v: &[u64]| apply_u2(ss, &z, v);
    check("u2_e0_0", u2(&e.e0_0)?, &zero);
    check("u2_e0_1", lincomb(&z, &[(1, &u2(&e.e0_1)?), (m1, &e.e0_1)]), &zero);
    check("u2_e0_2", lincomb(&z, &[(1, &u2(&e.e0_2)?), (m2, &e.e0_2)]), &zero);
    // (U_2 - 2) Σ Log H'(λ)[λ] = 4 e_0^0 + e_0^1 + 2 log(2) e_0^2, whence:
    let rhs = lincomb(&z, &[(log2, &e.e0_2)]);
    check("u2_e1_2", lincomb(&z, &[(1, &u2(&e.e1_2)?), (m2, &e.e1_2)]), &rhs);
    for (id, v) in [("un_e0_0", &e.e0_0), ("un_e0_1", &e.e0_1), ("un_e0_2", &e.e0_2), ("un_e1_2", &e.e1_2)] {
        check(id, apply_un(ss, v)?, v);
    }
    for &ell in hecke_degrees {
        let corr = hecke_correspondence(ss, ell)?;
        let c = z.neg(z.reduce(ell + 1));
        let t = |v: &[u64]| lincomb(&z, &[(1, &apply_corr(&z, &corr, v)), (c, v)]);
        let (id0, id1) = match ell {
            3 => ("t3_e0", "t3_e1_2"),
            _ => ("t5_e0", "t5_e1_2"),
        };
        // The three e_0^α stacked into one vector.
        let images: Vec<u64> = [&e.e0_0, &e.e0_1, &e.e0_2].iter().flat_map(|v| t(v)).collect();
        check(id0, images, &vec![0; 3 * ss.len()]);
        let coef = z.mul(z.reduce((ell - 1) / 2), lm.log(ell));
        check(id1, t(&e.e1_2), &lincomb(&z, &[(coef, &e.e0_2)]));
    }
    let p = lm.p();
    let nonzero = |v: &[u64]| v.iter().any(|&x| x % p != 0);
    out.push(Verdict::new(
        "e0_nonzero",
        Backing::Conjecture,
        nonzero(&e.e0_0) && nonzero(&e.e0_1),
        format!("log 2 = {log2}"),
    ));
    Ok((e, out))
}
