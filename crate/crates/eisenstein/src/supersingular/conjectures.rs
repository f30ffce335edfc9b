//! Arithmetic properties of the supersingular λ-invariants: two proved
//! propositions (cubes and fourth powers) and the conjectural identities
//! among their logarithms, which are evaluated and reported but never
//! asserted.

use super::{Backing, SupersingularSet, Verdict};
use crate::arith::{ExtLog, Field, LogMap};
use crate::criteria::merel_sum;
use crate::error::Result;

/// `Σ_{λ' ≠ λ} Log(λ' - λ) · w(λ') == target(λ)` for every λ, in Z/M with
/// `M` dividing the log modulus.
fn local_identity(
    ss: &SupersingularSet,
    log: &ExtLog,
    modulus: u64,
    weight: &dyn Fn(usize) -> u64,
    target: &dyn Fn(usize) -> u64,
) -> (bool, usize) {
    let z = log.ring();
    let q = &ss.ctx().fq2;
    let mut failures = 0;
    for (i, &l) in ss.lambdas.iter().enumerate() {
        let mut s = 0;
        for (k, &lk) in ss.lambdas.iter().enumerate() {
            if k != i {
                s = z.add(s, z.mul(log.log(q.sub(lk, l)), weight(k)));
            }
        }
        if s % modulus != target(i) % modulus {
            failures += 1;
        }
    }
    (failures == 0, failures)
}

/// Proved statements valid for every `N`:
///
/// * `λ(1-λ)/2` is a cube in F_{N^2}^x;
/// * `λ` is a fourth power in F_{N^2}^x;
/// * `λ` is an eighth power in F_{N^2}^x when `N ≡ ±1 mod 8` (for
///   `N ≡ ±3 mod 8` no λ is).
pub fn power_propositions(ss: &SupersingularSet) -> Vec<Verdict> {
    let q = &ss.ctx().fq2;
    let half = q.inv(q.from_u64(2)).unwrap();
    let count = |f: &dyn Fn(crate::arith::Fq2Elem) -> bool| ss.lambdas.iter().filter(|&&l| !f(l)).count();
    let cube = count(&|l| q.is_kth_power(q.mul(q.mul(l, q.sub(q.one(), l)), half), 3));
    let fourth = count(&|l| q.is_kth_power(l, 4));
    let len = ss.len();
    let eighth = if matches!(ss.n() % 8, 1 | 7) {
        let eighth = count(&|l| q.is_kth_power(l, 8));
        Verdict::new("prop_eighth_power", Backing::Theorem, eighth == 0, format!("{eighth} of {len} fail"))
    } else {
        Verdict::skipped("prop_eighth_power", Backing::Theorem, "N = 3 or 5 mod 8")
    };
    vec![
        Verdict::new("prop_cube", Backing::Theorem, cube == 0, format!("{cube} of {len} fail")),
        Verdict::new("prop_fourth_power", Backing::Theorem, fourth == 0, format!("{fourth} of {len} fail")),
        eighth,
    ]
}

/// For `N ≡ 1 mod 4`, no `H'(λ)` is a square in F_{N^2}^x.
pub fn square_conjecture(ss: &SupersingularSet) -> Verdict {
    let q = &ss.ctx().fq2;
    if ss.n() % 4 != 1 {
        return Verdict::skipped("conj_hprime_nonsquare", Backing::Conjecture, "N = 3 mod 4");
    }
    let squares = ss.hprime.iter().filter(|&&h| q.is_kth_power(h, 2)).count();
    Verdict::new(
        "conj_hprime_nonsquare",
        Backing::Conjecture,
        squares == 0,
        format!("{squares} of {} are squares", ss.len()),
    )
}

/// The logarithmic conjectures for `p >= 5`, in Z/p^r.  The local identity
/// weighted by `Log(λ')` is checked against `Log(λ)·Log(H'(λ))`; the right-hand
/// side `Log(λ)^2` fails at every level tried.
fn conjectures_p_ge_5(ss: &SupersingularSet, p: u64, r: u32) -> Result<Vec<Verdict>> {
    let ctx = ss.ctx();
    let lm = LogMap::new(ctx, p, r)?;
    let log = ExtLog::new(ctx, lm.clone())?;
    let z = log.ring();
    let s1 = merel_sum(&lm, 1);
    let s2 = merel_sum(&lm, 2);
    let log2 = lm.log(2);
    let (_, sum_h2, sum_l2) = super::pairing::lambda_log_sums(ss, &log);
    let logs: Vec<u64> = ss.lambdas.iter().map(|&l| log.log(l)).collect();
    let logh: Vec<u64> = ss.hprime.iter().map(|&h| log.log(h)).collect();
    let mut out = Vec::new();
    let rhs1 = z.mul(z.from_i64(-32), z.mul(log2, s1));
    out.push(Verdict::new(
        "conj_sum_log_lambda_sq",
        Backing::Conjecture,
        sum_l2 == rhs1,
        format!("{sum_l2} vs {rhs1}"),
    ));
    out.push(Verdict::new(
        "conj_log_lambda_nonzero",
        Backing::Conjecture,
        logs.iter().any(|&x| x != 0),
        format!("log 2 = {log2}"),
    ));
    let rhs3 = z.sub(z.mul(4, s2), z.mul(48, z.mul(log2, s1)));
    out.push(Verdict::new(
        "conj_sum_log_hprime_sq",
        Backing::Conjecture,
        sum_h2 == rhs3,
        format!("{sum_h2} vs {rhs3}"),
    ));
    if s1 == 0 {
        let m = z.modulus();
        let (ok4, f4) = local_identity(ss, &log, m, &|k| logh[k], &|i| z.mul(logh[i], logh[i]));
        out.push(Verdict::new("conj_local_hprime", Backing::Conjecture, ok4, format!("{f4} lambda fail")));
        let (ok5, f5) = local_identity(ss, &log, m, &|k| logs[k], &|i| z.mul(logs[i], logh[i]));
        out.push(Verdict::new("conj_local_lambda", Backing::Conjecture, ok5, format!("{f5} lambda fail")));
    } else {
        out.push(Verdict::skipped("conj_local_hprime", Backing::Conjecture, "S1 != 0"));
        out.push(Verdict::skipped("conj_local_lambda", Backing::Conjecture, "S1 != 0"));
    }
    Ok(out)
}

/// The logarithmic conjectures for `p = 3`, with the logarithm lifted to
/// Z/3^{r+1}.
fn conjectures_p3(ss: &SupersingularSet, r: u32) -> Result<Vec<Verdict>> {
    let ctx = ss.ctx();
    LogMap::new(ctx, 3, r)?;
    let lm = LogMap::with_modulus(ctx, 3, r + 1)?;
    let log = ExtLog::new(ctx, lm.clone())?;
    let z = log.ring();
    let s1 = merel_sum(&lm, 1);
    let log2 = lm.log(2);
    let (_, _, sum_l2) = super::pairing::lambda_log_sums(ss, &log);
    let logs: Vec<u64> = ss.lambdas.iter().map(|&l| log.log(l)).collect();
    let logh: Vec<u64> = ss.hprime.iter().map(|&h| log.log(h)).collect();
    let rhs = z.mul(4, z.mul(log2, s1));
    let nine = 9.min(z.modulus());
    let mut out = vec![
        Verdict::new(
            "conj3_log_lambda_nonzero",
            Backing::Conjecture,
            logs.iter().any(|&x| x % 3 != 0),
            format!("log 2 = {log2}"),
        ),
        Verdict::new(
            "conj3_sum_log_lambda_sq",
            Backing::Conjecture,
            sum_l2 % nine == rhs % nine && sum_l2 % 3 == 0,
            format!("{} vs {} mod {nine}", sum_l2 % nine, rhs % nine),
        ),
    ];
    let (ok3, f3) = local_identity(ss, &log, 3, &|k| logh[k], &|i| z.mul(logh[i], logh[i]));
    out.push(Verdict::new("conj3_local_hprime", Backing::Conjecture, ok3, format!("{f3} lambda fail")));
    let (ok4, f4) = local_identity(ss, &log, 3, &|k| logs[k], &|i| z.mul(logs[i], logh[i]));
    out.push(Verdict::new("conj3_local_lambda", Backing::Conjecture, ok4, format!("{f4} lambda fail")));
    Ok(out)
}

/// Every check that applies to `(N, p, r)`: the power propositions, the
/// square conjecture, and the logarithmic conjectures for `p >= 5` or
/// `p = 3`.  For other `p` only the `p`-independent items are returned.
pub fn conjecture_suite(ss: &SupersingularSet, p: u64, r: u32) -> Result<Vec<Verdict>> {
    let mut out = power_propositions(ss);
    out.push(square_conjecture(ss));
    match p {
        3 => out.extend(conjectures_p3(ss, r)?),
        p if p >= 5 => out.extend(conjectures_p_ge_5(ss, p, r)?),
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldCtx;
    use crate::supersingular::{supersingular_set, Outcome};

    fn outcome(v: &[Verdict], id: &str) -> Outcome {
        v.iter().find(|x| x.id == id).unwrap().outcome
    }

    #[test]
    fn level_181() {
        let ctx = FieldCtx::new(181).unwrap();
        let ss = supersingular_set(&ctx).unwrap();
        let v = conjecture_suite(&ss, 5, 1).unwrap();
        for x in &v {
            if x.id == "prop_eighth_power" {
                assert_eq!(x.outcome, Outcome::Skipped);
            } else {
                assert_eq!(x.outcome, Outcome::Pass, "{x:?}");
            }
        }
        let v3 = conjecture_suite(&ss, 3, 1).unwrap();
        assert_eq!(v3.len(), 8);
    }

    #[test]
    fn eighth_powers_exactly_when_two_is_a_square() {
        for n in crate::arith::primes::primes_in(7, 200) {
            let ctx = FieldCtx::new(n).unwrap();
            let ss = supersingular_set(&ctx).unwrap();
            let q = &ctx.fq2;
            let all = ss.lambdas.iter().all(|&l| q.is_kth_power(l, 8));
            let none = ss.lambdas.iter().all(|&l| !q.is_kth_power(l, 8));
            if matches!(n % 8, 1 | 7) {
                assert!(all, "N = {n}");
            } else {
                assert!(none, "N = {n}");
            }
        }
    }

    #[test]
    fn local_lambda_identity_targets() {
        let ctx = FieldCtx::new(181).unwrap();
        let ss = supersingular_set(&ctx).unwrap();
        let log = ExtLog::new(&ctx, LogMap::new(&ctx, 5, 1).unwrap()).unwrap();
        let z = log.ring();
        let logs: Vec<u64> = ss.lambdas.iter().map(|&l| log.log(l)).collect();
        let logh: Vec<u64> = ss.hprime.iter().map(|&h| log.log(h)).collect();
        let m = z.modulus();
        let (ok, _) = local_identity(&ss, &log, m, &|k| logs[k], &|i| z.mul(logs[i], logh[i]));
        assert!(ok);
        let (ok, _) = local_identity(&ss, &log, m, &|k| logs[k], &|i| z.mul(logs[i], logs[i]));
        assert!(!ok);
    }

    #[test]
    fn hypothesis_gate() {
        // S_1 != 0 at N = 11, p = 5.
        let ctx = FieldCtx::new(11).unwrap();
        let ss = supersingular_set(&ctx).unwrap();
        let v = conjecture_suite(&ss, 5, 1).unwrap();
        assert_eq!(outcome(&v, "conj_local_hprime"), Outcome::Skipped);
        assert_eq!(outcome(&v, "conj_hprime_nonsquare"), Outcome::Skipped);
        assert_eq!(outcome(&v, "prop_cube"), Outcome::Pass);
    }
}
