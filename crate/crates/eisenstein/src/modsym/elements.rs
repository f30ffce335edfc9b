//! The Eisenstein elements `m_0^+` and `m_1^+` of the plus part, and the
//! integral `p = 2` companion of `m_0^+`.
//!
//! Both coefficient functions are sums over `(s1, s2) ∈ (Z/2NZ)^2` of
//! `(-1)^{s1+s2} B1(s1/2N) B1(s2/2N)` times a factor depending only on
//! `s1, s2 mod N`.  Summing over the two lifts of each residue gives
//! `Σ_{lifts} (-1)^s B1(s/2N) = -(-1)^a / 2` for a residue `1 <= a < N` (and
//! `0` for `a = 0`), so every sum collapses to residues mod N.  Writing
//! `u = d - c`, `w = d + c` and `k = -w/u`, the constraint `u s1 + w s2 ≡ 0`
//! becomes `s1 ≡ k s2`, which makes each coefficient a function of `k` alone:
//!
//! * `24 F_0 = C(k) := Σ_{b=1}^{N-1} [kb ≢ 0] (-1)^{(kb mod N) + b}`;
//! * `48 F_1 = A(k) - T(k)` with `A(k) = Σ_b [kb ≢ 0] (-1)^{(kb mod N)+b} log(b)`
//!   and `T(k) = Σ_{a,b} (-1)^{a+b} log(a - kb)` (terms with `a ≡ kb`
//!   omitted); the `log(u)` contributions of the two defining sums cancel.

use rayon::prelude::*;

use super::manin::ManinSpace;
use crate::arith::{Field, LogMap, Zmod};
use crate::criteria::merel_sum;
use crate::error::{Error, Result};

/// Hecke indices used to verify the Eisenstein elements.
pub const CHECK_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn parity_sign(x: u64) -> i64 {
    if x % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `C(k) = 24 F_0` for every `k ∈ Z/NZ`.
pub fn f0_table(n: u64) -> Vec<i64> {
    (0..n)
        .into_par_iter()
        .map(|k| {
            (1..n)
                .map(|b| {
                    let a = k * b % n;
                    if a == 0 {
                        0
                    } else {
                        parity_sign(a + b)
                    }
                })
                .sum()
        })
        .collect()
}

/// The integers `24 F_0(x)` for every Manin symbol `x`.
pub fn f0_coefficients(ms: &ManinSpace) -> Vec<i64> {
    let p1 = ms.p1();
    let table = f0_table(ms.level());
    (0..p1.len()).map(|x| p1.k_param(x).map_or(0, |k| table[k as usize])).collect()
}

/// `48 F_1(x)` in Z/p^r for every Manin symbol `x`, with `F_1([1:1]) = 0`.
pub fn f1_coefficients(ms: &ManinSpace, lm: &LogMap) -> Vec<u64> {
    let n = ms.level();
    let z = lm.ring();
    let m = z.modulus() as i64;
    let logs: Vec<i64> = (0..n).map(|x| if x == 0 { 0 } else { lm.log(x) as i64 }).collect();
    // R(c) = Σ_{a=1}^{N-1} (-1)^a log(a - c).
    let rr: Vec<i64> = (0..n)
        .into_par_iter()
        .map(|c| {
            let s: i64 = (1..n).map(|a| parity_sign(a) * logs[((a + n - c) % n) as usize]).sum();
            s.rem_euclid(m)
        })
        .collect();
    let table: Vec<u64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut a_sum = 0i64;
            let mut t_sum = 0i64;
            for b in 1..n {
                let kb = k * b % n;
                if kb != 0 {
                    a_sum += parity_sign(kb + b) * logs[b as usize];
                }
                t_sum += parity_sign(b) * rr[kb as usize];
            }
            z.from_i64((a_sum - t_sum).rem_euclid(m))
        })
        .collect();
    let p1 = ms.p1();
    (0..p1.len()).map(|x| p1.k_param(x).map_or(0, |k| table[k as usize])).collect()
}

/// `m_0^+ = Σ F_0(x) ξ(x)` in V, verified to be killed by `T_ℓ - ℓ - 1`
/// for every `ℓ ≤ 13` prime to N, to lie outside `pV`, to be invariant under
/// `[c:d] ↦ [-c:d]` coefficientwise, and to have boundary `(N-1)/12` in the
/// fixed orientation (checked on the exact integer coefficients, since
/// `(N-1)/12 ≡ 0 mod p^r`).
pub fn f0_element(ms: &ManinSpace) -> Result<Vec<u64>> {
    let z = ms.ring();
    let n = ms.level();
    let coeffs = f0_coefficients(ms);
    let p1 = ms.p1();
    // Orientation: F_0([1:0]) - F_0([0:1]) = (N-1)/12, i.e. 24× that is 2(N-1).
    let b = coeffs[p1.index(1, 0)] - coeffs[p1.index(0, 1)];
    if b != 2 * (n as i64 - 1) {
        return Err(Error::VerificationFailed(format!("boundary of m0+: 24·∂ = {b}, expected {}", 2 * (n - 1))));
    }
    if let Some(x) = (0..p1.len()).find(|&x| coeffs[x] != coeffs[p1.iota(x)]) {
        return Err(Error::VerificationFailed(format!("F0 not iota-invariant at symbol {x}")));
    }
    let inv24 = z.inv(24).ok_or(Error::UnsupportedPrime(z.prime()))?;
    let c: Vec<u64> = coeffs.iter().map(|&a| z.mul(z.from_i64(a), inv24)).collect();
    let e0 = ms.project(&c);
    if e0.iter().all(|&x| x % z.prime() == 0) {
        return Err(Error::VerificationFailed("m0+ lies in pV".into()));
    }
    for l in CHECK_PRIMES.iter().copied().filter(|&l| l != n) {
        let img = ms.apply(&ms.eta(l)?, &e0);
        if img.iter().any(|&x| x != 0) {
            return Err(Error::VerificationFailed(format!("(T_{l} - {l} - 1) m0+ != 0")));
        }
    }
    Ok(e0)
}

/// `m_1^+ = Σ F_1(x) ξ(x)` in V (well defined modulo `Z·m_0^+`), verified by
/// `(T_ℓ - ℓ - 1) m_1^+ = ((ℓ-1)/2) log(ℓ) m_0^+` for every `ℓ ≤ 13` prime
/// to N and by `∂ m_1^+ = (1/3) Σ k log(k)`.
pub fn f1_element(ms: &ManinSpace, lm: &LogMap, e0: &[u64]) -> Result<Vec<u64>> {
    let z = ms.ring();
    check_log_ring(ms, lm)?;
    let n = ms.level();
    let coeffs = f1_coefficients(ms, lm);
    let inv48 = z.inv(48).ok_or(Error::UnsupportedPrime(z.prime()))?;
    let c: Vec<u64> = coeffs.iter().map(|&a| z.mul(a, inv48)).collect();
    let m1 = ms.project(&c);
    let boundary = ms.boundary_of(&m1);
    let expected = z.div_int(merel_sum(lm, 1), 3);
    if boundary != expected {
        return Err(Error::VerificationFailed(format!("boundary of m1+: {boundary}, expected {expected}")));
    }
    for l in CHECK_PRIMES.iter().copied().filter(|&l| l != n) {
        let lhs = ms.apply(&ms.eta(l)?, &m1);
        let scalar = z.div_int(z.mul(z.reduce(l - 1), lm.log(l)), 2);
        let rhs: Vec<u64> = e0.iter().map(|&x| z.mul(scalar, x)).collect();
        if lhs != rhs {
            return Err(Error::VerificationFailed(format!("(T_{l} - {l} - 1) m1+ != ((l-1)/2) log(l) m0+")));
        }
    }
    Ok(m1)
}

fn check_log_ring(ms: &ManinSpace, lm: &LogMap) -> Result<()> {
    if lm.n() != ms.level() || lm.ring() != ms.ring() {
        return Err(Error::VerificationFailed("logarithm and Manin space disagree on (N, p, r)".into()));
    }
    Ok(())
}

/// Outcome of the `p = 2` companion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F02Report {
    /// Symbols (off `[±1:1]`) where `F_{0,2}([-d:c]) = -F_{0,2}([c:d])` fails.
    pub antisymmetry_failures: usize,
    /// `x ∉ {0, ±1}` where the count of `F_{0,2}([x:1])` is not congruent to
    /// `log((x+1)/(x-1))` mod 2.
    pub gauss_failures: usize,
    /// Whether `Σ_{x ∈ R} F_{0,2}(x) ξ(x)` and `(1/2) Σ_x F_{0,2}(x) ξ(x)` both
    /// equal `m_0^+` in the auxiliary space.
    pub matches_m0: bool,
    /// Number of symbols examined.
    pub checked: usize,
}

impl F02Report {
    pub fn passed(&self) -> bool {
        self.antisymmetry_failures == 0 && self.gauss_failures == 0 && self.matches_m0
    }
}

/// Large prime used for the rational comparison of the `p = 2` formula with
/// `m_0^+`: a field where 2 and 3 are invertible stands in for Q.
pub const AUX_PRIME: u64 = 1_000_003;

/// `#{1 <= s1, s2 <= (N-1)/2 : (d-c) s1 + (d+c) s2 ≡ 0}` for every symbol.
pub fn f02_counts(n: u64) -> Vec<i64> {
    let p1 = super::p1::P1Index::new(n);
    let m = (n - 1) / 2;
    (0..p1.len())
        .into_par_iter()
        .map(|x| match p1.k_param(x) {
            None => m as i64,
            Some(k) => (1..=m).filter(|&b| (1..=m).contains(&(k * b % n))).count() as i64,
        })
        .collect()
}

/// Verifies the integral formula `F_{0,2}([c:d]) = -(N-1)/12 + (1/3)·count`
/// for `N ≡ 1 mod 8`: antisymmetry under `[c:d] ↦ [-d:c]` off `[±1:1]`, the
/// Gauss-lemma parity `count([x:1]) ≡ log((x+1)/(x-1))`, and agreement with
/// `m_0^+` over the auxiliary field F_q, `q =` [`AUX_PRIME`].
pub fn f02_element(ctx: &crate::arith::FieldCtx) -> Result<F02Report> {
    let n = ctx.n;
    if n % 8 != 1 {
        return Err(Error::VerificationFailed(format!("N = {n} is not 1 mod 8")));
    }
    let counts = f02_counts(n);
    let p1 = super::p1::P1Index::new(n);
    // 3 F_{0,2} = -(N-1)/4 + count, an integer.
    let three_f: Vec<i64> = counts.iter().map(|&c| c - (n as i64 - 1) / 4).collect();
    let plus_one = p1.index(1, 1);
    let minus_one = p1.index(-1, 1);
    let mut antisymmetry_failures = 0;
    for x in 0..p1.len() {
        if x == plus_one || x == minus_one {
            continue;
        }
        if three_f[p1.sigma(x)] != -three_f[x] {
            antisymmetry_failures += 1;
        }
    }
    let lm2 = LogMap::with_modulus(ctx, 2, 1)?;
    let mut gauss_failures = 0;
    for x in 2..n - 1 {
        let ratio = ctx.fp.mul(x + 1, ctx.fp.inv(x - 1).unwrap());
        if (counts[x as usize] as u64) % 2 != lm2.log(ratio) {
            gauss_failures += 1;
        }
    }
    let zq = Zmod::new(AUX_PRIME, 1);
    let ms = ManinSpace::new(n, zq, true)?;
    let inv24 = zq.inv(24).unwrap();
    let m0 = ms.project(&f0_coefficients(&ms).iter().map(|&a| zq.mul(zq.from_i64(a), inv24)).collect::<Vec<_>>());
    let inv3 = zq.inv(3).unwrap();
    let f: Vec<u64> = three_f.iter().map(|&a| zq.mul(zq.from_i64(a), inv3)).collect();
    // One representative per class of [c:d] ~ [-d:c].
    let mut rep = vec![0u64; p1.len()];
    for x in 0..p1.len() {
        if x <= p1.sigma(x) {
            rep[x] = f[x];
        }
    }
    let half = ms.project(&f.iter().map(|&a| zq.mul(a, zq.inv(2).unwrap())).collect::<Vec<_>>());
    let matches_m0 = ms.project(&rep) == m0 && half == m0;
    Ok(F02Report { antisymmetry_failures, gauss_failures, matches_m0, checked: p1.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldCtx;
    use crate::modsym::build_manin_space;

    /// `B1(s/2N)` scaled by `2N`: `s - N` for `0 < s < 2N`, and `0` at `s = 0`.
    fn b1_scaled(s: i64, n: i64) -> i64 {
        if s == 0 {
            0
        } else {
            s - n
        }
    }

    #[test]
    fn f0_matches_defining_sum() {
        for n in [11u64, 13, 37, 61] {
            let ms = ManinSpace::new(n, Zmod::new(5, 1), true).unwrap();
            let coeffs = f0_coefficients(&ms);
            let ni = n as i64;
            for x in 0..ms.p1().len() {
                let (c, d) = ms.p1().pair(x);
                let (u, w) = (d as i64 - c as i64, d as i64 + c as i64);
                // 24 N^2 F_0 = Σ (-1)^{s1+s2} (2N B1)(2N B1) over the congruence.
                let mut s = 0i64;
                for s1 in 0..2 * ni {
                    for s2 in 0..2 * ni {
                        if (u * s1 + w * s2).rem_euclid(ni) == 0 {
                            s += parity_sign((s1 + s2) as u64) * b1_scaled(s1, ni) * b1_scaled(s2, ni);
                        }
                    }
                }
                assert_eq!(s, coeffs[x] * ni * ni, "N = {n}, symbol {x}");
            }
        }
    }

    #[test]
    fn f1_matches_defining_sum() {
        for (n, p) in [(11u64, 5u64), (31, 5), (61, 5), (29, 7)] {
            let ctx = FieldCtx::new(n).unwrap();
            let lm = LogMap::new(&ctx, p, 1).unwrap();
            let z = lm.ring();
            let ms = ManinSpace::new(n, z, true).unwrap();
            let coeffs = f1_coefficients(&ms, &lm);
            let ni = n as i64;
            for x in 0..ms.p1().len() {
                let (c, d) = ms.p1().pair(x);
                let (u, w) = (d as i64 - c as i64, d as i64 + c as i64);
                if u.rem_euclid(ni) == 0 {
                    assert_eq!(coeffs[x], 0);
                    continue;
                }
                let uinv = ctx.fp.inv(u.rem_euclid(ni) as u64).unwrap();
                // 48 N^2 F_1 = Σ_{≡0} (..) log(s2/u) - Σ_{≢0} (..) log(u s1 + w s2).
                let mut s = 0u64;
                for s1 in 0..2 * ni {
                    for s2 in 0..2 * ni {
                        let wgt = parity_sign((s1 + s2) as u64) * b1_scaled(s1, ni) * b1_scaled(s2, ni);
                        if wgt == 0 {
                            continue;
                        }
                        let v = (u * s1 + w * s2).rem_euclid(ni) as u64;
                        let term = if v == 0 {
                            z.mul(z.from_i64(wgt), lm.log(ctx.fp.mul(s2 as u64 % n, uinv)))
                        } else {
                            z.neg(z.mul(z.from_i64(wgt), lm.log(v)))
                        };
                        s = z.add(s, term);
                    }
                }
                assert_eq!(s, z.mul(coeffs[x], z.reduce(n * n)), "N = {n}, symbol {x}");
            }
        }
    }

    #[test]
    fn m0_and_m1_at_181() {
        let ctx = FieldCtx::new(181).unwrap();
        let ms = build_manin_space(&ctx, 5, 1).unwrap();
        let e0 = f0_element(&ms).unwrap();
        let lm = LogMap::new(&ctx, 5, 1).unwrap();
        let m1 = f1_element(&ms, &lm, &e0).unwrap();
        assert_eq!(ms.boundary_of(&m1), 0);
    }

    #[test]
    fn m1_boundary_nonzero_when_criterion_fails() {
        // At (11, 5) the sum Σ k log k is non-zero.
        let ctx = FieldCtx::new(11).unwrap();
        let ms = build_manin_space(&ctx, 5, 1).unwrap();
        let lm = LogMap::new(&ctx, 5, 1).unwrap();
        let e0 = f0_element(&ms).unwrap();
        let m1 = f1_element(&ms, &lm, &e0).unwrap();
        assert_ne!(ms.boundary_of(&m1), 0);
    }

    #[test]
    fn higher_moduli() {
        let ctx = FieldCtx::new(3001).unwrap();
        for r in 1..=3 {
            let ms = build_manin_space(&ctx, 5, r).unwrap();
            let lm = LogMap::new(&ctx, 5, r).unwrap();
            let e0 = f0_element(&ms).unwrap();
            f1_element(&ms, &lm, &e0).unwrap();
        }
    }

    #[test]
    fn p2_companion() {
        for n in [17u64, 41, 73, 89, 97, 113] {
            let ctx = FieldCtx::new(n).unwrap();
            let rep = f02_element(&ctx).unwrap();
            assert!(rep.passed(), "N = {n}: {rep:?}");
        }
        assert!(f02_element(&FieldCtx::new(11).unwrap()).is_err());
    }
}
