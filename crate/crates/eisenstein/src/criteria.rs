//! Elementary criteria for the rank `g_p` and the identities among sums of
//! discrete logarithms that underlie them.
//!
//! Throughout, `m = (N-1)/2` and
//!
//! * `S_i = Σ_{k=1}^{m} k·log(k)^i` (the Merel sums),
//! * `Q_i = Σ_{k=1}^{N-1} k^2·log(k)^i`,
//! * `F_i = Σ_{k=1}^{m} log(k)^i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, FieldCtx, LogMap, Zmod};
use crate::arith::primes::valuation;
use crate::error::{Error, Result};

/// One pass over `1..N` collecting every sum the criteria need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSums {
    pub modulus: u64,
    /// `S_i` for `i = 0..=3`.
    pub merel: [u64; 4],
    /// `Q_i` for `i = 0..=2`.
    pub squares: [u64; 3],
    /// `F_i` for `i = 0..=2`, over the lower half `1..=m`.
    pub f_lower: [u64; 3],
    /// The same sums over the upper half `m+1..N-1`.
    pub f_upper: [u64; 3],
}

impl LogSums {
    pub fn new(lm: &LogMap) -> Self {
        let z = lm.ring();
        let n = lm.n();
        let m = (n - 1) / 2;
        let mut merel = [0u64; 4];
        let mut squares = [0u64; 3];
        let mut f_lower = [0u64; 3];
        let mut f_upper = [0u64; 3];
        for k in 1..n {
            let l = lm.log(k);
            let pows = [1 % z.modulus(), l, z.mul(l, l), z.mul(z.mul(l, l), l)];
            let kk = z.reduce(k);
            let k2 = z.mul(kk, kk);
            for i in 0..3 {
                squares[i] = z.add(squares[i], z.mul(k2, pows[i]));
            }
            if k <= m {
                for i in 0..4 {
                    merel[i] = z.add(merel[i], z.mul(kk, pows[i]));
                }
                for i in 0..3 {
                    f_lower[i] = z.add(f_lower[i], pows[i]);
                }
            } else {
                for i in 0..3 {
                    f_upper[i] = z.add(f_upper[i], pows[i]);
                }
            }
        }
        LogSums { modulus: z.modulus(), merel, squares, f_lower, f_upper }
    }
}

/// `S_i = Σ_{k=1}^{(N-1)/2} k·log(k)^i` in Z/p^r.
pub fn merel_sum(lm: &LogMap, i: u32) -> u64 {
    let z = lm.ring();
    let m = (lm.n() - 1) / 2;
    (1..=m).fold(0, |acc, k| {
        z.add(acc, z.mul(z.reduce(k), z.pow(lm.log(k), i as u64)))
    })
}

/// `Q_i = Σ_{k=1}^{N-1} k^2·log(k)^i` in Z/p^r.
pub fn squares_sum(lm: &LogMap, i: u32) -> u64 {
    let z = lm.ring();
    (1..lm.n()).fold(0, |acc, k| {
        let kk = z.reduce(k);
        z.add(acc, z.mul(z.mul(kk, kk), z.pow(lm.log(k), i as u64)))
    })
}

fn require_p_ge_5(lm: &LogMap) -> Result<()> {
    if lm.p() < 5 {
        return Err(Error::UnsupportedPrime(lm.p()));
    }
    Ok(())
}

/// `n(r, p) >= 2`, i.e. `S_1 = 0` in Z/p^r (for `p >= 5`).
pub fn criterion_ge2(lm: &LogMap) -> Result<bool> {
    require_p_ge_5(lm)?;
    Ok(merel_sum(lm, 1) == 0)
}

/// `n(r, p) >= 3`, i.e. `S_1 = S_2 = 0` in Z/p^r (for `p >= 5`).
pub fn criterion_ge3(lm: &LogMap) -> Result<bool> {
    require_p_ge_5(lm)?;
    Ok(merel_sum(lm, 1) == 0 && merel_sum(lm, 2) == 0)
}

/// For `p = 3`: `n(r, 3) >= 2` iff `Q_1 = 0` in Z/3^r.
pub fn criterion_ge2_p3(ctx: &FieldCtx, r: u32) -> Result<bool> {
    let lm = LogMap::new(ctx, 3, r)?;
    Ok(squares_sum(&lm, 1) == 0)
}

/// For `p = 2`: `n(r, 2) >= 2` iff `S_1 = 2^{t-1}` in Z/2^r.
pub fn criterion_ge2_p2(ctx: &FieldCtx, r: u32) -> Result<bool> {
    let lm = LogMap::new(ctx, 2, r)?;
    let z = lm.ring();
    let target = z.reduce(1u64 << (lm.t() - 1));
    Ok(merel_sum(&lm, 1) == target)
}

/// Per-(N, p, r) summary of the criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaReport {
    pub n: u64,
    pub p: u64,
    pub r: u32,
    pub t: u32,
    /// Modulus of `sums` and `squares_sum` (`p^r`).
    pub modulus: u64,
    /// `S_i` for `i = 0..=3`.
    pub sums: [u64; 4],
    /// `Q_1`, `Q_2`.
    pub squares_sum: [u64; 2],
    /// Modulus of `f` (`p^v` with `v = v_p(N-1)`).
    pub f_modulus: u64,
    /// `F_0, F_1, F_2` in Z/p^v.
    pub f: [u64; 3],
    /// `n(r,p) >= 2`, for every `p`.
    pub ge2: bool,
    /// `n(r,p) >= 3`, only decided for `p >= 5`.
    pub ge3: Option<bool>,
}

/// Computes the full criteria report.
pub fn criteria_report(ctx: &FieldCtx, p: u64, r: u32) -> Result<CriteriaReport> {
    let lm = LogMap::new(ctx, p, r)?;
    let sums = LogSums::new(&lm);
    let lv = LogMap::with_modulus(ctx, p, valuation(ctx.n - 1, p))?;
    let fs = LogSums::new(&lv);
    let ge2 = match p {
        2 => sums.merel[1] == lm.ring().reduce(1u64 << (lm.t() - 1)),
        3 => sums.squares[1] == 0,
        _ => sums.merel[1] == 0,
    };
    let ge3 = (p >= 5).then(|| sums.merel[1] == 0 && sums.merel[2] == 0);
    Ok(CriteriaReport {
        n: ctx.n,
        p,
        r,
        t: lm.t(),
        modulus: lm.modulus(),
        sums: sums.merel,
        squares_sum: [sums.squares[1], sums.squares[2]],
        f_modulus: lv.modulus(),
        f: fs.f_lower,
        ge2,
        ge3,
    })
}

/// Verdict of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: &'static str,
    /// Modulus the identity was evaluated in.
    pub modulus: u64,
    pub passed: bool,
    /// The compared values, or the first failing instance.
    pub detail: String,
}

impl IdentityCheck {
    fn eq(id: &'static str, z: &Zmod, values: &[u64]) -> Self {
        let passed = values.windows(2).all(|w| w[0] == w[1]);
        IdentityCheck { id, modulus: z.modulus(), passed, detail: format!("{values:?}") }
    }
}

/// `D_2(t/N)`: `-1` on `(0, 1/2)`, `+1` on `(1/2, 1)`, `0` at `0`.
fn d2(t: u64, n: u64) -> i64 {
    if t == 0 {
        0
    } else if 2 * t < n {
        -1
    } else {
        1
    }
}

/// Number of instances of the one-parameter identities.
const RANDOM_INSTANCES: usize = 20;

/// Evaluates the identities among logarithm sums, each exactly, in Z/p^v with
/// `v = v_p(N-1)`.  Every check is a theorem, so every verdict should pass.
///
/// Defined for every prime `p` dividing the numerator of `(N-1)/12`.
pub fn identity_suite(ctx: &FieldCtx, p: u64) -> Result<Vec<IdentityCheck>> {
    let n = ctx.n;
    let t = LogMap::eisenstein_valuation(n, p)?;
    let v = valuation(n - 1, p);
    let lm = LogMap::with_modulus(ctx, p, v)?;
    let z = lm.ring();
    let m = (n - 1) / 2;
    let s = LogSums::new(&lm);
    let log = |x: i64| lm.log_i64(x);
    let log2 = lm.log(2);
    let sq = |x: u64| z.mul(x, x);
    let sixth = z.from_ratio((n - 1) as i128, 6).expect("(N-1)/6 is p-integral");
    let third = z.from_ratio((n - 1) as i128, 3).expect("(N-1)/3 is p-integral");
    let c = |k: i64| z.from_i64(k);
    let mut out = Vec::new();

    // F_i facts.
    let (f0, f1, f2) = (s.f_lower[0], s.f_lower[1], s.f_lower[2]);
    let facts = match p {
        2 => [z.mul(2, f0), z.mul(4, f1), z.mul(4, f2)],
        3 => [f0, f1, z.mul(3, f2)],
        _ => [f0, f1, f2],
    };
    out.push(IdentityCheck::eq("f_vanishing", &z, &[facts[0], facts[1], facts[2], 0]));
    out.push(IdentityCheck {
        id: "f_halves",
        modulus: z.modulus(),
        passed: s.f_lower == s.f_upper,
        detail: format!("{:?} vs {:?}", s.f_lower, s.f_upper),
    });

    // 4 S_1 = -3 Q_1 - log2 (N-1)/6 - F_1.
    let rhs = z.sub(z.sub(z.neg(z.mul(3, s.squares[1])), z.mul(log2, sixth)), f1);
    out.push(IdentityCheck::eq("square_lemma", &z, &[z.mul(4, s.merel[1]), rhs]));

    // 4 S_2 = -3 Q_2 + log2^2 (N-1)/6 - 2 log2 Q_1 + 3 F_2.
    let rhs = z.add(
        z.sub(
            z.add(z.neg(z.mul(3, s.squares[2])), z.mul(sq(log2), sixth)),
            z.mul(z.mul(2, log2), s.squares[1]),
        ),
        z.mul(3, f2),
    );
    out.push(IdentityCheck::eq("square_lemma_2", &z, &[z.mul(4, s.merel[2]), rhs]));

    // Difference and sum counts over the lower half.
    let mut diff = vec![0i64; n as usize];
    let mut sum = vec![0i64; n as usize];
    for t1 in 1..=m {
        for t2 in 1..=m {
            if t1 != t2 {
                diff[((t1 + n - t2) % n) as usize] += 1;
            }
            sum[((t1 + t2) % n) as usize] += 1;
        }
    }
    let weighted = |counts: &[i64], pow: u64| -> u64 {
        counts.iter().enumerate().skip(1).fold(0, |acc, (k, &cnt)| {
            z.add(acc, z.mul(c(cnt), z.pow(lm.log(k as u64), pow)))
        })
    };
    let neg2 = |x: u64| z.neg(z.mul(2, x));
    out.push(IdentityCheck::eq("difference_sum", &z, &[weighted(&diff, 1), neg2(s.merel[1])]));
    out.push(IdentityCheck::eq(
        "sum_sum",
        &z,
        &[weighted(&sum, 1), z.sub(z.mul(2, s.merel[1]), f1)],
    ));
    out.push(IdentityCheck::eq("difference_sum_2", &z, &[weighted(&diff, 2), neg2(s.merel[2])]));
    out.push(IdentityCheck::eq(
        "sum_sum_2",
        &z,
        &[weighted(&sum, 2), z.sub(z.mul(2, s.merel[2]), f2)],
    ));

    // D_2-weighted sums over (Z/N)^2.
    let mut ddiff = vec![0i64; n as usize];
    let mut dsum = vec![0i64; n as usize];
    for t1 in 1..n {
        let d1 = d2(t1, n);
        for t2 in 1..n {
            let w = d1 * d2(t2, n);
            ddiff[((t1 + n - t2) % n) as usize] += w;
            dsum[((t1 + t2) % n) as usize] += w;
        }
    }
    let a1 = weighted(&ddiff, 1);
    let b1 = z.neg(weighted(&dsum, 1));
    let c1 = z.add(z.neg(z.mul(8, s.merel[1])), z.mul(2, f1));
    let e1 = z.add(z.mul(6, s.squares[1]), z.mul(log2, third));
    out.push(IdentityCheck::eq("d2_lemma", &z, &[a1, b1, c1, e1]));
    let a2 = weighted(&ddiff, 2);
    let b2 = z.neg(weighted(&dsum, 2));
    let c2 = z.add(z.neg(z.mul(8, s.merel[2])), z.mul(2, f2));
    let e2 = z.sub(
        z.add(
            z.sub(z.mul(6, s.squares[2]), z.mul(sq(log2), third)),
            z.mul(z.mul(4, log2), s.squares[1]),
        ),
        z.mul(4, f2),
    );
    out.push(IdentityCheck::eq("d2_lemma_2", &z, &[a2, b2, c2, e2]));

    // Σ_{s≠0,1} log(s-1) log(s) = F_2.
    let pair_sum = (2..n).fold(0, |acc, x| z.add(acc, z.mul(lm.log(x - 1), lm.log(x))));
    out.push(IdentityCheck::eq("log_pair_sum", &z, &[pair_sum, f2]));

    // Σ_{k≠0,a} log(k-a) log(k) = -log(a)^2 + log(-1) log(a) + F_2.
    let mut rng = ChaCha8Rng::seed_from_u64(n ^ (p << 40));
    let logm1 = log(-1);
    let mut check = IdentityCheck::eq("shifted_pair_sum", &z, &[]);
    for _ in 0..RANDOM_INSTANCES.min((n - 3) as usize) {
        let a = rng.gen_range(2..n - 1);
        let lhs = (1..n)
            .filter(|&k| k != a)
            .fold(0, |acc, k| z.add(acc, z.mul(lm.log((k + n - a) % n), lm.log(k))));
        let la = lm.log(a);
        let rhs = z.add(z.add(z.neg(sq(la)), z.mul(logm1, la)), f2);
        if lhs != rhs {
            check.passed = false;
            check.detail = format!("a = {a}: {lhs} != {rhs}");
            break;
        }
    }
    out.push(check);

    out.push(pairing_closed_form(ctx, &lm, t, &s));

    if p == 2 {
        let lm2 = LogMap::with_modulus(ctx, 2, 2)?;
        out.push(IdentityCheck {
            id: "p2_log_parity",
            modulus: 4,
            passed: lm2.log(2) % 2 == 0 && lm2.log(n - 1) == 0,
            detail: format!("log(2) = {}, log(-1) = {} mod 4", lm2.log(2), lm2.log(n - 1)),
        });
        out.push(gauss_lemma_check(ctx, &mut rng)?);
    }
    Ok(out)
}

/// The closed form of the pairing `m_0^+ • m_1^-` through
/// `y = ε·ζ·Π_{k≤m} k^{-4k}`, evaluated with the map at `p^v` and compared
/// in Z/p^t.
fn pairing_closed_form(ctx: &FieldCtx, lm: &LogMap, t: u32, s: &LogSums) -> IdentityCheck {
    let fp = ctx.fp;
    let n = ctx.n;
    let p = lm.p();
    let m = (n - 1) / 2;
    let mut prod = 1u64;
    for k in 1..=m {
        prod = fp.mul(prod, fp.pow(k, k as u128));
    }
    let mut y = fp.pow(fp.inv(prod).unwrap(), 4);
    if n % 8 == 1 {
        y = fp.neg(y);
    }
    if n % 3 == 1 {
        y = fp.mul(y, fp.pow(2, ((n - 1) / 3) as u128));
    }
    let ly = lm.log(y);
    let zt = Zmod::new(p, t);
    let sum1_t = zt.reduce(s.merel[1]);
    let (passed, detail) = match p {
        2 => {
            let is_fourth = fp.pow(y, ((n - 1) / 4) as u128) == 1;
            let lhs = zt.reduce(ly / 4);
            let rhs = zt.sub(zt.reduce(1 << (t - 1)), sum1_t);
            (is_fourth && ly % 4 == 0 && lhs == rhs, format!("fourth power: {is_fourth}, {lhs} vs {rhs}"))
        }
        3 => {
            let is_cube = fp.pow(y, ((n - 1) / 3) as u128) == 1;
            let lhs = zt.reduce(ly / 3);
            let rhs = zt.reduce(s.squares[1]);
            (is_cube && ly % 3 == 0 && lhs == rhs, format!("cube: {is_cube}, {lhs} vs {rhs}"))
        }
        _ => {
            let lhs = zt.div_int(zt.neg(zt.reduce(ly)), 12);
            let rhs = zt.div_int(sum1_t, 3);
            (lhs == rhs, format!("{lhs} vs {rhs}"))
        }
    };
    IdentityCheck { id: "pairing_closed_form", modulus: zt.modulus(), passed, detail }
}

/// Number of pairs `1 <= s1, s2 <= m` with `(1-x) s1 + (1+x) s2 ≡ 0 (mod N)`.
pub fn gauss_count(n: u64, x: u64) -> u64 {
    let f = crate::arith::PrimeField::new_unchecked(n);
    let m = (n - 1) / 2;
    let u = f.sub(1, x);
    let w = f.add(1, x);
    let ratio = f.mul(f.neg(w), f.inv(u).expect("x != 1"));
    (1..=m).filter(|&s2| (1..=m).contains(&f.mul(ratio, s2))).count() as u64
}

/// For `p = 2`: the Gauss-lemma congruences mod 2 at random `x ∉ {0, ±1}`.
fn gauss_lemma_check(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Result<IdentityCheck> {
    let n = ctx.n;
    let fp = ctx.fp;
    let lm = LogMap::with_modulus(ctx, 2, 1)?;
    let m = (n - 1) / 2;
    let instances = if n < 500 { RANDOM_INSTANCES } else { 4 };
    for _ in 0..instances {
        let x = rng.gen_range(2..n - 1);
        let u = fp.sub(1, x);
        let w = fp.add(1, x);
        let count = gauss_count(n, x) % 2;
        let target = lm.log(fp.mul(w, fp.inv(fp.sub(x, 1)).unwrap()));
        let two_over_u = fp.mul(2, fp.inv(u).unwrap());
        let mut acc = 0u64;
        for s1 in 1..=m {
            let a = fp.mul(u, s1);
            for s2 in 1..=m {
                let val = fp.add(a, fp.mul(w, s2));
                acc ^= if val == 0 {
                    lm.log(fp.mul(two_over_u, s2))
                } else {
                    lm.log(val)
                };
            }
        }
        if count != target || acc != target {
            return Ok(IdentityCheck {
                id: "gauss_lemma",
                modulus: 2,
                passed: false,
                detail: format!("x = {x}: count {count}, log {target}, sum {acc}"),
            });
        }
    }
    Ok(IdentityCheck { id: "gauss_lemma", modulus: 2, passed: true, detail: format!("{instances} instances") })
}
