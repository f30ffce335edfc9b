//! The Eisenstein filtration `V ⊇ Ĩ V ⊇ Ĩ^2 V ⊇ ...` of `V = M^+/p^r`
//! and the invariants `n(r, p)` read off from it.

use std::time::Instant;

use super::elements::f0_element;
use super::linalg::{left_kernel, right_kernel, Mat, Submodule};
use super::manin::{build_manin_space, ManinSpace};
use crate::arith::primes::next_prime;
use crate::arith::{FieldCtx, LogMap};
use crate::error::{Error, Result};

/// Hecke indices the Eisenstein ideal is generated from before any growth.
pub const DEFAULT_GEN_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Number of consecutive generator enlargements that must leave the chain
/// unchanged before it is accepted.
pub const STABLE_ENLARGEMENTS: usize = 2;

/// Tuning of [`eisenstein_filtration`].
#[derive(Clone, Debug)]
pub struct FiltrationOptions {
    /// Initial primes `ℓ` whose `η_ℓ = T_ℓ - ℓ - 1` generate the ideal;
    /// primes equal to N are dropped.
    pub gen_primes: Vec<u64>,
    /// Largest prime the generator list may grow to.
    pub max_prime: u64,
    /// Also use `w_N + 1` as a generator.
    pub atkin_lehner: bool,
    /// For `r = 1`, recompute the invariant from the kernel chain
    /// `V[Ĩ] ⊆ V[Ĩ^2] ⊆ ...` and fail on disagreement.
    pub cross_check: bool,
}

impl Default for FiltrationOptions {
    fn default() -> Self {
        FiltrationOptions { gen_primes: DEFAULT_GEN_PRIMES.to_vec(), max_prime: 97, atkin_lehner: false, cross_check: true }
    }
}

/// The computed filtration.
#[derive(Clone, Debug)]
pub struct EisensteinFiltration {
    /// `m_0^+`, the generator of the Eisenstein kernel.
    pub e0: Vec<u64>,
    /// Primes whose `η_ℓ` were used in the final, stable run.
    pub gen_primes: Vec<u64>,
    /// Whether `w_N + 1` was among the generators.
    pub atkin_lehner: bool,
    /// Length (as a Z_p-module) of `Ĩ^k V` for `k = 0, 1, ...` until it
    /// stabilises.
    pub chain: Vec<u32>,
    /// `n(r, p) = max{k : e0 ∈ Ĩ^k V}`.
    pub n_rp: u32,
    /// `dim V[Ĩ^k]` for `k = 0, 1, ...` until it stabilises, when the
    /// kernel-chain cross-check ran.
    pub kernel_dims: Option<Vec<usize>>,
}

/// The matrices generating the Eisenstein ideal.
fn generators(ms: &ManinSpace, primes: &[u64], atkin_lehner: bool) -> Result<Vec<Mat>> {
    let z = ms.ring();
    let mut gens = Vec::with_capacity(primes.len() + 1);
    for &l in primes {
        gens.push(ms.eta(l)?);
    }
    if atkin_lehner {
        gens.push(ms.atkin_lehner()?.minus_scalar(&z, z.neg(1)));
    }
    Ok(gens)
}

/// Lengths of `W_k = Σ η W_{k-1}` until stable, and the depth of `e0`.
fn image_chain(ms: &ManinSpace, gens: &[Mat], e0: &[u64]) -> (Vec<u32>, u32) {
    let z = ms.ring();
    let d = ms.dim();
    let mut w = Submodule::full(z, d);
    let mut chain = vec![w.length()];
    let mut n_rp = 0;
    loop {
        let rows: Vec<Vec<u64>> = w
            .generators()
            .iter()
            .flat_map(|v| gens.iter().map(move |g| g.apply(&z, v)))
            .collect();
        let next = Submodule::span(z, d, rows);
        let len = next.length();
        if len == *chain.last().unwrap() {
            return (chain, n_rp);
        }
        if next.contains(e0) {
            n_rp = chain.len() as u32;
        }
        chain.push(len);
        w = next;
    }
}

/// `dim V[Ĩ^k]` for `k = 0, 1, ...` until stable (`r = 1` only).
fn kernel_chain(ms: &ManinSpace, gens: &[Mat]) -> Vec<usize> {
    let z = ms.ring();
    let d = ms.dim();
    let mut dims = vec![0usize];
    // Columns of `q` cut out the previous kernel: x ∈ K_{k-1} iff x·q = 0.
    let mut q = Mat::identity(d);
    loop {
        let w = q.cols();
        let mut stacked = Mat::zeros(d, w * gens.len());
        for (j, g) in gens.iter().enumerate() {
            let gq = g.mul(&z, &q);
            for i in 0..d {
                stacked.row_mut(i)[j * w..(j + 1) * w].copy_from_slice(gq.row(i));
            }
        }
        let kernel = left_kernel(&z, &stacked);
        if kernel.len() == *dims.last().unwrap() {
            return dims;
        }
        dims.push(kernel.len());
        if kernel.len() == d {
            return dims;
        }
        let perp = right_kernel(&z, &Mat::from_rows(d, kernel));
        q = Mat::from_rows(d, perp).transpose();
    }
}

/// Computes the Eisenstein filtration of `ms`, growing the generator list by
/// successive primes until [`STABLE_ENLARGEMENTS`] consecutive enlargements
/// leave both the chain and `n(r, p)` unchanged.
pub fn eisenstein_filtration(ms: &ManinSpace, opts: &FiltrationOptions) -> Result<EisensteinFiltration> {
    let n = ms.level();
    let e0 = f0_element(ms)?;
    let mut primes: Vec<u64> = opts.gen_primes.iter().copied().filter(|&l| l != n).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut state = {
        let gens = generators(ms, &primes, opts.atkin_lehner)?;
        image_chain(ms, &gens, &e0)
    };
    let mut stable = 0;
    let mut candidate = primes.last().copied().unwrap_or(1);
    while stable < STABLE_ENLARGEMENTS {
        candidate = next_prime(candidate + 1);
        if candidate == n {
            candidate = next_prime(candidate + 1);
        }
        if candidate > opts.max_prime {
            return Err(Error::GeneratorInstability { max_prime: opts.max_prime });
        }
        let mut trial = primes.clone();
        trial.push(candidate);
        let gens = generators(ms, &trial, opts.atkin_lehner)?;
        let next = image_chain(ms, &gens, &e0);
        if next == state {
            stable += 1;
        } else {
            stable = 0;
            state = next;
        }
        primes = trial;
    }
    let (chain, n_rp) = state;
    let kernel_dims = if opts.cross_check && ms.r() == 1 {
        let gens = generators(ms, &primes, opts.atkin_lehner)?;
        let dims = kernel_chain(ms, &gens);
        let plateau = n_rp as usize + 1;
        let ok = *dims.last().unwrap() == plateau && dims.iter().enumerate().all(|(k, &dk)| dk == k.min(plateau));
        if !ok {
            return Err(Error::VerificationFailed(format!(
                "kernel chain {dims:?} disagrees with n = {n_rp} from the image chain"
            )));
        }
        Some(dims)
    } else {
        None
    };
    Ok(EisensteinFiltration { e0, gen_primes: primes, atkin_lehner: opts.atkin_lehner, chain, n_rp, kernel_dims })
}

/// `n(r, p)` for `r = 1..t` and the Newton data
/// `z_i = max{r : n(r, p) >= i}` for `i = 1..n(1, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonInvariants {
    pub t: u32,
    pub n_r: Vec<u32>,
    pub z: Vec<u32>,
    /// Wall-clock seconds spent on each modulus.
    pub seconds: Vec<f64>,
}

impl NewtonInvariants {
    /// `g_p = n(1, p)`.
    pub fn g_p(&self) -> u32 {
        self.n_r[0]
    }
}

/// Inverts a non-increasing sequence `n(1), ..., n(t)` into `z_1, ..., z_{n(1)}`.
pub fn z_profile(n_r: &[u32]) -> Vec<u32> {
    let top = n_r.first().copied().unwrap_or(0);
    (1..=top)
        .map(|i| n_r.iter().enumerate().filter(|&(_, &n)| n >= i).map(|(r, _)| r as u32 + 1).max().unwrap_or(0))
        .collect()
}

/// Runs the filtration at every modulus `p^r`, `1 <= r <= t`, with
/// `r_max` optionally capping the moduli examined.
pub fn newton_invariants(ctx: &FieldCtx, p: u64, opts: &FiltrationOptions, r_max: Option<u32>) -> Result<NewtonInvariants> {
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    let t = LogMap::eisenstein_valuation(ctx.n, p)?;
    let top = r_max.map_or(t, |m| m.min(t));
    let mut n_r = Vec::new();
    let mut seconds = Vec::new();
    for r in 1..=top {
        let start = Instant::now();
        let ms = build_manin_space(ctx, p, r)?;
        let f = eisenstein_filtration(&ms, opts)?;
        n_r.push(f.n_rp);
        seconds.push(start.elapsed().as_secs_f64());
    }
    if n_r.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::VerificationFailed(format!("n(r, p) = {n_r:?} is not non-increasing")));
    }
    let z = z_profile(&n_r);
    Ok(NewtonInvariants { t, n_r, z, seconds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g_p(n: u64, p: u64) -> EisensteinFiltration {
        let ctx = FieldCtx::new(n).unwrap();
        let ms = build_manin_space(&ctx, p, 1).unwrap();
        eisenstein_filtration(&ms, &FiltrationOptions::default()).unwrap()
    }

    #[test]
    fn level_11() {
        let f = g_p(11, 5);
        assert_eq!(f.n_rp, 1);
        assert_eq!(f.kernel_dims.as_deref(), Some(&[0, 1, 2][..]));
    }

    #[test]
    fn level_181() {
        let f = g_p(181, 5);
        assert_eq!(f.n_rp, 3);
        assert_eq!(f.kernel_dims.as_deref(), Some(&[0, 1, 2, 3, 4][..]));
        // For r = 1 the image chain drops by one at each step.
        let d = f.chain[0];
        assert_eq!(f.chain, (0..=4).map(|k| d - k).collect::<Vec<_>>());
    }

    #[test]
    fn atkin_lehner_generator_does_not_change_the_answer() {
        let ctx = FieldCtx::new(181).unwrap();
        let ms = build_manin_space(&ctx, 5, 1).unwrap();
        let opts = FiltrationOptions { atkin_lehner: true, ..Default::default() };
        assert_eq!(eisenstein_filtration(&ms, &opts).unwrap().n_rp, 3);
    }

    #[test]
    fn generator_bound_is_enforced() {
        let ctx = FieldCtx::new(181).unwrap();
        let ms = build_manin_space(&ctx, 5, 1).unwrap();
        let opts = FiltrationOptions { max_prime: 13, ..Default::default() };
        assert!(matches!(eisenstein_filtration(&ms, &opts), Err(Error::GeneratorInstability { max_prime: 13 })));
    }

    #[test]
    fn z_profile_inverts_n() {
        assert_eq!(z_profile(&[3]), vec![1, 1, 1]);
        assert_eq!(z_profile(&[6, 4, 1]), vec![3, 2, 2, 2, 1, 1]);
        assert_eq!(z_profile(&[]), Vec::<u32>::new());
    }

    #[test]
    fn newton_at_3001() {
        let ctx = FieldCtx::new(3001).unwrap();
        let inv = newton_invariants(&ctx, 5, &FiltrationOptions::default(), None).unwrap();
        assert_eq!(inv.t, 3);
        assert_eq!(inv.g_p(), 6);
        assert_eq!(inv.n_r.len(), 3);
    }
}
