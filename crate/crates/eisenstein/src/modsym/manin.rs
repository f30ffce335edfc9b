//! Relative homology of X_0(N) with coefficients in Z/p^r through Manin
//! symbols, and Hecke operators via Merel's matrices.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::linalg::{axpy, Mat};
use super::p1::{Mat2, P1Index};
use crate::arith::{FieldCtx, LogMap, Zmod};
use crate::error::{Error, Result};

/// A sparse vector in V: `(basis index, coefficient)` pairs.
pub type SparseVec = Vec<(u32, u64)>;

/// Genus of X_0(N) for a prime `N >= 5`.
pub fn genus_x0(n: u64) -> u64 {
    let nu2 = if n % 4 == 1 { 2 } else { 0 };
    let nu3 = if n % 3 == 1 { 2 } else { 0 };
    (n + 1 - 3 * nu2 - 4 * nu3) / 12
}

/// The quotient of the free Z/p^r-module on P^1(Z/NZ) by the Manin
/// relations `x + xσ` and `x + xτ + xτ²` and, for the plus part, `x - ι(x)`.
/// For `p >= 5` this is free of rank `g + 1` (plus part) or `2g + 1`.
#[derive(Debug)]
pub struct ManinSpace {
    n: u64,
    z: Zmod,
    plus: bool,
    p1: P1Index,
    dim: usize,
    /// Image of every Manin symbol in V.
    images: Vec<SparseVec>,
    /// A symbol mapping to each basis vector.
    lifts: Vec<usize>,
    /// Coefficient of (Γ_0(N)·0) - (Γ_0(N)·∞) in the boundary of each basis
    /// vector.
    boundary: Vec<u64>,
    hecke: Mutex<HashMap<u64, Arc<Mat>>>,
}

/// The plus part `H_1(X_0(N), cusps; Z/p^r)_+` for an Eisenstein prime
/// `p >= 5` and `1 <= r <= t`.
pub fn build_manin_space(ctx: &FieldCtx, p: u64, r: u32) -> Result<ManinSpace> {
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    let lm_t = LogMap::eisenstein_valuation(ctx.n, p)?;
    if r == 0 || r > lm_t {
        return Err(Error::RangeError { r, t: lm_t });
    }
    ManinSpace::new(ctx.n, Zmod::new(p, r), true)
}

/// Boundary of a single Manin symbol: `+1` at `[1:0]`, `-1` at `[0:1]`.
fn symbol_boundary(n: u64, i: usize) -> i64 {
    if i as u64 == n {
        1
    } else if i == 0 {
        -1
    } else {
        0
    }
}

/// Union-find with signs: each symbol is `±` its root, or zero.
struct SignedUnionFind {
    parent: Vec<usize>,
    /// `true` if the symbol is minus its parent.
    neg: Vec<bool>,
    zero: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), neg: vec![false; n], zero: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut y = x;
        while self.parent[y] != y {
            path.push(y);
            y = self.parent[y];
        }
        let root = y;
        // Recompute signs from the root downwards and compress.
        let mut acc = false;
        for &v in path.iter().rev() {
            acc ^= self.neg[v];
            self.neg[v] = acc;
            self.parent[v] = root;
        }
        (root, if path.is_empty() { false } else { self.neg[x] })
    }

    /// Records `x = ±y`.
    fn union(&mut self, x: usize, y: usize, negate: bool) {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        let s = sx ^ negate ^ sy;
        if rx == ry {
            if s {
                self.zero[rx] = true;
            }
            return;
        }
        self.parent[rx] = ry;
        self.neg[rx] = s;
        self.zero[ry] |= self.zero[rx];
    }
}

impl ManinSpace {
    /// Builds the quotient over `z = Z/p^r` for any prime `p >= 5`; with
    /// `plus = false` the ι-relation is omitted.
    pub fn new(n: u64, z: Zmod, plus: bool) -> Result<Self> {
        if z.prime() < 5 {
            return Err(Error::UnsupportedPrime(z.prime()));
        }
        let p1 = P1Index::new(n);
        let len = p1.len();
        let mut uf = SignedUnionFind::new(len);
        for x in 0..len {
            uf.union(x, p1.sigma(x), true);
            if plus {
                uf.union(x, p1.iota(x), false);
            }
        }
        // Classes and the signed class of every symbol.
        let mut class_of_root = vec![usize::MAX; len];
        let mut roots = Vec::new();
        let mut sym: Vec<Option<(usize, bool)>> = vec![None; len];
        for x in 0..len {
            let (r, s) = uf.find(x);
            if uf.zero[r] {
                continue;
            }
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = roots.len();
                roots.push(r);
            }
            sym[x] = Some((class_of_root[r], s));
        }
        let nclass = roots.len();

        // Three-term relations in class coordinates.
        let mut seen = vec![false; len];
        let mut rels: Vec<Vec<(usize, u64)>> = Vec::new();
        for x in 0..len {
            if seen[x] {
                continue;
            }
            let orbit = [x, p1.tau(x), p1.tau(p1.tau(x))];
            let mut row: Vec<(usize, u64)> = Vec::new();
            for &y in &orbit {
                seen[y] = true;
                if let Some((c, s)) = sym[y] {
                    let v = if s { z.neg(1) } else { 1 };
                    match row.iter_mut().find(|(cc, _)| *cc == c) {
                        Some(e) => e.1 = z.add(e.1, v),
                        None => row.push((c, v)),
                    }
                }
            }
            row.retain(|&(_, v)| v != 0);
            if !row.is_empty() {
                row.sort_unstable();
                rels.push(row);
            }
        }

        let (pivot_rows, pivot_col) = super::linalg::sparse_rref(&z, nclass, rels)?;
        let free: Vec<usize> = (0..nclass).filter(|&c| pivot_col[c].is_none()).collect();
        let dim = free.len();
        let g = genus_x0(n) as usize;
        let expected = if plus { g + 1 } else { 2 * g + 1 };
        if dim != expected {
            return Err(Error::RankMismatch { expected, found: dim });
        }
        let mut basis_of_class = vec![u32::MAX; nclass];
        for (b, &c) in free.iter().enumerate() {
            basis_of_class[c] = b as u32;
        }
        let class_image: Vec<SparseVec> = (0..nclass)
            .map(|c| match pivot_col[c] {
                None => vec![(basis_of_class[c], 1)],
                Some(ri) => {
                    let mut v: SparseVec = pivot_rows[ri]
                        .iter()
                        .filter(|&&(cc, _)| cc != c)
                        .map(|&(cc, a)| (basis_of_class[cc], z.neg(a)))
                        .collect();
                    v.sort_unstable();
                    v
                }
            })
            .collect();
        let images: Vec<SparseVec> = sym
            .iter()
            .map(|s| match *s {
                None => Vec::new(),
                Some((c, neg)) => {
                    if neg {
                        class_image[c].iter().map(|&(b, a)| (b, z.neg(a))).collect()
                    } else {
                        class_image[c].clone()
                    }
                }
            })
            .collect();
        let lifts: Vec<usize> = free.iter().map(|&c| roots[c]).collect();
        let boundary: Vec<u64> = lifts.iter().map(|&x| z.from_i64(symbol_boundary(n, x))).collect();
        let ms = ManinSpace { n, z, plus, p1, dim, images, lifts, boundary, hecke: Mutex::new(HashMap::new()) };
        ms.check_invariants()?;
        Ok(ms)
    }

    fn check_invariants(&self) -> Result<()> {
        let z = &self.z;
        let len = self.p1.len();
        for x in 0..len {
            let b = self.boundary_of(&self.project_symbol(x));
            if b != z.from_i64(symbol_boundary(self.n, x)) {
                return Err(Error::InternalInvariantViolation(format!("boundary of symbol {x}")));
            }
        }
        for (b, &x) in self.lifts.iter().enumerate() {
            let v = self.project_symbol(x);
            if v.iter().enumerate().any(|(i, &a)| a != u64::from(i == b)) {
                return Err(Error::InternalInvariantViolation(format!("lift of basis vector {b}")));
            }
        }
        for x in 0..len {
            let a = self.project_symbol(x);
            let s = self.project_symbol(self.p1.sigma(x));
            if a.iter().zip(&s).any(|(&u, &v)| z.add(u, v) != 0) {
                return Err(Error::InternalInvariantViolation(format!("sigma relation at {x}")));
            }
            if self.plus && a != self.project_symbol(self.p1.iota(x)) {
                return Err(Error::InternalInvariantViolation(format!("iota relation at {x}")));
            }
        }
        Ok(())
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn ring(&self) -> Zmod {
        self.z
    }

    pub fn p(&self) -> u64 {
        self.z.prime()
    }

    pub fn r(&self) -> u32 {
        self.z.exponent()
    }

    pub fn is_plus(&self) -> bool {
        self.plus
    }

    pub fn p1(&self) -> &P1Index {
        &self.p1
    }

    /// Rank of V over Z/p^r.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// A Manin symbol mapping to each basis vector.
    pub fn lifts(&self) -> &[usize] {
        &self.lifts
    }

    /// Sparse image of a single symbol.
    pub fn symbol_image(&self, x: usize) -> &SparseVec {
        &self.images[x]
    }

    /// Dense image of a single symbol.
    pub fn project_symbol(&self, x: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        for &(b, a) in &self.images[x] {
            v[b as usize] = a;
        }
        v
    }

    /// Image of `Σ coeffs[x]·ξ(x)` over all symbols.
    pub fn project(&self, coeffs: &[u64]) -> Vec<u64> {
        assert_eq!(coeffs.len(), self.p1.len());
        let z = &self.z;
        let mut v = vec![0; self.dim];
        for (x, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for &(b, a) in &self.images[x] {
                    let i = b as usize;
                    v[i] = z.add(v[i], z.mul(c, a));
                }
            }
        }
        v
    }

    /// The boundary functional on V: the coefficient of
    /// `(Γ_0(N)·0) - (Γ_0(N)·∞)`.
    pub fn boundary_functional(&self) -> &[u64] {
        &self.boundary
    }

    pub fn boundary_of(&self, v: &[u64]) -> u64 {
        let z = &self.z;
        v.iter().zip(&self.boundary).fold(0, |acc, (&a, &b)| z.add(acc, z.mul(a, b)))
    }

    /// `Σ_{M ∈ X_n} ξ(x·M)` in V for every symbol `x`.
    fn hecke_on_symbols(&self, mats: &[Mat2]) -> Vec<Vec<u64>> {
        let z = self.z;
        (0..self.p1.len())
            .into_par_iter()
            .map(|x| {
                let mut acc = vec![0u64; self.dim];
                for m in mats {
                    let y = self.p1.act(x, m);
                    for &(b, a) in &self.images[y] {
                        let i = b as usize;
                        acc[i] = z.add(acc[i], a);
                    }
                }
                acc
            })
            .collect()
    }

    /// The matrix of `T_n` on V, cached per `n`.
    pub fn hecke(&self, n: u64) -> Result<Arc<Mat>> {
        if let Some(m) = self.hecke.lock().unwrap().get(&n) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.compute_hecke(n)?);
        self.hecke.lock().unwrap().entry(n).or_insert(m.clone());
        Ok(m)
    }

    fn compute_hecke(&self, n: u64) -> Result<Mat> {
        let mats = merel_matrices(n, self.n)?;
        let all = self.hecke_on_symbols(&mats);
        self.check_well_defined(&all).then_some(()).ok_or(Error::NotWellDefined(n))?;
        let rows = self.lifts.iter().map(|&x| all[x].clone()).collect();
        Ok(Mat::from_rows(self.dim, rows))
    }

    /// Whether a map given on every symbol kills every Manin relation.
    fn check_well_defined(&self, all: &[Vec<u64>]) -> bool {
        let z = &self.z;
        let p1 = &self.p1;
        (0..p1.len()).into_par_iter().all(|x| {
            let a = &all[x];
            let s = &all[p1.sigma(x)];
            let t1 = &all[p1.tau(x)];
            let t2 = &all[p1.tau(p1.tau(x))];
            let sigma_ok = a.iter().zip(s).all(|(&u, &v)| z.add(u, v) == 0);
            let tau_ok = (0..a.len()).all(|i| z.add(z.add(a[i], t1[i]), t2[i]) == 0);
            let iota_ok = !self.plus || a == &all[p1.iota(x)];
            sigma_ok && tau_ok && iota_ok
        })
    }

    /// `T_ℓ - ℓ - 1`.
    pub fn eta(&self, l: u64) -> Result<Mat> {
        Ok(self.hecke(l)?.minus_scalar(&self.z, l + 1))
    }

    /// The Atkin–Lehner involution `w_N`, acting by `{α, β} ↦ {Wα, Wβ}` with
    /// `W = [[0, -1], [N, 0]]`; images are converted back to Manin symbols by
    /// continued fractions.
    pub fn atkin_lehner(&self) -> Result<Mat> {
        let z = self.z;
        let n = self.n as i128;
        let all: Vec<Vec<u64>> = (0..self.p1.len())
            .into_par_iter()
            .map(|x| {
                let (a, b, c, d) = sl2_lift(self.n, self.p1.pair(x));
                // ξ(x) = {g(0), g(∞)} = {b/d, a/c}.
                let w = |num: i128, den: i128| -> (i128, i128) {
                    // W(num/den) = -den / (N num)
                    normalise(-den, n * num)
                };
                let from = w(b, d);
                let to = w(a, c);
                let mut acc = vec![0u64; self.dim];
                for (y, sgn) in symbol_path(&self.p1, from, to) {
                    let coeff = if sgn { z.neg(1) } else { 1 };
                    for &(bi, av) in &self.images[y] {
                        let i = bi as usize;
                        acc[i] = z.add(acc[i], z.mul(coeff, av));
                    }
                }
                acc
            })
            .collect();
        if !self.check_well_defined(&all) {
            return Err(Error::NotWellDefined(self.n));
        }
        let rows = self.lifts.iter().map(|&x| all[x].clone()).collect();
        Ok(Mat::from_rows(self.dim, rows))
    }

    /// The composite `T_{n_1} ⋯ T_{n_k}`.
    pub fn hecke_product(&self, ns: &[u64]) -> Result<Mat> {
        let mut m = Mat::identity(self.dim);
        for &k in ns {
            m = m.mul(&self.z, self.hecke(k)?.as_ref());
        }
        Ok(m)
    }

    /// Applies an operator to a vector.
    pub fn apply(&self, m: &Mat, v: &[u64]) -> Vec<u64> {
        m.apply(&self.z, v)
    }

    /// `y += c·x` in V.
    pub fn axpy(&self, y: &mut [u64], c: u64, x: &[u64]) {
        axpy(&self.z, y, c, x);
    }
}

/// Merel's set `X_n` of integer matrices `[[a, b], [c, d]]` with
/// `a > b >= 0`, `d > c >= 0` and `ad - bc = n`.
pub fn merel_matrices(n: u64, level: u64) -> Result<Vec<Mat2>> {
    if n == 0 || crate::arith::primes::gcd(n, level) != 1 {
        return Err(Error::BadIndex { n, level });
    }
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        for d in 1..=(n + 1 - a) {
            let ad = a * d;
            if ad < n {
                continue;
            }
            let bc = ad - n;
            for b in 0..a {
                if b == 0 {
                    if bc == 0 {
                        out.extend((0..d).map(|c| [a, 0, c, d]));
                    }
                } else if bc % b == 0 && bc / b < d {
                    out.push([a, b, bc / b, d]);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `(p, q)` with `q >= 0` and `gcd = 1`; `(1, 0)` is the cusp ∞.
fn normalise(p: i128, q: i128) -> (i128, i128) {
    let g = gcd_i(p, q);
    let (p, q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An SL_2(Z) matrix `(a, b, c, d)` whose bottom row reduces to `(c, d)` mod N.
fn sl2_lift(n: u64, (c, d): (u64, u64)) -> (i128, i128, i128, i128) {
    let n = n as i128;
    let c = c as i128;
    let mut d = d as i128;
    if c == 0 {
        return (1, 0, 0, 1);
    }
    while gcd_i(c, d) != 1 {
        d += n;
    }
    // a d - b c = 1
    let (g, x, y) = ext_gcd(d, c);
    debug_assert_eq!(g, 1);
    (x, -y, c, d)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Manin symbols (with signs, `true` = negative) summing to `{0, p/q}`.
fn path_from_zero(p1: &P1Index, (p, q): (i128, i128)) -> Vec<(usize, bool)> {
    let n = p1.level() as i128;
    let sym = |c: i128, d: i128| p1.index(c.rem_euclid(n) as i64, d.rem_euclid(n) as i64);
    // {0, ∞} = ξ([0:1]).
    let mut out = vec![(sym(0, 1), false)];
    if q == 0 {
        return out;
    }
    // Continued fraction convergents p_k/q_k of p/q.
    let (mut pm2, mut qm2, mut pm1, mut qm1) = (0i128, 1i128, 1i128, 0i128);
    let (mut num, mut den) = (p, q);
    let mut k: i64 = 0;
    loop {
        let a = num.div_euclid(den);
        let (pk, qk) = (a * pm1 + pm2, a * qm1 + qm2);
        // {p_{k-1}/q_{k-1}, p_k/q_k} = ξ([q_k : (-1)^{k-1} q_{k-1}]).
        let sign = if (k - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        out.push((sym(qk, sign * qm1), false));
        let rem = num - a * den;
        (pm2, qm2, pm1, qm1) = (pm1, qm1, pk, qk);
        if rem == 0 {
            break;
        }
        (num, den) = (den, rem);
        k += 1;
    }
    out
}

/// Manin symbols summing to `{α, β} = {0, β} - {0, α}`.
fn symbol_path(p1: &P1Index, alpha: (i128, i128), beta: (i128, i128)) -> Vec<(usize, bool)> {
    let mut out = path_from_zero(p1, beta);
    out.extend(path_from_zero(p1, alpha).into_iter().map(|(x, s)| (x, !s)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_formula() {
        assert_eq!(genus_x0(11), 1);
        assert_eq!(genus_x0(13), 0);
        assert_eq!(genus_x0(37), 2);
        assert_eq!(genus_x0(181), 14);
        assert_eq!(genus_x0(389), 32);
    }

    #[test]
    fn merel_sets() {
        assert_eq!(merel_matrices(1, 11).unwrap(), vec![[1, 0, 0, 1]]);
        let mut x2 = vec![[1, 0, 0, 2], [2, 0, 0, 1], [1, 0, 1, 2], [2, 1, 0, 1]];
        x2.sort_unstable();
        assert_eq!(merel_matrices(2, 11).unwrap(), x2);
        for n in 1..30 {
            let xs = merel_matrices(n, 31).unwrap();
            assert!(xs.iter().all(|m| m[0] * m[3] - m[1] * m[2] == n as i64));
        }
        assert_eq!(merel_matrices(11, 11).unwrap_err(), Error::BadIndex { n: 11, level: 11 });
    }

    #[test]
    fn dimensions() {
        let z = Zmod::new(5, 1);
        let v = ManinSpace::new(11, z, true).unwrap();
        assert_eq!(v.dim(), 2);
        let full = ManinSpace::new(11, z, false).unwrap();
        assert_eq!(full.dim(), 3);
        let v = ManinSpace::new(181, z, true).unwrap();
        assert_eq!(v.dim(), 15);
        let full = ManinSpace::new(181, z, false).unwrap();
        assert_eq!(full.dim(), 29);
    }

    #[test]
    fn elementary_relations() {
        let v = ManinSpace::new(181, Zmod::new(5, 1), true).unwrap();
        let p1 = v.p1();
        assert!(v.project_symbol(p1.index(1, 1)).iter().all(|&x| x == 0));
        let z = v.ring();
        for (c, d) in [(3i64, 7i64), (0, 1), (1, 0), (100, 5)] {
            let a = v.project_symbol(p1.index(c, d));
            let b = v.project_symbol(p1.index(-d, c));
            assert!(a.iter().zip(&b).all(|(&x, &y)| z.add(x, y) == 0));
        }
    }

    #[test]
    fn hecke_multiplicativity_and_eisenstein_eigenvalue() {
        let v = ManinSpace::new(11, Zmod::new(5, 1), true).unwrap();
        let z = v.ring();
        let t6 = v.hecke(6).unwrap();
        assert_eq!(v.hecke_product(&[2, 3]).unwrap(), *t6);
        assert_eq!(v.hecke_product(&[3, 2]).unwrap(), *t6);
        // The boundary is Hecke-equivariant with eigenvalue ℓ + 1.
        let t2 = v.hecke(2).unwrap();
        for b in 0..v.dim() {
            let mut e = vec![0; v.dim()];
            e[b] = 1;
            assert_eq!(v.boundary_of(&v.apply(&t2, &e)), z.mul(3, v.boundary_of(&e)));
        }
    }

    #[test]
    fn atkin_lehner_is_an_involution() {
        for n in [11u64, 37, 181] {
            let v = ManinSpace::new(n, Zmod::new(7, 1), true).unwrap();
            let w = v.atkin_lehner().unwrap();
            assert_eq!(w.mul(&v.ring(), &w), Mat::identity(v.dim()), "N = {n}");
            // w_N commutes with T_2.
            let t2 = v.hecke(2).unwrap();
            assert_eq!(w.mul(&v.ring(), &t2), t2.mul(&v.ring(), &w));
        }
    }
}
