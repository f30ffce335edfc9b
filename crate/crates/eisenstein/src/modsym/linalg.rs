//! Dense linear algebra over the local ring Z/p^r.
//!
//! Vectors are rows; a matrix `A` acts by `v ↦ v·A`, so the rows of the
//! matrix of an operator are the images of the basis vectors.

use rayon::prelude::*;

use crate::arith::Zmod;

/// A dense row-major matrix with entries in Z/p^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Mat { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    /// `v·A`.
    pub fn apply(&self, z: &Zmod, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u64; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                axpy(z, &mut out, c, self.row(i));
            }
        }
        out
    }

    /// The product `self · other` (apply `self` first, then `other`).
    pub fn mul(&self, z: &Zmod, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let rows: Vec<Vec<u64>> = (0..self.rows).into_par_iter().map(|i| other.apply(z, self.row(i))).collect();
        Mat::from_rows(other.cols, rows)
    }

    /// `self - c·I` for a square matrix.
    pub fn minus_scalar(&self, z: &Zmod, c: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let x = m.get(i, i);
            m.set(i, i, z.sub(x, z.reduce(c)));
        }
        m
    }

    pub fn add(&self, z: &Zmod, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| z.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// `y += c·x` in place.
#[inline]
pub fn axpy(z: &Zmod, y: &mut [u64], c: u64, x: &[u64]) {
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            *a = z.add(*a, z.mul(c, b));
        }
    }
}

/// `c·x`.
pub fn scale(z: &Zmod, c: u64, x: &[u64]) -> Vec<u64> {
    x.iter().map(|&b| z.mul(c, b)).collect()
}

/// `x - y`.
pub fn sub(z: &Zmod, x: &[u64], y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).map(|(&a, &b)| z.sub(a, b)).collect()
}

/// A submodule of (Z/p^r)^n in echelon form.
///
/// Pivots are chosen with minimal p-adic valuation over the whole remaining
/// matrix, so the pivot row `i` is `p^{v_i}` times a row with a unit at its
/// pivot column, and every later row vanishes at earlier pivot columns.  With
/// this shape, reducing a vector pivot by pivot decides membership exactly.
#[derive(Clone, Debug)]
pub struct Submodule {
    z: Zmod,
    n: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<(usize, u32)>,
}

impl Submodule {
    /// The span of `gens`, each of length `n`.
    pub fn span(z: Zmod, n: usize, gens: Vec<Vec<u64>>) -> Self {
        let mut active: Vec<Vec<u64>> = gens.into_iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        while !active.is_empty() {
            let (ri, col, v) = min_valuation_entry(&z, &active);
            let mut piv = active.swap_remove(ri);
            // Normalise the pivot entry to exactly p^v.
            let pv = z.prime().pow(v);
            let unit = z.divide(piv[col], pv).expect("pivot has valuation v");
            let uinv = z.inv(unit).expect("unit part is invertible");
            if uinv != 1 {
                piv.iter_mut().for_each(|x| *x = z.mul(*x, uinv));
            }
            let pref = &piv;
            active.par_iter_mut().for_each(|row| {
                let x = row[col];
                if x != 0 {
                    let f = z.divide(x, pv).expect("pivot valuation is minimal");
                    axpy(&z, row, z.neg(f), pref);
                }
            });
            active.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(piv);
            pivots.push((col, v));
        }
        Submodule { z, n, rows, pivots }
    }

    /// The whole ambient module.
    pub fn full(z: Zmod, n: usize) -> Self {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        Submodule { z, n, pivots: (0..n).map(|i| (i, 0)).collect(), rows }
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    /// A generating set (the echelon rows).
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Valuations of the pivots; the submodule is isomorphic to
    /// `⊕ p^{v_i} Z/p^r`.
    pub fn pivot_valuations(&self) -> Vec<u32> {
        self.pivots.iter().map(|&(_, v)| v).collect()
    }

    /// Length as a Z_p-module: `Σ (r - v_i)`.
    pub fn length(&self) -> u32 {
        let r = self.z.exponent();
        self.pivots.iter().map(|&(_, v)| r - v).sum()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.n);
        let z = &self.z;
        let mut w = v.to_vec();
        for (row, &(col, val)) in self.rows.iter().zip(&self.pivots) {
            let x = w[col];
            if x == 0 {
                continue;
            }
            let Some(f) = z.divide(x, z.prime().pow(val)) else { return false };
            axpy(z, &mut w, z.neg(f), row);
            if w[col] != 0 {
                return false;
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// Position and valuation of an entry of minimal valuation; stops at the
/// first unit.
fn min_valuation_entry(z: &Zmod, rows: &[Vec<u64>]) -> (usize, usize, u32) {
    let mut best = (0, 0, u32::MAX);
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let v = z.valuation(x);
            if v < best.2 {
                best = (i, j, v);
                if v == 0 {
                    return best;
                }
            }
        }
    }
    best
}

/// Basis of the left kernel `{v : v·A = 0}` over a field (`r = 1`).
pub fn left_kernel(z: &Zmod, a: &Mat) -> Vec<Vec<u64>> {
    assert_eq!(z.exponent(), 1, "left_kernel needs a field");
    let n = a.rows();
    let w = a.cols();
    // Row-reduce [A | I]; rows whose A-part vanishes carry kernel vectors.
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.resize(w + n, 0);
            r[w + i] = 1;
            r
        })
        .collect();
    let mut next = 0;
    for col in 0..w {
        let Some(pi) = (next..n).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(next, pi);
        let inv = z.inv(rows[next][col]).unwrap();
        let piv: Vec<u64> = scale(z, inv, &rows[next]);
        rows[next] = piv.clone();
        rows.par_iter_mut().enumerate().for_each(|(i, row)| {
            if i != next && row[col] != 0 {
                let f = z.neg(row[col]);
                axpy(z, row, f, &piv);
            }
        });
        next += 1;
    }
    rows[next..].iter().map(|r| r[w..].to_vec()).collect()
}

/// Basis of the right kernel `{x : A·x = 0}` over a field, as rows.
pub fn right_kernel(z: &Zmod, a: &Mat) -> Vec<Vec<u64>> {
    left_kernel(z, &a.transpose())
}

/// A sparse row: `(column, value)` pairs sorted by column.
pub type SparseRow = Vec<(usize, u64)>;

/// `x - f·y` for sparse rows.
fn sparse_sub(z: &Zmod, x: &SparseRow, f: u64, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, z.neg(z.mul(f, y[j].1))));
            j += 1;
        } else {
            let v = z.sub(x[i].1, z.mul(f, y[j].1));
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a sparse relation matrix over Z/p^r using
/// unit pivots only, choosing short rows and rare columns first to limit
/// fill-in.  Returns the pivot rows (each with a 1 at its pivot and zeros at
/// every other pivot column) and, for every column, the pivot row owning it.
///
/// Fails if the relations leave torsion, i.e. some non-zero row has no unit
/// entry once all unit pivots are used.
pub fn sparse_rref(z: &Zmod, ncols: usize, rows: Vec<SparseRow>) -> crate::Result<(Vec<SparseRow>, Vec<Option<usize>>)> {
    let mut rows = rows;
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c].push(i);
        }
    }
    let mut pivot_col: Vec<Option<usize>> = vec![None; ncols];
    let mut is_pivot = vec![false; rows.len()];
    let mut stuck = vec![false; rows.len()];
    loop {
        // Shortest remaining row with a unit entry.
        let cand = (0..rows.len())
            .filter(|&i| !is_pivot[i] && !stuck[i] && !rows[i].is_empty())
            .min_by_key(|&i| rows[i].len());
        let Some(ri) = cand else { break };
        let Some(&(col, val)) = rows[ri]
            .iter()
            .filter(|&&(_, v)| z.is_unit(v))
            .min_by_key(|&&(c, _)| col_rows[c].len())
        else {
            stuck[ri] = true;
            continue;
        };
        let inv = z.inv(val).unwrap();
        let piv: SparseRow = rows[ri].iter().map(|&(c, v)| (c, z.mul(v, inv))).collect();
        rows[ri] = piv.clone();
        let users = std::mem::take(&mut col_rows[col]);
        let mut keep = vec![ri];
        for s in users {
            if s == ri {
                continue;
            }
            let Ok(pos) = rows[s].binary_search_by_key(&col, |&(c, _)| c) else { continue };
            let f = rows[s][pos].1;
            let new = sparse_sub(z, &rows[s], f, &piv);
            for &(c, _) in &new {
                if c != col && rows[s].binary_search_by_key(&c, |&(cc, _)| cc).is_err() {
                    col_rows[c].push(s);
                }
            }
            rows[s] = new;
            // Rows that gained a unit entry may be usable again.
            stuck[s] = false;
        }
        keep.dedup();
        col_rows[col] = keep;
        is_pivot[ri] = true;
        pivot_col[col] = Some(ri);
    }
    if (0..rows.len()).any(|i| !is_pivot[i] && !rows[i].is_empty()) {
        return Err(crate::Error::InternalInvariantViolation(
            "Manin relations leave p-torsion".into(),
        ));
    }
    Ok((rows, pivot_col))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_with_torsion() {
        let z = Zmod::new(5, 2);
        // Span of (5, 10, 0) and (0, 5, 5) in (Z/25)^3.
        let s = Submodule::span(z, 3, vec![vec![5, 10, 0], vec![0, 5, 5]]);
        assert_eq!(s.length(), 2);
        assert!(s.contains(&[5, 15, 5]));
        assert!(s.contains(&[0, 0, 0]));
        assert!(!s.contains(&[1, 2, 0]));
        assert!(!s.contains(&[5, 0, 0]));
        assert!(s.contains(&[10, 20, 0]));
    }

    #[test]
    fn membership_matches_brute_force() {
        let z = Zmod::new(3, 2);
        let gens = vec![vec![3, 1, 0], vec![0, 3, 6], vec![6, 2, 0]];
        let s = Submodule::span(z, 3, gens.clone());
        let mut span = std::collections::HashSet::new();
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    let v: Vec<u64> = (0..3)
                        .map(|j| (a * gens[0][j] + b * gens[1][j] + c * gens[2][j]) % 9)
                        .collect();
                    span.insert(v);
                }
            }
        }
        let mut size = 0;
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    let v = vec![a, b, c];
                    assert_eq!(s.contains(&v), span.contains(&v), "{v:?}");
                    size += s.contains(&v) as u32;
                }
            }
        }
        assert_eq!(size, 3u32.pow(s.length()));
    }

    #[test]
    fn sparse_elimination() {
        let z = Zmod::new(5, 2);
        // x0 + x1 + x2 = 0, x1 - x2 = 0, 2 x0 + x3 = 0.
        let rows = vec![vec![(0, 1), (1, 1), (2, 1)], vec![(1, 1), (2, 24)], vec![(0, 2), (3, 1)]];
        let (piv, owner) = sparse_rref(&z, 4, rows).unwrap();
        let pivots: Vec<usize> = (0..4).filter(|&c| owner[c].is_some()).collect();
        assert_eq!(pivots.len(), 3);
        for &c in &pivots {
            let row = &piv[owner[c].unwrap()];
            for &d in &pivots {
                let e = row.iter().find(|&&(cc, _)| cc == d).map_or(0, |&(_, v)| v);
                assert_eq!(e, u64::from(c == d));
            }
        }
        // Torsion is rejected: 5 x0 = 0 in Z/25.
        assert!(sparse_rref(&z, 1, vec![vec![(0, 5)]]).is_err());
    }

    #[test]
    fn kernels_over_a_field() {
        let z = Zmod::new(7, 1);
        let a = Mat::from_rows(2, vec![vec![1, 2], vec![2, 4], vec![0, 1]]);
        let k = left_kernel(&z, &a);
        assert_eq!(k.len(), 1);
        assert!(a.apply(&z, &k[0]).iter().all(|&x| x == 0));
        let rk = right_kernel(&z, &Mat::from_rows(3, vec![vec![1, 1, 0], vec![0, 1, 1]]));
        assert_eq!(rk.len(), 1);
    }
}
