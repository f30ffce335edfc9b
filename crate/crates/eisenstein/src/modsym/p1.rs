//! The projective line P^1(Z/NZ) for a prime `N`.

/// Enumeration of P^1(Z/NZ): index `c < N` is `[c:1]` and index `N` is
/// `[1:0]`.
#[derive(Clone, Debug)]
pub struct P1Index {
    n: u64,
    inv: Vec<u64>,
}

/// An integer 2×2 matrix `[a, b, c, d]` acting on row vectors `(c, d)`.
pub type Mat2 = [i64; 4];

impl P1Index {
    pub fn new(n: u64) -> Self {
        let mut inv = vec![0u64; n as usize];
        if n > 1 {
            inv[1] = 1;
            for x in 2..n {
                // inv[x] = -(n / x) * inv[n mod x]
                let q = n / x;
                let r = (n % x) as usize;
                inv[x as usize] = (n - q * inv[r] % n) % n;
            }
        }
        P1Index { n, inv }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    /// Number of points, `N + 1`.
    pub fn len(&self) -> usize {
        self.n as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Inverse of a unit mod N.
    pub fn inv(&self, x: u64) -> u64 {
        self.inv[(x % self.n) as usize]
    }

    /// Index of `[c:d]`; `(c, d)` must not be `(0, 0)` mod N.
    pub fn index(&self, c: i64, d: i64) -> usize {
        let n = self.n as i64;
        let c = c.rem_euclid(n) as u64;
        let d = d.rem_euclid(n) as u64;
        if d == 0 {
            assert!(c != 0, "(0, 0) is not a point of P^1");
            self.n as usize
        } else {
            (c * self.inv[d as usize] % self.n) as usize
        }
    }

    /// The normalised pair of an index.
    pub fn pair(&self, i: usize) -> (u64, u64) {
        if i as u64 == self.n {
            (1, 0)
        } else {
            (i as u64, 1)
        }
    }

    /// `[(c, d)·M]`.
    pub fn act(&self, i: usize, m: &Mat2) -> usize {
        let n = self.n as i128;
        let (c, d) = self.pair(i);
        let (c, d) = (c as i128, d as i128);
        let nc = (c * m[0] as i128 + d * m[2] as i128).rem_euclid(n);
        let nd = (c * m[1] as i128 + d * m[3] as i128).rem_euclid(n);
        self.index(nc as i64, nd as i64)
    }

    /// `σ[c:d] = [d:-c]`.
    pub fn sigma(&self, i: usize) -> usize {
        let (c, d) = self.pair(i);
        self.index(d as i64, -(c as i64))
    }

    /// `τ[c:d] = [d:-c-d]`.
    pub fn tau(&self, i: usize) -> usize {
        let (c, d) = self.pair(i);
        self.index(d as i64, -(c as i64) - d as i64)
    }

    /// `ι[c:d] = [-c:d]`.
    pub fn iota(&self, i: usize) -> usize {
        let (c, d) = self.pair(i);
        self.index(-(c as i64), d as i64)
    }

    /// `k = (c+d)/(c-d)` for `[c:d] ≠ [1:1]`: the single parameter the
    /// coefficient functions of the Eisenstein elements depend on.
    pub fn k_param(&self, i: usize) -> Option<u64> {
        let n = self.n;
        let (c, d) = self.pair(i);
        let u = (d + n - c) % n;
        if u == 0 {
            return None;
        }
        let w = (c + d) % n;
        Some((n - w) % n * self.inv(u) % n)
    }
}
