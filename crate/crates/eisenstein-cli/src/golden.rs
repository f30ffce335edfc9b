//! Published values of `g_p` and `t`, used to flag regressions in `gp`.

/// One published row: level, prime, `t = v_p(numerator((N-1)/12))`, `g_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub n: u64,
    pub p: u64,
    pub t: u32,
    pub g_p: u32,
}

/// Published values of `g_p` at desk-scale levels.
pub const TABLE: [GoldenRow; 9] = [
    GoldenRow { n: 181, p: 5, t: 1, g_p: 3 },
    GoldenRow { n: 1571, p: 5, t: 1, g_p: 3 },
    GoldenRow { n: 2621, p: 5, t: 1, g_p: 3 },
    GoldenRow { n: 3001, p: 5, t: 3, g_p: 6 },
    GoldenRow { n: 3671, p: 5, t: 1, g_p: 5 },
    GoldenRow { n: 1321, p: 11, t: 1, g_p: 3 },
    GoldenRow { n: 1381, p: 23, t: 1, g_p: 3 },
    GoldenRow { n: 4229, p: 7, t: 1, g_p: 3 },
    GoldenRow { n: 4159, p: 7, t: 1, g_p: 4 },
];

pub fn lookup(n: u64, p: u64) -> Option<GoldenRow> {
    TABLE.iter().copied().find(|row| row.n == n && row.p == p)
}
