//! Turning `--N`, `--range`, `--max-N` and `--p` into a list of work items.

use std::fmt;
use std::str::FromStr;

use clap::Args;
use eisenstein::arith::primes::{eisenstein_primes, is_prime, primes_in};

/// A half-open range of levels `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for LevelRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let lo: u64 = a.trim().parse().map_err(|e| format!("bad lower bound {a:?}: {e}"))?;
        let hi: u64 = b.trim().parse().map_err(|e| format!("bad upper bound {b:?}: {e}"))?;
        if lo >= hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(LevelRange { lo, hi })
    }
}

/// `--p`: one prime, or every prime dividing the numerator of `(N-1)/12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeChoice {
    One(u64),
    All,
}

impl FromStr for PrimeChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(PrimeChoice::All);
        }
        let p: u64 = s.parse().map_err(|e| format!("bad prime {s:?}: {e}"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        Ok(PrimeChoice::One(p))
    }
}

impl fmt::Display for PrimeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeChoice::One(p) => write!(f, "{p}"),
            PrimeChoice::All => f.write_str("all"),
        }
    }
}

/// Which levels and primes to process.
#[derive(Args, Clone, Debug)]
pub struct Selection {
    /// A single prime level.
    #[arg(long = "N", value_name = "N", conflicts_with_all = ["range", "max_n"])]
    pub n: Option<u64>,
    /// Every prime level in the half-open range `A..B`.
    #[arg(long, value_name = "A..B", conflicts_with = "max_n")]
    pub range: Option<LevelRange>,
    /// Every prime level `5 <= N < MAX`.
    #[arg(long = "max-N", value_name = "MAX")]
    pub max_n: Option<u64>,
    /// A prime `p`, or `all` for every prime dividing the numerator of (N-1)/12.
    #[arg(long, value_name = "PRIME|all")]
    pub p: Option<PrimeChoice>,
    /// Work modulo `p^r`; defaults depend on the command.
    #[arg(long)]
    pub r: Option<u32>,
}

/// One unit of work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Item {
    pub n: u64,
    pub p: Option<u64>,
}

impl Selection {
    /// The levels selected, in increasing order.  A single `--N` is passed
    /// through unchecked so that invalid levels produce an error record.
    pub fn levels(&self) -> Result<Vec<u64>, String> {
        match (self.n, self.range, self.max_n) {
            (Some(n), _, _) => Ok(vec![n]),
            (None, Some(r), _) => Ok(primes_in(r.lo.max(5), r.hi)),
            (None, None, Some(m)) => Ok(primes_in(5, m)),
            (None, None, None) => Err("one of --N, --range or --max-N is required".into()),
        }
    }

    /// Work items for the levels, expanding `--p all`.
    ///
    /// `min_p` drops primes the command does not handle when expanding
    /// `all`; a level left without primes yields an item with `p = None`
    /// when `keep_bare` is set.  An explicit `--p` is passed through so that
    /// a non-Eisenstein prime produces an error record.
    pub fn items(&self, default: Option<PrimeChoice>, min_p: u64, keep_bare: bool) -> Result<Vec<Item>, String> {
        let levels = self.levels()?;
        let choice = self.p.or(default);
        let mut out = Vec::new();
        for n in levels {
            match choice {
                None => out.push(Item { n, p: None }),
                Some(PrimeChoice::One(p)) => out.push(Item { n, p: Some(p) }),
                Some(PrimeChoice::All) => {
                    let ps: Vec<u64> = if n >= 5 && is_prime(n) {
                        eisenstein_primes(n).into_iter().filter(|&p| p >= min_p).collect()
                    } else {
                        Vec::new()
                    };
                    if ps.is_empty() {
                        if keep_bare {
                            out.push(Item { n, p: None });
                        }
                    } else {
                        out.extend(ps.into_iter().map(|p| Item { n, p: Some(p) }));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("5..500".parse::<LevelRange>(), Ok(LevelRange { lo: 5, hi: 500 }));
        assert!("500..5".parse::<LevelRange>().is_err());
        assert!("5-500".parse::<LevelRange>().is_err());
    }

    #[test]
    fn primes() {
        assert_eq!("all".parse::<PrimeChoice>(), Ok(PrimeChoice::All));
        assert_eq!("7".parse::<PrimeChoice>(), Ok(PrimeChoice::One(7)));
        assert!("9".parse::<PrimeChoice>().is_err());
    }

    #[test]
    fn expansion() {
        let sel = Selection { n: None, range: Some(LevelRange { lo: 5, hi: 40 }), max_n: None, p: Some(PrimeChoice::All), r: None };
        let items = sel.items(None, 5, false).unwrap();
        // 17 -> 2 and 37 -> 3 are dropped by min_p; 13 has no Eisenstein prime.
        let expected = [(11, 5), (23, 11), (29, 7), (31, 5)].map(|(n, p)| Item { n, p: Some(p) });
        assert_eq!(items, expected);
        let bare = sel.items(None, 5, true).unwrap();
        assert_eq!(bare.len(), primes_in(5, 40).len());
    }
}
