//! Series/rank data and root pairings for the three classical affine series.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    B,
    C,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::B => f.write_str("B"),
            Series::C => f.write_str("C"),
            Series::D => f.write_str("D"),
        }
    }
}

impl std::str::FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::InvalidAlgebra(format!("unknown series {other:?}"))),
        }
    }
}

/// An affine algebra of type B, C or D at a given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    series: Series,
    rank: u32,
}

impl AlgebraSpec {
    pub fn new(series: Series, rank: u32) -> Result<Self> {
        let min = match series {
            Series::B | Series::C => 2,
            Series::D => 3,
        };
        if rank < min {
            return Err(Error::InvalidAlgebra(format!(
                "{series}_{rank}: rank must be at least {min}"
            )));
        }
        Ok(AlgebraSpec { series, rank })
    }

    pub fn c(rank: u32) -> Result<Self> {
        Self::new(Series::C, rank)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Order of the C-series L operator, `2n + 2`. Also used as the size
    /// scale for B and D truncation defaults.
    pub fn big_n(&self) -> u32 {
        2 * self.rank + 2
    }

    pub fn cartan(&self) -> CartanData {
        CartanData::new(*self)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// Symmetric table of root pairings `(alpha_a | alpha_b)`.
///
/// Pairings are stored doubled so that every entry is an integer; the
/// doubled value is exactly the half-unit shift that appears in the Y/Q
/// correspondence and in the screening shift relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    algebra: AlgebraSpec,
    doubled: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(algebra: AlgebraSpec) -> Self {
        let n = algebra.rank as usize;
        let mut doubled = vec![vec![0i64; n]; n];
        for a in 0..n {
            for b in 0..n {
                doubled[a][b] = Self::entry(algebra, a + 1, b + 1);
            }
        }
        CartanData { algebra, doubled }
    }

    // 2 * (alpha_a | alpha_b), 1-based nodes.
    fn entry(algebra: AlgebraSpec, a: usize, b: usize) -> i64 {
        let n = algebra.rank as usize;
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match algebra.series {
            // alpha_a = e_a - e_{a+1}, alpha_n = 2 e_n with (e|e) = 1/2
            Series::C => {
                if lo == hi {
                    if lo == n {
                        4
                    } else {
                        2
                    }
                } else if hi == lo + 1 {
                    if hi == n {
                        -2
                    } else {
                        -1
                    }
                } else {
                    0
                }
            }
            // alpha_n = e_n with (e|e) = 1
            Series::B => {
                if lo == hi {
                    if lo == n {
                        2
                    } else {
                        4
                    }
                } else if hi == lo + 1 {
                    -2
                } else {
                    0
                }
            }
            // alpha_n = e_{n-1} + e_n
            Series::D => {
                if lo == hi {
                    4
                } else if hi == n {
                    if lo == n - 2 {
                        -2
                    } else {
                        0
                    }
                } else if hi == lo + 1 {
                    -2
                } else {
                    0
                }
            }
        }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    /// `(alpha_a | alpha_b)` as an exact rational (1-based nodes).
    pub fn pairing(&self, a: u32, b: u32) -> Ratio<i64> {
        Ratio::new(self.doubled_pairing(a, b), 2)
    }

    /// `2 (alpha_a | alpha_b)`, i.e. the pairing measured in half units.
    pub fn doubled_pairing(&self, a: u32, b: u32) -> i64 {
        self.doubled[a as usize - 1][b as usize - 1]
    }

    /// `(alpha_a | alpha_a)`, which is always an integer (1 or 2).
    pub fn norm(&self, a: u32) -> i64 {
        self.doubled_pairing(a, a) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_bounds() {
        assert!(AlgebraSpec::c(1).is_err());
        assert!(AlgebraSpec::c(2).is_ok());
        assert!(AlgebraSpec::new(Series::B, 2).is_ok());
        assert!(AlgebraSpec::new(Series::D, 2).is_err());
        assert!(AlgebraSpec::new(Series::D, 3).is_ok());
        assert_eq!(AlgebraSpec::c(3).unwrap().big_n(), 8);
    }

    #[test]
    fn norms_per_series() {
        for n in 2..7 {
            let c = AlgebraSpec::c(n).unwrap().cartan();
            let b = AlgebraSpec::new(Series::B, n).unwrap().cartan();
            for a in 1..=n {
                let delta = i64::from(a == n);
                assert_eq!(c.norm(a), 1 + delta);
                assert_eq!(b.norm(a), 2 - delta);
            }
        }
        for n in 3..7 {
            let d = AlgebraSpec::new(Series::D, n).unwrap().cartan();
            for a in 1..=n {
                assert_eq!(d.norm(a), 2);
            }
            assert_eq!(d.pairing(n - 1, n), Ratio::from_integer(0));
            assert_eq!(d.pairing(n - 2, n), Ratio::from_integer(-1));
        }
    }

    #[test]
    fn symmetric() {
        for alg in [
            AlgebraSpec::c(4).unwrap(),
            AlgebraSpec::new(Series::B, 4).unwrap(),
            AlgebraSpec::new(Series::D, 5).unwrap(),
        ] {
            let cd = alg.cartan();
            let n = alg.rank();
            for a in 1..=n {
                for b in 1..=n {
                    assert_eq!(cd.pairing(a, b), cd.pairing(b, a));
                }
            }
        }
    }

    #[test]
    fn c_off_diagonal() {
        let c = AlgebraSpec::c(3).unwrap().cartan();
        assert_eq!(c.pairing(1, 2), Ratio::new(-1, 2));
        assert_eq!(c.pairing(2, 3), Ratio::from_integer(-1));
        assert_eq!(c.pairing(1, 3), Ratio::from_integer(0));
    }
}
