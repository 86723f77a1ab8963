use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic_ring::{two_adic, Sign};
use crate::error::{Error, Result};
use crate::special::normalize_k;

/// `(N, K, M, d, e, c, k)` for the lens space `L^{2d-1}_N(alpha_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct LensParams {
    n: usize,
    two_power: u32,
    odd_part: usize,
    d: usize,
    k: usize,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "K", default, skip_deserializing)]
    two_power: u32,
    #[serde(rename = "M", default, skip_deserializing)]
    odd_part: usize,
    d: usize,
    #[serde(default, skip_deserializing)]
    e: usize,
    #[serde(default, skip_deserializing)]
    c: usize,
    #[serde(default = "one")]
    k: i64,
}

fn one() -> i64 {
    1
}

impl TryFrom<RawParams> for LensParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        LensParams::new(r.n, r.d, r.k)
    }
}

impl From<LensParams> for RawParams {
    fn from(p: LensParams) -> Self {
        RawParams {
            n: p.n,
            two_power: p.two_power,
            odd_part: p.odd_part,
            d: p.d,
            e: p.e(),
            c: p.c(),
            k: p.k as i64,
        }
    }
}

impl LensParams {
    pub fn new(n: usize, d: usize, k: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("N must be >= 2, got {n}")));
        }
        if d < 3 {
            return Err(Error::InvalidParams(format!("d must be >= 3, got {d}")));
        }
        let k = normalize_k(n, k)?;
        let (two_power, odd_part) = two_adic(n);
        Ok(LensParams { n, two_power, odd_part, d, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K` in `N = 2^K M`.
    pub fn two_power(&self) -> u32 {
        self.two_power
    }

    /// `M` in `N = 2^K M`.
    pub fn odd_part(&self) -> usize {
        self.odd_part
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> usize {
        self.d / 2
    }

    pub fn c(&self) -> usize {
        (self.d - 1) / 2
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Eigenvalue `(-1)^d` of the invariant's target.
    pub fn sign(&self) -> Sign {
        Sign::for_dim(self.d)
    }

    pub fn with_d(&self, d: usize) -> Result<Self> {
        Self::new(self.n, d, self.k as i64)
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.d, self.k as i64)
    }

    /// `2^K`, the modulus of each `t_{4i}`.
    pub fn t4_modulus(&self) -> u64 {
        1 << self.two_power
    }

    /// `2^min(K,1)`, the modulus of each `t_{4i-2}`.
    pub fn t4m2_modulus(&self) -> u64 {
        1 << self.two_power.min(1)
    }

    /// Moduli of the full 2-local coordinate vector `(t4 | t4m2)`.
    pub fn coord_ambient(&self) -> Vec<u64> {
        let c = self.c();
        let mut v = vec![self.t4_modulus(); c];
        v.extend(std::iter::repeat_n(self.t4m2_modulus(), c));
        v
    }

    /// `M^c`, the order of the odd part of the reduced normal invariants.
    pub fn odd_order(&self) -> Result<u128> {
        (self.odd_part as u128)
            .checked_pow(self.c() as u32)
            .ok_or_else(|| Error::InvalidParams("M^c overflows".into()))
    }
}

impl fmt::Display for LensParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} d={} k={}", self.n, self.d, self.k)
    }
}
