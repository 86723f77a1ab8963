use serde::{Deserialize, Serialize};

use super::params::LensParams;
use crate::abelian::element_order;
use crate::error::{Error, Result};

/// 2-local reduced normal-invariant coordinates: `t4[i-1] = t_{4i} mod 2^K`
/// and `t4m2[i-1] = t_{4i-2} mod 2`, for `i = 1..c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalCoords {
    pub t4: Vec<u64>,
    pub t4m2: Vec<u64>,
}

impl NormalCoords {
    pub fn zero(p: &LensParams) -> Self {
        NormalCoords {
            t4: vec![0; p.c()],
            t4m2: vec![0; p.c()],
        }
    }

    /// Reduces the entries into range.
    pub fn new(p: &LensParams, t4: &[i64], t4m2: &[i64]) -> Result<Self> {
        let c = p.c();
        if t4.len() != c || t4m2.len() != c {
            return Err(Error::CoordinateOutOfRange(format!(
                "expected {c} entries of each kind, got {} and {}",
                t4.len(),
                t4m2.len()
            )));
        }
        let red = |v: &[i64], m: u64| v.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect();
        Ok(NormalCoords {
            t4: red(t4, p.t4_modulus()),
            t4m2: red(t4m2, p.t4m2_modulus()),
        })
    }

    pub fn check(&self, p: &LensParams) -> Result<()> {
        let c = p.c();
        if self.t4.len() != c || self.t4m2.len() != c {
            return Err(Error::CoordinateOutOfRange(format!(
                "{self:?} does not have {c} entries of each kind"
            )));
        }
        if self.t4.iter().any(|&x| x >= p.t4_modulus())
            || self.t4m2.iter().any(|&x| x >= p.t4m2_modulus())
        {
            return Err(Error::CoordinateOutOfRange(format!("{self:?} for {p}")));
        }
        Ok(())
    }

    /// `(t4 | t4m2)` as one vector.
    pub fn to_vec(&self) -> Vec<i64> {
        self.t4.iter().chain(&self.t4m2).map(|&x| x as i64).collect()
    }

    pub fn from_vec(p: &LensParams, v: &[i64]) -> Result<Self> {
        let c = p.c();
        if v.len() != 2 * c {
            return Err(Error::CoordinateOutOfRange(format!("{v:?} has the wrong length")));
        }
        Self::new(p, &v[..c], &v[c..])
    }

    pub fn add(&self, o: &Self, p: &LensParams) -> Self {
        let (a, b) = (p.t4_modulus(), p.t4m2_modulus());
        NormalCoords {
            t4: self.t4.iter().zip(&o.t4).map(|(x, y)| (x + y) % a).collect(),
            t4m2: self.t4m2.iter().zip(&o.t4m2).map(|(x, y)| (x + y) % b).collect(),
        }
    }

    pub fn scale(&self, m: i64, p: &LensParams) -> Self {
        let v: Vec<i64> = self.to_vec().iter().map(|&x| x * m).collect();
        Self::from_vec(p, &v).expect("same shape")
    }

    pub fn is_zero(&self) -> bool {
        self.t4.iter().chain(&self.t4m2).all(|&x| x == 0)
    }

    pub fn order(&self, p: &LensParams) -> u64 {
        element_order(&p.coord_ambient(), &self.to_vec())
    }

    /// Reduction to a divisor `n2` of `N`: `t_{4i}` mod `2^K'`; `t_{4i-2}`
    /// kept mod 2 (dropped when `K' = 0`).
    pub fn transfer(&self, p: &LensParams, n2: usize) -> Result<(LensParams, Self)> {
        if n2 == 0 || !p.n().is_multiple_of(n2) {
            return Err(Error::NotDivisor(n2, p.n()));
        }
        let p2 = p.with_n(n2)?;
        let v: Vec<i64> = self.to_vec();
        Ok((p2, Self::from_vec(&p2, &v)?))
    }
}
