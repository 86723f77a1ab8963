use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Splits `n` as `2^K * M` with `M` odd.
pub fn two_adic(n: usize) -> (u32, usize) {
    assert!(n > 0, "two_adic(0)");
    let k = n.trailing_zeros();
    (k, n >> k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealKind {
    /// `<x^N - 1>`
    GroupRing,
    /// `<1 + x + ... + x^(N-1)>`
    Truncated,
    /// `<1 + x^(2^l)>`
    BinomialPlus(u32),
    /// `<1 + y + ... + y^(M-1)>` with `y = x^(2^K)`
    OddTruncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingModulus {
    n: usize,
    kind: IdealKind,
}

impl RingModulus {
    pub fn new(n: usize, kind: IdealKind) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(format!("N must be >= 2, got {n}")));
        }
        let (k, m) = two_adic(n);
        match kind {
            IdealKind::BinomialPlus(l) if l >= k => {
                return Err(Error::InvalidModulus(format!(
                    "BinomialPlus({l}) needs 2^{} | {n}",
                    l + 1
                )))
            }
            IdealKind::OddTruncated if m == 1 => {
                return Err(Error::InvalidModulus(format!(
                    "OddTruncated needs an odd part > 1 (N = {n})"
                )))
            }
            _ => {}
        }
        Ok(RingModulus { n, kind })
    }

    pub fn group_ring(n: usize) -> Result<Self> {
        Self::new(n, IdealKind::GroupRing)
    }

    pub fn truncated(n: usize) -> Result<Self> {
        Self::new(n, IdealKind::Truncated)
    }

    pub fn binomial_plus(n: usize, l: u32) -> Result<Self> {
        Self::new(n, IdealKind::BinomialPlus(l))
    }

    pub fn odd_truncated(n: usize) -> Result<Self> {
        Self::new(n, IdealKind::OddTruncated)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn is_truncated(&self) -> bool {
        self.kind == IdealKind::Truncated
    }

    /// Canonical coefficient length.
    pub fn dim(&self) -> usize {
        let (k, m) = two_adic(self.n);
        match self.kind {
            IdealKind::GroupRing => self.n,
            IdealKind::Truncated => self.n - 1,
            IdealKind::BinomialPlus(l) => 1 << l,
            IdealKind::OddTruncated => (1 << k) * (m - 1),
        }
    }

    /// Monic generator of the ideal.
    pub fn generator(&self) -> Poly {
        let n = self.n;
        let (k, m) = two_adic(n);
        let mut c = vec![BigInt::zero(); self.dim() + 1];
        match self.kind {
            IdealKind::GroupRing => {
                c[0] = BigInt::from(-1);
                c[n] = BigInt::from(1);
            }
            IdealKind::Truncated => c.iter_mut().for_each(|x| *x = BigInt::from(1)),
            IdealKind::BinomialPlus(l) => {
                c[0] = BigInt::from(1);
                c[1 << l] = BigInt::from(1);
            }
            IdealKind::OddTruncated => {
                for j in 0..m {
                    c[j << k] = BigInt::from(1);
                }
            }
        }
        Poly::from_ints(c)
    }

    pub fn kind_str(&self) -> String {
        match self.kind {
            IdealKind::GroupRing => "group_ring".into(),
            IdealKind::Truncated => "truncated".into(),
            IdealKind::BinomialPlus(l) => format!("binomial_plus:{l}"),
            IdealKind::OddTruncated => "odd_truncated".into(),
        }
    }

    pub fn from_kind_str(n: usize, s: &str) -> Result<Self> {
        let kind = match s {
            "group_ring" | "group" => IdealKind::GroupRing,
            "truncated" => IdealKind::Truncated,
            "odd_truncated" => IdealKind::OddTruncated,
            _ => match s.strip_prefix("binomial_plus:") {
                Some(l) => IdealKind::BinomialPlus(
                    l.parse()
                        .map_err(|_| Error::InvalidModulus(format!("bad kind {s:?}")))?,
                ),
                None => return Err(Error::InvalidModulus(format!("bad kind {s:?}"))),
            },
        };
        Self::new(n, kind)
    }

    /// Reduces a vector of length `N` (exponents already folded mod `N`)
    /// to canonical length.
    pub(crate) fn reduce_folded(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        debug_assert_eq!(v.len(), self.n);
        let (k, m) = two_adic(self.n);
        match self.kind {
            IdealKind::GroupRing => v,
            IdealKind::Truncated => {
                let top = v.pop().unwrap();
                if !top.is_zero() {
                    v.iter_mut().for_each(|x| *x -= &top);
                }
                v
            }
            IdealKind::BinomialPlus(l) => {
                let len = 1usize << l;
                let mut out = vec![BigInt::zero(); len];
                for (i, x) in v.into_iter().enumerate() {
                    if (i / len).is_multiple_of(2) {
                        out[i % len] += x;
                    } else {
                        out[i % len] -= x;
                    }
                }
                out
            }
            IdealKind::OddTruncated => {
                let step = 1usize << k;
                let deg = step * (m - 1);
                for top in (deg..self.n).rev() {
                    let c = std::mem::take(&mut v[top]);
                    if c.is_zero() {
                        continue;
                    }
                    let base = top - deg;
                    for j in 0..m - 1 {
                        v[base + j * step] -= &c;
                    }
                }
                v.truncate(deg);
                v
            }
        }
    }
}

impl fmt::Display for RingModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(N={})", self.kind_str(), self.n)
    }
}
