//! Rational CRT splitting of the truncated ring for `N = 2^K * M`:
//! `QR = prod_{l<K} Q[x]/<1 + x^(2^l)>  x  Q[x]/<1 + y + ... + y^(M-1)>`.

use super::element::RingElement;
use super::modulus::{two_adic, RingModulus};
use super::poly::Poly;
use crate::error::{Error, Result};

/// The factor moduli and their orthogonal idempotents for one `N`.
#[derive(Clone, Debug)]
pub struct CrtBasis {
    truncated: RingModulus,
    factors: Vec<RingModulus>,
    idempotents: Vec<RingElement>,
}

impl CrtBasis {
    pub fn new(n: usize) -> Result<Self> {
        let truncated = RingModulus::truncated(n)?;
        let (k, m) = two_adic(n);
        if k == 0 {
            return Ok(CrtBasis {
                truncated,
                factors: vec![truncated],
                idempotents: vec![RingElement::one(truncated)],
            });
        }
        let mut factors: Vec<_> = (0..k)
            .map(|l| RingModulus::binomial_plus(n, l))
            .collect::<Result<_>>()?;
        if m > 1 {
            factors.push(RingModulus::odd_truncated(n)?);
        }
        let norm = truncated.generator();
        let idempotents = factors
            .iter()
            .map(|fm| {
                let p = fm.generator();
                let (cofactor, rem) = norm.div_rem(&p);
                debug_assert!(rem.is_zero());
                let (g, s, _) = Poly::ext_gcd(&cofactor, &p);
                debug_assert_eq!(g, Poly::one());
                RingElement::from_poly(truncated, &(&s * &cofactor))
            })
            .collect();
        Ok(CrtBasis {
            truncated,
            factors,
            idempotents,
        })
    }

    pub fn factors(&self) -> &[RingModulus] {
        &self.factors
    }

    pub fn idempotents(&self) -> &[RingElement] {
        &self.idempotents
    }

    pub fn split(&self, a: &RingElement) -> Result<Vec<RingElement>> {
        if a.modulus() != self.truncated {
            return Err(Error::ModulusMismatch {
                left: a.modulus().to_string(),
                right: self.truncated.to_string(),
            });
        }
        if self.factors[0] == self.truncated {
            return Ok(vec![a.clone()]);
        }
        let p = a.to_poly();
        Ok(self
            .factors
            .iter()
            .map(|&fm| RingElement::from_poly(fm, &p))
            .collect())
    }

    pub fn combine(&self, parts: &[RingElement]) -> Result<RingElement> {
        if parts.len() != self.factors.len() {
            return Err(Error::PreconditionFailed(format!(
                "expected {} CRT components, got {}",
                self.factors.len(),
                parts.len()
            )));
        }
        let mut acc = RingElement::zero(self.truncated);
        for ((part, fm), e) in parts.iter().zip(&self.factors).zip(&self.idempotents) {
            if part.modulus() != *fm {
                return Err(Error::ModulusMismatch {
                    left: part.modulus().to_string(),
                    right: fm.to_string(),
                });
            }
            let lifted = RingElement::from_poly(self.truncated, &part.to_poly());
            acc = &acc + &(&lifted * e);
        }
        Ok(acc)
    }
}

/// Splits `a` over the CRT factors. For `K = 0` there is nothing to split
/// and the single factor is the ring itself.
pub fn crt_split(a: &RingElement) -> Result<Vec<RingElement>> {
    CrtBasis::new(a.n())?.split(a)
}

pub fn crt_combine(n: usize, parts: &[RingElement]) -> Result<RingElement> {
    CrtBasis::new(n)?.combine(parts)
}
