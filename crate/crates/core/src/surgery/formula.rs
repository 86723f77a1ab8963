use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coords::NormalCoords;
use super::params::LensParams;
use crate::cyclic_ring::{RingElement, RingModulus};
use crate::error::{Error, Result};
use crate::special::{elem_f, elem_f_prime_k};

/// Least non-negative `x` with `x = t mod 2^K` and `x = 0 mod M^c`.
pub fn lift_tbar(t4: &[u64], p: &LensParams) -> Vec<BigInt> {
    let two = BigInt::from(p.t4_modulus());
    let mc = BigInt::from(p.odd_part()).pow(p.c() as u32);
    // M^c is odd, hence a unit mod 2^K
    let inv = mod_inverse(&(&mc % &two), &two);
    t4.iter()
        .map(|&t| &mc * (BigInt::from(t) * &inv).mod_floor(&two))
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// The formula for `[rho~]` on 2-local normal invariants, with its summands
/// precomputed:
///
/// * `d = 2e`:   `sum_{i<e} 8 t_{4i} f'_k f^(d-2i-2) (f^2 - 1)`
/// * `d = 2e+1`: the same sum plus `8 t_{4e} f'_k f`.
#[derive(Clone, Debug)]
pub struct RhoFormula {
    params: LensParams,
    terms: Vec<RingElement>,
}

impl RhoFormula {
    pub fn new(p: &LensParams) -> Result<Self> {
        if p.two_power() == 0 {
            return Err(Error::InvalidParams(format!(
                "the 2-local formula needs K >= 1 ({p})"
            )));
        }
        let f = elem_f(p.n())?;
        let fp = elem_f_prime_k(p.n(), p.k() as i64)?;
        let m = f.modulus();
        let one = RingElement::one(m);
        let f2m1 = &(&f * &f) - &one;
        let base = (&fp * &f2m1).scale_int(8);
        let (d, e) = (p.d(), p.e());
        let mut terms = Vec::with_capacity(p.c());
        for i in 1..e {
            terms.push(&base * &f.pow((d - 2 * i - 2) as i64)?);
        }
        if d % 2 == 1 {
            terms.push((&fp * &f).scale_int(8));
        }
        debug_assert_eq!(terms.len(), p.c());
        Ok(RhoFormula { params: *p, terms })
    }

    pub fn params(&self) -> &LensParams {
        &self.params
    }

    /// `B_i` with `formula(t) = sum tbar_i B_i`.
    pub fn terms(&self) -> &[RingElement] {
        &self.terms
    }

    pub fn evaluate(&self, coords: &NormalCoords) -> RingElement {
        self.evaluate_lifted(&lift_tbar(&coords.t4, &self.params))
    }

    /// Same sum for caller-chosen integer lifts.
    pub fn evaluate_lifted(&self, tbar: &[BigInt]) -> RingElement {
        let m = self.terms.first().map_or_else(
            || RingModulus::truncated(self.params.n()).unwrap(),
            |t| t.modulus(),
        );
        self.terms
            .iter()
            .zip(tbar)
            .filter(|(_, t)| !t.is_zero())
            .fold(RingElement::zero(m), |acc, (b, t)| {
                &acc + &b.scale(&BigRational::from_integer(t.clone()))
            })
    }
}

/// Representative of `[rho~](t)` in `QR / 4R`.
pub fn rho_bar_formula(p: &LensParams, coords: &NormalCoords) -> Result<RingElement> {
    coords.check(p)?;
    Ok(RhoFormula::new(p)?.evaluate(coords))
}

/// The fake projective-space formula
/// `sum_{i=1}^{floor(d/2)-1} 8 s_{4i} (f^(d-2i) - f^(d-2i-2))` over `Z_N`.
pub fn rho_cp_formula(s4: &[i64], d: usize, n: usize) -> Result<RingElement> {
    let terms = (d / 2).saturating_sub(1);
    if s4.len() != terms {
        return Err(Error::PreconditionFailed(format!(
            "expected {terms} values of s_4i for d = {d}, got {}",
            s4.len()
        )));
    }
    let f = elem_f(n)?;
    let mut acc = RingElement::zero(f.modulus());
    for (i, &s) in (1..).zip(s4) {
        if s == 0 {
            continue;
        }
        let hi = f.pow((d - 2 * i) as i64)?;
        let lo = f.pow((d - 2 * i - 2) as i64)?;
        acc = &acc + &(&hi - &lo).scale_int(8 * s);
    }
    Ok(acc)
}

/// True iff `x` is zero in `QR^{(-1)^d} / 4R^{(-1)^d}`.
pub fn rho_class_is_zero(p: &LensParams, x: &RingElement) -> Result<bool> {
    if !x.eigen_test(p.sign())? {
        return Err(Error::PreconditionFailed(format!(
            "{x} is not in the {:?} eigenspace",
            p.sign()
        )));
    }
    Ok(x.in_lattice_4r(p.sign()))
}
