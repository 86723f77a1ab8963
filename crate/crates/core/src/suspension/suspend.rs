use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::elements::elem_p;
use crate::error::{Error, Result};
use crate::special::elem_f;
use crate::surgery::{LensParams, RhoFormula, StructureElement};

/// Images of one element under suspension. When `d = 2e` the new
/// coordinate `t_{4e}` is not pinned down by the invariants, and every
/// admissible value is listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionResult {
    pub target: LensParams,
    pub determined: Option<StructureElement>,
    /// Sorted by the new `t_{4e}`.
    pub candidates: Vec<StructureElement>,
}

impl SuspensionResult {
    /// The smallest candidate, which downstream constructions use.
    pub fn canonical(&self) -> &StructureElement {
        self.determined.as_ref().unwrap_or(&self.candidates[0])
    }

    /// The values of the new `t_{4e}` over all candidates (empty when the
    /// source dimension is odd).
    pub fn new_t4_values(&self) -> Vec<u64> {
        if self.target.d().is_multiple_of(2) {
            return vec![];
        }
        let c = self.target.c();
        self.candidates.iter().map(|x| x.coords.t4[c - 1]).collect()
    }
}

/// A choice made when a suspension had several candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceLogEntry {
    pub step: String,
    pub from_d: usize,
    pub candidates: Vec<u64>,
    pub chosen: u64,
}

/// `q` with `rho = q P`, when `f rho = 0`.
fn p_multiple(x: &StructureElement) -> Result<Option<BigRational>> {
    let n = x.params.n();
    if n % 2 == 1 {
        return Ok(x.rho.is_zero().then(|| BigRational::from_integer(0.into())));
    }
    let q = x.rho.coeff(0);
    Ok((elem_p(n)?.scale(&q) == x.rho).then_some(q))
}

/// Order of `x` modulo `Z omega`: `m x` lies in `Z omega` iff `m t = 0`
/// and `m q` is a multiple of 16.
fn order_mod_omega(x: &StructureElement, q: &BigRational) -> u64 {
    let r = q / BigRational::from_integer(16.into());
    let den = r.denom().abs().to_u64().expect("small denominator");
    x.coords.order(&x.params).lcm(&den)
}

/// `Sigma x`: multiplies `rho` by `f` and keeps the coordinates.
///
/// From `d = 2e+1` the result is determined. From `d = 2e` the new
/// `t_{4e-2}` is 0 and `t_{4e}` ranges over the values that keep the
/// invariants consistent; when `f rho = 0` these are further cut down to
/// the values for which `Sigma x` has the order of `x` modulo `Z omega`,
/// since the kernel of `Sigma` is exactly `Z omega`.
pub fn suspend(x: &StructureElement) -> Result<SuspensionResult> {
    x.check()?;
    let p = x.params;
    let target = p.with_d(p.d() + 1)?;
    let rho = &elem_f(p.n())? * &x.rho;
    let mut base = StructureElement::zero(&target);
    base.rho = rho;
    let c = p.c();
    base.coords.t4[..c].copy_from_slice(&x.coords.t4);
    base.coords.t4m2[..c].copy_from_slice(&x.coords.t4m2);

    if p.d() % 2 == 1 || target.c() == c {
        if !base.validate() {
            return Err(Error::VerificationFailure(format!(
                "suspension of a valid element is inconsistent at {target}"
            )));
        }
        return Ok(SuspensionResult {
            target,
            determined: Some(base.clone()),
            candidates: vec![base],
        });
    }

    let formula = (target.two_power() > 0).then(|| RhoFormula::new(&target)).transpose()?;
    let mut candidates: Vec<StructureElement> = (0..target.t4_modulus())
        .map(|t| {
            let mut y = base.clone();
            y.coords.t4[c] = t;
            y
        })
        .filter(|y| match &formula {
            Some(f) => y.validate_with(f),
            None => y.validate(),
        })
        .collect();

    if p.two_power() > 0 && base.rho.is_zero() {
        if let Some(q) = p_multiple(x)? {
            let want = order_mod_omega(x, &q);
            candidates.retain(|y| y.coords.order(&target) == want);
        }
    }
    if candidates.is_empty() {
        return Err(Error::VerificationFailure(format!(
            "no consistent t_4e completion for the suspension at {target}"
        )));
    }
    Ok(SuspensionResult {
        target,
        determined: (candidates.len() == 1).then(|| candidates[0].clone()),
        candidates,
    })
}

/// Suspends `times` times taking the canonical candidate each step.
pub fn suspend_canonical(
    x: &StructureElement,
    times: usize,
    log: &mut Vec<ChoiceLogEntry>,
    label: &str,
) -> Result<StructureElement> {
    let mut cur = x.clone();
    for _ in 0..times {
        let r = suspend(&cur)?;
        if r.candidates.len() > 1 {
            let values = r.new_t4_values();
            log.push(ChoiceLogEntry {
                step: label.to_string(),
                from_d: cur.params.d(),
                chosen: values[0],
                candidates: values,
            });
        }
        cur = r.canonical().clone();
    }
    Ok(cur)
}

/// Membership in the image of `Sigma` for a target of dimension `d = 2e+2`:
/// `rho` vanishes at `x = -1`.
pub fn image_test_odd_target(y: &StructureElement) -> Result<bool> {
    let d = y.params.d();
    if d % 2 == 1 || d < 4 {
        return Err(Error::InvalidParams(format!("expected d = 2e+2, got d = {d}")));
    }
    Ok(y.rho.eval_minus_one()?.numer() == &BigInt::from(0))
}

/// Membership in the image of `Sigma` for a target of dimension `d = 2e+1`,
/// `e >= 2`: the coordinate `t_{4e-2}` vanishes.
pub fn image_test_even_target(y: &StructureElement) -> Result<bool> {
    let d = y.params.d();
    if d.is_multiple_of(2) || d < 5 {
        return Err(Error::InvalidParams(format!("expected d = 2e+1 with e >= 2, got d = {d}")));
    }
    Ok(y.coords.t4m2[y.params.c() - 1] == 0)
}
