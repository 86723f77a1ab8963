use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::cyclic_ring::{RingElement, RingModulus};
use crate::error::{Error, Result};
use crate::surgery::{LensParams, NormalCoords, RhoFormula, StructureElement};

/// `P = 1 + x^2 + ... + x^(N-2)`, `N` even; `f P = 0`.
pub fn elem_p(n: usize) -> Result<RingElement> {
    if n % 2 == 1 {
        return Err(Error::PreconditionFailed(format!("P needs N even, got {n}")));
    }
    let terms: Vec<(i64, i64)> = (0..n as i64).step_by(2).map(|j| (j, 1)).collect();
    Ok(RingElement::from_int_terms(RingModulus::truncated(n)?, &terms))
}

fn pow2(l: i32) -> BigRational {
    if l >= 0 {
        BigRational::from_integer(BigInt::from(1) << l as usize)
    } else {
        BigRational::new(1.into(), BigInt::from(1) << (-l) as usize)
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg()))
    }
}

fn even_d(p: &LensParams, what: &str) -> Result<()> {
    require(p.two_power() >= 1, || format!("{what} needs K >= 1 ({p})"))?;
    require(p.d().is_multiple_of(2) && p.d() >= 4, || format!("{what} needs d = 2e >= 4 ({p})"))
}

/// `sigma` at `d = 2e+2`: `rho = 8`, coordinates zero.
pub fn elem_sigma(p: &LensParams) -> Result<StructureElement> {
    even_d(p, "sigma")?;
    let mut x = StructureElement::zero(p);
    x.rho = RingElement::from_int(x.rho.modulus(), 8);
    Ok(x)
}

/// `omega` at `d = 2e`: `rho = 16 P`, coordinates zero. Generates the
/// kernel of suspension.
pub fn elem_omega(p: &LensParams) -> Result<StructureElement> {
    even_d(p, "omega")?;
    let mut x = StructureElement::zero(p);
    x.rho = elem_p(p.n())?.scale_int(16);
    Ok(x)
}

/// `tau_N` at `d = 2e`: `rho = 2^max(4-K,2) P`, coordinates zero.
pub fn elem_tau(p: &LensParams) -> Result<StructureElement> {
    even_d(p, "tau")?;
    let mut x = StructureElement::zero(p);
    let l = (4 - p.two_power() as i32).max(2);
    x.rho = elem_p(p.n())?.scale(&pow2(l));
    Ok(x)
}

/// `mu_{4e-2}` at `d = 2e+1`: torsion with `t_{4e-2} = 1` only.
pub fn elem_mu4m2(p: &LensParams) -> Result<StructureElement> {
    require(p.two_power() >= 1, || format!("mu needs K >= 1 ({p})"))?;
    require(p.d() % 2 == 1 && p.d() >= 5, || format!("mu_(4e-2) needs d = 2e+1 >= 5 ({p})"))?;
    let mut x = StructureElement::zero(p);
    let c = p.c();
    x.coords.t4m2[c - 1] = 1;
    Ok(x)
}

/// Lexicographically smallest `t` (with `t_{4i-2} = 0`) making
/// `(rho, t)` consistent, if any.
pub fn find_coords(p: &LensParams, rho: &RingElement) -> Result<Option<NormalCoords>> {
    if p.two_power() == 0 {
        let z = NormalCoords::zero(p);
        return Ok(rho.in_lattice_4r(p.sign()).then_some(z));
    }
    let formula = RhoFormula::new(p)?;
    let m = p.t4_modulus();
    let c = p.c();
    let count = (m as u128).pow(c as u32);
    let sign = p.sign();
    let decode = |mut r: u128| {
        let mut t = vec![0u64; c];
        for slot in t.iter_mut().rev() {
            *slot = (r % m as u128) as u64;
            r /= m as u128;
        }
        NormalCoords { t4: t, t4m2: vec![0; c] }
    };
    let hit = (0..count)
        .into_par_iter()
        .find_first(|&idx| (rho - &formula.evaluate(&decode(idx))).in_lattice_4r(sign));
    Ok(hit.map(decode))
}

/// `nu_e` at `d = 2e`, `e >= 2`: `rho = 2^(4 - min(K,2e)) P` with the
/// smallest consistent coordinates.
pub fn elem_nu(p: &LensParams) -> Result<StructureElement> {
    even_d(p, "nu")?;
    let l = 4 - p.two_power().min(2 * p.e() as u32) as i32;
    let rho = elem_p(p.n())?.scale(&pow2(l));
    let coords = find_coords(p, &rho)?.ok_or_else(|| {
        Error::VerificationFailure(format!("no consistent coordinates for nu at {p}"))
    })?;
    Ok(StructureElement::new(*p, rho, coords))
}

/// Smallest `l` such that `2^l P` admits consistent coordinates, searched
/// downward from 4.
pub fn minimal_exponent(p: &LensParams) -> Result<i32> {
    even_d(p, "minimal_exponent")?;
    let base = elem_p(p.n())?;
    let mut best = None;
    for l in (-64..=4).rev() {
        if find_coords(p, &base.scale(&pow2(l)))?.is_none() {
            break;
        }
        best = Some(l);
        if l == -64 {
            return Err(Error::VerificationFailure(format!(
                "minimal_exponent search exhausted at {p}"
            )));
        }
    }
    best.ok_or_else(|| Error::VerificationFailure(format!("16 P is not realizable at {p}")))
}
