use num_bigint::BigInt;

use super::coords::NormalCoords;
use super::formula::RhoFormula;
use super::params::LensParams;
use crate::cyclic_ring::{RingElement, RingModulus};
use crate::error::{Error, Result};

/// An element of the structure set, modeled by its invariants: the value
/// of `rho~` and the 2-local normal-invariant coordinates.
///
/// The odd normal invariant is not part of the tuple; the model describes
/// elements on which it vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureElement {
    pub params: LensParams,
    pub rho: RingElement,
    pub coords: NormalCoords,
}

impl StructureElement {
    pub fn new(params: LensParams, rho: RingElement, coords: NormalCoords) -> Self {
        StructureElement { params, rho, coords }
    }

    pub fn zero(p: &LensParams) -> Self {
        let m = RingModulus::truncated(p.n()).expect("N >= 2");
        StructureElement::new(*p, RingElement::zero(m), NormalCoords::zero(p))
    }

    /// Torsion element with the given coordinates.
    pub fn torsion(p: &LensParams, coords: NormalCoords) -> Self {
        let mut x = Self::zero(p);
        x.coords = coords;
        x
    }

    pub fn is_torsion(&self) -> bool {
        self.rho.is_zero()
    }

    /// Why `self` fails the consistency checks, if it does.
    pub fn check(&self) -> Result<()> {
        let p = &self.params;
        self.coords.check(p)?;
        if self.rho.modulus() != RingModulus::truncated(p.n())? {
            return Err(Error::ModulusMismatch {
                left: self.rho.modulus().to_string(),
                right: format!("truncated(N={})", p.n()),
            });
        }
        if !self.rho.eigen_test(p.sign())? {
            return Err(Error::PreconditionFailed(format!(
                "rho = {} is not in the {:?} eigenspace",
                self.rho,
                p.sign()
            )));
        }
        let diff = if p.two_power() == 0 {
            self.rho.clone()
        } else {
            &self.rho - &RhoFormula::new(p)?.evaluate(&self.coords)
        };
        if !diff.in_lattice_4r(p.sign()) {
            return Err(Error::PreconditionFailed(format!(
                "rho - formula(t) = {diff} is not in 4R"
            )));
        }
        Ok(())
    }

    /// Eigenspace plus the congruence `rho = formula(t) mod 4R`.
    pub fn validate(&self) -> bool {
        self.check().is_ok()
    }

    /// Same check with a precomputed formula for these params.
    pub fn validate_with(&self, formula: &RhoFormula) -> bool {
        debug_assert_eq!(formula.params(), &self.params);
        let diff = &self.rho - &formula.evaluate(&self.coords);
        self.rho.eigen_test(self.params.sign()).unwrap_or(false)
            && diff.in_lattice_4r(self.params.sign())
    }

    fn same_params(&self, o: &Self) -> Result<()> {
        if self.params != o.params {
            return Err(Error::ParamsMismatch(format!("{} vs {}", self.params, o.params)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_params(o)?;
        Ok(StructureElement {
            params: self.params,
            rho: self.rho.try_add(&o.rho)?,
            coords: self.coords.add(&o.coords, &self.params),
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, m: i64) -> Self {
        StructureElement {
            params: self.params,
            rho: self.rho.scale_int(BigInt::from(m)),
            coords: self.coords.scale(m, &self.params),
        }
    }

    /// Transfer to the cover with `n2 | N` sheets.
    pub fn transfer(&self, n2: usize) -> Result<Self> {
        let (p2, coords) = self.coords.transfer(&self.params, n2)?;
        Ok(StructureElement {
            params: p2,
            rho: self.rho.restrict(n2)?,
            coords,
        })
    }
}
