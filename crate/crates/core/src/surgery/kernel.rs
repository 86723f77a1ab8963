use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coords::NormalCoords;
use super::formula::RhoFormula;
use super::params::LensParams;
use crate::abelian::{subgroup_from_elements, FinAbPresentation};
use crate::cyclic_ring::{eigen_rank, Sign};
use crate::error::{Error, Result};

/// Default bound on the number of `t_{4i}` candidates a brute-force kernel
/// computation may enumerate.
pub const DEFAULT_CAP: u128 = 1 << 22;

/// Reads the candidate cap from `RHO_LATTICE_CAP`, falling back to
/// [`DEFAULT_CAP`].
pub fn cap_from_env() -> u128 {
    std::env::var("RHO_LATTICE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMethod {
    Brute,
    Closed,
}

/// How [`structure_set`] should obtain the torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Brute,
    Closed,
    /// Brute force, falling back to the closed form past the cap.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    pub torsion: FinAbPresentation,
    /// `t_{4i}` parts of the kernel, sorted.
    pub t4_members: Vec<Vec<u64>>,
    /// Full members with every `t_{4i-2}` choice adjoined, sorted.
    pub members: Vec<NormalCoords>,
}

/// All `t_{4i-2}` vectors.
fn all_t4m2(p: &LensParams) -> Vec<Vec<u64>> {
    let m = p.t4m2_modulus();
    let c = p.c();
    let total = (m as usize).pow(c as u32);
    (0..total).map(|idx| digits(idx as u128, m, c)).collect()
}

/// Base-`m` digits of `idx`, most significant first.
fn digits(mut idx: u128, m: u64, len: usize) -> Vec<u64> {
    let mut v = vec![0u64; len];
    for slot in v.iter_mut().rev() {
        *slot = (idx % m as u128) as u64;
        idx /= m as u128;
    }
    v
}

/// Brute-force kernel of `[rho~]` on the 2-local normal invariants: every
/// `t_{4i}` vector is tested exactly; the `t_{4i-2}` do not enter the
/// formula and are adjoined freely.
pub fn kernel_rho_bar(p: &LensParams, cap: u128) -> Result<KernelResult> {
    let c = p.c();
    let modulus = p.t4_modulus();
    let count = (modulus as u128)
        .checked_pow(c as u32)
        .unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::WorkCapExceeded { needed: count, cap });
    }
    let t4_members: Vec<Vec<u64>> = if p.two_power() == 0 {
        vec![vec![0; c]]
    } else {
        let formula = RhoFormula::new(p)?;
        let sign = p.sign();
        (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let t = digits(idx, modulus, c);
                let coords = NormalCoords {
                    t4: t.clone(),
                    t4m2: vec![0; c],
                };
                formula.evaluate(&coords).in_lattice_4r(sign).then_some(t)
            })
            .collect()
    };
    // par_iter over a range preserves order, so t4_members is sorted
    let t4m2 = all_t4m2(p);
    let mut members = Vec::with_capacity(t4_members.len() * t4m2.len());
    for t in &t4_members {
        for s in &t4m2 {
            members.push(NormalCoords {
                t4: t.clone(),
                t4m2: s.clone(),
            });
        }
    }
    let ambient = p.coord_ambient();
    let mut gens: Vec<Vec<i64>> = t4_members
        .iter()
        .map(|t| NormalCoords { t4: t.clone(), t4m2: vec![0; c] }.to_vec())
        .collect();
    if p.t4m2_modulus() > 1 {
        for i in 0..c {
            let mut v = vec![0i64; 2 * c];
            v[c + i] = 1;
            gens.push(v);
        }
    }
    let torsion = subgroup_from_elements(&ambient, &gens)?;
    Ok(KernelResult {
        torsion,
        t4_members,
        members,
    })
}

/// `sum_{i<=c} Z_{2^min(K,1)} + sum_{i<=c} Z_{2^min(K,2i)}`.
pub fn kernel_closed_form(p: &LensParams) -> FinAbPresentation {
    let k = p.two_power();
    let c = p.c() as u32;
    let orders = (1..=c)
        .map(|_| 1u64 << k.min(1))
        .chain((1..=c).map(|i| 1u64 << k.min(2 * i)));
    FinAbPresentation::from_cyclic_orders(orders)
}

/// Rank of the `sign` eigenlattice of `R`, computed from the lattice and
/// checked against `N/2`, `N/2 - 1` (N even) and `(N-1)/2` (N odd).
pub fn l_group_reduced_rank(n: usize, sign: Sign) -> Result<usize> {
    let computed = eigen_rank(n, sign)?;
    let expected = match (n % 2, sign) {
        (1, _) => (n - 1) / 2,
        (_, Sign::Plus) => n / 2,
        (_, Sign::Minus) => n / 2 - 1,
    };
    if computed != expected {
        return Err(Error::VerificationFailure(format!(
            "eigenlattice rank {computed} != {expected} for N = {n}, {sign:?}"
        )));
    }
    Ok(computed)
}

/// 2-local reduced normal invariants `sum Z_{2^K} + sum Z_2` and the order
/// `M^c` of the odd part.
pub fn reduced_normal_group(p: &LensParams) -> Result<(FinAbPresentation, u128)> {
    Ok((
        FinAbPresentation::from_cyclic_orders(p.coord_ambient()),
        p.odd_order()?,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureSetDescriptor {
    pub params: LensParams,
    pub free_rank: usize,
    pub torsion: FinAbPresentation,
    pub method: KernelMethod,
    pub kernel_members: Option<Vec<NormalCoords>>,
}

pub fn structure_set(p: &LensParams, method: MethodChoice, cap: u128) -> Result<StructureSetDescriptor> {
    let free_rank = l_group_reduced_rank(p.n(), p.sign())?;
    let brute = match method {
        MethodChoice::Closed => None,
        MethodChoice::Brute => Some(kernel_rho_bar(p, cap)?),
        MethodChoice::Auto => match kernel_rho_bar(p, cap) {
            Ok(k) => Some(k),
            Err(Error::WorkCapExceeded { .. }) => None,
            Err(e) => return Err(e),
        },
    };
    Ok(match brute {
        Some(k) => StructureSetDescriptor {
            params: *p,
            free_rank,
            torsion: k.torsion,
            method: KernelMethod::Brute,
            kernel_members: Some(k.members),
        },
        None => StructureSetDescriptor {
            params: *p,
            free_rank,
            torsion: kernel_closed_form(p),
            method: KernelMethod::Closed,
            kernel_members: None,
        },
    })
}
