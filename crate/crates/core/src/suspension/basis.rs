use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::elements::{elem_mu4m2, elem_nu};
use super::suspend::{suspend, suspend_canonical, ChoiceLogEntry, SuspensionResult};
use crate::abelian::{element_order, solve_integer, subgroup_from_elements};
use crate::error::{Error, Result};
use crate::surgery::{kernel_closed_form, kernel_rho_bar, LensParams, StructureElement, DEFAULT_CAP};

/// Generators `mu_{4i}` and `mu_{4i-2}`, `i = 1..c`, of the torsion of the
/// structure set, with the choices made while building them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBasis {
    pub params: LensParams,
    pub mu4: Vec<StructureElement>,
    pub mu4m2: Vec<StructureElement>,
    pub choice_log: Vec<ChoiceLogEntry>,
}

/// Orders `(|mu_4|, ..., |mu_4c|, |mu_2|, ..., |mu_{4c-2}|)` predicted for
/// the basis: `2^min(K,2i)` and 2.
pub fn expected_orders(p: &LensParams) -> Vec<u64> {
    let k = p.two_power();
    let c = p.c();
    (1..=c)
        .map(|i| 1u64 << k.min(2 * i as u32))
        .chain(std::iter::repeat_n(2, c))
        .collect()
}

/// `mu_4` at `d = 3`: the kernel element of maximal order, smallest first.
fn mu4_seed(p: &LensParams) -> Result<StructureElement> {
    let p3 = p.with_d(3)?;
    let ker = kernel_rho_bar(&p3, DEFAULT_CAP)?;
    let m = p3.t4_modulus();
    let order = |t: u64| m / t.gcd(&m);
    let best = ker
        .t4_members
        .iter()
        .map(|t| t[0])
        .max_by(|a, b| order(*a).cmp(&order(*b)).then(b.cmp(a)))
        .unwrap_or(0);
    let mut x = StructureElement::zero(&p3);
    x.coords.t4[0] = best;
    Ok(x)
}

fn independent(p: &LensParams, xs: &[&StructureElement]) -> Result<bool> {
    let gens: Vec<Vec<i64>> = xs.iter().map(|x| x.coords.to_vec()).collect();
    let product: u128 = xs.iter().map(|x| x.coords.order(p) as u128).product();
    Ok(subgroup_from_elements(&p.coord_ambient(), &gens)?.order() == Some(product))
}

/// Depth-first search for the lexicographically smallest choice of
/// candidates that stays independent together with `top`.
fn pick_independent(
    p: &LensParams,
    top: &StructureElement,
    options: &[SuspensionResult],
    picks: &mut Vec<usize>,
) -> Result<bool> {
    let level = picks.len();
    if level == options.len() {
        return Ok(true);
    }
    for j in 0..options[level].candidates.len() {
        picks.push(j);
        let mut all: Vec<&StructureElement> = vec![top];
        all.extend(options.iter().zip(picks.iter()).map(|(r, &k)| &r.candidates[k]));
        if independent(p, &all)? && pick_independent(p, top, options, picks)? {
            return Ok(true);
        }
        picks.pop();
    }
    Ok(false)
}

/// Builds the basis one dimension at a time starting from `d = 3`.
///
/// `mu_4` is the `d = 3` kernel element of maximal order. Going from
/// `d = 2e` to `2e+1` the new generator is `Sigma nu_e` (smallest
/// candidate), and the older `mu_{4i}` are carried to the lexicographically
/// smallest choice of candidates that keeps the generators independent. `mu_{4i-2}` are the
/// coordinate vectors. Every ambiguous choice is logged.
pub fn torsion_basis(p: &LensParams) -> Result<TorsionBasis> {
    if p.two_power() == 0 {
        return Err(Error::InvalidParams(format!("torsion basis needs K >= 1 ({p})")));
    }
    let mut log = Vec::new();
    let mut mu4 = vec![mu4_seed(p)?];
    for d in 3..p.d() {
        let cur = p.with_d(d)?;
        let next = p.with_d(d + 1)?;
        if d % 2 == 1 {
            mu4 = mu4
                .iter()
                .map(|x| Ok(suspend(x)?.canonical().clone()))
                .collect::<Result<_>>()?;
            continue;
        }
        let e = d / 2;
        let top = suspend_canonical(&elem_nu(&cur)?, 1, &mut log, &format!("mu_{}", 4 * e))?;
        let options: Vec<SuspensionResult> = mu4.iter().map(suspend).collect::<Result<_>>()?;
        let mut picks = Vec::with_capacity(options.len());
        if !pick_independent(&next, &top, &options, &mut picks)? {
            return Err(Error::VerificationFailure(format!(
                "no choice of suspensions keeps the basis independent at {next}"
            )));
        }
        let mut chosen = Vec::with_capacity(options.len() + 1);
        for (i, (r, &j)) in options.iter().zip(&picks).enumerate() {
            let values = r.new_t4_values();
            if values.len() > 1 {
                log.push(ChoiceLogEntry {
                    step: format!("mu_{}", 4 * (i + 1)),
                    from_d: d,
                    chosen: values[j],
                    candidates: values,
                });
            }
            chosen.push(r.candidates[j].clone());
        }
        chosen.push(top);
        mu4 = chosen;
    }
    let mu4m2 = (1..=p.c())
        .map(|i| {
            if i == p.c() && p.d() % 2 == 1 && p.d() >= 5 {
                return elem_mu4m2(p);
            }
            let mut x = StructureElement::zero(p);
            x.coords.t4m2[i - 1] = 1;
            Ok(x)
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = TorsionBasis { params: *p, mu4, mu4m2, choice_log: log };
    basis.verify()?;
    Ok(basis)
}

impl TorsionBasis {
    pub fn elements(&self) -> impl Iterator<Item = &StructureElement> {
        self.mu4.iter().chain(&self.mu4m2)
    }

    pub fn orders(&self) -> Vec<u64> {
        self.elements().map(|x| x.coords.order(&self.params)).collect()
    }

    /// Each generator is valid torsion, the orders match the prediction,
    /// and they generate the whole kernel as a direct sum.
    pub fn verify(&self) -> Result<()> {
        let p = &self.params;
        for x in self.elements() {
            x.check()?;
            if !x.rho.is_zero() {
                return Err(Error::VerificationFailure(format!("basis element has rho = {}", x.rho)));
            }
        }
        let orders = self.orders();
        let want = expected_orders(p);
        if orders != want {
            return Err(Error::VerificationFailure(format!(
                "basis orders {orders:?}, expected {want:?} at {p}"
            )));
        }
        let gens: Vec<Vec<i64>> = self.elements().map(|x| x.coords.to_vec()).collect();
        let span = subgroup_from_elements(&p.coord_ambient(), &gens)?.order();
        let product: u128 = orders.iter().map(|&o| o as u128).product();
        let kernel = kernel_closed_form(p).order();
        if span != Some(product) || kernel != Some(product) {
            return Err(Error::VerificationFailure(format!(
                "span {span:?}, product of orders {product}, kernel {kernel:?} at {p}"
            )));
        }
        Ok(())
    }

    /// Expansion coefficients `(r_4, ..., r_4c, r_2, ..., r_{4c-2})` of a
    /// torsion element, each reduced mod the generator order.
    pub fn torsion_coordinates(&self, x: &StructureElement) -> Result<Vec<u64>> {
        let p = &self.params;
        if x.params != *p {
            return Err(Error::ParamsMismatch(format!("{} vs {p}", x.params)));
        }
        x.check()?;
        if !x.rho.is_zero() {
            return Err(Error::PreconditionFailed(format!("x is not torsion: rho = {}", x.rho)));
        }
        let ambient = p.coord_ambient();
        let gens: Vec<Vec<i64>> = self.elements().map(|y| y.coords.to_vec()).collect();
        let mut rows: Vec<Vec<BigInt>> =
            gens.iter().map(|g| g.iter().map(|&v| BigInt::from(v)).collect()).collect();
        for (j, &m) in ambient.iter().enumerate() {
            let mut r = vec![BigInt::zero(); ambient.len()];
            r[j] = BigInt::from(m);
            rows.push(r);
        }
        let target: Vec<BigInt> = x.coords.to_vec().into_iter().map(BigInt::from).collect();
        let sol = solve_integer(&rows, &target).ok_or_else(|| {
            Error::VerificationFailure(format!("{:?} is not in the span of the basis", x.coords))
        })?;
        let orders = self.orders();
        let coeffs: Vec<u64> = orders
            .iter()
            .zip(&sol)
            .map(|(&o, s)| s.mod_floor(&BigInt::from(o)).to_u64().expect("reduced"))
            .collect();
        let back: Vec<i64> = (0..ambient.len())
            .map(|j| gens.iter().zip(&coeffs).map(|(g, &a)| g[j] * a as i64).sum())
            .collect();
        if element_order(&ambient, &back.iter().zip(x.coords.to_vec()).map(|(a, b)| a - b).collect::<Vec<_>>()) != 1 {
            return Err(Error::VerificationFailure("basis expansion does not round-trip".into()));
        }
        Ok(coeffs)
    }

    /// `sum coeff * basis`, the inverse of `torsion_coordinates`.
    pub fn combine(&self, coeffs: &[i64]) -> Result<StructureElement> {
        let gens: Vec<&StructureElement> = self.elements().collect();
        if coeffs.len() != gens.len() {
            return Err(Error::CoordinateOutOfRange(format!(
                "expected {} coefficients, got {}",
                gens.len(),
                coeffs.len()
            )));
        }
        gens.iter()
            .zip(coeffs)
            .try_fold(StructureElement::zero(&self.params), |acc, (g, &a)| acc.add(&g.scale(a)))
    }
}

/// `rho(y)` at `x = -1`, divided by `M 2^(3 + max(0, K - 2i))`.
pub fn browder_livesay_composite(y: &StructureElement, i: usize) -> Result<BigRational> {
    let p = &y.params;
    if p.n() % 2 == 1 {
        return Err(Error::NOdd(p.n()));
    }
    let shift = 3 + (p.two_power() as i64 - 2 * i as i64).max(0);
    let div = BigInt::from(p.odd_part()) << shift as usize;
    Ok(y.rho.eval_minus_one()? / BigRational::from_integer(div))
}

/// Reads `r_{4i}` of a torsion element through the composite, after
/// checking that every block above `i` vanishes. The element restricted to
/// dimension `2i` is `r_{4i} nu_i` up to lower blocks, and the composite
/// takes the value 1 on `nu_i`.
pub fn browder_livesay_cascade(y: &StructureElement, basis: &TorsionBasis, i: usize) -> Result<BigRational> {
    let p = &basis.params;
    let c = p.c();
    if i == 0 || i > c {
        return Err(Error::InvalidParams(format!("block {i} outside 1..={c}")));
    }
    let r = basis.torsion_coordinates(y)?;
    if (i..c).any(|j| r[j] != 0 || r[c + j] != 0) {
        return Err(Error::PreconditionFailed(format!(
            "blocks above {i} do not vanish: {r:?}"
        )));
    }
    if i == 1 {
        return Ok(BigRational::from_integer(r[0].into()));
    }
    let nu = elem_nu(&p.with_d(2 * i)?)?;
    browder_livesay_composite(&nu.scale(r[i - 1] as i64), i)
}
