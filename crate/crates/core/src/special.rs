//! The named elements `f`, `f_k`, `f'_k`, the quasi-inverse `g` and its CRT
//! components, and division by `f` on `4R^+`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::solve_integer;
use crate::cyclic_ring::{two_adic, CrtBasis, RingElement, RingModulus, Sign};
use crate::error::{Error, Result};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Least positive residue of `k` mod `n`, checked to be a unit.
pub fn normalize_k(n: usize, k: i64) -> Result<usize> {
    let r = k.rem_euclid(n as i64) as usize;
    let r = if n == 1 { 1 } else { r };
    if r.gcd(&n) != 1 {
        return Err(Error::NotCoprime { n, k });
    }
    Ok(r)
}

/// `f_k = (1 + x^k)/(1 - x^k)`.
pub fn elem_f_k(n: usize, k: i64) -> Result<RingElement> {
    let m = RingModulus::truncated(n)?;
    let k = normalize_k(n, k)? as i64;
    let num = RingElement::from_int_terms(m, &[(0, 1), (k, 1)]);
    let den = RingElement::from_int_terms(m, &[(0, 1), (k, -1)]);
    Ok(&num * &den.inverse()?)
}

/// `f = f_1`.
pub fn elem_f(n: usize) -> Result<RingElement> {
    elem_f_k(n, 1)
}

/// The integral cofactor with `f_k = f * f'_k`.
pub fn elem_f_prime_k(n: usize, k: i64) -> Result<RingElement> {
    let m = RingModulus::truncated(n)?;
    let k = normalize_k(n, k)?;
    if k % 2 == 0 && n.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("even k = {k} needs N odd (N = {n})")));
    }
    let ki = k as i64;
    let sign = |j: i64| if j % 2 == 0 { 1 } else { -1 };
    let num_terms: Vec<(i64, i64)> = if k % 2 == 1 {
        (0..ki).map(|j| (j, sign(j))).collect()
    } else {
        (ki..n as i64).map(|j| (j, sign(j - ki))).collect()
    };
    let num = RingElement::from_int_terms(m, &num_terms);
    let den_terms: Vec<(i64, i64)> = (0..ki).map(|j| (j, 1)).collect();
    let den = RingElement::from_int_terms(m, &den_terms);
    Ok(&num * &den.inverse()?)
}

/// `A_l = 1 - x + x^2 - ... - x^(2^l - 1)` in `Z[x]/<1 + x^(2^l)>`.
pub fn elem_a_l(n: usize, l: u32) -> Result<RingElement> {
    let m = RingModulus::binomial_plus(n, l)?;
    Ok(alternating(m, 1 << l))
}

fn alternating(m: RingModulus, len: i64) -> RingElement {
    let terms: Vec<(i64, i64)> = (0..len).map(|j| (j, if j % 2 == 0 { 1 } else { -1 })).collect();
    RingElement::from_int_terms(m, &terms)
}

/// `h_l = A_l / 2`, the inverse of `1 + x` in the factor `<1 + x^(2^l)>`, `l >= 1`.
pub fn elem_h_l(n: usize, l: u32) -> Result<RingElement> {
    if l == 0 {
        return Err(Error::PreconditionFailed("1 + x is zero in the l = 0 factor".into()));
    }
    Ok(elem_a_l(n, l)?.scale(&q(1, 2)))
}

/// Inverse of `1 + x` in the odd factor: `h = -(A_K/M)(1 + 2y + ... + M y^(M-1))`
/// with `y = x^(2^K)`.
pub fn elem_h(n: usize) -> Result<RingElement> {
    let m = RingModulus::odd_truncated(n)?;
    let (k, mm) = two_adic(n);
    let a = alternating(m, 1 << k);
    let step = 1i64 << k;
    let terms: Vec<(i64, i64)> = (0..mm as i64).map(|j| (j * step, j + 1)).collect();
    let s = RingElement::from_int_terms(m, &terms);
    Ok((&a * &s).scale(&q(-1, mm as i64)))
}

/// An element `g` of the minus eigenspace with `g f x = x` for every `x`
/// in the minus eigenspace.
///
/// Built factor by factor: zero in the `l = 0` factor (where `f = 0`), and
/// `f^-1 = (1 - x) h_l` resp. `(1 - x) h` elsewhere. For `K = 0` this is
/// just `f^-1`.
pub fn elem_g(n: usize) -> Result<RingElement> {
    let (k, mm) = two_adic(n);
    if k == 0 {
        return elem_f(n)?.inverse();
    }
    let basis = CrtBasis::new(n)?;
    let mut parts = Vec::new();
    for (l, fm) in basis.factors().iter().enumerate() {
        let one_minus_x = RingElement::from_int_terms(*fm, &[(0, 1), (1, -1)]);
        let part = if l == 0 {
            RingElement::zero(*fm)
        } else if l < k as usize {
            &one_minus_x * &elem_h_l(n, l as u32)?
        } else {
            debug_assert!(mm > 1);
            &one_minus_x * &elem_h(n)?
        };
        parts.push(part);
    }
    basis.combine(&parts)
}

/// Everything above for one `(N, k)`.
#[derive(Clone, Debug)]
pub struct SpecialElementCatalog {
    pub n: usize,
    pub k: usize,
    pub f: RingElement,
    pub f_k: RingElement,
    pub f_prime_k: RingElement,
    pub g: RingElement,
    /// `h_l` for `l = 1..K-1`.
    pub h_l: Vec<RingElement>,
    pub h: Option<RingElement>,
    /// `A_l` for `l = 0..K-1`.
    pub a_l: Vec<RingElement>,
}

impl SpecialElementCatalog {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        let k = normalize_k(n, k)?;
        let (kk, mm) = two_adic(n);
        Ok(SpecialElementCatalog {
            n,
            k,
            f: elem_f(n)?,
            f_k: elem_f_k(n, k as i64)?,
            f_prime_k: elem_f_prime_k(n, k as i64)?,
            g: elem_g(n)?,
            h_l: (1..kk).map(|l| elem_h_l(n, l)).collect::<Result<_>>()?,
            h: if kk >= 1 && mm > 1 { Some(elem_h(n)?) } else { None },
            a_l: (0..kk).map(|l| elem_a_l(n, l)).collect::<Result<_>>()?,
        })
    }
}

/// `4(x^j + x^-j) + 8(-1)^(j+1)` for `j = 1..N/2`: spans the `u` in `4R^+`
/// with `u(-1) = 0`.
pub fn divide_by_f_basis(n: usize) -> Result<Vec<RingElement>> {
    let m = RingModulus::truncated(n)?;
    Ok((1..=(n / 2) as i64)
        .map(|j| {
            let c = if j % 2 == 1 { 8 } else { -8 };
            RingElement::from_int_terms(m, &[(j, 4), (-j, 4), (0, c)])
        })
        .collect())
}

/// The preimage `(1 - x) v_j` of the `j`-th basis vector under `f`, where
/// `v_j = 4 sum_{i<j} (-1)^i (x^(j-1-i) + x^(-j+i))`.
fn divide_by_f_preimage(m: RingModulus, j: i64) -> RingElement {
    let mut terms = Vec::new();
    for i in 0..j {
        let s = if i % 2 == 0 { 4 } else { -4 };
        terms.push((j - 1 - i, s));
        terms.push((-j + i, s));
    }
    let v = RingElement::from_int_terms(m, &terms);
    &RingElement::from_int_terms(m, &[(0, 1), (1, -1)]) * &v
}

/// Solves `f a = u` with `a` in `4R^-`, for `u` in `4R^+` with `u(-1) = 0`.
pub fn divide_by_f(u: &RingElement) -> Result<RingElement> {
    let m = u.modulus();
    let n = m.n();
    if !m.is_truncated() || n % 2 == 1 {
        return Err(Error::PreconditionFailed("divide_by_f needs the truncated ring with N even".into()));
    }
    if !u.is_divisible_by(4) || !u.eigen_test(Sign::Plus)? {
        return Err(Error::PreconditionFailed(format!("{u} is not in 4R^+")));
    }
    if !u.eval_minus_one()?.is_zero() {
        return Err(Error::PreconditionFailed(format!("{u} does not vanish at x = -1")));
    }
    let basis = divide_by_f_basis(n)?;
    let rows: Vec<Vec<BigInt>> = basis.iter().map(|b| b.numerators().to_vec()).collect();
    let coeffs = solve_integer(&rows, u.numerators()).ok_or_else(|| {
        Error::PreconditionFailed(format!("{u} is not an integer combination of the basis"))
    })?;
    let mut a = RingElement::zero(m);
    for (j, c) in (1..).zip(&coeffs) {
        if !c.is_zero() {
            a = &a + &divide_by_f_preimage(m, j).scale(&BigRational::from_integer(c.clone()));
        }
    }
    Ok(a)
}
