use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modulus::{IdealKind, RingModulus};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg;

/// Eigenvalue of the involution `x -> x^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^d`
    pub fn for_dim(d: usize) -> Sign {
        if d.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A class in `Q[x]/I`, kept in canonical reduced form.
///
/// Coefficients are stored as integer numerators over one positive common
/// denominator, normalized so that the gcd of everything is 1. Equality is
/// therefore structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    modulus: RingModulus,
    num: Vec<BigInt>,
    den: BigInt,
}

fn fold(n: usize, e: i64) -> usize {
    e.rem_euclid(n as i64) as usize
}

impl RingElement {
    fn from_folded(modulus: RingModulus, folded: Vec<BigInt>, den: BigInt) -> Self {
        let num = modulus.reduce_folded(folded);
        let mut x = RingElement { modulus, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(modulus: RingModulus) -> Self {
        RingElement {
            num: vec![BigInt::zero(); modulus.dim()],
            den: BigInt::one(),
            modulus,
        }
    }

    pub fn one(modulus: RingModulus) -> Self {
        Self::from_int(modulus, 1)
    }

    pub fn from_int(modulus: RingModulus, c: i64) -> Self {
        Self::from_int_terms(modulus, &[(0, c)])
    }

    pub fn constant(modulus: RingModulus, c: &BigRational) -> Self {
        Self::one(modulus).scale(c)
    }

    /// `x^k`; negative exponents are read as `x^(N-k)`.
    pub fn chi_pow(modulus: RingModulus, k: i64) -> Self {
        Self::from_int_terms(modulus, &[(k, 1)])
    }

    /// Reduces the raw Laurent polynomial `sum c * x^e`.
    pub fn from_terms(
        modulus: RingModulus,
        terms: impl IntoIterator<Item = (i64, BigRational)>,
    ) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let n = modulus.n();
        let mut v = vec![BigInt::zero(); n];
        for (e, c) in &terms {
            v[fold(n, *e)] += c.numer() * (&den / c.denom());
        }
        Self::from_folded(modulus, v, den)
    }

    pub fn from_int_terms(modulus: RingModulus, terms: &[(i64, i64)]) -> Self {
        let n = modulus.n();
        let mut v = vec![BigInt::zero(); n];
        for &(e, c) in terms {
            v[fold(n, e)] += c;
        }
        Self::from_folded(modulus, v, BigInt::one())
    }

    pub fn from_poly(modulus: RingModulus, p: &Poly) -> Self {
        Self::from_terms(
            modulus,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    /// Builds an element from coefficients that are already canonical.
    pub fn from_coeffs(modulus: RingModulus, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != modulus.dim() {
            return Err(Error::PreconditionFailed(format!(
                "{modulus} expects {} coefficients, got {}",
                modulus.dim(),
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut x = RingElement { modulus, num, den };
        x.normalize();
        Ok(x)
    }

    pub fn from_int_coeffs(modulus: RingModulus, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(
            modulus,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn modulus(&self) -> RingModulus {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.modulus.n()
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Canonical representative as a raw polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.modulus)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// True iff every coefficient is an integer multiple of `m`.
    pub fn is_divisible_by(&self, m: i64) -> bool {
        self.is_integral() && self.num.iter().all(|c| (c % m).is_zero())
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.modulus != o.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.to_string(),
                right: o.modulus.to_string(),
            });
        }
        Ok(())
    }

    fn combine(&self, o: &Self, sub: bool) -> Result<Self> {
        self.check_same(o)?;
        let den = self.den.lcm(&o.den);
        let (sa, sb) = (&den / &self.den, &den / &o.den);
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| if sub { a * &sa - b * &sb } else { a * &sa + b * &sb })
            .collect();
        let mut x = RingElement {
            modulus: self.modulus,
            num,
            den,
        };
        x.normalize();
        Ok(x)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.combine(o, false)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, true)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let n = self.n();
        let mut v = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    v[(i + j) % n] += a * b;
                }
            }
        }
        Ok(Self::from_folded(self.modulus, v, &self.den * &o.den))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut x = RingElement {
            modulus: self.modulus,
            num: self.num.iter().map(|a| a * c.numer()).collect(),
            den: &self.den * c.denom(),
        };
        x.normalize();
        x
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        let n = self.n();
        let mut v = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            v[fold(n, i as i64 + k)] += a;
        }
        Self::from_folded(self.modulus, v, self.den.clone())
    }

    /// Integer power; negative exponents go through [`inverse`](Self::inverse).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.modulus);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible {
                witness: Some(Box::new(Self::one(self.modulus))),
            });
        }
        if self.modulus.is_truncated() && self.is_integral() {
            if let Some(inv) = self.inverse_by_formula() {
                return Ok(inv);
            }
        }
        self.inverse_by_solving()
    }

    /// Closed forms for `1 - x^k` and `1 + x + ... + x^(k-1)` with `k` a unit.
    fn inverse_by_formula(&self) -> Option<Self> {
        let m = self.modulus;
        let n = m.n();
        let n_i = n as i64;
        for k in 1..n_i {
            if k.gcd(&n_i) != 1 {
                continue;
            }
            if *self == Self::from_int_terms(m, &[(0, 1), (k, -1)]) {
                let terms = (0..n_i).map(|j| {
                    (j * k, BigRational::new(BigInt::from(-(j + 1)), BigInt::from(n_i)))
                });
                return Some(Self::from_terms(m, terms));
            }
            let geo: Vec<_> = (0..k).map(|j| (j, 1)).collect();
            if *self == Self::from_int_terms(m, &geo) {
                let r = (1..=n_i).find(|r| (r * k - 1).rem_euclid(n_i) == 0)?;
                let terms: Vec<_> = (0..r).map(|j| (j * k, 1)).collect();
                return Some(Self::from_int_terms(m, &terms));
            }
        }
        None
    }

    fn inverse_by_solving(&self) -> Result<Self> {
        let m = self.modulus;
        let dim = m.dim();
        // column j holds the coefficients of self * x^j
        let mut cols = Vec::with_capacity(dim);
        let mut cur = self.clone();
        for j in 0..dim {
            if j > 0 {
                cur = cur.shift(1);
            }
            cols.push(cur.coeffs());
        }
        let mat: linalg::QMatrix = (0..dim)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let target = Self::one(m).coeffs();
        match linalg::solve(&mat, &target) {
            Ok(x) => Self::from_coeffs(m, x),
            Err(null) => {
                let witness = if null.is_empty() {
                    None
                } else {
                    Self::from_poly_basis(m, &null).map(Box::new)
                };
                Err(Error::NotInvertible { witness })
            }
        }
    }

    /// Element `sum v_j x^j` over the monomial basis `x^0..x^(dim-1)`.
    fn from_poly_basis(m: RingModulus, v: &[BigRational]) -> Option<Self> {
        Self::from_coeffs(m, v.to_vec()).ok()
    }

    fn require_cyclic(&self, op: &str) -> Result<()> {
        match self.modulus.kind() {
            IdealKind::GroupRing | IdealKind::Truncated => Ok(()),
            _ => Err(Error::UnsupportedModulus(format!("{op} on {}", self.modulus))),
        }
    }

    /// The conjugation `x -> x^-1`.
    pub fn involution(&self) -> Result<Self> {
        self.require_cyclic("involution")?;
        let n = self.n();
        let mut v = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            v[(n - i) % n] += a;
        }
        Ok(Self::from_folded(self.modulus, v, self.den.clone()))
    }

    pub fn eigen_project(&self, sign: Sign) -> Result<Self> {
        let inv = self.involution()?;
        let s = match sign {
            Sign::Plus => self + &inv,
            Sign::Minus => self - &inv,
        };
        Ok(s.scale(&BigRational::new(1.into(), 2.into())))
    }

    pub fn eigen_test(&self, sign: Sign) -> Result<bool> {
        let inv = self.involution()?;
        Ok(match sign {
            Sign::Plus => inv == *self,
            Sign::Minus => inv == -self,
        })
    }

    /// Value of the canonical representative at `x = -1`.
    pub fn eval_minus_one(&self) -> Result<BigRational> {
        self.require_cyclic("eval_minus_one")?;
        if self.n() % 2 == 1 {
            return Err(Error::NOdd(self.n()));
        }
        Ok(BigRational::new(self.alternating_sum(), self.den.clone()))
    }

    fn alternating_sum(&self) -> BigInt {
        self.num
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, c)| if i % 2 == 0 { acc + c } else { acc - c })
    }

    /// Quotient map to the ring of the same kind for a divisor `n2` of `N`.
    pub fn restrict(&self, n2: usize) -> Result<Self> {
        self.require_cyclic("restrict")?;
        if n2 == 0 || !self.n().is_multiple_of(n2) {
            return Err(Error::NotDivisor(n2, self.n()));
        }
        let target = RingModulus::new(n2, self.modulus.kind())?;
        let mut v = vec![BigInt::zero(); n2];
        for (i, a) in self.num.iter().enumerate() {
            v[i % n2] += a;
        }
        Ok(Self::from_folded(target, v, self.den.clone()))
    }

    /// Membership in `4 R^sign` for the truncated ring.
    ///
    /// For `N` even the `+` lattice is the norm lattice `4{y + y^-1}`, whose
    /// elements take values in `8Z` at `x = -1`. For `N` odd that lattice is
    /// all of `4R^+`.
    pub fn in_lattice_4r(&self, sign: Sign) -> bool {
        if !self.modulus.is_truncated() || !self.is_divisible_by(4) {
            return false;
        }
        if !self.eigen_test(sign).unwrap_or(false) {
            return false;
        }
        if sign == Sign::Plus && self.n().is_multiple_of(2) {
            return (self.alternating_sum() % 8u32).is_zero();
        }
        true
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, o: &RingElement) -> RingElement {
        self.try_add(o).expect("ring add")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, o: &RingElement) -> RingElement {
        self.try_sub(o).expect("ring sub")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, o: &RingElement) -> RingElement {
        self.try_mul(o).expect("ring mul")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            modulus: self.modulus,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RingElement {
            type Output = RingElement;
            fn $m(self, o: RingElement) -> RingElement { (&self).$m(&o) }
        }
        impl $tr<&RingElement> for RingElement {
            type Output = RingElement;
            fn $m(self, o: &RingElement) -> RingElement { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                _ => {}
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}
