//! Exact arithmetic in quotients of `Q[x]` by divisors of `x^N - 1`.
//!
//! The main ring is the truncated ring `R = Z[x]/<1 + x + ... + x^(N-1)>`
//! with canonical basis `x^0, ..., x^(N-2)`. In that basis an element is
//! integral exactly when its coordinates are integers.

mod crt;
mod element;
mod modulus;
mod poly;

pub use crt::{crt_combine, crt_split, CrtBasis};
pub use element::{RingElement, Sign};
pub use modulus::{two_adic, IdealKind, RingModulus};
pub use poly::Poly;

/// `Q`-rank of the `sign` eigenlattice of `R`, computed from the
/// involution's matrix rather than from a closed form.
pub fn eigen_rank(n: usize, sign: Sign) -> crate::Result<usize> {
    use num_rational::BigRational;
    let m = RingModulus::truncated(n)?;
    let dim = m.dim();
    let s = BigRational::from_integer(sign.as_i64().into());
    // rows of (inv - s*I)^T; rank-nullity gives the eigenspace dimension
    let mut rows = Vec::with_capacity(dim);
    for j in 0..dim {
        let e = RingElement::chi_pow(m, j as i64);
        let img = &e.involution()? - &e.scale(&s);
        rows.push(img.coeffs());
    }
    Ok(dim - crate::linalg::rank(&rows))
}

#[cfg(test)]
mod tests;
