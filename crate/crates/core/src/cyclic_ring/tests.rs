use num_rational::BigRational;

use super::*;
use crate::Error;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn tr(n: usize) -> RingModulus {
    RingModulus::truncated(n).unwrap()
}

fn ints(m: RingModulus, c: &[i64]) -> RingElement {
    RingElement::from_int_coeffs(m, c).unwrap()
}

#[test]
fn reduce_examples() {
    let m = tr(4);
    assert!(RingElement::chi_pow(m, 4).is_one());
    assert!(RingElement::from_int_terms(m, &[(0, 1), (1, 1), (2, 1), (3, 1)]).is_zero());
    assert_eq!(RingElement::chi_pow(m, -1), ints(m, &[-1, -1, -1]));
    // x * x^3 computed through the product, not the exponent fold
    let x = RingElement::chi_pow(m, 1);
    let x3 = RingElement::chi_pow(m, 3);
    assert!((&x * &x3).is_one());
}

#[test]
fn inverse_examples() {
    let m = tr(4);
    let one_minus_x = ints(m, &[1, -1, 0]);
    let inv = one_minus_x.inverse().unwrap();
    let expected = RingElement::from_coeffs(m, vec![q(3, 4), q(1, 2), q(1, 4)]).unwrap();
    assert_eq!(inv, expected);
    assert!((&one_minus_x * &inv).is_one());

    // 1 + x + x^2, r = 3
    let geo = ints(m, &[1, 1, 1]);
    let inv = geo.inverse().unwrap();
    assert_eq!(inv, RingElement::from_int_terms(m, &[(0, 1), (2, 1), (3, 1)]));
    assert!((&geo * &inv).is_one());

    match ints(m, &[1, 1, 0]).inverse() {
        Err(Error::NotInvertible { witness: Some(w) }) => {
            assert!(!w.is_zero());
            assert!((&ints(m, &[1, 1, 0]) * &w).is_zero());
        }
        other => panic!("expected NotInvertible, got {other:?}"),
    }
}

#[test]
fn general_inverse_agrees_with_formula() {
    for n in [5usize, 8, 9, 12] {
        let m = tr(n);
        let a = RingElement::from_int_terms(m, &[(0, 1), (1, -1)]);
        let via_formula = a.inverse().unwrap();
        let b = a.scale(&q(3, 1));
        let via_solver = b.inverse().unwrap().scale(&q(3, 1));
        assert_eq!(via_formula, via_solver, "N={n}");
    }
}

#[test]
fn one_plus_x_inverse_for_odd_n() {
    for mm in [3usize, 5, 7, 9] {
        let m = tr(mm);
        // even powers up to x^(M-1); the last exponent must be even
        let terms: Vec<_> = (0..mm as i64).step_by(2).map(|j| (j, 1)).collect();
        let claimed = RingElement::from_int_terms(m, &terms);
        assert!((&RingElement::from_int_terms(m, &[(0, 1), (1, 1)]) * &claimed).is_one());
    }
}

#[test]
fn involution_examples() {
    let m = tr(6);
    let x = RingElement::chi_pow(m, 1);
    assert_eq!(x.involution().unwrap(), ints(m, &[-1, -1, -1, -1, -1]));
    assert!(RingElement::one(m).involution().unwrap().is_one());
    let anti = RingElement::from_int_terms(m, &[(1, 1), (5, -1)]);
    assert_eq!(anti.involution().unwrap(), -&anti);
    let bp = RingModulus::binomial_plus(4, 1).unwrap();
    assert!(RingElement::one(bp).involution().is_err());
}

#[test]
fn eigen_examples() {
    for n in [4usize, 6, 8, 10] {
        let m = tr(n);
        for r in 1..n as i64 / 2 {
            let a = RingElement::from_int_terms(m, &[(r, 1), (n as i64 - r, -1)]);
            assert!(a.eigen_test(Sign::Minus).unwrap());
        }
    }
    let m = tr(4);
    let p = RingElement::chi_pow(m, 1).eigen_project(Sign::Plus).unwrap();
    assert_eq!(p, RingElement::from_coeffs(m, vec![q(-1, 2), q(0, 1), q(-1, 2)]).unwrap());
    let c = RingElement::constant(m, &q(7, 3));
    assert!(c.eigen_project(Sign::Minus).unwrap().is_zero());
}

#[test]
fn eval_examples() {
    for n in [2usize, 4, 6, 8] {
        let m = tr(n);
        let f = RingElement::from_int_terms(m, &[(0, 1), (1, 1)])
            * RingElement::from_int_terms(m, &[(0, 1), (1, -1)]).inverse().unwrap();
        assert_eq!(f.eval_minus_one().unwrap(), q(0, 1));
        assert_eq!(RingElement::from_int(m, 8).eval_minus_one().unwrap(), q(8, 1));
    }
    let m = tr(6);
    let p = RingElement::from_int_terms(m, &[(0, 16), (2, 16), (4, 16)]);
    assert_eq!(p.eval_minus_one().unwrap(), q(48, 1));
    assert!(matches!(RingElement::one(tr(5)).eval_minus_one(), Err(Error::NOdd(5))));
}

#[test]
fn restrict_examples() {
    let m = tr(4);
    let f = RingElement::from_coeffs(m, vec![q(1, 2), q(1, 1), q(1, 2)]).unwrap();
    assert!(f.restrict(2).unwrap().is_zero());
    assert!(RingElement::one(m).restrict(2).unwrap().is_one());
    assert!(matches!(f.restrict(3), Err(Error::NotDivisor(3, 4))));
    for n in [6usize, 12, 24] {
        let (_, mm) = two_adic(n);
        let terms: Vec<_> = (0..n as i64).step_by(2).map(|j| (j, 16)).collect();
        let p = RingElement::from_int_terms(tr(n), &terms);
        assert!(p.restrict(mm).unwrap().is_zero(), "N={n}");
    }
}

#[test]
fn crt_dimensions_and_minus_component() {
    let b = CrtBasis::new(4).unwrap();
    let dims: Vec<_> = b.factors().iter().map(|m| m.dim()).collect();
    assert_eq!(dims, vec![1, 2]);
    for n in [4usize, 6, 12] {
        let m = tr(n);
        let x = RingElement::from_int_terms(m, &[(1, 1), (n as i64 - 1, -1)]);
        let parts = crt_split(&x).unwrap();
        assert!(parts[0].is_zero(), "N={n}");
        assert_eq!(crt_combine(n, &parts).unwrap(), x);
    }
}

#[test]
fn lattice_examples() {
    for n in [2usize, 3, 4, 6, 9] {
        let m = tr(n);
        assert!(RingElement::from_int(m, 8).in_lattice_4r(Sign::Plus));
        for t in -5..=5 {
            assert!(RingElement::from_int(m, -8 * t).in_lattice_4r(Sign::Plus));
        }
    }
    let m = tr(6);
    let a = RingElement::from_int_terms(m, &[(1, 2), (5, -2)]);
    assert!(!a.in_lattice_4r(Sign::Minus));
    assert!(a.scale_int(2).in_lattice_4r(Sign::Minus));
    // the + lattice is the norm lattice when N is even
    assert!(!RingElement::from_int(m, 4).in_lattice_4r(Sign::Plus));
    assert!(RingElement::from_int(tr(5), 4).in_lattice_4r(Sign::Plus));
}

#[test]
fn eigen_ranks_match_closed_form() {
    for n in 2..=48usize {
        let (plus, minus) = if n % 2 == 0 { (n / 2, n / 2 - 1) } else { ((n - 1) / 2, (n - 1) / 2) };
        assert_eq!(eigen_rank(n, Sign::Plus).unwrap(), plus, "N={n}");
        assert_eq!(eigen_rank(n, Sign::Minus).unwrap(), minus, "N={n}");
    }
}

#[test]
fn mismatch_is_an_error() {
    let a = RingElement::one(tr(4));
    let b = RingElement::one(tr(6));
    assert!(matches!(a.try_mul(&b), Err(Error::ModulusMismatch { .. })));
}
