use num_bigint::BigInt;

use super::*;
use crate::abelian::iso_eq;
use crate::cyclic_ring::{RingElement, RingModulus, Sign};
use crate::special::elem_f;

fn lp(n: usize, d: usize) -> LensParams {
    LensParams::new(n, d, 1).unwrap()
}

fn tr(n: usize) -> RingModulus {
    RingModulus::truncated(n).unwrap()
}

fn coords(p: &LensParams, t4: &[i64]) -> NormalCoords {
    NormalCoords::new(p, t4, &vec![0; t4.len()]).unwrap()
}

#[test]
fn params_shape() {
    let p = LensParams::new(24, 7, 5).unwrap();
    assert_eq!((p.two_power(), p.odd_part(), p.e(), p.c(), p.k()), (3, 3, 3, 3, 5));
    assert_eq!(LensParams::new(9, 4, 11).unwrap().k(), 2);
    assert!(LensParams::new(6, 4, 3).is_err());
    assert!(LensParams::new(6, 2, 1).is_err());
}

#[test]
fn reduced_normal_group_examples() {
    let (g, odd) = reduced_normal_group(&lp(4, 5)).unwrap();
    assert_eq!((g.factors(), odd), (&[2, 2, 4, 4][..], 1));
    let (g, odd) = reduced_normal_group(&lp(2, 3)).unwrap();
    assert_eq!((g.factors(), odd), (&[2, 2][..], 1));
    let (g, odd) = reduced_normal_group(&lp(6, 4)).unwrap();
    assert_eq!((g.factors(), odd), (&[2, 2][..], 3));
}

#[test]
fn lift_examples() {
    assert_eq!(lift_tbar(&[1], &lp(4, 4)), vec![BigInt::from(1)]);
    assert_eq!(lift_tbar(&[1], &lp(6, 4)), vec![BigInt::from(3)]);
    assert_eq!(lift_tbar(&[0], &lp(6, 4)), vec![BigInt::from(0)]);
    // t = 3 mod 8, 0 mod 9
    assert_eq!(lift_tbar(&[3], &lp(72, 4)), vec![BigInt::from(27)]);
    assert_eq!(lift_tbar(&[3], &lp(72, 5)), vec![BigInt::from(243)]);
}

#[test]
fn formula_examples() {
    let p = lp(4, 4);
    assert!(rho_bar_formula(&p, &NormalCoords::zero(&p)).unwrap().is_zero());
    let v = rho_bar_formula(&p, &coords(&p, &[1])).unwrap();
    assert_eq!(v, RingElement::from_int_terms(tr(4), &[(2, 4), (0, -12)]));
    let p2 = lp(2, 4);
    assert_eq!(rho_bar_formula(&p2, &coords(&p2, &[1])).unwrap(), RingElement::from_int(tr(2), -8));
    assert!(rho_bar_formula(&lp(3, 4), &NormalCoords::zero(&lp(3, 4))).is_err());
}

#[test]
fn class_zero_examples() {
    let p = lp(4, 4);
    let x = RingElement::from_int_terms(tr(4), &[(2, 4), (0, -12)]);
    assert!(rho_class_is_zero(&p, &x).unwrap());
    let f = elem_f(4).unwrap();
    let sym = f.scale_int(2);
    // 2f is antisymmetric, wrong eigenspace for d even
    assert!(rho_class_is_zero(&p, &sym).is_err());
    let p5 = lp(4, 5);
    assert!(!rho_class_is_zero(&p5, &sym).unwrap());
    assert!(rho_class_is_zero(&p5, &f.scale_int(8)).unwrap());
    assert!(rho_class_is_zero(&p, &RingElement::zero(tr(4))).unwrap());
}

#[test]
fn cp_formula_examples() {
    let f = elem_f(4).unwrap();
    let one = RingElement::one(tr(4));
    assert!(rho_cp_formula(&[0], 4, 4).unwrap().is_zero());
    let v = rho_cp_formula(&[1], 4, 4).unwrap();
    assert_eq!(v, (&(&f * &f) - &one).scale_int(8));
    assert_eq!(v, rho_bar_formula(&lp(4, 4), &coords(&lp(4, 4), &[1])).unwrap());
    let f2 = &f * &f;
    let f4 = &f2 * &f2;
    assert_eq!(rho_cp_formula(&[1, 0], 6, 4).unwrap(), (&f4 - &f2).scale_int(8));
}

#[test]
fn kernel_examples() {
    let k = kernel_rho_bar(&lp(2, 4), DEFAULT_CAP).unwrap();
    assert_eq!(k.torsion.factors(), &[2, 2]);
    let k = kernel_rho_bar(&lp(8, 4), DEFAULT_CAP).unwrap();
    assert_eq!(k.t4_members, vec![vec![0], vec![2], vec![4], vec![6]]);
    assert_eq!(k.torsion.factors(), &[2, 4]);
    let k = kernel_rho_bar(&lp(4, 5), DEFAULT_CAP).unwrap();
    assert_eq!(k.torsion.factors(), &[2, 2, 4, 4]);
    assert!(matches!(
        kernel_rho_bar(&lp(16, 8), 100),
        Err(crate::Error::WorkCapExceeded { .. })
    ));
}

#[test]
fn closed_form_examples() {
    assert_eq!(kernel_closed_form(&lp(4, 5)).factors(), &[2, 2, 4, 4]);
    assert!(kernel_closed_form(&lp(3, 5)).is_trivial());
    assert_eq!(kernel_closed_form(&lp(16, 7)).factors(), &[2, 2, 2, 4, 16, 16]);
}

#[test]
fn rank_examples() {
    assert_eq!(l_group_reduced_rank(6, Sign::Minus).unwrap(), 2);
    assert_eq!(l_group_reduced_rank(5, Sign::Minus).unwrap(), 2);
    assert_eq!(l_group_reduced_rank(2, Sign::Minus).unwrap(), 0);
}

#[test]
fn structure_set_examples() {
    let s = structure_set(&lp(3, 3), MethodChoice::Brute, DEFAULT_CAP).unwrap();
    assert_eq!((s.free_rank, s.torsion.is_trivial()), (1, true));
    let s = structure_set(&lp(6, 3), MethodChoice::Brute, DEFAULT_CAP).unwrap();
    assert_eq!((s.free_rank, s.torsion.factors()), (2, &[2, 2][..]));
    let s = structure_set(&lp(2, 3), MethodChoice::Brute, DEFAULT_CAP).unwrap();
    assert_eq!((s.free_rank, s.torsion.factors()), (0, &[2, 2][..]));
    let s = structure_set(&lp(16, 8), MethodChoice::Auto, 10).unwrap();
    assert_eq!(s.method, KernelMethod::Closed);
    assert!(structure_set(&lp(16, 8), MethodChoice::Brute, 10).is_err());
}

#[test]
fn kernel_matches_closed_form_small() {
    for n in [2usize, 3, 4, 6, 8] {
        for d in 3..=6 {
            let p = lp(n, d);
            let k = kernel_rho_bar(&p, DEFAULT_CAP).unwrap();
            assert!(iso_eq(&k.torsion, &kernel_closed_form(&p)), "N={n} d={d}: {}", k.torsion);
        }
    }
}

#[test]
fn element_examples() {
    let p = lp(6, 4);
    let sigma = StructureElement::new(p, RingElement::from_int(tr(6), 8), NormalCoords::zero(&p));
    assert!(sigma.validate());
    let p4 = lp(4, 4);
    let f = elem_f(4).unwrap();
    let bad = StructureElement::new(p4, f.scale_int(2), NormalCoords::zero(&p4));
    assert!(!bad.validate());
    let x = StructureElement::new(
        p4,
        RingElement::from_int_terms(tr(4), &[(2, 4), (0, -12)]),
        coords(&p4, &[1]),
    );
    assert!(x.validate());
    let z = x.add(&x.neg()).unwrap();
    assert_eq!(z, StructureElement::zero(&p4));
    assert!(z.validate());
    assert!(x.add(&sigma).is_err());
}

#[test]
fn transfer_examples() {
    let p = lp(8, 4);
    let c = coords(&p, &[3]);
    let (p2, c2) = c.transfer(&p, 4).unwrap();
    // plain reduction: 3 mod 8 goes to 3 mod 4
    assert_eq!((p2.n(), c2.t4.clone()), (4, vec![3]));
    assert!(elem_f(4).unwrap().restrict(2).unwrap().is_zero());
    // naturality of the formula under transfer
    let v8 = rho_bar_formula(&p, &coords(&p, &[1])).unwrap().restrict(4).unwrap();
    let (p4, t4) = coords(&p, &[1]).transfer(&p, 4).unwrap();
    let v4 = rho_bar_formula(&p4, &t4).unwrap();
    assert!((&v8 - &v4).in_lattice_4r(Sign::Plus));
    assert!(c.transfer(&p, 3).is_err());
}

#[test]
fn k_twist_is_f_prime_times_k1() {
    for (n, k) in [(5usize, 2i64), (8, 3), (9, 4), (12, 5)] {
        for d in 3..=6 {
            let pk = LensParams::new(n, d, k).unwrap();
            let p1 = lp(n, d);
            if pk.two_power() == 0 {
                continue;
            }
            let fp = crate::special::elem_f_prime_k(n, k).unwrap();
            let t: Vec<i64> = (0..pk.c() as i64).map(|i| i + 1).collect();
            let a = rho_bar_formula(&pk, &coords(&pk, &t)).unwrap();
            let b = rho_bar_formula(&p1, &coords(&p1, &t)).unwrap();
            assert_eq!(a, &fp * &b, "N={n} k={k} d={d}");
        }
    }
}

#[test]
fn lift_independence() {
    for (n, d) in [(6usize, 5usize), (8, 6), (12, 7), (24, 5)] {
        let p = lp(n, d);
        let f = RhoFormula::new(&p).unwrap();
        let t: Vec<u64> = (0..p.c() as u64).map(|i| (i + 1) % p.t4_modulus()).collect();
        let base = lift_tbar(&t, &p);
        let step = BigInt::from(p.t4_modulus()) * BigInt::from(p.odd_order().unwrap());
        let shifted: Vec<BigInt> = base.iter().map(|x| x + &step * 3).collect();
        let diff = &f.evaluate_lifted(&base) - &f.evaluate_lifted(&shifted);
        assert!(diff.in_lattice_4r(p.sign()), "N={n} d={d}");
    }
}
