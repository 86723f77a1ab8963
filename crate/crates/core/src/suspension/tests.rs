use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::surgery::{kernel_rho_bar, LensParams, StructureElement, DEFAULT_CAP};

fn lp(n: usize, d: usize) -> LensParams {
    LensParams::new(n, d, 1).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn sigma_and_image_tests() {
    let s = elem_sigma(&lp(4, 4)).unwrap();
    assert!(s.validate());
    assert_eq!(s.rho.eval_minus_one().unwrap(), q(8));
    assert!(!image_test_odd_target(&s).unwrap());
    assert!(image_test_odd_target(&StructureElement::zero(&lp(4, 4))).unwrap());
    let mu = elem_mu4m2(&lp(4, 5)).unwrap();
    assert!(mu.validate());
    assert!(!image_test_even_target(&mu).unwrap());
    assert!(image_test_even_target(&StructureElement::zero(&lp(4, 5))).unwrap());
    assert!(image_test_even_target(&StructureElement::zero(&lp(4, 3))).is_err());
}

#[test]
fn omega_dies_under_suspension() {
    for n in [2usize, 4, 6, 8, 12] {
        let w = elem_omega(&lp(n, 4)).unwrap();
        assert!(w.validate(), "N={n}");
        let r = suspend(&w).unwrap();
        assert!(r.candidates.iter().all(|y| y.rho.is_zero()));
        assert_eq!(r.new_t4_values(), vec![0], "N={n}");
    }
}

#[test]
fn zero_suspends_to_zero() {
    let r = suspend(&StructureElement::zero(&lp(6, 5))).unwrap();
    assert_eq!(r.determined.unwrap(), StructureElement::zero(&lp(6, 6)));
}

#[test]
fn tau_candidates() {
    let r = suspend(&elem_tau(&lp(8, 4)).unwrap()).unwrap();
    assert_eq!(r.new_t4_values(), vec![2, 6]);
    let r = suspend(&elem_tau(&lp(2, 4)).unwrap()).unwrap();
    assert_eq!(r.new_t4_values(), vec![1]);
    let r = suspend(&elem_tau(&lp(16, 6)).unwrap()).unwrap();
    assert_eq!(r.new_t4_values(), vec![4, 12]);
    // transfer to the odd part kills it
    let t = elem_tau(&lp(12, 4)).unwrap();
    let y = suspend(&t).unwrap().canonical().transfer(3).unwrap();
    assert!(y.rho.is_zero() && y.coords.is_zero());
}

#[test]
fn suspension_lands_in_image() {
    for n in [2usize, 4, 6, 8, 12] {
        for d in [4usize, 5, 6] {
            let p = lp(n, d);
            let ker = kernel_rho_bar(&p, DEFAULT_CAP).unwrap();
            for c in ker.members.iter().take(16) {
                let x = StructureElement::torsion(&p, c.clone());
                let r = suspend(&x).unwrap();
                for y in &r.candidates {
                    assert!(y.validate());
                    if y.params.d() % 2 == 0 {
                        assert!(image_test_odd_target(y).unwrap());
                    } else {
                        assert!(image_test_even_target(y).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn nu_examples() {
    let nu = elem_nu(&lp(8, 4)).unwrap();
    assert_eq!(nu.rho, elem_p(8).unwrap().scale_int(2));
    assert!(nu.validate());
    assert_eq!(browder_livesay_composite(&nu, 2).unwrap(), q(1));
    assert_eq!(browder_livesay_composite(&elem_sigma(&lp(8, 6)).unwrap(), 2).unwrap(), q(1));
    assert_eq!(browder_livesay_composite(&StructureElement::zero(&lp(8, 6)), 1).unwrap(), q(0));
    assert!(browder_livesay_composite(&StructureElement::zero(&lp(9, 6)), 1).is_err());
}

#[test]
fn minimal_exponent_examples() {
    assert_eq!(minimal_exponent(&lp(2, 8)).unwrap(), 3);
    assert_eq!(minimal_exponent(&lp(8, 8)).unwrap(), 1);
    assert_eq!(minimal_exponent(&lp(4, 12)).unwrap(), 2);
    for n in [2usize, 4, 8, 16] {
        for e in [2usize, 3] {
            let p = lp(n, 2 * e);
            let want = 4 - (p.two_power() as i32).min(2 * e as i32);
            assert_eq!(minimal_exponent(&p).unwrap(), want, "N={n} e={e}");
        }
    }
}

#[test]
fn basis_orders() {
    assert_eq!(torsion_basis(&lp(8, 5)).unwrap().orders(), vec![4, 8, 2, 2]);
    assert_eq!(torsion_basis(&lp(8, 7)).unwrap().orders(), vec![4, 8, 8, 2, 2, 2]);
    assert_eq!(torsion_basis(&lp(4, 5)).unwrap().orders(), vec![4, 4, 2, 2]);
    for d in 3..=8 {
        assert!(torsion_basis(&lp(2, d)).unwrap().orders().iter().all(|&o| o == 2));
    }
    assert!(torsion_basis(&lp(9, 5)).is_err());
}

#[test]
fn coordinates_round_trip() {
    let b = torsion_basis(&lp(8, 5)).unwrap();
    let x = b.mu4[1].scale(2).add(&b.mu4m2[0]).unwrap();
    assert_eq!(b.torsion_coordinates(&x).unwrap(), vec![0, 2, 1, 0]);
    for (j, g) in b.elements().enumerate() {
        let mut unit = vec![0; 4];
        unit[j] = 1;
        assert_eq!(b.torsion_coordinates(g).unwrap(), unit);
    }
    for n in [2usize, 4, 6, 8] {
        for d in 3..=7 {
            let p = lp(n, d);
            let b = torsion_basis(&p).unwrap();
            for c in kernel_rho_bar(&p, DEFAULT_CAP).unwrap().members {
                let x = StructureElement::torsion(&p, c);
                let r = b.torsion_coordinates(&x).unwrap();
                let back = b.combine(&r.iter().map(|&v| v as i64).collect::<Vec<_>>()).unwrap();
                assert_eq!(back, x, "N={n} d={d}");
            }
        }
    }
}

#[test]
fn cascade_reads_top_block() {
    let b = torsion_basis(&lp(8, 5)).unwrap();
    let x = b.mu4[1].scale(3).add(&b.mu4[0]).unwrap();
    assert_eq!(browder_livesay_cascade(&x, &b, 2).unwrap(), q(3));
    assert!(browder_livesay_cascade(&x, &b, 1).is_err());
    assert_eq!(browder_livesay_cascade(&b.mu4[0], &b, 1).unwrap(), q(1));
}
