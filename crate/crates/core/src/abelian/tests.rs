use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn pres(f: &[u64]) -> FinAbPresentation {
    FinAbPresentation::from_cyclic_orders(f.iter().copied())
}

#[test]
fn subgroup_examples() {
    assert_eq!(subgroup_from_elements(&[8], &[vec![2]]).unwrap().factors(), &[4]);
    let g = subgroup_from_elements(&[4, 2], &[vec![2, 0], vec![0, 1]]).unwrap();
    assert_eq!(g.factors(), &[2, 2]);
    assert!(subgroup_from_elements(&[4, 2], &[]).unwrap().is_trivial());
    assert!(subgroup_from_elements(&[4], &[vec![4]]).is_err());
}

#[test]
fn iso_examples() {
    assert!(iso_eq(&pres(&[2, 4]), &pres(&[4, 2])));
    assert!(!iso_eq(&pres(&[8]), &pres(&[2, 4])));
    assert!(iso_eq(&pres(&[0, 2]), &pres(&[2, 0])));
    assert_eq!(pres(&[2, 3]).factors(), &[6]);
    assert!(FinAbPresentation::new(vec![4, 2]).is_err());
    assert!(FinAbPresentation::new(vec![2, 4, 0]).is_ok());
}

#[test]
fn primary_form() {
    let p = pres(&[12, 0, 2]).primary_decomposition();
    assert_eq!(p.free_rank, 1);
    assert_eq!(p.prime_powers, vec![2, 3, 4]);
}

#[test]
fn generators_realize_the_factors() {
    let amb = [8u64, 4, 2];
    let elems = vec![vec![2, 1, 0], vec![4, 2, 1], vec![0, 2, 1]];
    let dec = subgroup_decomposition(&amb, &elems).unwrap();
    let orders: Vec<u64> = dec.generators.iter().map(|(g, _)| element_order(&amb, g)).collect();
    let declared: Vec<u64> = dec.generators.iter().map(|(_, o)| *o).collect();
    assert_eq!(orders, declared);
    assert_eq!(orders, dec.presentation.factors().to_vec());
    let gens: Vec<_> = dec.generators.iter().map(|(g, _)| g.clone()).collect();
    assert_eq!(closure(&amb, &gens), closure(&amb, &elems));
}

#[test]
fn integer_solve() {
    let rows = to_big(&[vec![2, 0], vec![0, 3], vec![2, 3]]);
    let b = vec![BigInt::from(4), BigInt::from(6)];
    let x = solve_integer(&rows, &b).unwrap();
    for j in 0..2 {
        let s: BigInt = (0..3).map(|i| &x[i] * &rows[i][j]).sum();
        assert_eq!(s, b[j]);
    }
    assert!(solve_integer(&rows, &[BigInt::from(1), BigInt::from(0)]).is_none());
}

#[test]
fn hom_checks_orders() {
    assert!(IntMatrixHom::new(vec![2], vec![4], vec![vec![2]]).is_ok());
    assert!(IntMatrixHom::new(vec![2], vec![4], vec![vec![1]]).is_err());
    let h = IntMatrixHom::new(vec![4, 2], vec![8], vec![vec![2], vec![4]]).unwrap();
    assert_eq!(h.apply(&[3, 1]), vec![2]);
    assert_eq!(h.image().unwrap().factors(), &[4]);
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_recomposes(m in small_matrix()) {
        let a = to_big(&m);
        let s = smith_normal_form(&a);
        prop_assert_eq!(matmul(&matmul(&s.u_inv, &s.d), &s.v_inv), a.clone());
        prop_assert_eq!(matmul(&matmul(&s.u, &a), &s.v), s.d.clone());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            let (x, y) = (&w[0], &w[1]);
            prop_assert!(y == &BigInt::from(0) || (x != &BigInt::from(0) && (y % x) == BigInt::from(0)));
        }
        for (i, row) in s.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j { prop_assert_eq!(x, &BigInt::from(0)); }
            }
        }
        // SNF of D is D
        prop_assert_eq!(smith_normal_form(&s.d).d, s.d.clone());
    }

    #[test]
    fn subgroup_matches_closure(
        amb in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6, 8]), 1..=4),
        seeds in prop::collection::vec(prop::collection::vec(0i64..64, 4), 0..4),
    ) {
        let elems: Vec<Vec<i64>> = seeds
            .iter()
            .map(|s| s.iter().zip(&amb).map(|(&x, &m)| x % m as i64).collect())
            .collect();
        let amb_order: u128 = amb.iter().map(|&m| m as u128).product();
        prop_assume!(amb_order <= 1 << 12);
        let g = subgroup_from_elements(&amb, &elems).unwrap();
        let brute = closure(&amb, &elems).len() as u128;
        prop_assert_eq!(g.order().unwrap(), brute);
        prop_assert_eq!(amb_order % brute, 0);
    }
}
