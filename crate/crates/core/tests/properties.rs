use proptest::prelude::*;

use qhopf_core::catalog::build_aq;
use qhopf_core::groupcoh::{cochain_to_tensor, differential, solve_coboundary, ExpCochain};
use qhopf_core::quasihopf::{twist, verify_axioms};
use qhopf_core::semidirect::{
    build_semidirect, embedded_h_basis, gauge_apply, untwist_to_hopf, GaugeMove, GaugedPair, SemidirectInput,
};
use qhopf_core::algebra::LinearMap;
use qhopf_core::CycScalar;

fn scalar(level: u32, coeffs: &[i64]) -> CycScalar {
    coeffs
        .iter()
        .enumerate()
        .fold(CycScalar::zero(level), |acc, (k, &c)| &acc + &CycScalar::root(level, k as i64).mul_int(c))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 0..9)
}

fn cochain(n: usize, k: usize, m: u64, vals: &[i64]) -> ExpCochain {
    ExpCochain::from_fn(n, k, m, |t| vals[t.iter().fold(0, |a, &x| a * n + x) % vals.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in coeffs(), b in coeffs(), c in coeffs(), level in prop::sample::select(vec![1u32, 4, 8, 9, 12])) {
        let (a, b, c) = (scalar(level, &a), scalar(level, &b), scalar(level, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn lift_is_a_homomorphism(a in coeffs(), b in coeffs(), k in 1u32..4) {
        let (a, b) = (scalar(4, &a), scalar(4, &b));
        let m = 4 * k;
        prop_assert_eq!((&a * &b).lift(m).unwrap(), &a.lift(m).unwrap() * &b.lift(m).unwrap());
        prop_assert_eq!((&a + &b).lift(m).unwrap(), &a.lift(m).unwrap() + &b.lift(m).unwrap());
    }

    #[test]
    fn coboundaries_are_solved(
        case in prop::sample::select(vec![(2usize, 4u64), (3, 9), (4, 4)]),
        vals in prop::collection::vec(0i64..81, 1..20),
    ) {
        let (n, m) = case;
        let c = cochain(n, 2, m, &vals);
        let c = ExpCochain::from_fn(n, 2, m, |t| if t.contains(&0) { 0 } else { c.get(t) as i64 });
        let w = differential(&c);
        let s = solve_coboundary(&w).unwrap().expect("dc is a coboundary");
        prop_assert_eq!(differential(&s), w);
    }

    #[test]
    fn twisting_preserves_axioms(v in 0i64..4) {
        let q = build_aq(2, 1).unwrap();
        let c = ExpCochain::from_fn(2, 2, 4, |t| if t == [1, 1] { v } else { 0 });
        let j = cochain_to_tensor(&c, &q.alg, &q.alg.basis(4), &CycScalar::root(4, 2)).unwrap();
        let t = twist(&q, &j).unwrap();
        prop_assert!(verify_axioms(&t).all_pass());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn differential_squares_to_zero(
        case in prop::sample::select(vec![(2usize, 4u64), (3, 9), (4, 4), (9, 9)]),
        k in 0usize..4,
        vals in prop::collection::vec(0i64..81, 1..40),
    ) {
        let (n, m) = case;
        let c = cochain(n, k, m, &vals);
        prop_assert!(differential(&differential(&c)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn conjugation_moves_invert(c in -3i64..=3) {
        let q = build_aq(2, 1).unwrap();
        let inp = SemidirectInput::antipode_square(q, 2, build_aq(2, 1).unwrap().alg.basis(4));
        let (ht, g) = build_semidirect(&inp).unwrap();
        let un = untwist_to_hopf(&ht, &g).unwrap();
        let h0 = &un.h0;
        let eta = LinearMap::from_columns(8, 16, 1, embedded_h_basis(&ht, 8));
        let pair = GaugedPair { eta, j: un.j.clone(), u: un.gauge.clone() };
        let h = h0.alg.one().add(&h0.alg.basis(1).scale(&CycScalar::from_int(h0.level(), c)));
        let moved = gauge_apply(&pair, &GaugeMove::Conjugate(h.clone()), h0).unwrap();
        let back = gauge_apply(&moved, &GaugeMove::Conjugate(h0.alg.invert(&h).unwrap()), h0).unwrap();
        prop_assert_eq!(back, pair);
    }
}
