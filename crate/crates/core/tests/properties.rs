use std::sync::Arc;

use mtcalc_core::charclass::nu_square_check;
use mtcalc_core::classifying::{detection_map, j_restriction, su_restriction, Coefficient, Family};
use mtcalc_core::poly::{elementary_substitution, is_symmetric, symmetrize_reduce};
use mtcalc_core::{PoincareSeries, Poly, PolyRing};
use proptest::prelude::*;

fn series() -> impl Strategy<Value = PoincareSeries> {
    (-3i64..3, prop::collection::vec(-5i64..6, 1..12))
        .prop_map(|(min, c)| PoincareSeries::from_i64s(min, &c).unwrap())
}

fn poly_in(ring: Arc<PolyRing>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let n = ring.nvars();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -4i64..5),
        0..=max_terms,
    )
    .prop_map(move |terms| Poly::from_terms(&ring, &terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_product_is_commutative(a in series(), b in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn series_product_is_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn series_product_distributes(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    /// Random polynomial in `e_1…e_n`, pushed to the `t`-ring and reduced
    /// back, is recovered exactly.
    #[test]
    fn symmetric_reduction_round_trip(
        (modulus, n) in prop_oneof![Just((2u64, 3usize)), Just((3, 3)), Just((5, 2)), Just((0, 3)), Just((7, 4))],
        seed in prop::collection::vec((prop::collection::vec(0u32..=2, 4), -4i64..5), 0..=5),
    ) {
        let e_ring = PolyRing::new(
            modulus,
            (1..=n).map(|i| mtcalc_core::VariableSpec::new(format!("e_{i}"), i as u32)).collect(),
        ).unwrap();
        let t_ring = PolyRing::uniform(modulus, "t", n, 1).unwrap();
        let terms: Vec<(Vec<u32>, i64)> = seed.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect();
        let f = Poly::from_terms(&e_ring, &terms).unwrap();
        let sub = elementary_substitution(&e_ring, &t_ring).unwrap();
        let sym = sub.apply(&f).unwrap();
        prop_assert!(is_symmetric(&sym));
        prop_assert_eq!(symmetrize_reduce(&sym, &e_ring).unwrap(), f);
    }

    #[test]
    fn j_restriction_is_multiplicative(
        p in poly_in(j_restriction(1).unwrap().source.ring().clone(), 3, 4),
        q in poly_in(j_restriction(1).unwrap().source.ring().clone(), 3, 4),
    ) {
        let j = j_restriction(1).unwrap();
        let lhs = j.apply(&p.mul(&q).unwrap()).unwrap();
        let rhs = j.apply(&p).unwrap().mul(&j.apply(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn detection_is_multiplicative(
        p in poly_in(detection_map(Family::U, 3, Coefficient::Fp(5)).unwrap().source.ring().clone(), 2, 4),
        q in poly_in(detection_map(Family::U, 3, Coefficient::Fp(5)).unwrap().source.ring().clone(), 2, 4),
    ) {
        let d = detection_map(Family::U, 3, Coefficient::Fp(5)).unwrap();
        let lhs = d.apply(&p.mul(&q).unwrap()).unwrap();
        let rhs = d.apply(&p).unwrap().mul(&d.apply(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn su_restriction_is_additive_and_multiplicative(
        p in poly_in(su_restriction(3, Coefficient::Q).unwrap().source.ring().clone(), 2, 3),
        q in poly_in(su_restriction(3, Coefficient::Q).unwrap().source.ring().clone(), 2, 3),
    ) {
        let m = su_restriction(3, Coefficient::Q).unwrap();
        prop_assert_eq!(
            m.apply(&p.mul(&q).unwrap()).unwrap(),
            m.apply(&p).unwrap().mul(&m.apply(&q).unwrap()).unwrap()
        );
        prop_assert_eq!(
            m.apply(&p.add(&q).unwrap()).unwrap(),
            m.apply(&p).unwrap().add(&m.apply(&q).unwrap()).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn nu_squaring_law(
        m in prop_oneof![Just(2u32), Just(4)],
        raw in prop::collection::vec(0u32..=2, 4),
    ) {
        let mut e = raw[..m as usize].to_vec();
        if e.iter().all(|&x| x == 0) {
            e[0] = 1;
        }
        prop_assert!(nu_square_check(m, &e).unwrap());
    }
}
