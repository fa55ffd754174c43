use proptest::prelude::*;
use scw_core::bundle::{clutch_bundle, horn_fill_bundle, restrict_to_horn, winding_oracle, BundleData};
use scw_core::chern_weil::{class_report, cw_cochain};
use scw_core::connection::{
    ad_matrix, apply_matrix, concordance, constant_gauge_change, construct_connection, curvature_of,
};
use scw_core::invariant::InvariantPolynomial;
use scw_core::lie::LieAlgebra;
use scw_core::random::{random_connection, random_form, random_group_element, random_lie_element, random_u1_horn_bundle, rng};
use scw_core::simplicial::{
    boundary_sphere, horn, two_disk_fundamental_cycle, two_disk_sphere, Simplex, SimplexId, SimplicialMap,
};
use scw_core::Scalar;

fn chern1(p: &BundleData, seed: Option<u64>) -> scw_core::simplicial::Cochain {
    let rho = InvariantPolynomial::chern(p.algebra(), 1).unwrap();
    let a = match seed {
        Some(s) => random_connection(&mut rng(s), p).unwrap(),
        None => construct_connection(p).unwrap(),
    };
    cw_cochain(&rho, &a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn clutch_degree_is_the_chern_number(n in -8i64..=8, seed in any::<u64>()) {
        let p = clutch_bundle(n);
        prop_assert!(p.validate(0.0).is_ok());
        prop_assert_eq!(winding_oracle(&p), Scalar::from_int(n));
        let z = two_disk_fundamental_cycle();
        prop_assert_eq!(chern1(&p, None).pair(&z), Scalar::from_int(n));
        prop_assert_eq!(chern1(&p, Some(seed)).pair(&z), Scalar::from_int(n));
    }

    #[test]
    fn horn_fillers_restrict_to_their_input(seed in any::<u64>(), which in 0usize..5) {
        let (n, k) = [(2, 0), (2, 1), (2, 2), (3, 0), (3, 2)][which];
        let h = horn(n, k).unwrap();
        let p = random_u1_horn_bundle(&mut rng(seed), &h, 2);
        let f = horn_fill_bundle(&h, &p).unwrap();
        prop_assert!(f.validate(0.0).is_ok());
        prop_assert_eq!(restrict_to_horn(&h, &f).unwrap(), p);
    }

    #[test]
    fn random_connections_are_gauge_compatible(seed in any::<u64>(), n in -3i64..=3) {
        let p = clutch_bundle(n);
        let a = random_connection(&mut rng(seed), &p).unwrap();
        prop_assert!(a.check_gauge(&p, 0.0).is_ok());
        prop_assert_eq!(a.bianchi_defect(), 0.0);
    }

    #[test]
    fn curvature_is_covariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let su2 = LieAlgebra::su2();
        let a: Vec<_> = (0..3).map(|_| random_form(&mut r, 2, 1, 2).to_float()).collect();
        let g = random_group_element(&mut r, &su2);
        let m = ad_matrix(&su2, &g);
        let lhs = curvature_of(&su2, &apply_matrix(&m, &a));
        let rhs = apply_matrix(&m, &curvature_of(&su2, &a));
        for (l, rr) in lhs.iter().zip(&rhs) {
            prop_assert!((l - rr).max_abs_coeff() < 1e-9);
        }
    }
}

#[test]
fn different_degrees_give_different_classes() {
    let x = two_disk_sphere();
    let diff = &chern1(&clutch_bundle(2), None) - &chern1(&clutch_bundle(3), None);
    let z = x.is_coboundary(&diff).expect_err("clutch(2) and clutch(3) are not isomorphic");
    assert!(x.boundary(&z).is_zero());
    assert!(!diff.pair(&z).is_zero());
}

#[test]
fn swapping_the_disks_reverses_the_degree() {
    let x = two_disk_sphere();
    let swap = SimplicialMap::from_fn(&x, &x, |id| {
        let index = if id.dim == 2 { 1 - id.index } else { id.index };
        Simplex::nondeg(SimplexId::new(id.dim, index))
    })
    .unwrap();
    let z = two_disk_fundamental_cycle();
    for n in -3..=3 {
        let p = clutch_bundle(n).pullback(&swap).unwrap();
        assert!(p.validate(0.0).is_ok());
        assert_eq!(chern1(&p, None).pair(&z), Scalar::from_int(-n));
        assert_eq!(winding_oracle(&p), Scalar::from_int(-n));
    }
}

#[test]
fn classes_do_not_depend_on_charts() {
    let x = boundary_sphere(2);
    for (alg, seed) in [(LieAlgebra::u(2).unwrap(), 1u64), (LieAlgebra::u1(), 2)] {
        let p = BundleData::trivial(&x, &alg);
        let mut r = rng(seed);
        let a = random_connection(&mut r, &p).unwrap();
        let xi: Vec<Vec<Vec<f64>>> = (0..=x.dim())
            .map(|d| x.ids(d).map(|_| random_lie_element(&mut r, &alg, 1.0)).collect())
            .collect();
        let (q, b) = constant_gauge_change(&p, &a, &xi).unwrap();
        assert!(q.validate(1e-9).is_ok());
        assert!(b.check_gauge(&q, 1e-9).is_ok());
        let rho = InvariantPolynomial::chern(&alg, 1).unwrap();
        let before = cw_cochain(&rho, &a).unwrap();
        let after = cw_cochain(&rho, &b).unwrap();
        assert!(before.approx_eq(&after, 1e-9));
    }
}

#[test]
fn concordance_restricts_to_both_ends() {
    let p = clutch_bundle(2);
    let mut r = rng(4);
    let a0 = random_connection(&mut r, &p).unwrap();
    let a1 = random_connection(&mut r, &p).unwrap();
    let c = concordance(&p, &a0, &a1).unwrap();
    assert!(c.bundle.validate(0.0).is_ok());
    assert!(c.connection.check_gauge(&c.bundle, 0.0).is_ok());
    assert_eq!(c.connection.pullback(&c.prism.i0).unwrap(), a0);
    assert_eq!(c.connection.pullback(&c.prism.i1).unwrap(), a1);
}

#[test]
fn report_for_the_trivial_bundle_has_a_witness() {
    let p = BundleData::trivial(&boundary_sphere(2), &LieAlgebra::u1());
    let a = random_connection(&mut rng(8), &p).unwrap();
    let rho = InvariantPolynomial::chern(p.algebra(), 1).unwrap();
    let rep = class_report(&rho, &a, "trivial", None, 0.0).unwrap();
    assert!(rep.closed);
    assert_eq!(rep.pairings, vec![Scalar::zero()]);
    let w = rep.witness.expect("exact class");
    assert_eq!(p.base().coboundary(&w), rep.cochain);
}
