use proptest::prelude::*;
use scw::format::*;
use scw_core::bundle::{clutch_bundle, horn_fill_bundle, BundleData};
use scw_core::lie::LieAlgebra;
use scw_core::random::{random_connection, random_form, random_poly, random_q, random_u1_horn_bundle, rng};
use scw_core::scalar::{GaussQ, TauPoly, C64};
use scw_core::simplicial::{boundary_sphere, horn, product_with_interval, standard_simplex, two_disk_sphere};
use scw_core::Scalar;

fn exact_scalar(seed: u64) -> Scalar {
    let mut r = rng(seed);
    let terms = (0..3)
        .map(|p| (p - 1, GaussQ::new(random_q(&mut r, 9, 7), random_q(&mut r, 9, 7))))
        .collect();
    Scalar::Exact(TauPoly::from_terms(terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars(seed in any::<u64>(), re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let s = exact_scalar(seed);
        prop_assert_eq!(parse_scalar(&s.to_string()), Some(s));
        let f = Scalar::complex(C64::new(re, im));
        let back = parse_scalar(&f.to_string()).unwrap();
        prop_assert_eq!(back.to_c64(), C64::new(re, im));
    }

    #[test]
    fn polynomials(seed in any::<u64>(), nvars in 0usize..4, deg in 0u32..4) {
        let p = random_poly(&mut rng(seed), nvars, deg, 0.5);
        let text = write_poly(&p);
        let back = parse_poly(&text, nvars).unwrap();
        prop_assert_eq!(write_poly(&back), text);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn forms(seed in any::<u64>(), dim in 0usize..4, deg in 0usize..4) {
        let w = random_form(&mut rng(seed), dim, deg.min(dim), 2);
        let text = write_form(&w);
        let back = parse_form(&text).unwrap();
        prop_assert_eq!(write_form(&back), text);
        prop_assert_eq!(back, w);
    }

    #[test]
    fn horn_bundles_and_fillers(seed in any::<u64>(), which in 0usize..3) {
        let (n, k) = [(2, 1), (3, 0), (3, 3)][which];
        let h = horn(n, k).unwrap();
        let p = random_u1_horn_bundle(&mut rng(seed), &h, 2);
        for b in [p.clone(), horn_fill_bundle(&h, &p).unwrap()] {
            let text = write_bundle(&b);
            let back = parse_bundle(&text).unwrap();
            prop_assert_eq!(write_bundle(&back), text);
            prop_assert_eq!(back, b);
        }
    }

    #[test]
    fn connections(seed in any::<u64>(), which in 0usize..3) {
        let p = match which {
            0 => clutch_bundle((seed % 7) as i64 - 3),
            1 => BundleData::trivial(&boundary_sphere(2), &LieAlgebra::su2()),
            _ => BundleData::trivial(&standard_simplex(3), &LieAlgebra::u(2).unwrap()),
        };
        let a = random_connection(&mut rng(seed), &p).unwrap();
        let text = write_connection(&a);
        let back = parse_connection(&text, p.base()).unwrap();
        prop_assert_eq!(write_connection(&back), text);
        prop_assert_eq!(&back, &a);
        let float = a.to_float();
        let back = parse_connection(&write_connection(&float), p.base()).unwrap();
        prop_assert_eq!(back, float);
    }
}

#[test]
fn simplicial_sets() {
    let spaces = [
        standard_simplex(3),
        boundary_sphere(3),
        two_disk_sphere(),
        horn(3, 1).unwrap().set().clone(),
        product_with_interval(&two_disk_sphere()).set,
    ];
    for x in spaces {
        let text = write_simplicial_set(&x);
        let back = parse_simplicial_set(&text).unwrap();
        assert_eq!(write_simplicial_set(&back), text);
        assert_eq!(back, x);
    }
}
