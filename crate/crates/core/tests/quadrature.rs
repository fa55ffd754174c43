use scw_core::bundle::clutch_bundle;
use scw_core::chern_weil::{cw_cochain, quadrature_cochain};
use scw_core::connection::construct_connection;
use scw_core::invariant::InvariantPolynomial;
use scw_core::poly::Poly;
use scw_core::quadrature::{gauss_legendre, simplex_rule};
use scw_core::random::{random_connection, random_form, random_poly, rng};

#[test]
fn gauss_legendre_integrates_polynomials_exactly() {
    for n in 1..12 {
        let rule = gauss_legendre(n);
        for k in 0..2 * n {
            let approx: f64 = rule.iter().map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((approx - exact).abs() < 1e-12, "n={n} k={k}");
        }
    }
}

#[test]
fn simplex_rule_agrees_with_exact_integration() {
    let mut r = rng(1);
    for d in 1..=3 {
        for _ in 0..10 {
            let p = random_poly(&mut r, d, 4, 0.6);
            let exact = p.integrate_simplex().to_c64().re;
            let approx: f64 = simplex_rule(d, 4).iter().map(|(x, w)| w * p.eval_f64(x).re).sum();
            assert!((approx - exact).abs() < 1e-12, "d={d}: {approx} vs {exact}");
        }
    }
    let one: f64 = simplex_rule(3, 2).iter().map(|(_, w)| w).sum();
    assert!((one - 1.0 / 6.0).abs() < 1e-15);
    assert_eq!(Poly::one(3).integrate_simplex().to_c64().re, 1.0 / 6.0);
}

#[test]
fn top_integrals_match_quadrature() {
    let mut r = rng(2);
    for d in 1..=3 {
        for _ in 0..10 {
            let w = random_form(&mut r, d, d, 3);
            let exact = w.integrate_top().unwrap().to_c64().re;
            let density = w.comp(&(0..d as u8).collect::<Vec<_>>());
            let approx: f64 = simplex_rule(d, 4).iter().map(|(x, wt)| wt * density.eval_f64(x).re).sum();
            assert!((approx - exact).abs() < 1e-12);
        }
    }
}

#[test]
fn classical_quadrature_reproduces_the_exact_cochain() {
    for n in -3..=3 {
        let p = clutch_bundle(n);
        let rho = InvariantPolynomial::chern(p.algebra(), 1).unwrap();
        for a in [construct_connection(&p).unwrap(), random_connection(&mut rng((n + 10) as u64), &p).unwrap()] {
            let exact = cw_cochain(&rho, &a).unwrap();
            let approx = quadrature_cochain(&rho, &a, 8).unwrap();
            for (e, q) in exact.values.iter().zip(&approx) {
                assert!((e.to_c64().re - q).abs() < 1e-9, "n={n}: {e} vs {q}");
            }
        }
    }
}
