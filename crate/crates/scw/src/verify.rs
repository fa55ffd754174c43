//! Invariant suites behind `scw verify`. Each check returns one line of the
//! report; inputs come from a single seeded generator.

use scw_core::bundle::{clutch_bundle, horn_fill_bundle, restrict_to_horn, winding_oracle, BundleData};
use scw_core::chern_weil::{calibration_constant, class_report, connection_independence, cw_cochain, naturality_pair};
use scw_core::connection::{concordance, construct_connection};
use scw_core::invariant::{reznikov_quadratic_constant, InvariantPolynomial};
use scw_core::lie::LieAlgebra;
use scw_core::poly::PolyMap;
use scw_core::random::{
    random_connection, random_form, random_group_element, random_lie_element, random_simplicial_form,
    random_u1_horn_bundle, rng, Rng64,
};
use scw_core::scalar::{q, qr};
use scw_core::simplicial::{
    boundary_sphere, horn, product_with_interval, standard_simplex, two_disk_fundamental_cycle, Simplex,
    two_disk_sphere, SimplicialMap,
};
use scw_core::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

pub const SUITES: &[&str] = &["simplicial", "forms", "lie", "bundles", "chern-weil", "horn", "reznikov"];

/// Runs one named suite, or every suite for `all`.
pub fn run_suite(name: &str, seed: u64) -> Option<Vec<Check>> {
    let mut r = rng(seed);
    let checks = match name {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, seed)?);
            }
            out
        }
        "simplicial" => simplicial(),
        "forms" => forms(&mut r),
        "lie" => lie(&mut r),
        "bundles" => bundles(&mut r),
        "chern-weil" => chern_weil(&mut r),
        "horn" => horn_suite(&mut r),
        "reznikov" => reznikov(&mut r),
        _ => return None,
    };
    Some(checks)
}

fn simplicial() -> Vec<Check> {
    let mut out = Vec::new();
    let spaces = [
        ("boundary-sphere:2", boundary_sphere(2), vec![1, 0, 1]),
        ("boundary-sphere:3", boundary_sphere(3), vec![1, 0, 0, 1]),
        ("two-disk-sphere", two_disk_sphere(), vec![1, 0, 1]),
    ];
    for (name, x, expected) in spaces {
        let nil = (2..=x.dim()).all(|k| x.boundary_matrix(k - 1).mul(&x.boundary_matrix(k)).is_zero());
        out.push(Check::new(&format!("boundary squared {name}"), nil, "∂∂ = 0"));
        let b = x.betti_numbers(x.dim());
        out.push(Check::new(&format!("betti {name}"), b == expected, format!("{b:?}")));
    }
    let x = two_disk_sphere();
    let prism = product_with_interval(&x);
    let b = prism.set.betti_numbers(2);
    out.push(Check::new("prism homotopy invariance", b == vec![1, 0, 1], format!("{b:?}")));
    let z = two_disk_fundamental_cycle();
    out.push(Check::new("fundamental cycle", x.boundary(&z).is_zero(), "∂([N] − [S]) = 0"));
    let s2 = boundary_sphere(2);
    let mut c = scw_core::simplicial::Cochain::zero(&s2, 2);
    c.values[0] = Scalar::one();
    let cert = s2.is_coboundary(&c);
    let ok = matches!(&cert, Err(z) if s2.boundary(z).is_zero() && !c.pair(z).is_zero());
    out.push(Check::new("coboundary certificate", ok, "dual of one triangle is not a coboundary"));
    out
}

fn forms(r: &mut Rng64) -> Vec<Check> {
    let mut d2 = true;
    let mut leibniz = true;
    let mut functorial = true;
    for _ in 0..20 {
        let a = random_form(r, 3, 1, 3);
        let b = random_form(r, 3, 1, 2);
        d2 &= a.d().d().is_zero();
        let lhs = a.wedge(&b).d();
        let rhs = &a.d().wedge(&b) - &a.wedge(&b.d());
        leibniz &= lhs == rhs;
        let phi = PolyMap::face(3, 1);
        let psi = PolyMap::degeneracy(2, 0);
        functorial &= a.pullback(&phi.compose(&psi)) == a.pullback(&phi).pullback(&psi);
        functorial &= a.d().pullback(&phi) == a.pullback(&phi).d();
    }
    let x = boundary_sphere(2);
    let mut stokes = true;
    for k in 0..=1 {
        for _ in 0..5 {
            let w = random_simplicial_form(r, &x, k, 2);
            stokes &= w.d().integrate() == x.coboundary(&w.integrate());
        }
    }
    vec![
        Check::new("d squared", d2, "20 random 1-forms on Δ³"),
        Check::new("leibniz", leibniz, "20 random pairs"),
        Check::new("pullback functoriality", functorial, "faces and degeneracies"),
        Check::new("integration commutes with d", stokes, "10 random simplicial forms on ∂Δ³"),
    ]
}

fn lie(r: &mut Rng64) -> Vec<Check> {
    let mut out = Vec::new();
    for name in ["u1", "su2", "so3", "u2", "su3"] {
        let alg = LieAlgebra::by_name(name).expect("known algebra");
        out.push(Check::new(&format!("jacobi {name}"), alg.jacobi_defect() == q(0), "exact"));
    }
    let su2 = LieAlgebra::su2();
    let polys = [
        InvariantPolynomial::sym_trace(&su2, 2),
        InvariantPolynomial::sym_trace(&su2, 3),
        InvariantPolynomial::chern(&su2, 2).expect("su2"),
    ];
    for rho in &polys {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let g = random_group_element(r, &su2);
            let args: Vec<Vec<f64>> = (0..rho.arity()).map(|_| random_lie_element(r, &su2, 1.0)).collect();
            worst = worst.max(rho.ad_defect(&g, &args));
        }
        out.push(Check::new(&format!("ad invariance {}", rho.name()), worst <= 1e-9, format!("max defect {worst:.2e}")));
    }
    let diag = polys[2].diagonal().clone();
    let back = InvariantPolynomial::polarize(&su2, diag.clone()).map(|p| p.diagonal().clone());
    out.push(Check::new("polarize round trip", back.as_ref() == Ok(&diag), "chern:2 diagonal"));
    out
}

fn bundles(r: &mut Rng64) -> Vec<Check> {
    let mut out = Vec::new();
    let mut all = true;
    for n in -5..=5 {
        let p = clutch_bundle(n);
        all &= p.validate(0.0).is_ok() && winding_oracle(&p) == Scalar::from_int(n);
    }
    out.push(Check::new("clutch cocycle and winding", all, "n = -5..5"));
    let p = clutch_bundle(1);
    let a = construct_connection(&p);
    let ok = a.as_ref().is_ok_and(|a| a.check_gauge(&p, 0.0).is_ok());
    out.push(Check::new("clutch connection gauge", ok, "exact"));
    let x = boundary_sphere(2);
    let triv = BundleData::trivial(&x, &LieAlgebra::su2());
    let ra = random_connection(r, &triv).expect("trivial bundle");
    out.push(Check::new("random su2 connection gauge", ra.check_gauge(&triv, 0.0).is_ok(), "exact"));
    out.push(Check::new("bianchi", ra.bianchi_defect() == 0.0, "exact on ∂Δ³"));
    let rb = random_connection(r, &triv).expect("trivial bundle");
    let ok = concordance(&triv, &ra, &rb).is_ok_and(|c| {
        c.connection.check_gauge(&c.bundle, 0.0).is_ok()
            && c.connection.pullback(&c.prism.i0).is_ok_and(|e| e == ra)
            && c.connection.pullback(&c.prism.i1).is_ok_and(|e| e == rb)
    });
    out.push(Check::new("concordance ends", ok, "exact restriction"));
    let id = SimplicialMap::identity(p.base());
    out.push(Check::new("pullback along identity", p.pullback(&id).is_ok_and(|q| q == p), "identical data"));
    out
}

fn chern_weil(r: &mut Rng64) -> Vec<Check> {
    let mut out = Vec::new();
    let cal = calibration_constant(1) == q(1) && calibration_constant(2) == qr(1, 6);
    out.push(Check::new("calibration constants", cal, "c_1 = 1, c_2 = 1/6"));
    let z = two_disk_fundamental_cycle();
    let mut integral = true;
    for n in -5..=5 {
        let p = clutch_bundle(n);
        let a = construct_connection(&p).expect("abelian");
        let rho = InvariantPolynomial::chern(p.algebra(), 1).expect("u1");
        integral &= cw_cochain(&rho, &a).is_ok_and(|c| c.pair(&z) == Scalar::from_int(n));
    }
    out.push(Check::new("clutch integrality", integral, "pairing = n for n = -5..5"));
    let p = clutch_bundle(1);
    let rho = InvariantPolynomial::chern(p.algebra(), 1).expect("u1");
    let a0 = random_connection(r, &p).expect("abelian");
    let a1 = random_connection(r, &p).expect("abelian");
    let ind = connection_independence(&rho, &p, &a0, &a1);
    let ok = ind.is_ok_and(|i| i.transgression_defect == 0.0 && i.linear_witness.is_ok());
    out.push(Check::new("connection independence", ok, "clutch(1), random pair"));
    let report = class_report(&rho, &a0, "clutch1", Some(vec![z.clone()]), 0.0);
    let ok = report.is_ok_and(|rep| rep.closed && rep.pairings == vec![Scalar::one()]);
    out.push(Check::new("class report", ok, "closed, pairing 1"));
    // Δ² and the two-disk sphere list vertices and edges in the same order
    let n_incl = SimplicialMap::from_fn(&standard_simplex(2), p.base(), |id| Simplex::nondeg(id)).expect("inclusion of N");
    let ok = naturality_pair(&rho, &a0, &n_incl).is_ok_and(|(l, r)| l == r);
    out.push(Check::new("naturality", ok, "inclusion of N into the two-disk sphere"));
    out
}

fn horn_suite(r: &mut Rng64) -> Vec<Check> {
    let mut out = Vec::new();
    for (n, k) in [(2, 1), (3, 0)] {
        let h = horn(n, k).expect("valid horn");
        let mut ok = true;
        for _ in 0..5 {
            let p = random_u1_horn_bundle(r, &h, 2);
            ok &= horn_fill_bundle(&h, &p).is_ok_and(|f| {
                f.validate(0.0).is_ok() && restrict_to_horn(&h, &f).is_ok_and(|res| res == p)
            });
        }
        out.push(Check::new(&format!("horn fill ({n},{k})"), ok, "5 random U(1) inputs"));
    }
    out
}

fn reznikov(r: &mut Rng64) -> Vec<Check> {
    let su2 = LieAlgebra::su2();
    let r1 = InvariantPolynomial::reznikov(1, 32).expect("order ≥ 2");
    let r2 = InvariantPolynomial::reznikov(2, 32).expect("order ≥ 2");
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    for _ in 0..20 {
        let x = random_lie_element(r, &su2, 1.0);
        worst = worst.max(r1.eval_f64(&[x.clone()]).norm());
        let norm2: f64 = x.iter().map(|c| c * c).sum();
        ratios.push(r2.eval_f64(&[x.clone(), x]).re / norm2);
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    let spread = (hi - lo) / hi.abs();
    let expected = reznikov_quadratic_constant();
    vec![
        Check::new("reznikov:1 vanishes", worst < 1e-10, format!("max {worst:.2e}")),
        Check::new(
            "reznikov:2 proportional",
            spread < 1e-6 && (hi - expected).abs() < 1e-9,
            format!("λ = {hi:.12e}, spread {spread:.2e}"),
        ),
    ]
}
