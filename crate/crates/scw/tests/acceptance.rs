//! Acceptance criteria 1–10, one PASS/FAIL line each. Oracles are computed
//! here from first principles rather than through the library routines they
//! check.

use std::time::{Duration, Instant};

use scw_core::bundle::{clutch_bundle, horn_fill_bundle, restrict_to_horn, BundleData};
use scw_core::chern_weil::{
    calibration_constant, connection_independence, naturality_pair, pair_values, permutation_formula,
};
use scw_core::connection::{curvature_of, Connection};
use scw_core::form::PolyForm;
use scw_core::invariant::{by_name, InvariantPolynomial};
use scw_core::lie::{GroupElement, LieAlgebra};
use scw_core::poly::{Poly, PolyMap};
use scw_core::random::{
    random_connection, random_form, random_group_element, random_lie_element, random_monotone, random_poly,
    random_q, random_simplicial_form, random_u1_horn_bundle, rng, Rng64,
};
use scw_core::scalar::{q, Q, C64, TAU};
use scw_core::simplicial::{
    boundary_sphere, boundary_sphere_complex, horn, standard_simplex, standard_simplex_complex, subsets_lex,
    two_disk_sphere, Cochain, Simplex, SimplexId, SimplicialMap, SimplicialSet,
};
use scw_core::Scalar;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

// ---- oracles ----

/// `(δc)(σ) = Σ_i (−1)^i c(d_i σ)`, degenerate faces contributing nothing.
fn coboundary_oracle(x: &SimplicialSet, c: &Cochain) -> Cochain {
    let k = c.dim + 1;
    let values = if k > x.dim() {
        Vec::new()
    } else {
        x.ids(k)
            .map(|id| {
                let mut acc = Scalar::zero();
                for i in 0..=k {
                    let f = x.face_of(id, i);
                    if f.is_nondegenerate() {
                        let v = &c.values[f.id.index];
                        acc = if i % 2 == 0 { &acc + v } else { &acc - v };
                    }
                }
                acc
            })
            .collect()
    };
    Cochain { dim: k, values }
}

/// Winding of the clutching phase by sampling: the unwrapped change in
/// `arg h` along every boundary edge of the cells of `N − S`, in turns.
fn sampled_winding(p: &BundleData) -> f64 {
    let alg = p.algebra();
    let steps = 2000;
    let mut total = 0.0;
    for (idx, sign) in [(0usize, 1.0), (1, -1.0)] {
        for i in 0..=2 {
            let h = p.transition(SimplexId::new(2, idx), i);
            let phase = |t: f64| h.eval(alg, &[t]).matrix[(0, 0)].arg();
            let mut change = 0.0;
            let mut prev = phase(0.0);
            for s in 1..=steps {
                let cur = phase(s as f64 / steps as f64);
                let mut d = cur - prev;
                d -= TAU * (d / TAU).round();
                change += d;
                prev = cur;
            }
            let e = if i % 2 == 0 { sign } else { -sign };
            total += e * change;
        }
    }
    // transitions map face charts into cell charts, so the loop is traversed backwards
    -total / TAU
}

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over `GF(p)` by Gaussian elimination.
fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c].rem_euclid(P) != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], P - 2);
        for r in 0..rows {
            if r != rank {
                let f = m[r][c].rem_euclid(P) * inv % P;
                if f != 0 {
                    for cc in 0..cols {
                        m[r][cc] = (m[r][cc] - f * m[rank][cc]).rem_euclid(P);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Chain complex of the ordered complex on all `(d+1)`-subsets of `{0..=top}`
/// of size at most `max + 1`, as boundary matrices `∂_k` for `k = 1..=max`.
fn subset_boundaries(top: usize, max: usize) -> (Vec<usize>, Vec<Vec<Vec<i64>>>) {
    let verts: Vec<usize> = (0..=top).collect();
    let cells: Vec<Vec<Vec<usize>>> = (0..=max).map(|d| subsets_lex(&verts, d + 1)).collect();
    let counts = cells.iter().map(Vec::len).collect();
    let mats = (1..=max)
        .map(|k| {
            let mut m = vec![vec![0i64; cells[k].len()]; cells[k - 1].len()];
            for (col, c) in cells[k].iter().enumerate() {
                for i in 0..c.len() {
                    let mut f = c.clone();
                    f.remove(i);
                    let row = cells[k - 1].iter().position(|g| *g == f).unwrap();
                    m[row][col] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
            m
        })
        .collect();
    (counts, mats)
}

fn betti_oracle(counts: &[usize], mats: &[Vec<Vec<i64>>]) -> Vec<usize> {
    let ranks: Vec<usize> = mats.iter().map(|m| rank_mod_p(m.clone())).collect();
    (0..counts.len())
        .map(|k| {
            let r_out = if k == 0 { 0 } else { ranks[k - 1] };
            let r_in = ranks.get(k).copied().unwrap_or(0);
            counts[k] - r_out - r_in
        })
        .collect()
}

/// `dω` from partial derivatives: `Σ_I Σ_j ∂_j ω_I dx_j ∧ dx_I`.
fn d_oracle(w: &PolyForm) -> PolyForm {
    let mut out = PolyForm::zero(w.dim(), w.deg() + 1);
    if w.deg() >= w.dim() {
        return out;
    }
    for (idx, p) in w.comps() {
        for j in 0..w.dim() {
            let mut full = vec![j as u8];
            full.extend_from_slice(idx);
            out.add_comp(full, p.deriv(j));
        }
    }
    out
}

fn ad_oracle(alg: &LieAlgebra, g: &GroupElement, x: &[f64]) -> Vec<f64> {
    let ginv = g.matrix.clone().try_inverse().expect("invertible");
    alg.coords_f64(&(&g.matrix * alg.matrix_f64(x) * ginv))
}

fn random_q_vec(r: &mut Rng64, n: usize) -> Vec<Q> {
    (0..n).map(|_| random_q(r, 6, 5)).collect()
}

fn to_scalars(v: &[Q]) -> Vec<Scalar> {
    v.iter().cloned().map(Scalar::from_q).collect()
}

// ---- criteria ----

fn c1_clutching() -> Outcome {
    let mut worst = Duration::ZERO;
    for n in -5..=5i64 {
        let start = Instant::now();
        let (out, code) = scw::cli::run(["scw", "chern", "--bundle", &format!("clutch{n}"), "--poly", "chern:1"]);
        let took = start.elapsed();
        worst = worst.max(took);
        ensure(code == 0, || format!("n = {n}: exit {code}\n{out}"))?;
        let pairing = out.lines().find_map(|l| l.strip_prefix("pairing ")).unwrap_or("");
        ensure(pairing == n.to_string(), || format!("n = {n}: pairing `{pairing}`"))?;
        let w = sampled_winding(&clutch_bundle(n));
        ensure((w - n as f64).abs() < 1e-6, || format!("n = {n}: sampled winding {w}"))?;
        ensure(took < Duration::from_secs(1), || format!("n = {n}: {took:.2?}"))?;
    }
    Ok(format!("pairings equal n and the sampled winding for n = -5..5, slowest {worst:.2?}"))
}

fn c2_integration() -> Outcome {
    let start = Instant::now();
    let bases = [boundary_sphere(2), two_disk_sphere()];
    for seed in 0..100u64 {
        let x = &bases[(seed % 2) as usize];
        let k = (seed / 2 % 4) as usize;
        let w = random_simplicial_form(&mut rng(seed), x, k, 3);
        let lhs = w.d().integrate();
        let rhs = coboundary_oracle(x, &w.integrate());
        ensure(lhs == rhs, || format!("seed {seed}, degree {k}: ∫dω ≠ δ∫ω"))?;
    }
    within(start, Duration::from_secs(10), "100 forms")?;
    Ok(format!("100 forms of degree 0..3, exact, {:.2?}", start.elapsed()))
}

fn c3_independence() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("clutch(1)", clutch_bundle(1)),
        ("trivial su2 over ∂Δ³", BundleData::trivial(&boundary_sphere(2), &LieAlgebra::su2())),
        ("trivial u2 over ∂Δ³", BundleData::trivial(&boundary_sphere(2), &LieAlgebra::u(2).unwrap())),
    ];
    let mut nonzero = 0;
    for (name, p) in &cases {
        let rho = by_name(p.algebra(), "chern:1").map_err(|e| e.to_string())?;
        for seed in 0..20u64 {
            let mut r = rng(1000 + seed);
            let a0 = random_connection(&mut r, p).map_err(|e| e.to_string())?;
            let a1 = random_connection(&mut r, p).map_err(|e| e.to_string())?;
            ensure(a0 != a1, || format!("{name} seed {seed}: connections coincide"))?;
            let ind = connection_independence(&rho, p, &a0, &a1).map_err(|e| e.to_string())?;
            let b = ind
                .linear_witness
                .map_err(|z| format!("{name} seed {seed}: obstructed by cycle {:?}", z.coeffs))?;
            ensure(coboundary_oracle(p.base(), &b) == ind.difference, || {
                format!("{name} seed {seed}: witness fails δb = α₁ − α₀")
            })?;
            ensure(coboundary_oracle(p.base(), &ind.transgression) == ind.difference, || {
                format!("{name} seed {seed}: transgression fails δT = α₁ − α₀")
            })?;
            nonzero += usize::from(!ind.difference.is_zero());
        }
    }
    within(start, Duration::from_secs(30), "60 pairs")?;
    Ok(format!(
        "20 pairs each on clutch(1), su2 and u2 over ∂Δ³ ({nonzero} nonzero differences), {:.2?}",
        start.elapsed()
    ))
}

fn c4_naturality() -> Outcome {
    // N: Δ² → two-disk sphere; vertex and edge orders agree
    let n_incl = SimplicialMap::from_fn(&standard_simplex(2), &two_disk_sphere(), Simplex::nondeg)
        .map_err(|e| e.to_string())?;
    // ∂Δ³ → Δ² collapsing vertex 3 onto 2
    let src = boundary_sphere_complex(2);
    let tgt = standard_simplex_complex(2);
    let collapse = SimplicialMap::from_fn(&src.set, &tgt.set, |id| {
        let verts: Vec<usize> = src.cells[id.dim][id.index].iter().map(|&v| v.min(2)).collect();
        tgt.simplex_on(&verts).expect("image simplex")
    })
    .map_err(|e| e.to_string())?;
    let mut checked = 0;
    let mut nonzero = 0;
    for seed in 0..10u64 {
        let mut r = rng(2000 + seed);
        let clutch = clutch_bundle(seed as i64 % 5 - 2);
        let u2 = BundleData::trivial(&standard_simplex(2), &LieAlgebra::u(2).unwrap());
        for (name, p, f) in [("inclusion", &clutch, &n_incl), ("collapse", &u2, &collapse)] {
            let a = random_connection(&mut r, p).map_err(|e| e.to_string())?;
            let rho = by_name(p.algebra(), "chern:1").map_err(|e| e.to_string())?;
            let (lhs, rhs) = naturality_pair(&rho, &a, f).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("{name} seed {seed}: f*α ≠ α(f*A)"))?;
            checked += 1;
            nonzero += usize::from(!lhs.is_zero());
        }
    }
    ensure(nonzero > 0, || "every pulled-back class vanished".into())?;
    Ok(format!("{checked} exact comparisons over the inclusion of N and the collapse ∂Δ³ → Δ² ({nonzero} nonzero)"))
}

fn c5_horn() -> Outcome {
    for (n, k) in [(2, 1), (3, 0)] {
        let h = horn(n, k).map_err(|e| e.to_string())?;
        for seed in 0..20u64 {
            let p = random_u1_horn_bundle(&mut rng(3000 + seed), &h, 2);
            let f = horn_fill_bundle(&h, &p).map_err(|e| format!("Λ^{n}_{k} seed {seed}: {e}"))?;
            ensure(f.validate(0.0).is_ok(), || format!("Λ^{n}_{k} seed {seed}: filler is not a cocycle"))?;
            let back = restrict_to_horn(&h, &f).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("Λ^{n}_{k} seed {seed}: restriction differs from the input"))?;
        }
    }
    Ok("20 inputs each on Λ²₁ and Λ³₀ fill, validate and restrict exactly".into())
}

fn c6_exterior() -> Outcome {
    for seed in 0..100u64 {
        let mut r = rng(4000 + seed);
        let deg = (seed % 3) as usize;
        let w = random_form(&mut r, 3, deg, 3);
        ensure(w.d() == d_oracle(&w), || format!("seed {seed}: d disagrees with partial derivatives"))?;
        ensure(w.d().d().is_zero(), || format!("seed {seed}: d² ≠ 0"))?;

        let p = (seed % 2) as usize;
        let a = random_form(&mut r, 3, p, 2);
        let b = random_form(&mut r, 3, 1, 2);
        let lhs = a.wedge(&b).d();
        let second = a.wedge(&b.d());
        let rhs = if p % 2 == 0 { &a.d().wedge(&b) + &second } else { &a.d().wedge(&b) - &second };
        ensure(lhs == rhs, || format!("seed {seed}: Leibniz"))?;

        let n = 3;
        let m = 1 + (seed % 3) as usize;
        let l = 1 + (seed / 3 % 3) as usize;
        let theta = random_monotone(&mut r, m, n);
        let eta = random_monotone(&mut r, l, m);
        let comp: Vec<usize> = eta.iter().map(|&e| theta[e]).collect();
        let w = random_form(&mut r, n, 1 + (seed % 2) as usize, 2);
        let direct = w.pullback(&PolyMap::vertex_map(&comp, n));
        let stepwise = w.pullback(&PolyMap::vertex_map(&theta, n)).pullback(&PolyMap::vertex_map(&eta, m));
        ensure(direct == stepwise, || format!("seed {seed}: (θη)* ≠ η*θ* for θ={theta:?} η={eta:?}"))?;
        let phi = PolyMap::vertex_map(&theta, n);
        ensure(w.d().pullback(&phi) == w.pullback(&phi).d(), || format!("seed {seed}: d does not commute with θ*"))?;
    }
    // one global form on Δ³ restricted to every face is a compatible connection
    let su2 = LieAlgebra::su2();
    let cx = standard_simplex_complex(3);
    let p = BundleData::trivial(&cx.set, &su2);
    let top = SimplexId::new(3, 0);
    for seed in 0..100u64 {
        let mut r = rng(5000 + seed);
        let global: Vec<PolyForm> = (0..3).map(|_| random_form(&mut r, 3, 1, 2)).collect();
        let forms = cx
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|verts| {
                        let phi = PolyMap::vertex_map(verts, 3);
                        global.iter().map(|w| w.pullback(&phi)).collect()
                    })
                    .collect()
            })
            .collect();
        let a = Connection::new(cx.set.clone(), su2.clone(), forms).map_err(|e| e.to_string())?;
        ensure(a.check_gauge(&p, 0.0).is_ok(), || format!("seed {seed}: restrictions are not compatible"))?;
        ensure(a.bianchi_defect() == 0.0, || format!("seed {seed}: Bianchi defect {}", a.bianchi_defect()))?;
        let forms = a.get(top);
        let f = curvature_of(&su2, forms);
        for (c, fc) in f.iter().enumerate() {
            let mut df = fc.d();
            for (x, ax) in forms.iter().enumerate() {
                for (y, fy) in f.iter().enumerate() {
                    let s = &su2.structure(x, y)[c];
                    if *s != q(0) {
                        df = &df + &ax.wedge(fy).scale_q(s);
                    }
                }
            }
            ensure(df.is_zero(), || format!("seed {seed}: dF + [A∧F] ≠ 0 in component {c}"))?;
        }
    }
    Ok("d, d², Leibniz, pullback functoriality and Bianchi exact on 100 inputs each".into())
}

fn c7_homology() -> Outcome {
    let two_disk_counts = vec![3, 3, 2];
    // edges 01, 02, 12; both triangles have boundary 12 − 02 + 01
    let two_disk_mats = vec![
        vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]],
        vec![vec![1, 1], vec![-1, -1], vec![1, 1]],
    ];
    let (c3, m3) = subset_boundaries(3, 2);
    let (c4, m4) = subset_boundaries(4, 3);
    let cases = [
        ("∂Δ³", boundary_sphere(2), betti_oracle(&c3, &m3), vec![1, 0, 1]),
        ("∂Δ⁴", boundary_sphere(3), betti_oracle(&c4, &m4), vec![1, 0, 0, 1]),
        ("two-disk sphere", two_disk_sphere(), betti_oracle(&two_disk_counts, &two_disk_mats), vec![1, 0, 1]),
    ];
    let mut parts = Vec::new();
    for (name, x, oracle, expected) in cases {
        let b = x.betti_numbers(x.dim());
        ensure(b == expected && oracle == expected, || {
            format!("{name}: library {b:?}, GF(p) oracle {oracle:?}, expected {expected:?}")
        })?;
        parts.push(format!("{name} {b:?}"));
    }
    Ok(parts.join(", "))
}

fn c8_invariants() -> Outcome {
    let su2 = LieAlgebra::su2();
    let mut polys: Vec<InvariantPolynomial> = (1..=3).map(|k| InvariantPolynomial::sym_trace(&su2, k)).collect();
    for k in 1..=2 {
        polys.push(InvariantPolynomial::chern(&su2, k).map_err(|e| e.to_string())?);
    }
    let mut r = rng(6000);
    let mut worst: f64 = 0.0;
    let mut worst_det: f64 = 0.0;
    for _ in 0..1000 {
        let g = random_group_element(&mut r, &su2);
        for rho in &polys {
            let args: Vec<Vec<f64>> = (0..rho.arity()).map(|_| random_lie_element(&mut r, &su2, 1.0)).collect();
            let moved: Vec<Vec<f64>> = args.iter().map(|x| ad_oracle(&su2, &g, x)).collect();
            worst = worst.max((rho.eval_f64(&moved) - rho.eval_f64(&args)).norm());
        }
        // chern:2 on su(2) is det(X/(iτ)) = −det X / τ²
        let x = random_lie_element(&mut r, &su2, 1.0);
        let m = su2.matrix_f64(&x);
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let expected = -det / (TAU * TAU);
        worst_det = worst_det.max((polys[4].eval_f64(&[x.clone(), x]) - expected).norm());
    }
    ensure(worst <= 1e-9, || format!("Ad defect {worst:.3e}"))?;
    ensure(worst_det <= 1e-12, || format!("chern:2 differs from the determinant by {worst_det:.3e}"))?;

    let mut round_trips = 0;
    for rho in polys.iter().filter(|rho| !rho.diagonal().is_zero()) {
        round_trips += 1;
        let back = InvariantPolynomial::polarize(&su2, rho.diagonal().clone()).map_err(|e| e.to_string())?;
        ensure(back.diagonal() == rho.diagonal(), || format!("{}: diagonal changed", rho.name()))?;
        let k = rho.arity();
        for _ in 0..5 {
            let xs: Vec<Vec<Q>> = (0..k).map(|_| random_q_vec(&mut r, 3)).collect();
            let direct = back.eval(&xs.iter().map(|x| to_scalars(x)).collect::<Vec<_>>());
            // ρ(x_1..x_k) = (1/k!) Σ_S (−1)^{k−|S|} P(Σ_{i∈S} x_i)
            let mut acc = Scalar::zero();
            for mask in 1u32..(1 << k) {
                let mut s = vec![q(0); 3];
                for (i, x) in xs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for (a, b) in s.iter_mut().zip(x) {
                            *a += b;
                        }
                    }
                }
                let v = rho.diagonal().eval_q(&s);
                acc = if (k as u32 - mask.count_ones()) % 2 == 0 { &acc + &v } else { &acc - &v };
            }
            let fact: i64 = (1..=k as i64).product();
            let polarised = acc.mul_q(&Q::new(1.into(), fact.into()));
            ensure(direct == polarised, || format!("{}: multilinear value disagrees with polarisation", rho.name()))?;
        }
    }
    Ok(format!(
        "symtrace:1..3, chern:1..2 over 1000 probes, max Ad defect {worst:.1e}; polarisation round trip exact for the {round_trips} nonzero ones"
    ))
}

fn c9_reznikov() -> Outcome {
    let start = Instant::now();
    let su2 = LieAlgebra::su2();
    let r1 = InvariantPolynomial::reznikov(1, 32).map_err(|e| e.to_string())?;
    let r2 = InvariantPolynomial::reznikov(2, 32).map_err(|e| e.to_string())?;
    let mut r = rng(7000);
    let worst = (0..100)
        .map(|_| r1.eval_f64(&[random_lie_element(&mut r, &su2, 1.0)]).norm())
        .fold(0.0, f64::max);
    ensure(worst < 1e-10, || format!("reznikov:1 reaches {worst:.3e}"))?;
    let ratios: Vec<f64> = (0..100)
        .map(|_| {
            let x = random_lie_element(&mut r, &su2, 1.0);
            // ⟨ξ,ξ⟩ = −2 tr(ξ²)
            let m = su2.matrix_f64(&x);
            let tr: C64 = (&m * &m).trace();
            r2.eval_f64(&[x.clone(), x]).re / (-2.0 * tr.re)
        })
        .collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = (hi - lo) / hi.abs();
    ensure(spread < 1e-6, || format!("reznikov:2 ratio spread {spread:.3e}"))?;
    within(start, Duration::from_secs(30), "reznikov at order 32")?;
    Ok(format!("max |reznikov:1| {worst:.1e}; λ = {hi:.12e}, spread {spread:.1e}"))
}

fn c10_calibration() -> Outcome {
    let su2 = LieAlgebra::su2();
    let mut found: Vec<Option<Q>> = vec![None, None];
    for k in 1..=2usize {
        let n = 2 * k;
        for seed in 0..20u64 {
            let mut r = rng(8000 + 100 * k as u64 + seed);
            let rho = if k == 1 {
                // no nonzero invariant linear forms on su(2); the constant only depends on arity
                let mut p = Poly::zero(3);
                while p.is_zero() || p.homogeneous_degree() != Some(1) {
                    p = random_poly(&mut r, 3, 1, 0.9);
                    p = Poly::from_terms(3, p.terms().filter(|(m, _)| m.iter().sum::<u32>() == 1).map(|(m, c)| (m.clone(), c.clone())));
                }
                InvariantPolynomial::polarize(&su2, p).map_err(|e| e.to_string())?
            } else if seed % 2 == 0 {
                InvariantPolynomial::chern(&su2, 2).map_err(|e| e.to_string())?
            } else {
                InvariantPolynomial::sym_trace(&su2, 2)
            };
            let a: Vec<PolyForm> = (0..3).map(|_| random_form(&mut r, n, 1, 1)).collect();
            let f = curvature_of(&su2, &a);
            let point = random_q_vec(&mut r, n);
            let vectors: Vec<Vec<Q>> = (0..n).map(|_| random_q_vec(&mut r, n)).collect();
            let wedge = rho.on_even_forms(&f).eval_on(&point, &vectors);
            let perm = permutation_formula(&rho, &pair_values(&f, &point, &vectors));
            ensure(wedge.is_exact() && perm.is_exact(), || "float arithmetic in rational mode".into())?;
            let Some(inv) = wedge.inv().filter(|_| !wedge.is_zero()) else {
                continue;
            };
            let c = (&perm * &inv).as_q().ok_or_else(|| format!("k = {k} seed {seed}: non-rational ratio"))?;
            match &found[k - 1] {
                None => found[k - 1] = Some(c),
                Some(prev) => ensure(*prev == c, || format!("k = {k} seed {seed}: {c} vs {prev}"))?,
            }
        }
    }
    let c1 = found[0].clone().ok_or("k = 1: every wedge value vanished")?;
    let c2 = found[1].clone().ok_or("k = 2: every wedge value vanished")?;
    ensure(c1 == calibration_constant(1) && c2 == calibration_constant(2), || {
        format!("measured {c1}, {c2} differ from the library constants")
    })?;
    Ok(format!("c_1 = {c1}, c_2 = {c2} on every input"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("clutching integrality", c1_clutching),
        ("integration commutes with d", c2_integration),
        ("connection independence", c3_independence),
        ("naturality", c4_naturality),
        ("horn filling", c5_horn),
        ("exterior calculus", c6_exterior),
        ("homology", c7_homology),
        ("invariant polynomials", c8_invariants),
        ("reznikov pullback", c9_reznikov),
        ("calibration stability", c10_calibration),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({t:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
