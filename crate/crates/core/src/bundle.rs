//! Simplicial G-bundles in trivialised presentation.
//!
//! Every nondegenerate simplex `σ` carries the chart `Δ^d × G`; a degenerate
//! simplex `X(ε)x` carries the chart of `x` pulled back along the collapse
//! `ε̂`. The face map `δ^i` acts on charts by `(u, g) ↦ (δ^i u, h_{σ,i}(u) g)`
//! with `h_{σ,i} : Δ^{d-1} → G` a [`TransitionMap`].

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;


use crate::form::PolyForm;
use crate::lie::{expm, CMat, GroupElement, LieAlgebra};
use crate::poly::{Poly, PolyMap};
use crate::quadrature::simplex_rule;
use crate::scalar::{Scalar, C64};
use crate::simplicial::{HornPresentation, Simplex, SimplexId, SimplicialMap, SimplicialSet};
use crate::whitney::whitney_extend;
use crate::Error;

/// `u ↦ exp(p_1(u)) ⋯ exp(p_r(u))`, each `p_l` a Lie-coordinate vector of
/// polynomials on `Δ^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMap {
    dim: usize,
    factors: Vec<Vec<Poly>>,
}

impl TransitionMap {
    pub fn identity(dim: usize) -> Self {
        TransitionMap {
            dim,
            factors: Vec::new(),
        }
    }

    pub fn exp(factor: Vec<Poly>) -> Self {
        let dim = factor.first().map_or(0, Poly::nvars);
        assert!(factor.iter().all(|p| p.nvars() == dim));
        TransitionMap {
            dim,
            factors: vec![factor],
        }
    }

    pub fn from_factors(dim: usize, factors: Vec<Vec<Poly>>) -> Self {
        assert!(factors.iter().flatten().all(|p| p.nvars() == dim));
        TransitionMap { dim, factors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[Vec<Poly>] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().flatten().all(Poly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.factors.iter().flatten().all(Poly::is_constant)
    }

    /// Pointwise product `self · other`.
    pub fn mul(&self, other: &TransitionMap) -> TransitionMap {
        assert_eq!(self.dim, other.dim, "transition maps on different simplices");
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        TransitionMap { dim: self.dim, factors }
    }

    pub fn inverse(&self) -> TransitionMap {
        TransitionMap {
            dim: self.dim,
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| f.iter().map(|p| -p).collect())
                .collect(),
        }
    }

    pub fn pullback(&self, phi: &PolyMap) -> TransitionMap {
        assert_eq!(phi.tgt(), self.dim);
        TransitionMap {
            dim: phi.src(),
            factors: self
                .factors
                .iter()
                .map(|f| f.iter().map(|p| phi.pull_poly(p)).collect())
                .collect(),
        }
    }

    /// Drops zero factors; in an abelian algebra merges everything into one.
    pub fn canonical(&self, alg: &LieAlgebra) -> TransitionMap {
        let mut factors: Vec<Vec<Poly>> = self
            .factors
            .iter()
            .filter(|f| !f.iter().all(Poly::is_zero))
            .cloned()
            .collect();
        if alg.is_abelian() && factors.len() > 1 {
            let mut sum = vec![Poly::zero(self.dim); alg.dim()];
            for f in &factors {
                for (s, p) in sum.iter_mut().zip(f) {
                    *s = &*s + p;
                }
            }
            factors = if sum.iter().all(Poly::is_zero) { Vec::new() } else { vec![sum] };
        }
        TransitionMap { dim: self.dim, factors }
    }

    /// Sum of the factors; the logarithm up to `2πi`-periods when abelian.
    pub fn abelian_log(&self, alg: &LieAlgebra) -> Vec<Poly> {
        let mut sum = vec![Poly::zero(self.dim); alg.dim()];
        for f in &self.factors {
            for (s, p) in sum.iter_mut().zip(f) {
                *s = &*s + p;
            }
        }
        sum
    }

    fn factor_at(&self, l: usize, u: &[f64]) -> Vec<f64> {
        self.factors[l].iter().map(|p| p.eval_f64(u).re).collect()
    }

    pub fn eval(&self, alg: &LieAlgebra, u: &[f64]) -> GroupElement {
        let n = alg.matrix_size();
        let mut m = CMat::identity(n, n);
        for l in 0..self.factors.len() {
            m *= expm(&alg.matrix_f64(&self.factor_at(l, u)));
        }
        GroupElement { matrix: m }
    }

    /// Lie coordinates of `(h⁻¹ ∂_k h)(u)` for each coordinate direction `k`.
    pub fn maurer_cartan_at(&self, alg: &LieAlgebra, u: &[f64]) -> Vec<Vec<f64>> {
        let n = alg.matrix_size();
        let exps: Vec<CMat> = (0..self.factors.len())
            .map(|l| expm(&alg.matrix_f64(&self.factor_at(l, u))))
            .collect();
        let h = exps.iter().fold(CMat::identity(n, n), |acc, e| acc * e);
        let hinv = h.adjoint();
        (0..self.dim)
            .map(|k| {
                let mut dh = CMat::zeros(n, n);
                for l in 0..exps.len() {
                    let x = alg.matrix_f64(&self.factor_at(l, u));
                    let dx: Vec<f64> = self.factors[l].iter().map(|p| p.deriv(k).eval_f64(u).re).collect();
                    let dexp = exp_derivative(&x, &alg.matrix_f64(&dx));
                    let mut term = CMat::identity(n, n);
                    for (m, e) in exps.iter().enumerate() {
                        term = if m == l { term * &dexp } else { term * e };
                    }
                    dh += term;
                }
                alg.coords_f64(&(&hinv * dh))
            })
            .collect()
    }
}

/// Directional derivative of `exp` at `x` along `dx`: the upper-right block of
/// `exp [[x, dx], [0, x]]`.
fn exp_derivative(x: &CMat, dx: &CMat) -> CMat {
    let n = x.nrows();
    let mut big = CMat::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(x);
    big.view_mut((0, n), (n, n)).copy_from(dx);
    big.view_mut((n, n), (n, n)).copy_from(x);
    expm(&big).view((0, n), (n, n)).into_owned()
}

/// First failing cocycle condition.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleViolation {
    pub simplex: SimplexId,
    pub i: usize,
    pub j: usize,
    pub detail: String,
}

impl core::fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "cocycle fails on simplex {} for faces ({}, {}): {}",
            self.simplex, self.i, self.j, self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BundleData {
    base: SimplicialSet,
    algebra: LieAlgebra,
    /// `transitions[d][idx][i]` is `h_{d.idx, i}`, for `d ≥ 1`.
    transitions: Vec<Vec<Vec<TransitionMap>>>,
}

/// Sample points on `Δ^d` used by numerical checks: the vertices plus a
/// collapsed Gauss rule.
pub fn sample_points(d: usize) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = (0..=d)
        .map(|v| (0..d).map(|a| if v == a + 1 { 1.0 } else { 0.0 }).collect())
        .collect();
    if d > 0 {
        pts.extend(simplex_rule(d, 3).into_iter().map(|(p, _)| p));
    }
    pts
}

impl BundleData {
    /// Assembles bundle data; shapes are checked here, the cocycle condition by
    /// [`validate`](Self::validate).
    pub fn new(
        base: SimplicialSet,
        algebra: LieAlgebra,
        transitions: Vec<Vec<Vec<TransitionMap>>>,
    ) -> Result<Self, Error> {
        let mut transitions = transitions;
        transitions.resize(base.dim() + 1, Vec::new());
        for d in 1..=base.dim() {
            if transitions[d].len() != base.count(d) {
                return Err(Error::InvalidBundle(format!("dimension {d}: wrong number of simplices")));
            }
            for (idx, ts) in transitions[d].iter().enumerate() {
                if ts.len() != d + 1 {
                    return Err(Error::InvalidBundle(format!("simplex {d}.{idx}: need {} transitions", d + 1)));
                }
                for (i, t) in ts.iter().enumerate() {
                    if t.dim != d - 1 || t.factors.iter().any(|f| f.len() != algebra.dim()) {
                        return Err(Error::InvalidBundle(format!("transition {d}.{idx}.{i} has the wrong shape")));
                    }
                }
            }
        }
        if !transitions[0].is_empty() {
            return Err(Error::InvalidBundle("vertices have no transitions".into()));
        }
        Ok(BundleData {
            base,
            algebra,
            transitions,
        })
    }

    /// The trivial bundle: every transition is the identity.
    pub fn trivial(base: &SimplicialSet, algebra: &LieAlgebra) -> Self {
        let transitions = (0..=base.dim())
            .map(|d| {
                if d == 0 {
                    return Vec::new();
                }
                (0..base.count(d))
                    .map(|_| (0..=d).map(|_| TransitionMap::identity(d - 1)).collect())
                    .collect()
            })
            .collect();
        BundleData {
            base: base.clone(),
            algebra: algebra.clone(),
            transitions,
        }
    }

    pub fn base(&self) -> &SimplicialSet {
        &self.base
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn transition(&self, id: SimplexId, i: usize) -> &TransitionMap {
        &self.transitions[id.dim][id.index][i]
    }

    pub fn set_transition(&mut self, id: SimplexId, i: usize, t: TransitionMap) {
        assert_eq!(t.dim, id.dim - 1);
        self.transitions[id.dim][id.index][i] = t;
    }

    pub fn transitions(&self) -> &[Vec<Vec<TransitionMap>>] {
        &self.transitions
    }

    pub fn is_trivial(&self) -> bool {
        self.transitions.iter().flatten().flatten().all(TransitionMap::is_identity)
    }

    /// The transition of `P(θ) : P_{X(θ)y} → P_y` for a monotone `θ`.
    pub fn transition_along(&self, y: &Simplex, theta: &[usize]) -> TransitionMap {
        let composite: Vec<usize> = theta.iter().map(|&t| y.surj[t]).collect();
        let mut image: Vec<usize> = Vec::new();
        let mut eta = Vec::with_capacity(composite.len());
        for &v in &composite {
            if image.last() != Some(&v) {
                image.push(v);
            }
            eta.push(image.len() - 1);
        }
        let t = self.along_mono(y.id, &image);
        let m = theta.len() - 1;
        if image.len() == m + 1 {
            return t.canonical(&self.algebra);
        }
        t.pullback(&PolyMap::vertex_map(&eta, image.len() - 1)).canonical(&self.algebra)
    }

    fn along_mono(&self, x: SimplexId, iota: &[usize]) -> TransitionMap {
        let p = x.dim;
        if iota.len() == p + 1 {
            return TransitionMap::identity(p);
        }
        let a = (0..=p).find(|v| !iota.contains(v)).unwrap();
        let rest: Vec<usize> = iota.iter().map(|&v| if v > a { v - 1 } else { v }).collect();
        let h = self.transition(x, a).pullback(&PolyMap::vertex_map(&rest, p - 1));
        let inner = self.transition_along(self.base.face_of(x, a), &rest);
        h.mul(&inner)
    }

    /// Both sides of the cocycle condition for faces `i < j` of `x`, as maps on `Δ^{d-2}`.
    fn cocycle_sides(&self, x: SimplexId, i: usize, j: usize) -> (TransitionMap, TransitionMap) {
        let d = x.dim;
        let di: Vec<usize> = (0..d).filter(|&v| v != i).collect();
        let dj1: Vec<usize> = (0..d).filter(|&v| v != j - 1).collect();
        let lhs = self
            .transition(x, j)
            .pullback(&PolyMap::face(d - 1, i))
            .mul(&self.transition_along(self.base.face_of(x, j), &di));
        let rhs = self
            .transition(x, i)
            .pullback(&PolyMap::face(d - 1, j - 1))
            .mul(&self.transition_along(self.base.face_of(x, i), &dj1));
        (lhs.canonical(&self.algebra), rhs.canonical(&self.algebra))
    }

    /// Cocycle check. Abelian data is checked exactly (the logs must differ by
    /// a constant in `τℤ` per coordinate); other data is compared literally and,
    /// failing that, numerically at sample points with tolerance `tol`.
    pub fn validate(&self, tol: f64) -> Result<(), CocycleViolation> {
        for d in 2..=self.base.dim() {
            for x in self.base.ids(d) {
                for j in 1..=d {
                    for i in 0..j {
                        let (lhs, rhs) = self.cocycle_sides(x, i, j);
                        if lhs == rhs {
                            continue;
                        }
                        let fail = |detail: String| CocycleViolation { simplex: x, i, j, detail };
                        if self.algebra.is_abelian() {
                            let la = lhs.abelian_log(&self.algebra);
                            let lb = rhs.abelian_log(&self.algebra);
                            for (a, b) in la.iter().zip(&lb) {
                                let diff = a - b;
                                if !is_period(&diff, tol) {
                                    return Err(fail(format!("log difference {diff:?} is not a constant in τℤ")));
                                }
                            }
                        } else {
                            for u in sample_points(d - 2) {
                                let ga = lhs.eval(&self.algebra, &u).matrix;
                                let gb = rhs.eval(&self.algebra, &u).matrix;
                                let defect = (ga - gb).iter().map(|c| c.norm()).fold(0.0, f64::max);
                                if defect > tol {
                                    return Err(fail(format!("sampled defect {defect:e} at {u:?}")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `f^*P`: the chart over `σ` is the chart over `f(σ)`.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<BundleData, Error> {
        if f.target() != &self.base {
            return Err(Error::BaseMismatch("map does not land in the bundle's base".into()));
        }
        let src = f.source();
        let transitions = (0..=src.dim())
            .map(|d| {
                if d == 0 {
                    return Vec::new();
                }
                src.ids(d)
                    .map(|id| {
                        let y = f.image(id);
                        (0..=d)
                            .map(|i| {
                                let theta: Vec<usize> = (0..=d).filter(|&v| v != i).collect();
                                self.transition_along(y, &theta)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(BundleData {
            base: src.clone(),
            algebra: self.algebra.clone(),
            transitions,
        })
    }
}

/// Whether a polynomial is a constant in `τℤ` (exactly, or within `tol` for floats).
fn is_period(p: &Poly, tol: f64) -> bool {
    if !p.is_constant() {
        return false;
    }
    let c = p.coeff(&vec![0; p.nvars()]);
    if c.is_zero() {
        return true;
    }
    if c.is_exact() {
        let over_tau = &c * &Scalar::tau().inv().unwrap();
        return over_tau.as_integer().is_some();
    }
    let v = c.to_c64() / crate::scalar::TAU;
    v.im.abs() <= tol && (v.re - libm::round(v.re)).abs() <= tol
}

/// `s(x) = 3x² − 2x³`, a smooth step on `[0, 1]` with flat ends.
pub fn smooth_step(nvars: usize, var: usize) -> Poly {
    let x = Poly::var(nvars, var);
    &x.pow(2).scale(&Scalar::from_int(3)) - &x.pow(3).scale(&Scalar::from_int(2))
}

/// Phase functions `q_e` (in units of turns) for the clutching edges of the
/// southern 2-cell, indexed by face `0 ↦ 12`, `1 ↦ 02`, `2 ↦ 01`.
pub fn clutch_phases(n: i64) -> [Poly; 3] {
    let s = smooth_step(1, 0);
    let third = Scalar::ratio(n, 3);
    [
        &Poly::constant(1, third.clone()) + &s.scale(&third),
        -&s.scale(&third),
        s.scale(&third),
    ]
}

/// The `U(1)`-bundle over the two-disk sphere with clutching degree `n`.
///
/// All transitions into the northern cell and along edges are identities; the
/// southern cell's face `i` transition is `exp(τ q_i)` in the `u(1)` coordinate
/// (the matrix `i τ q_i`), with `q_i` from [`clutch_phases`].
pub fn clutch_bundle(n: i64) -> BundleData {
    let base = crate::simplicial::two_disk_sphere();
    let u1 = LieAlgebra::u1();
    let mut p = BundleData::trivial(&base, &u1);
    for (i, q) in clutch_phases(n).into_iter().enumerate() {
        let log = q.scale(&Scalar::tau());
        p.set_transition(SimplexId::new(2, 1), i, TransitionMap::exp(vec![log]));
    }
    p
}

/// Discrete winding number of the clutching data: the signed sum, over the
/// cells of the fundamental cycle `N − S`, of the total phase change along
/// their boundary edges, in turns.
pub fn winding_oracle(p: &BundleData) -> Scalar {
    let tau_inv = Scalar::tau().inv().unwrap();
    let mut total = Scalar::zero();
    for (idx, sign) in [(0usize, 1i64), (1, -1)] {
        let id = SimplexId::new(2, idx);
        for i in 0..=2 {
            let log = &p.transition(id, i).abelian_log(p.algebra())[0];
            let change = &log.eval_q(&[crate::scalar::q(1)]) - &log.eval_q(&[crate::scalar::q(0)]);
            let s = if i % 2 == 0 { sign } else { -sign };
            total = &total + &change.mul_q(&crate::scalar::q(s));
        }
    }
    -&(&total * &tau_inv)
}

/// A trivialisation over the horn: per-cell gauge logs `Γ_σ` (abelian) with
/// `Γ_σ ∘ δ^i = log h_{σ,i} + Γ_{d_i σ}` modulo `τℤ`. Edge logs are only
/// fixed up to ramps between periods; these are chosen so that the phase does
/// not wind around any triangle through the apex `k`, and the cone structure
/// of the horn then makes every other triangle unwound too.
fn abelian_trivialisation(p: &BundleData, horn: &HornPresentation) -> Result<Vec<Vec<Vec<Poly>>>, Error> {
    let x = &p.base;
    let alg = &p.algebra;
    let mut gamma: Vec<Vec<Vec<Poly>>> = (0..=x.dim())
        .map(|d| vec![vec![Poly::zero(d); alg.dim()]; x.count(d)])
        .collect();
    for d in 1..=x.dim() {
        for id in x.ids(d) {
            let mut pres: Vec<Vec<Poly>> = (0..=d)
                .map(|i| {
                    let face = x.face_of(id, i);
                    if !face.is_nondegenerate() {
                        return Err(Error::Unsupported("horn data with degenerate faces".into()));
                    }
                    let log = p.transition(id, i).abelian_log(alg);
                    Ok(log.iter().zip(&gamma[d - 1][face.id.index]).map(|(a, b)| a + b).collect())
                })
                .collect::<Result<_, _>>()?;
            // Shift by periods so the prescriptions agree on facet intersections.
            if d >= 2 {
                for j in 1..=d {
                    for c in 0..alg.dim() {
                        let a = PolyMap::face(d - 1, 0).pull_poly(&pres[j][c]);
                        let b = PolyMap::face(d - 1, j - 1).pull_poly(&pres[0][c]);
                        let diff = &a - &b;
                        if !is_period(&diff, 1e-9) {
                            return Err(Error::InvariantViolation(format!(
                                "horn data on {id} is not a cocycle (faces 0, {j})"
                            )));
                        }
                        pres[j][c] = &pres[j][c] - &Poly::constant(d - 1, diff.coeff(&vec![0; d - 2]));
                    }
                }
            }
            let ext: Vec<Poly> = (0..alg.dim())
                .map(|c| {
                    let forms: Vec<PolyForm> = pres.iter().map(|pr| PolyForm::function(pr[c].clone())).collect();
                    whitney_extend(d, &forms).map(|w| w.comp(&[]))
                })
                .collect::<Result<_, _>>()?;
            gamma[d][id.index] = ext;
        }
        if d == 1 && x.dim() >= 2 {
            unwind_triangles(p, horn, &mut gamma)?;
        }
    }
    Ok(gamma)
}

/// Adds `c·x` to the log of the edge opposite the apex in each triangle through
/// the apex, where `x` is the edge coordinate and `c` cancels the winding
/// `Σ (−1)^i (increment of log h_{σ,i} + Γ_{d_i σ} along face i)`.
fn unwind_triangles(p: &BundleData, horn: &HornPresentation, gamma: &mut [Vec<Vec<Poly>>]) -> Result<(), Error> {
    let x = &p.base;
    let increment = |f: &Poly| &f.eval_q(&[crate::scalar::q(1)]) - &f.eval_q(&[crate::scalar::q(0)]);
    for id in x.ids(2) {
        let verts = &horn.complex.cells[2][id.index];
        let Some(a) = verts.iter().position(|&v| v == horn.k) else {
            continue;
        };
        let logs: Vec<Vec<Poly>> = (0..=2).map(|i| p.transition(id, i).abelian_log(&p.algebra)).collect();
        let opposite = x.face_of(id, a).id;
        for c in 0..p.algebra.dim() {
            let mut winding = Scalar::zero();
            for (i, log) in logs.iter().enumerate() {
                let e = x.face_of(id, i).id;
                let inc = increment(&(&log[c] + &gamma[1][e.index][c]));
                winding = if i % 2 == 0 { &winding + &inc } else { &winding - &inc };
            }
            if !is_period(&Poly::constant(0, winding.clone()), 1e-9) {
                return Err(Error::InvariantViolation(format!("horn data on {id} winds by a non-period")));
            }
            let ramp = if a % 2 == 0 { -&winding } else { winding };
            let g = &gamma[1][opposite.index][c];
            gamma[1][opposite.index][c] = g + &Poly::var(1, 0).scale(&ramp);
        }
    }
    Ok(())
}

/// Constant gauge group elements `γ_σ` with `γ_σ = h_{σ,i} γ_{d_i σ}` for
/// constant, possibly non-abelian, data on a connected base.
fn constant_trivialisation(p: &BundleData) -> Result<Vec<Vec<GroupElement>>, Error> {
    let x = &p.base;
    let n = p.algebra.matrix_size();
    let mut gamma: Vec<Vec<Option<GroupElement>>> = (0..=x.dim()).map(|d| vec![None; x.count(d)]).collect();
    let origin = |d: usize| vec![0.0; d];
    let mut queue = VecDeque::new();
    gamma[0][0] = Some(GroupElement::identity(n));
    queue.push_back(SimplexId::new(0, 0));
    // relations: γ_σ = h_{σ,i} γ_{d_i σ}
    let mut relations: Vec<(SimplexId, usize, SimplexId)> = Vec::new();
    for d in 1..=x.dim() {
        for id in x.ids(d) {
            for i in 0..=d {
                relations.push((id, i, x.face_of(id, i).id));
            }
        }
    }
    while let Some(cur) = queue.pop_front() {
        for &(s, i, f) in &relations {
            let h = p.transition(s, i).eval(&p.algebra, &origin(s.dim - 1));
            if f == cur && gamma[s.dim][s.index].is_none() {
                let g = h.mul(gamma[f.dim][f.index].as_ref().unwrap());
                gamma[s.dim][s.index] = Some(g);
                queue.push_back(s);
            } else if s == cur && gamma[f.dim][f.index].is_none() {
                let g = h.inverse().mul(gamma[s.dim][s.index].as_ref().unwrap());
                gamma[f.dim][f.index] = Some(g);
                queue.push_back(f);
            }
        }
    }
    gamma
        .into_iter()
        .map(|row| row.into_iter().map(|g| g.ok_or_else(|| Error::Unsupported("disconnected horn".into()))).collect())
        .collect()
}

/// Log of a unitary matrix near the group, as Lie coordinates (via eigen-free
/// inverse scaling and squaring).
fn group_log(alg: &LieAlgebra, g: &GroupElement) -> Vec<f64> {
    let n = alg.matrix_size();
    let mut m = g.matrix.clone();
    let mut squarings = 0;
    // take square roots (Denman–Beavers) until close to the identity
    while (&m - CMat::identity(n, n)).iter().map(|c| c.norm()).fold(0.0, f64::max) > 0.25 && squarings < 40 {
        m = sqrtm(&m);
        squarings += 1;
    }
    let x = &m - CMat::identity(n, n);
    let mut term = x.clone();
    let mut log = CMat::zeros(n, n);
    for k in 1..60 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        log += &term * C64::new(sign / k as f64, 0.0);
        term = &term * &x;
    }
    let scale = libm::pow(2.0, squarings as f64);
    alg.coords_f64(&(log * C64::new(scale, 0.0)))
}

fn sqrtm(a: &CMat) -> CMat {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = CMat::identity(n, n);
    for _ in 0..60 {
        let yi = y.clone().try_inverse().expect("invertible");
        let zi = z.clone().try_inverse().expect("invertible");
        let ny = (&y + zi) * C64::new(0.5, 0.0);
        let nz = (&z + yi) * C64::new(0.5, 0.0);
        y = ny;
        z = nz;
    }
    y
}

/// Fills a bundle over the horn `Λ^n_k` to a bundle over `Δ^n`.
///
/// The horn part of the output is the input data unchanged. The horn is
/// trivialised (`γ_σ`), the missing face and the top cell get the trivialising
/// charts, and their transitions are `γ_{d_i σ}^{-1}` read back in the original
/// charts of the horn cells.
pub fn horn_fill_bundle(horn: &HornPresentation, p: &BundleData) -> Result<BundleData, Error> {
    if p.base() != horn.set() {
        return Err(Error::BaseMismatch("bundle is not over the given horn".into()));
    }
    let n = horn.n;
    let full = crate::simplicial::standard_simplex_complex(n);
    let alg = p.algebra().clone();
    let hc = &horn.complex;
    let missing_face: Vec<usize> = (0..=n).filter(|&v| v != horn.k).collect();
    let gauge_inv: Vec<Vec<Vec<Vec<Poly>>>>;
    if alg.is_abelian() {
        let gamma = abelian_trivialisation(p, horn)?;
        gauge_inv = gamma
            .iter()
            .map(|row| row.iter().map(|g| vec![g.iter().map(|q| -q).collect()]).collect())
            .collect();
    } else if p.is_trivial() {
        gauge_inv = (0..=hc.set.dim()).map(|d| vec![Vec::new(); hc.set.count(d)]).collect();
    } else if p.transitions.iter().flatten().flatten().all(TransitionMap::is_constant) {
        let gamma = constant_trivialisation(p)?;
        gauge_inv = gamma
            .iter()
            .enumerate()
            .map(|(d, row)| {
                row.iter()
                    .map(|g| {
                        let log = group_log(&alg, &g.inverse());
                        vec![log.into_iter().map(|c| Poly::constant(d, Scalar::float(c))).collect()]
                    })
                    .collect()
            })
            .collect();
    } else {
        return Err(Error::Unsupported(
            "horn filling of non-abelian bundles with non-constant transitions".into(),
        ));
    }
    let inv_transition = |d: usize, hidx: usize| TransitionMap::from_factors(d, gauge_inv[d][hidx].clone()).canonical(&alg);
    let transitions = (0..=n)
        .map(|d| {
            if d == 0 {
                return Vec::new();
            }
            full.cells[d]
                .iter()
                .map(|verts| {
                    if let Some(hid) = hc.find(verts) {
                        return (0..=d).map(|i| p.transition(hid, i).clone()).collect();
                    }
                    (0..=d)
                        .map(|i| {
                            let mut f = verts.clone();
                            f.remove(i);
                            match hc.find(&f) {
                                Some(fid) => inv_transition(fid.dim, fid.index),
                                // the top cell's face k is the new face, whose chart is trivialising
                                None => {
                                    debug_assert_eq!(f, missing_face);
                                    TransitionMap::identity(d - 1)
                                }
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    BundleData::new(full.set, alg, transitions)
}

/// Restriction of a bundle over `Δ^n` to the horn.
pub fn restrict_to_horn(horn: &HornPresentation, p: &BundleData) -> Result<BundleData, Error> {
    p.pullback(&horn.inclusion())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_sphere, horn, standard_simplex};

    #[test]
    fn trivial_bundles_validate() {
        let p = BundleData::trivial(&boundary_sphere(2), &LieAlgebra::su2());
        assert!(p.validate(1e-9).is_ok());
        assert!(p.is_trivial());
    }

    #[test]
    fn clutch_validates_and_winds() {
        for n in -5..=5 {
            let p = clutch_bundle(n);
            assert!(p.validate(0.0).is_ok(), "n = {n}");
            assert_eq!(winding_oracle(&p), Scalar::from_int(n));
        }
    }

    #[test]
    fn perturbed_clutch_is_located() {
        let mut p = clutch_bundle(1);
        let bump = Poly::var(1, 0).scale(&Scalar::ratio(1, 7));
        p.set_transition(SimplexId::new(2, 1), 0, TransitionMap::exp(vec![bump]));
        let v = p.validate(0.0).unwrap_err();
        assert_eq!(v.simplex, SimplexId::new(2, 1));
    }

    #[test]
    fn pullback_along_identity_is_identical() {
        let p = clutch_bundle(2);
        let id = SimplicialMap::identity(p.base());
        assert_eq!(p.pullback(&id).unwrap(), p);
    }

    #[test]
    fn maurer_cartan_of_abelian_exponential() {
        let u1 = LieAlgebra::u1();
        let t = TransitionMap::exp(vec![Poly::var(2, 0).pow(2)]);
        let mc = t.maurer_cartan_at(&u1, &[0.3, 0.1]);
        assert!((mc[0][0] - 0.6).abs() < 1e-12);
        assert!(mc[1][0].abs() < 1e-12);
    }

    #[test]
    fn group_log_inverts_exp() {
        let su2 = LieAlgebra::su2();
        let x = [0.4, -0.3, 1.1];
        let back = group_log(&su2, &su2.exp(&x));
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn trivial_horn_fills_trivially() {
        let h = horn(2, 1).unwrap();
        let p = BundleData::trivial(h.set(), &LieAlgebra::u1());
        let f = horn_fill_bundle(&h, &p).unwrap();
        assert!(f.is_trivial());
        assert_eq!(f.base(), &standard_simplex(2));
        assert_eq!(restrict_to_horn(&h, &f).unwrap(), p);
    }

    #[test]
    fn winding_horn_data_fills() {
        // the generator's integer windings make edge logs wind around triangles
        for (n, k) in [(3, 0), (3, 2), (4, 1)] {
            let h = horn(n, k).unwrap();
            for seed in 0..4 {
                let p = crate::random::random_u1_horn_bundle(&mut crate::random::rng(seed), &h, 2);
                let f = horn_fill_bundle(&h, &p).unwrap();
                assert!(f.validate(0.0).is_ok(), "({n},{k}) seed {seed}");
                assert_eq!(restrict_to_horn(&h, &f).unwrap(), p);
            }
        }
    }
}
