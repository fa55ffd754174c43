//! Multivariate polynomials on `Δ^d ⊂ ℝ^d` and polynomial maps between simplices.
//!
//! `Δ^d` is `{x ∈ ℝ^d : x_i ≥ 0, Σ x_i ≤ 1}`. Vertex `0` is the origin and
//! vertex `i ≥ 1` is the unit vector `e_i`, so the barycentric coordinates are
//! `t_0 = 1 - Σ x_i` and `t_i = x_i`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::scalar::{q, q_to_f64, Scalar, C64, Q};

pub type Mono = Vec<u32>;

/// Polynomial in `nvars` variables with [`Scalar`] coefficients.
///
/// Terms are kept in lexicographic exponent order with zero coefficients pruned,
/// so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The coordinate function `x_{i+1}` (variables are 0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, Scalar::one())
    }

    pub fn monomial(exps: Mono, c: Scalar) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Barycentric coordinates `t_0, …, t_d` on `Δ^d` as polynomials.
    pub fn barycentric(d: usize) -> Vec<Poly> {
        let mut t0 = Poly::one(d);
        for i in 0..d {
            t0 = &t0 - &Poly::var(d, i);
        }
        let mut out = vec![t0];
        out.extend((0..d).map(|i| Poly::var(d, i)));
        out
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Scalar)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        assert_eq!(m.len(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// `Some(k)` when every term has total degree `k`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn scale_q(&self, c: &Q) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, v)| (m.clone(), v.mul_q(c))),
        )
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, v)| (m.clone(), f(v))))
    }

    pub fn to_float(&self) -> Poly {
        self.map_coeffs(Scalar::to_float)
    }

    pub fn re(&self) -> Poly {
        self.map_coeffs(Scalar::re)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i` (0-based).
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c.mul_q(&q(m[i] as i64)));
        }
        out
    }

    /// Substitutes `subs[i]` for variable `i`. All substitutes share one arity,
    /// which becomes the arity of the result.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars, "substitution arity mismatch");
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        let target = if subs.is_empty() { 0 } else { target };
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(s.nvars), s.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval_q(&self, x: &[Q]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = Q::one();
            for (xi, &e) in x.iter().zip(m) {
                for _ in 0..e {
                    v *= xi;
                }
            }
            acc += &c.mul_q(&v);
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> C64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = C64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = 1.0;
            for (xi, &e) in x.iter().zip(m) {
                v *= libm::pow(*xi, e as f64);
            }
            acc += c.to_c64() * v;
        }
        acc
    }

    /// `∫_{Δ^d} p dx_1…dx_d`, termwise via
    /// `∫ x^a = (∏ a_i!) / (d + Σ a_i)!`.
    pub fn integrate_simplex(&self) -> Scalar {
        let d = self.nvars as u64;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut num = num_bigint::BigInt::one();
            let mut total = d;
            for &a in m {
                num *= factorial(a as u64);
                total += a as u64;
            }
            let w = Q::new(num, factorial(total));
            acc += &c.mul_q(&w);
        }
        acc
    }
}

pub(crate) fn factorial(n: u64) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::one(), |a, k| a * num_bigint::BigInt::from(k))
}

impl<'a> core::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> core::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> core::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let m: Mono = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl core::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

/// A polynomial map `Δ^src → ℝ^tgt` given by its coordinate polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    src: usize,
    coords: Vec<Poly>,
}

impl PolyMap {
    pub fn new(src: usize, coords: Vec<Poly>) -> Self {
        assert!(coords.iter().all(|p| p.nvars() == src), "coordinate arity mismatch");
        PolyMap { src, coords }
    }

    pub fn identity(d: usize) -> Self {
        PolyMap::new(d, (0..d).map(|i| Poly::var(d, i)).collect())
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    /// The affine simplicial map `Δ^m → Δ^n` sending vertex `j` to vertex `theta[j]`.
    /// `theta` need not be monotone or injective.
    pub fn vertex_map(theta: &[usize], n: usize) -> Self {
        assert!(!theta.is_empty());
        let m = theta.len() - 1;
        let t = Poly::barycentric(m);
        let mut coords = vec![Poly::zero(m); n];
        for (j, &target) in theta.iter().enumerate() {
            assert!(target <= n, "vertex out of range");
            if target >= 1 {
                coords[target - 1] = &coords[target - 1] + &t[j];
            }
        }
        PolyMap::new(m, coords)
    }

    /// Face inclusion `δ^i : Δ^{d-1} → Δ^d` omitting vertex `i`.
    pub fn face(d: usize, i: usize) -> Self {
        assert!(d >= 1 && i <= d);
        let theta: Vec<usize> = (0..=d).filter(|&v| v != i).collect();
        PolyMap::vertex_map(&theta, d)
    }

    /// Degeneracy `σ^j : Δ^{d+1} → Δ^d` identifying vertices `j` and `j+1`.
    pub fn degeneracy(d: usize, j: usize) -> Self {
        assert!(j <= d);
        let theta: Vec<usize> = (0..=d + 1).map(|v| if v <= j { v } else { v - 1 }).collect();
        PolyMap::vertex_map(&theta, d)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        assert_eq!(inner.tgt(), self.src, "composition dimension mismatch");
        if self.src == 0 {
            let coords = self
                .coords
                .iter()
                .map(|p| Poly::constant(inner.src, p.coeff(&[])))
                .collect();
            return PolyMap::new(inner.src, coords);
        }
        PolyMap::new(
            inner.src,
            self.coords.iter().map(|p| p.compose(&inner.coords)).collect(),
        )
    }

    /// Pulls a polynomial on the target back to the source.
    pub fn pull_poly(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.tgt());
        if self.tgt() == 0 {
            return Poly::constant(self.src, p.coeff(&[]));
        }
        p.compose(&self.coords)
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.coords.iter().map(|p| p.eval_f64(x).re).collect()
    }
}

/// A polynomial map `Δ^k → Δ^d` in Bernstein–Bézier form.
///
/// Control points are indexed by multi-indices `α ∈ ℕ^{k+1}` with `|α| = degree`;
/// each control point is a point of `Δ^d`. By convexity of the Bernstein basis
/// the image then lies in `Δ^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinMap {
    src: usize,
    tgt: usize,
    degree: u32,
    control: BTreeMap<Vec<u32>, Vec<Q>>,
}

impl BernsteinMap {
    pub fn new(src: usize, tgt: usize, degree: u32, control: BTreeMap<Vec<u32>, Vec<Q>>) -> Self {
        BernsteinMap {
            src,
            tgt,
            degree,
            control,
        }
    }

    /// All multi-indices of length `k+1` summing to `degree`, lexicographic.
    pub fn multi_indices(k: usize, degree: u32) -> Vec<Vec<u32>> {
        fn rec(len: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if len == 1 {
                cur.push(rem);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for a in 0..=rem {
                cur.push(a);
                rec(len - 1, rem - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k + 1, degree, &mut Vec::new(), &mut out);
        out
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn control(&self) -> &BTreeMap<Vec<u32>, Vec<Q>> {
        &self.control
    }

    /// Control points are complete and lie in `Δ^tgt` (exact check).
    pub fn is_valid(&self) -> bool {
        let expected = Self::multi_indices(self.src, self.degree);
        expected.len() == self.control.len()
            && expected.iter().all(|a| {
                self.control.get(a).is_some_and(|p| {
                    p.len() == self.tgt
                        && p.iter().all(|c| !c.is_negative())
                        && p.iter().fold(Q::zero(), |s, c| s + c) <= Q::one()
                })
            })
    }

    pub fn to_poly_map(&self) -> PolyMap {
        let t = Poly::barycentric(self.src);
        let mut coords = vec![Poly::zero(self.src); self.tgt];
        for (alpha, point) in &self.control {
            // multinomial coefficient degree! / α!
            let mut coef = num_bigint::BigInt::from(1);
            let mut rem = self.degree as u64;
            for &a in alpha {
                coef *= binomial(num_bigint::BigInt::from(rem), num_bigint::BigInt::from(a));
                rem -= a as u64;
            }
            let mut basis = Poly::constant(self.src, Scalar::from_q(Q::from_integer(coef)));
            for (j, &a) in alpha.iter().enumerate() {
                if a > 0 {
                    basis = &basis * &t[j].pow(a);
                }
            }
            for (c, x) in coords.iter_mut().zip(point) {
                if !x.is_zero() {
                    *c = &*c + &basis.scale_q(x);
                }
            }
        }
        PolyMap::new(self.src, coords)
    }
}

/// Evaluates a rational point given in barycentric coordinates to affine coordinates.
pub fn bary_to_affine(t: &[Q]) -> Vec<Q> {
    t[1..].to_vec()
}

pub fn q_point_to_f64(x: &[Q]) -> Vec<f64> {
    x.iter().map(q_to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    #[test]
    fn monomial_integrals() {
        // ∫_{Δ^2} 1 = 1/2, ∫ x1 = 1/6, ∫ x1 x2 = 1/24
        assert_eq!(Poly::one(2).integrate_simplex(), Scalar::ratio(1, 2));
        assert_eq!(Poly::var(2, 0).integrate_simplex(), Scalar::ratio(1, 6));
        let p = &Poly::var(2, 0) * &Poly::var(2, 1);
        assert_eq!(p.integrate_simplex(), Scalar::ratio(1, 24));
        assert_eq!(Poly::one(0).integrate_simplex(), Scalar::one());
    }

    #[test]
    fn face_maps_hit_the_right_vertices() {
        // δ^0 on Δ^1 sends the point to vertex 1 (x = 1), δ^1 to vertex 0.
        let f0 = PolyMap::face(1, 0);
        let f1 = PolyMap::face(1, 1);
        assert_eq!(f0.coords()[0], Poly::one(0));
        assert_eq!(f1.coords()[0], Poly::zero(0));
        // δ^2 on Δ^2: y ↦ (y, 0)
        let f = PolyMap::face(2, 2);
        assert_eq!(f.coords()[0], Poly::var(1, 0));
        assert!(f.coords()[1].is_zero());
    }

    #[test]
    fn cosimplicial_identity() {
        // δ^j δ^i = δ^i δ^{j-1} for i < j
        for d in 2..5 {
            for j in 0..=d {
                for i in 0..j {
                    let lhs = PolyMap::face(d, j).compose(&PolyMap::face(d - 1, i));
                    let rhs = PolyMap::face(d, i).compose(&PolyMap::face(d - 1, j - 1));
                    assert_eq!(lhs, rhs, "d={d} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn degeneracy_splits_faces() {
        for d in 0..4 {
            for j in 0..=d {
                let s = PolyMap::degeneracy(d, j);
                assert_eq!(s.compose(&PolyMap::face(d + 1, j)), PolyMap::identity(d));
                assert_eq!(s.compose(&PolyMap::face(d + 1, j + 1)), PolyMap::identity(d));
            }
        }
    }

    #[test]
    fn bernstein_degree_one_is_affine() {
        // Control points at the vertices reproduce the identity map.
        let mut control = BTreeMap::new();
        control.insert(vec![1, 0, 0], vec![q(0), q(0)]);
        control.insert(vec![0, 1, 0], vec![q(1), q(0)]);
        control.insert(vec![0, 0, 1], vec![q(0), q(1)]);
        let b = BernsteinMap::new(2, 2, 1, control);
        assert!(b.is_valid());
        assert_eq!(b.to_poly_map(), PolyMap::identity(2));
    }

    #[test]
    fn bernstein_validity_rejects_outside_points() {
        let mut control = BTreeMap::new();
        control.insert(vec![1, 0], vec![qr(3, 4)]);
        control.insert(vec![0, 1], vec![qr(5, 4)]);
        let b = BernsteinMap::new(1, 1, 1, control);
        assert!(!b.is_valid());
    }

    #[test]
    fn compose_and_eval() {
        let p = &Poly::var(2, 0) * &Poly::var(2, 1);
        let subs = vec![Poly::var(1, 0), &Poly::one(1) - &Poly::var(1, 0)];
        let c = p.compose(&subs);
        assert_eq!(c.eval_q(&[qr(1, 3)]), Scalar::ratio(2, 9));
    }
}
