//! Polynomial differential forms on a standard simplex.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::poly::{Poly, PolyMap};
use crate::scalar::{Scalar, Q};
use crate::Error;

/// Strictly increasing 0-based index tuple `(i_1 < … < i_k)` naming `dx_{i_1+1} ∧ …`.
pub type Index = Vec<u8>;

/// A polynomial `k`-form on `Δ^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm {
    dim: usize,
    deg: usize,
    comps: BTreeMap<Index, Poly>,
}

/// Sign of the permutation sorting `idx`, or `None` if an index repeats.
fn sort_sign(idx: &mut [u8]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl PolyForm {
    pub fn zero(dim: usize, deg: usize) -> Self {
        PolyForm {
            dim,
            deg,
            comps: BTreeMap::new(),
        }
    }

    pub fn function(p: Poly) -> Self {
        let mut f = PolyForm::zero(p.nvars(), 0);
        f.add_comp(Vec::new(), p);
        f
    }

    /// The 1-form `dx_{i+1}` (0-based `i`).
    pub fn dx(dim: usize, i: usize) -> Self {
        let mut f = PolyForm::zero(dim, 1);
        f.add_comp(vec![i as u8], Poly::one(dim));
        f
    }

    /// The volume form `dx_1 ∧ … ∧ dx_dim`.
    pub fn volume(dim: usize) -> Self {
        let mut f = PolyForm::zero(dim, dim);
        f.add_comp((0..dim as u8).collect(), Poly::one(dim));
        f
    }

    pub fn from_comps(dim: usize, deg: usize, comps: impl IntoIterator<Item = (Index, Poly)>) -> Self {
        let mut f = PolyForm::zero(dim, deg);
        for (i, p) in comps {
            f.add_comp(i, p);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn comps(&self) -> impl Iterator<Item = (&Index, &Poly)> {
        self.comps.iter()
    }

    pub fn comp(&self, idx: &[u8]) -> Poly {
        self.comps.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Adds `p · dx_idx`; `idx` may be unsorted (the sign is applied) and a
    /// repeated index contributes nothing.
    pub fn add_comp(&mut self, mut idx: Index, p: Poly) {
        assert_eq!(idx.len(), self.deg, "component degree mismatch");
        assert_eq!(p.nvars(), self.dim, "component arity mismatch");
        assert!(idx.iter().all(|&i| (i as usize) < self.dim), "index out of range");
        let Some(sign) = sort_sign(&mut idx) else {
            return;
        };
        if p.is_zero() {
            return;
        }
        let p = if sign < 0 { -&p } else { p };
        let entry = self.comps.entry(idx.clone()).or_insert_with(|| Poly::zero(self.dim));
        *entry = &*entry + &p;
        if entry.is_zero() {
            self.comps.remove(&idx);
        }
    }

    fn check_same(&self, other: &PolyForm) {
        assert_eq!(self.dim, other.dim, "form ambient dimension mismatch");
        assert_eq!(self.deg, other.deg, "form degree mismatch");
    }

    pub fn scale(&self, c: &Scalar) -> PolyForm {
        PolyForm::from_comps(self.dim, self.deg, self.comps.iter().map(|(i, p)| (i.clone(), p.scale(c))))
    }

    pub fn scale_q(&self, c: &Q) -> PolyForm {
        PolyForm::from_comps(self.dim, self.deg, self.comps.iter().map(|(i, p)| (i.clone(), p.scale_q(c))))
    }

    /// Multiplies every component by the function `f`.
    pub fn mul_fn(&self, f: &Poly) -> PolyForm {
        PolyForm::from_comps(self.dim, self.deg, self.comps.iter().map(|(i, p)| (i.clone(), p * f)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar + Copy) -> PolyForm {
        PolyForm::from_comps(self.dim, self.deg, self.comps.iter().map(|(i, p)| (i.clone(), p.map_coeffs(f))))
    }

    pub fn to_float(&self) -> PolyForm {
        self.map_coeffs(Scalar::to_float)
    }

    pub fn re(&self) -> PolyForm {
        self.map_coeffs(Scalar::re)
    }

    /// Largest total degree of any coefficient polynomial.
    pub fn poly_degree(&self) -> u32 {
        self.comps.values().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Exterior derivative.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.dim, self.deg + 1);
        if self.deg >= self.dim {
            return out;
        }
        for (idx, p) in &self.comps {
            for j in 0..self.dim {
                if idx.contains(&(j as u8)) {
                    continue;
                }
                let dp = p.deriv(j);
                if dp.is_zero() {
                    continue;
                }
                let mut ni = vec![j as u8];
                ni.extend_from_slice(idx);
                out.add_comp(ni, dp);
            }
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.dim, other.dim, "wedge of forms on different simplices");
        let mut out = PolyForm::zero(self.dim, self.deg + other.deg);
        if self.deg + other.deg > self.dim {
            return out;
        }
        for (a, pa) in &self.comps {
            for (b, pb) in &other.comps {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_comp(idx, pa * pb);
            }
        }
        out
    }

    /// Pull-back along a polynomial map `φ : Δ^k → Δ^dim`.
    pub fn pullback(&self, phi: &PolyMap) -> PolyForm {
        assert_eq!(phi.tgt(), self.dim, "pull-back target dimension mismatch");
        let k = phi.src();
        let mut out = PolyForm::zero(k, self.deg);
        if self.deg > k {
            return out;
        }
        let dphi: Vec<PolyForm> = phi
            .coords()
            .iter()
            .map(|c| PolyForm::function(c.clone()).d())
            .collect();
        for (idx, p) in &self.comps {
            let mut term = PolyForm::function(phi.pull_poly(p));
            for &i in idx {
                term = term.wedge(&dphi[i as usize]);
                if term.is_zero() {
                    break;
                }
            }
            if !term.is_zero() {
                out = &out + &term;
            }
        }
        out
    }

    /// `∫_{Δ^dim} ω` for a top-degree form with the standard orientation.
    pub fn integrate_top(&self) -> Result<Scalar, Error> {
        if self.deg != self.dim {
            return Err(Error::DegreeMismatch {
                expected: self.dim,
                found: self.deg,
            });
        }
        Ok(match self.comps.values().next() {
            Some(p) => p.integrate_simplex(),
            None => Scalar::zero(),
        })
    }

    /// Evaluates the form at a rational point on rational tangent vectors,
    /// `ω_x(v_1, …, v_k) = Σ_I ω_I(x) det[(v_b)_{i_a}]`.
    pub fn eval_on(&self, point: &[Q], vectors: &[Vec<Q>]) -> Scalar {
        assert_eq!(vectors.len(), self.deg);
        let mut acc = Scalar::zero();
        for (idx, p) in &self.comps {
            let m: Vec<Vec<Q>> = idx
                .iter()
                .map(|&i| vectors.iter().map(|v| v[i as usize].clone()).collect())
                .collect();
            let det = crate::linalg::det_q(&m);
            acc += &p.eval_q(point).mul_q(&det);
        }
        acc
    }

    /// Numerical value of each component at a point, keyed by index.
    pub fn eval_f64(&self, x: &[f64]) -> Vec<(Index, crate::scalar::C64)> {
        self.comps.iter().map(|(i, p)| (i.clone(), p.eval_f64(x))).collect()
    }

    /// Largest absolute coefficient value; useful for tolerance checks.
    pub fn max_abs_coeff(&self) -> f64 {
        self.comps
            .values()
            .flat_map(|p| p.terms().map(|(_, c)| c.abs()).collect::<Vec<_>>())
            .fold(0.0, f64::max)
    }
}

impl<'a> core::ops::Add<&'a PolyForm> for &'a PolyForm {
    type Output = PolyForm;
    fn add(self, rhs: &'a PolyForm) -> PolyForm {
        self.check_same(rhs);
        let mut out = self.clone();
        for (i, p) in &rhs.comps {
            out.add_comp(i.clone(), p.clone());
        }
        out
    }
}

impl<'a> core::ops::Sub<&'a PolyForm> for &'a PolyForm {
    type Output = PolyForm;
    fn sub(self, rhs: &'a PolyForm) -> PolyForm {
        self.check_same(rhs);
        let mut out = self.clone();
        for (i, p) in &rhs.comps {
            out.add_comp(i.clone(), -p);
        }
        out
    }
}

impl core::ops::Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.map_coeffs(|c| -c)
    }
}

/// Every strictly increasing `k`-subset of `0..n`, lexicographic.
pub fn index_sets(n: usize, k: usize) -> Vec<Index> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Index, out: &mut Vec<Index>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn d_of_x1_dx2() {
        // ω = x1 dx2 on Δ² → dω = dx1 ∧ dx2
        let w = PolyForm::from_comps(2, 1, [(vec![1u8], Poly::var(2, 0))]);
        assert_eq!(w.d(), PolyForm::volume(2));
    }

    #[test]
    fn constant_forms_are_closed() {
        let w = PolyForm::function(Poly::constant(3, Scalar::ratio(5, 2)));
        assert!(w.d().is_zero());
        assert!(PolyForm::dx(3, 1).d().is_zero());
    }

    #[test]
    fn wedge_antisymmetry() {
        let a = PolyForm::dx(2, 0);
        let b = PolyForm::dx(2, 1);
        assert!(a.wedge(&a).is_zero());
        assert_eq!(a.wedge(&b), -&b.wedge(&a));
    }

    #[test]
    fn top_integrals() {
        assert_eq!(PolyForm::dx(1, 0).integrate_top().unwrap(), Scalar::one());
        assert_eq!(PolyForm::volume(2).integrate_top().unwrap(), Scalar::ratio(1, 2));
        let w = PolyForm::volume(2).mul_fn(&Poly::var(2, 0));
        assert_eq!(w.integrate_top().unwrap(), Scalar::ratio(1, 6));
        assert!(matches!(
            PolyForm::dx(2, 0).integrate_top(),
            Err(Error::DegreeMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn pullback_of_dx1_along_last_face() {
        // δ^2 : Δ¹ → Δ², y ↦ (y, 0): δ^2* dx1 = dy.
        let f = PolyMap::face(2, 2);
        assert_eq!(PolyForm::dx(2, 0).pullback(&f), PolyForm::dx(1, 0));
        assert!(PolyForm::dx(2, 1).pullback(&f).is_zero());
        // δ^0 : y ↦ (1 - y, y): dx1 ↦ -dy
        let g = PolyMap::face(2, 0);
        assert_eq!(PolyForm::dx(2, 0).pullback(&g), -&PolyForm::dx(1, 0));
    }

    #[test]
    fn evaluation_on_vectors() {
        let vol = PolyForm::volume(2);
        let e1 = vec![q(1), q(0)];
        let e2 = vec![q(0), q(1)];
        let p = vec![q(0), q(0)];
        assert_eq!(vol.eval_on(&p, &[e1.clone(), e2.clone()]), Scalar::one());
        assert_eq!(vol.eval_on(&p, &[e2, e1]), Scalar::from_int(-1));
    }

    #[test]
    fn index_set_counts() {
        assert_eq!(index_sets(4, 2).len(), 6);
        assert_eq!(index_sets(3, 0), vec![Vec::<u8>::new()]);
        assert!(index_sets(2, 3).is_empty());
    }
}
