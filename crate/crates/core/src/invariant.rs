//! Symmetric multilinear functionals on a Lie algebra.
//!
//! A functional of arity `k` is stored through its diagonal `p(x) = ρ(x, …, x)`,
//! a homogeneous polynomial of degree `k` in the Lie coordinates; `ρ` itself is
//! recovered by polarisation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::form::PolyForm;
use crate::lie::{GroupElement, LieAlgebra, LieKind};
use crate::poly::{factorial, Poly};
use crate::quadrature::gauss_legendre;
use crate::scalar::{Scalar, C64};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    SymTrace,
    Chern,
    Reznikov,
    User,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPolynomial {
    algebra: LieAlgebra,
    arity: usize,
    provenance: Provenance,
    name: String,
    diagonal: Poly,
}

/// All permutations of `0..k` (Heap's algorithm order is irrelevant here).
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Matrix of polynomials `Σ_a x_a e_a · c` in the Lie coordinates `x`.
fn generic_matrix(alg: &LieAlgebra, c: &Scalar) -> Vec<Vec<Poly>> {
    let dim = alg.dim();
    let n = alg.matrix_size();
    let mut m = vec![vec![Poly::zero(dim); n]; n];
    for (a, e) in alg.basis().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if !(e[i][j].re == num_traits::Zero::zero() && e[i][j].im == num_traits::Zero::zero()) {
                    let coeff = &Scalar::from_gauss(e[i][j].clone()) * c;
                    m[i][j] = &m[i][j] + &Poly::var(dim, a).scale(&coeff);
                }
            }
        }
    }
    m
}

fn poly_mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    let nv = a[0][0].nvars();
    let mut out = vec![vec![Poly::zero(nv); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

fn poly_trace(a: &[Vec<Poly>]) -> Poly {
    let mut t = Poly::zero(a[0][0].nvars());
    for (i, row) in a.iter().enumerate() {
        t = &t + &row[i];
    }
    t
}

impl InvariantPolynomial {
    /// `(x_1, …, x_k) ↦ (1/k!) Σ_π tr(x_{π1} ⋯ x_{πk})`, with diagonal `tr(X^k)`.
    pub fn sym_trace(alg: &LieAlgebra, k: usize) -> Self {
        assert!(k >= 1);
        let x = generic_matrix(alg, &Scalar::one());
        let mut pow = x.clone();
        for _ in 1..k {
            pow = poly_mat_mul(&pow, &x);
        }
        InvariantPolynomial {
            algebra: alg.clone(),
            arity: k,
            provenance: Provenance::SymTrace,
            name: format!("symtrace:{k}"),
            diagonal: poly_trace(&pow),
        }
    }

    /// Polarisation of the `t^k` coefficient of `det(I + t·X/(iτ))`.
    pub fn chern(alg: &LieAlgebra, k: usize) -> Result<Self, Error> {
        assert!(k >= 1);
        if !alg.is_unitary_family() {
            return Err(Error::UnsupportedAlgebra(alg.name()));
        }
        let inv_itau = (&Scalar::i() * &Scalar::tau()).inv().expect("iτ is invertible");
        let y = generic_matrix(alg, &inv_itau);
        // Newton's identities: m e_m = Σ_{i=1}^m (−1)^{i−1} e_{m−i} p_i, p_i = tr(Y^i)
        let dim = alg.dim();
        let mut p = vec![Poly::zero(dim)];
        let mut pow = y.clone();
        for i in 1..=k {
            if i > 1 {
                pow = poly_mat_mul(&pow, &y);
            }
            p.push(poly_trace(&pow));
        }
        let mut e = vec![Poly::one(dim)];
        for m in 1..=k {
            let mut acc = Poly::zero(dim);
            for i in 1..=m {
                let term = &e[m - i] * &p[i];
                acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
            }
            e.push(acc.scale(&Scalar::ratio(1, m as i64)));
        }
        Ok(InvariantPolynomial {
            algebra: alg.clone(),
            arity: k,
            provenance: Provenance::Chern,
            name: format!("chern:{k}"),
            diagonal: e.pop().unwrap(),
        })
    }

    /// The symmetric multilinear functional with diagonal `p`.
    pub fn polarize(alg: &LieAlgebra, p: Poly) -> Result<Self, Error> {
        if p.nvars() != alg.dim() {
            return Err(Error::AlgebraMismatch(format!("{} variables", p.nvars()), alg.name()));
        }
        let k = p.homogeneous_degree().ok_or(Error::NotHomogeneous)? as usize;
        if k == 0 {
            return Err(Error::NotHomogeneous);
        }
        Ok(InvariantPolynomial {
            algebra: alg.clone(),
            arity: k,
            provenance: Provenance::User,
            name: format!("user:{k}"),
            diagonal: p,
        })
    }

    /// Pull-back to `su(2)` of `(H_1, …, H_k) ↦ ∫_{S²} H_1 ⋯ H_k ω`, where `H_ξ`
    /// is the mean-zero Hamiltonian of the rotation generated by `ξ` and
    /// `ω(S²) = 1`. Computed by a product rule: Gauss–Legendre in the height
    /// and `order` equally spaced angles.
    pub fn reznikov(k: usize, order: usize) -> Result<Self, Error> {
        assert!(k >= 1);
        if order < 2 {
            return Err(Error::QuadratureOrder(order));
        }
        let alg = LieAlgebra::su2();
        let nodes = sphere_rule(order);
        let hams: Vec<[f64; 3]> = nodes.iter().map(|(p, _)| basis_hamiltonians(p)).collect();
        let mut diagonal = Poly::zero(3);
        for alpha in crate::poly::BernsteinMap::multi_indices(2, k as u32) {
            // tensor entry for any index tuple with multiplicities alpha
            let mut t = 0.0;
            for ((_, w), h) in nodes.iter().zip(&hams) {
                let mut prod = *w;
                for (a, &e) in alpha.iter().enumerate() {
                    prod *= libm::pow(h[a], f64::from(e));
                }
                t += prod;
            }
            let mult = multinomial(&alpha);
            let c = t * mult;
            if c != 0.0 {
                diagonal.add_term(alpha.clone(), Scalar::float(c));
            }
        }
        Ok(InvariantPolynomial {
            algebra: alg,
            arity: k,
            provenance: Provenance::Reznikov,
            name: format!("reznikov:{k}:order={order}"),
            diagonal,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn diagonal(&self) -> &Poly {
        &self.diagonal
    }

    pub fn is_exact(&self) -> bool {
        self.diagonal.terms().all(|(_, c)| c.is_exact())
    }

    /// `ρ(v_1, …, v_k)` by polarisation of the diagonal.
    pub fn eval(&self, args: &[Vec<Scalar>]) -> Scalar {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let k = self.arity;
        let perms = permutations(k);
        let kf = Scalar::from_q(crate::scalar::Q::new(1.into(), factorial(k as u64)));
        let mut acc = Scalar::zero();
        for (alpha, c) in self.diagonal.terms() {
            let slots = slots_of(alpha);
            let mut s = Scalar::zero();
            for p in &perms {
                let mut prod = Scalar::one();
                for (j, &a) in slots.iter().enumerate() {
                    prod = &prod * &args[p[j]][a];
                    if prod.is_zero() {
                        break;
                    }
                }
                s += &prod;
            }
            acc += &(&s * c);
        }
        &acc * &kf
    }

    pub fn eval_f64(&self, args: &[Vec<f64>]) -> C64 {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let k = self.arity;
        let perms = permutations(k);
        let mut acc = C64::new(0.0, 0.0);
        for (alpha, c) in self.diagonal.terms() {
            let slots = slots_of(alpha);
            let mut s = 0.0;
            for p in &perms {
                let mut prod = 1.0;
                for (j, &a) in slots.iter().enumerate() {
                    prod *= args[p[j]][a];
                }
                s += prod;
            }
            acc += c.to_c64() * s;
        }
        acc / fact_f64(k as u32)
    }

    /// `ρ(F ∧ ⋯ ∧ F)` for a Lie-valued even form given by its coordinates.
    /// Even forms commute, so this is the diagonal evaluated on `F`.
    pub fn on_even_forms(&self, f: &[PolyForm]) -> PolyForm {
        assert_eq!(f.len(), self.algebra.dim());
        let dim = f[0].dim();
        let deg = f[0].deg() * self.arity;
        let mut out = PolyForm::zero(dim, deg);
        if deg > dim {
            return out;
        }
        let mut powers: Vec<Vec<PolyForm>> = f
            .iter()
            .map(|w| vec![PolyForm::function(Poly::one(dim)), w.clone()])
            .collect();
        for (alpha, c) in self.diagonal.terms() {
            let mut term = PolyForm::function(Poly::constant(dim, c.clone()));
            for (a, &e) in alpha.iter().enumerate() {
                while powers[a].len() <= e as usize {
                    let next = powers[a].last().unwrap().wedge(&f[a]);
                    powers[a].push(next);
                }
                term = term.wedge(&powers[a][e as usize]);
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

    /// `max |ρ(Ad_g v⃗) − ρ(v⃗)| / (1 + |ρ(v⃗)|)`
    pub fn ad_defect(&self, g: &GroupElement, args: &[Vec<f64>]) -> f64 {
        let base = self.eval_f64(args);
        let moved: Vec<Vec<f64>> = args.iter().map(|v| self.algebra.ad(g, v)).collect();
        (self.eval_f64(&moved) - base).norm() / (1.0 + base.norm())
    }
}

/// Variable index of each slot of a monomial, e.g. `x_0² x_2 → [0, 0, 2]`.
fn slots_of(alpha: &[u32]) -> Vec<usize> {
    alpha
        .iter()
        .enumerate()
        .flat_map(|(a, &e)| core::iter::repeat_n(a, e as usize))
        .collect()
}

fn fact_f64(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn multinomial(alpha: &[u32]) -> f64 {
    let k: u32 = alpha.iter().sum();
    let mut m = fact_f64(k);
    for &e in alpha {
        m /= fact_f64(e);
    }
    m
}

/// Points of the unit sphere with weights summing to 1 (area / 4π).
pub fn sphere_rule(order: usize) -> Vec<([f64; 3], f64)> {
    let gl = gauss_legendre(order);
    let mut out = Vec::with_capacity(order * order);
    for &(z, wz) in &gl {
        let r = libm::sqrt(1.0 - z * z);
        for j in 0..order {
            let phi = core::f64::consts::TAU * j as f64 / order as f64;
            let p = [r * libm::cos(phi), r * libm::sin(phi), z];
            out.push((p, wz / (2.0 * order as f64)));
        }
    }
    out
}

/// `H_{e_a}(p) = −p_a / (4π)` for the su(2) basis acting on `S²` by rotations.
pub fn basis_hamiltonians(p: &[f64; 3]) -> [f64; 3] {
    let c = -1.0 / (4.0 * core::f64::consts::PI);
    [c * p[0], c * p[1], c * p[2]]
}

/// The expected constant `ρ(ξ,ξ) / ⟨ξ,ξ⟩` for `reznikov:2` with
/// `⟨ξ,ξ⟩ = −2 tr(ξ²)`: `∫ (x·p)² = |x|²/3` gives `1 / (48π²)`.
pub fn reznikov_quadratic_constant() -> f64 {
    let pi = core::f64::consts::PI;
    1.0 / (48.0 * pi * pi)
}

/// Parses `chern:k`, `symtrace:k`, `reznikov:k[:order=N]` for the given algebra.
pub fn by_name(alg: &LieAlgebra, desc: &str) -> Result<InvariantPolynomial, Error> {
    let mut parts = desc.split(':');
    let kind = parts.next().unwrap_or("");
    let k: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::Unsupported(format!("invariant polynomial `{desc}`")))?;
    match kind {
        "chern" => InvariantPolynomial::chern(alg, k),
        "symtrace" => Ok(InvariantPolynomial::sym_trace(alg, k)),
        "reznikov" => {
            if alg.kind() != LieKind::Su2 {
                return Err(Error::UnsupportedAlgebra(alg.name()));
            }
            let order = match parts.next() {
                None => 32,
                Some(o) => o
                    .strip_prefix("order=")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Unsupported(format!("invariant polynomial `{desc}`")))?,
            };
            InvariantPolynomial::reznikov(k, order)
        }
        _ => Err(Error::Unsupported(format!("invariant polynomial `{desc}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussQ;
    use crate::scalar::Q;
    use num_traits::Zero;

    fn s(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn trace_on_u1() {
        let u1 = LieAlgebra::u1();
        let tr = InvariantPolynomial::sym_trace(&u1, 1);
        // coordinate θ means the matrix iθ
        let v = tr.eval(&[s(&[3])]);
        assert_eq!(v, Scalar::from_gauss(GaussQ::new(Q::zero(), Q::from_integer(3.into()))));
    }

    #[test]
    fn chern_normalisation_on_u1() {
        let u1 = LieAlgebra::u1();
        let c1 = InvariantPolynomial::chern(&u1, 1).unwrap();
        // X = i·a·τ has coordinate a·τ
        let x = vec![&Scalar::from_int(5) * &Scalar::tau()];
        assert_eq!(c1.eval(&[x]), Scalar::from_int(5));
    }

    #[test]
    fn chern_one_vanishes_on_su2() {
        let c1 = InvariantPolynomial::chern(&LieAlgebra::su2(), 1).unwrap();
        assert!(c1.diagonal().is_zero());
        assert!(InvariantPolynomial::chern(&LieAlgebra::so3(), 1).is_err());
    }

    #[test]
    fn sym_trace_two_on_su2_is_trace_form() {
        let su2 = LieAlgebra::su2();
        let t2 = InvariantPolynomial::sym_trace(&su2, 2);
        let x = s(&[1, 2, -1]);
        let y = s(&[0, 3, 5]);
        assert_eq!(t2.eval(&[x.clone(), y.clone()]), su2.trace_form(&x, &y));
    }

    #[test]
    fn polarization_of_a_square() {
        let su2 = LieAlgebra::su2();
        let q = &Poly::var(3, 0) + &Poly::var(3, 2).scale(&Scalar::from_int(2));
        let rho = InvariantPolynomial::polarize(&su2, q.pow(2)).unwrap();
        let x = s(&[1, 4, 2]);
        let y = s(&[3, -1, 1]);
        let qx = Scalar::from_int(5);
        let qy = Scalar::from_int(5);
        assert_eq!(rho.eval(&[x, y]), &qx * &qy);
        let bad = &q + &Poly::one(3);
        assert_eq!(InvariantPolynomial::polarize(&su2, bad), Err(Error::NotHomogeneous));
    }

    #[test]
    fn reznikov_order_guard() {
        assert_eq!(InvariantPolynomial::reznikov(2, 1), Err(Error::QuadratureOrder(1)));
    }

    #[test]
    fn sphere_rule_weights() {
        let r = sphere_rule(8);
        let total: f64 = r.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-14);
        let z2: f64 = r.iter().map(|(p, w)| w * p[2] * p[2]).sum();
        assert!((z2 - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
