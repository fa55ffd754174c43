//! Chern–Weil forms and cochains of simplicial connections.
//!
//! For an invariant polynomial `ρ` of arity `k` and curvature `F`, the form is
//! `c_k ρ(F ∧ ⋯ ∧ F)` on every simplex, where the calibration constant `c_k`
//! matches the antisymmetrised value
//! `(1/(2k)!) Σ_σ sgn σ ρ(F(v_σ1, v_σ2), …, F(v_σ(2k−1), v_σ(2k)))`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::bundle::BundleData;
use crate::connection::{concordance, Connection};
use crate::form::PolyForm;
use crate::invariant::{permutation_sign, permutations, InvariantPolynomial};
use crate::lie::LieAlgebra;
use crate::poly::{factorial, Poly};
use crate::quadrature::simplex_rule;
use crate::scalar::{q, Q, Scalar};
use crate::simplicial::{Chain, Cochain, Prism, PrismCell, Simplex, SimplexId, SimplicialMap};
use crate::simplicial_form::SimplicialForm;
use crate::Error;

/// The antisymmetrised evaluation of `ρ` on a Lie-valued 2-form at a point,
/// given `F(v_a, v_b)` for all pairs of the `2k` vectors.
pub fn permutation_formula(rho: &InvariantPolynomial, f_pairs: &[Vec<Vec<Scalar>>]) -> Scalar {
    let k = rho.arity();
    assert_eq!(f_pairs.len(), 2 * k);
    let mut acc = Scalar::zero();
    for p in permutations(2 * k) {
        let args: Vec<Vec<Scalar>> = (0..k).map(|j| f_pairs[p[2 * j]][p[2 * j + 1]].clone()).collect();
        let v = rho.eval(&args);
        if !v.is_zero() {
            acc = &acc + &v.mul_q(&q(permutation_sign(&p)));
        }
    }
    acc.mul_q(&Q::new(1.into(), factorial(2 * k as u64)))
}

/// `F(v_a, v_b)` for a Lie-valued 2-form at a rational point.
pub fn pair_values(f: &[PolyForm], point: &[Q], vectors: &[Vec<Q>]) -> Vec<Vec<Vec<Scalar>>> {
    let n = vectors.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    f.iter()
                        .map(|w| w.eval_on(point, &[vectors[a].clone(), vectors[b].clone()]))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `c_k`, measured by comparing the permutation formula with the wedge power
/// for `ρ = x^k` on `u(1)` and `F = dx_1∧dx_2 + ⋯ + dx_{2k−1}∧dx_{2k}` at the
/// standard basis vectors.
pub fn calibration_constant(k: usize) -> Q {
    assert!(k >= 1);
    let u1 = LieAlgebra::u1();
    let rho = InvariantPolynomial::polarize(&u1, Poly::var(1, 0).pow(k as u32)).expect("homogeneous");
    let n = 2 * k;
    let mut f = PolyForm::zero(n, 2);
    for j in 0..k {
        f = &f + &PolyForm::dx(n, 2 * j).wedge(&PolyForm::dx(n, 2 * j + 1));
    }
    let point = vec![Q::zero(); n];
    let basis: Vec<Vec<Q>> = (0..n).map(|a| (0..n).map(|b| q(i64::from(a == b))).collect()).collect();
    let wedge = rho.on_even_forms(&[f.clone()]).eval_on(&point, &basis);
    let perm = permutation_formula(&rho, &pair_values(&[f], &point, &basis));
    (&perm * &wedge.inv().expect("nonzero monomial")).as_q().expect("rational")
}

fn check_algebra(rho: &InvariantPolynomial, a: &Connection) -> Result<(), Error> {
    rho.algebra().check_same(a.algebra())
}

/// The Chern–Weil form `ω_ρ(F)` of degree `2k`.
pub fn cw_form(rho: &InvariantPolynomial, a: &Connection) -> Result<SimplicialForm, Error> {
    check_algebra(rho, a)?;
    let c = Scalar::from_q(calibration_constant(rho.arity()));
    let deg = 2 * rho.arity();
    SimplicialForm::from_fn(a.base(), deg, |id| {
        if id.dim < deg {
            return PolyForm::zero(id.dim, deg);
        }
        rho.on_even_forms(&a.curvature_at(id)).scale(&c)
    })
}

/// `∫ω_ρ(F)` on nondegenerate `2k`-simplices.
pub fn cw_cochain(rho: &InvariantPolynomial, a: &Connection) -> Result<Cochain, Error> {
    check_algebra(rho, a)?;
    let c = Scalar::from_q(calibration_constant(rho.arity()));
    let deg = 2 * rho.arity();
    let x = a.base();
    let values = if deg > x.dim() {
        Vec::new()
    } else {
        x.ids(deg)
            .map(|id| rho.on_even_forms(&a.curvature_at(id)).scale(&c).integrate_top())
            .collect::<Result<_, _>>()?
    };
    Ok(Cochain { dim: deg, values })
}

fn cochain_is_exact(c: &Cochain) -> bool {
    c.values.iter().all(Scalar::is_exact)
}

fn max_abs(c: &Cochain) -> f64 {
    c.values.iter().map(Scalar::abs).fold(0.0, f64::max)
}

/// The summary line for a characteristic class computation.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub rho: String,
    pub bundle: String,
    pub cochain: Cochain,
    pub closed: bool,
    /// Pairings with a basis of `2k`-cycles.
    pub pairings: Vec<Scalar>,
    /// A cochain `b` with `δb = α` when the class vanishes.
    pub witness: Option<Cochain>,
}

impl core::fmt::Display for ClassReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "class ρ={} bundle={}: closed={} pairings=[",
            self.rho,
            self.bundle,
            if self.closed { "yes" } else { "no" }
        )?;
        for (i, p) in self.pairings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "] witness={}", if self.witness.is_some() { "present" } else { "absent" })
    }
}

/// Computes the class of `α = ∫ω_ρ(F)` on `X`. `cycles` defaults to a basis of
/// `2k`-cycles.
pub fn class_report(
    rho: &InvariantPolynomial,
    a: &Connection,
    bundle_name: &str,
    cycles: Option<Vec<Chain>>,
    tol: f64,
) -> Result<ClassReport, Error> {
    let alpha = cw_cochain(rho, a)?;
    let x = a.base();
    let k2 = alpha.dim;
    let cycles = cycles.unwrap_or_else(|| if k2 <= x.dim() { x.cycle_basis(k2) } else { Vec::new() });
    let pairings: Vec<Scalar> = cycles.iter().map(|z| alpha.pair(z)).collect();
    let (closed, witness) = if k2 > x.dim() {
        (true, None)
    } else if cochain_is_exact(&alpha) {
        let closed = k2 == x.dim() || x.coboundary(&alpha).is_zero();
        (closed, x.is_coboundary(&alpha).ok())
    } else {
        let closed = k2 == x.dim() || max_abs(&x.coboundary(&alpha)) <= tol;
        (closed, None)
    };
    Ok(ClassReport {
        rho: String::from(rho.name()),
        bundle: String::from(bundle_name),
        cochain: alpha,
        closed,
        pairings,
        witness,
    })
}

/// `X × Δ¹` carried by `σ`: the signed sum of the prism cells over the
/// degeneracies `s_j σ`.
pub fn prism_chain(prism: &Prism, sigma: SimplexId) -> Chain {
    let m = sigma.dim;
    let mut coeffs = vec![Scalar::zero(); prism.set.count(m + 1)];
    for j in 0..=m {
        let surj: Vec<usize> = (0..=m + 1).map(|v| if v <= j { v } else { v - 1 }).collect();
        let cell = PrismCell {
            base: Simplex { id: sigma, surj },
            interval: (0..=m + 1).map(|v| usize::from(v > j)).collect(),
        };
        let idx = prism.cells[m + 1].binary_search(&cell).expect("prism cell");
        let sign = if j % 2 == 0 { 1 } else { -1 };
        coeffs[idx] = Scalar::from_int(sign);
    }
    Chain { dim: m + 1, coeffs }
}

/// Outcome of comparing the classes of two connections on one bundle.
#[derive(Clone, Debug)]
pub struct Independence {
    pub difference: Cochain,
    /// `T(σ) = ∫_{σ×Δ¹} ω_ρ(F̃)` for the interpolating concordance; `δT = α₁ − α₀`.
    pub transgression: Cochain,
    /// `δT − (α₁ − α₀)`, zero in exact arithmetic.
    pub transgression_defect: f64,
    /// Result of solving `δb = α₁ − α₀` directly.
    pub linear_witness: Result<Cochain, Chain>,
}

/// Compares `α(A₀)` and `α(A₁)` by two independent routes: an explicit
/// transgression through the concordance, and exact linear algebra.
pub fn connection_independence(
    rho: &InvariantPolynomial,
    p: &BundleData,
    a0: &Connection,
    a1: &Connection,
) -> Result<Independence, Error> {
    let x = p.base();
    let alpha0 = cw_cochain(rho, a0)?;
    let alpha1 = cw_cochain(rho, a1)?;
    let difference = &alpha1 - &alpha0;
    let k2 = difference.dim;
    let conc = concordance(p, a0, a1)?;
    let cal = Scalar::from_q(calibration_constant(rho.arity()));
    let values: Vec<Scalar> = if k2 == 0 {
        Vec::new()
    } else {
        x.ids(k2 - 1)
            .map(|sigma| {
                let chain = prism_chain(&conc.prism, sigma);
                let mut acc = Scalar::zero();
                for (idx, c) in chain.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        let f = conc.connection.curvature_at(SimplexId::new(k2, idx));
                        let v = rho.on_even_forms(&f).scale(&cal).integrate_top().expect("top degree");
                        acc = &acc + &(c * &v);
                    }
                }
                acc
            })
            .collect()
    };
    let transgression = Cochain {
        dim: k2.saturating_sub(1),
        values,
    };
    let transgression_defect = if k2 == 0 || k2 > x.dim() {
        max_abs(&difference)
    } else {
        let r = &x.coboundary(&transgression) - &difference;
        if r.is_zero() {
            0.0
        } else {
            max_abs(&r).max(f64::MIN_POSITIVE)
        }
    };
    let linear_witness = if k2 > x.dim() {
        Ok(Cochain { dim: k2.saturating_sub(1), values: Vec::new() })
    } else if cochain_is_exact(&difference) {
        x.is_coboundary(&difference)
    } else {
        // over the reals: a coboundary iff it pairs to zero with every cycle
        let z = x.cycle_basis(k2).into_iter().find(|z| difference.pair(z).abs() > 1e-9);
        match z {
            Some(z) => Err(z),
            None => Ok(transgression.clone()),
        }
    };
    Ok(Independence {
        difference,
        transgression,
        transgression_defect,
        linear_witness,
    })
}

/// `(α(f^*P, f^*A), f^*α(P, A))`, equal by naturality.
pub fn naturality_pair(
    rho: &InvariantPolynomial,
    a: &Connection,
    f: &SimplicialMap,
) -> Result<(Cochain, Cochain), Error> {
    let pulled = a.pullback(f)?;
    let lhs = cw_cochain(rho, &pulled)?;
    let mut rhs = f.pull_cochain(&cw_cochain(rho, a)?);
    if rhs.values.len() != lhs.values.len() {
        rhs = Cochain::zero(f.source(), lhs.dim);
    }
    Ok((lhs, rhs))
}

/// `α` on each top simplex of a 2-dimensional base, computed by float
/// quadrature of `c_1 ρ(F)` at sample points rather than exact integration.
pub fn quadrature_cochain(rho: &InvariantPolynomial, a: &Connection, order: usize) -> Result<Vec<f64>, Error> {
    check_algebra(rho, a)?;
    if rho.arity() != 1 {
        return Err(Error::Unsupported(format!("quadrature check for arity {}", rho.arity())));
    }
    let rule = simplex_rule(2, order);
    Ok(a.base()
        .ids(2)
        .map(|id| {
            let f = a.curvature_at(id);
            rule.iter()
                .map(|(pt, w)| {
                    let v: Vec<f64> = f.iter().map(|c| c.comp(&[0, 1]).eval_f64(pt).re).collect();
                    w * rho.eval_f64(&[v]).re
                })
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::clutch_bundle;
    use crate::connection::construct_connection;
    use crate::scalar::qr;
    use crate::simplicial::{product_with_interval, standard_simplex, two_disk_fundamental_cycle};

    #[test]
    fn calibration_constants() {
        assert_eq!(calibration_constant(1), q(1));
        assert_eq!(calibration_constant(2), qr(1, 6));
        assert_eq!(calibration_constant(3), qr(1, 90));
    }

    #[test]
    fn clutch_chern_numbers() {
        for n in -3..=3 {
            let p = clutch_bundle(n);
            let a = construct_connection(&p).unwrap();
            let rho = InvariantPolynomial::chern(p.algebra(), 1).unwrap();
            let alpha = cw_cochain(&rho, &a).unwrap();
            assert_eq!(alpha.pair(&two_disk_fundamental_cycle()), Scalar::from_int(n));
        }
    }

    #[test]
    fn prism_chain_boundary() {
        // ∂(σ × Δ¹) = σ×1 − σ×0 − (∂σ)×Δ¹
        let x = standard_simplex(2);
        let prism = product_with_interval(&x);
        for m in 0..=2 {
            for sigma in x.ids(m) {
                let lhs = prism.set.boundary(&prism_chain(&prism, sigma));
                let mut rhs = vec![Scalar::zero(); prism.set.count(m)];
                rhs[prism.i1.image(sigma).id.index] = &rhs[prism.i1.image(sigma).id.index] + &Scalar::one();
                rhs[prism.i0.image(sigma).id.index] = &rhs[prism.i0.image(sigma).id.index] - &Scalar::one();
                if m > 0 {
                    for i in 0..=m {
                        let face = x.face_of(sigma, i).id;
                        let c = prism_chain(&prism, face);
                        let s = if i % 2 == 0 { -1 } else { 1 };
                        for (r, v) in rhs.iter_mut().zip(&c.coeffs) {
                            *r = &*r + &v.mul_q(&q(s));
                        }
                    }
                }
                assert_eq!(lhs.coeffs, rhs, "σ = {sigma}");
            }
        }
    }
}
