//! Connections on simplicial bundles: Lie-valued polynomial 1-forms per chart.
//!
//! Across the face `δ^i` with transition `h = h_{σ,i}` the chart forms satisfy
//! `A_{d_i σ} = Ad_{h⁻¹}(δ_i^* A_σ) + h⁻¹ dh`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bundle::{sample_points, BundleData, TransitionMap};
use crate::form::PolyForm;
use crate::lie::{GroupElement, LieAlgebra};
use crate::poly::{Poly, PolyMap};
use crate::scalar::Scalar;
use crate::simplicial::{product_with_interval, Prism, Simplex, SimplexId, SimplicialMap, SimplicialSet};
use crate::whitney::whitney_extend_tol;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    base: SimplicialSet,
    algebra: LieAlgebra,
    /// `forms[d][idx][a]`: coordinate `a` of the 1-form on simplex `d.idx`.
    forms: Vec<Vec<Vec<PolyForm>>>,
}

/// First gauge-compatibility failure.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeViolation {
    pub simplex: SimplexId,
    pub face: usize,
    pub defect: f64,
}

impl core::fmt::Display for GaugeViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "connection is not gauge compatible across face {} of {} (defect {:e})",
            self.face, self.simplex, self.defect
        )
    }
}

fn zero_coords(d: usize, deg: usize, n: usize) -> Vec<PolyForm> {
    vec![PolyForm::zero(d, deg); n]
}

fn max_defect(a: &[PolyForm], b: &[PolyForm]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let diff = x - y;
            if diff.is_zero() {
                0.0
            } else {
                diff.max_abs_coeff().max(f64::MIN_POSITIVE)
            }
        })
        .fold(0.0, f64::max)
}

/// `Ad_g` as a float matrix on Lie coordinates.
pub fn ad_matrix(alg: &LieAlgebra, g: &GroupElement) -> Vec<Vec<f64>> {
    let n = alg.dim();
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|b| {
            let mut e = vec![0.0; n];
            e[b] = 1.0;
            alg.ad(g, &e)
        })
        .collect();
    (0..n).map(|a| (0..n).map(|b| cols[b][a]).collect()).collect()
}

/// Applies a constant coordinate matrix to a Lie-valued form.
pub fn apply_matrix(m: &[Vec<f64>], w: &[PolyForm]) -> Vec<PolyForm> {
    m.iter()
        .map(|row| {
            let mut acc = PolyForm::zero(w[0].dim(), w[0].deg());
            for (c, f) in row.iter().zip(w) {
                if *c != 0.0 {
                    acc = &acc + &f.scale(&Scalar::float(*c));
                }
            }
            acc
        })
        .collect()
}

/// `d` of a vector of functions, as Lie-valued 1-forms.
fn d_coords(log: &[Poly]) -> Vec<PolyForm> {
    log.iter().map(|p| PolyForm::function(p.clone()).d()).collect()
}

impl Connection {
    pub fn new(base: SimplicialSet, algebra: LieAlgebra, forms: Vec<Vec<Vec<PolyForm>>>) -> Result<Self, Error> {
        if forms.len() != base.dim() + 1 {
            return Err(Error::InvalidConnection("one list of forms per dimension required".into()));
        }
        for (d, row) in forms.iter().enumerate() {
            if row.len() != base.count(d) {
                return Err(Error::InvalidConnection(format!("dimension {d}: wrong number of simplices")));
            }
            for (idx, a) in row.iter().enumerate() {
                if a.len() != algebra.dim() || a.iter().any(|w| w.dim() != d || w.deg() != 1) {
                    return Err(Error::InvalidConnection(format!(
                        "simplex {d}.{idx}: need {} coordinate 1-forms",
                        algebra.dim()
                    )));
                }
            }
        }
        Ok(Connection { base, algebra, forms })
    }

    pub fn zero(base: &SimplicialSet, algebra: &LieAlgebra) -> Self {
        let forms = (0..=base.dim())
            .map(|d| (0..base.count(d)).map(|_| zero_coords(d, 1, algebra.dim())).collect())
            .collect();
        Connection {
            base: base.clone(),
            algebra: algebra.clone(),
            forms,
        }
    }

    pub fn base(&self) -> &SimplicialSet {
        &self.base
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn forms(&self) -> &[Vec<Vec<PolyForm>>] {
        &self.forms
    }

    pub fn get(&self, id: SimplexId) -> &[PolyForm] {
        &self.forms[id.dim][id.index]
    }

    pub fn set(&mut self, id: SimplexId, a: Vec<PolyForm>) {
        assert_eq!(a.len(), self.algebra.dim());
        self.forms[id.dim][id.index] = a;
    }

    /// Chart form on a possibly degenerate simplex.
    pub fn at(&self, y: &Simplex) -> Vec<PolyForm> {
        let a = self.get(y.id);
        if y.is_nondegenerate() {
            return a.to_vec();
        }
        let phi = PolyMap::vertex_map(&y.surj, y.id.dim);
        a.iter().map(|w| w.pullback(&phi)).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.forms
            .iter()
            .flatten()
            .flatten()
            .all(|w| w.comps().all(|(_, p)| p.terms().all(|(_, c)| c.is_exact())))
    }

    pub fn to_float(&self) -> Connection {
        Connection {
            base: self.base.clone(),
            algebra: self.algebra.clone(),
            forms: self
                .forms
                .iter()
                .map(|row| row.iter().map(|a| a.iter().map(PolyForm::to_float).collect()).collect())
                .collect(),
        }
    }

    /// `(f^*A)_σ = A_{f(σ)}`, a connection on `f^*P`.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<Connection, Error> {
        if f.target() != &self.base {
            return Err(Error::BaseMismatch("map does not land in the connection's base".into()));
        }
        let src = f.source();
        let forms = (0..=src.dim())
            .map(|d| src.ids(d).map(|id| self.at(f.image(id))).collect())
            .collect();
        Ok(Connection {
            base: src.clone(),
            algebra: self.algebra.clone(),
            forms,
        })
    }

    /// `F = dA + ½[A ∧ A]` on one simplex.
    pub fn curvature_at(&self, id: SimplexId) -> Vec<PolyForm> {
        curvature_of(&self.algebra, self.get(id))
    }

    /// Largest coefficient of `dF + [A ∧ F]` over all simplices.
    pub fn bianchi_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for id in self.base.all_ids() {
            let a = self.get(id);
            let f = curvature_of(&self.algebra, a);
            let n = self.algebra.dim();
            for c in 0..n {
                let mut b = f[c].d();
                for x in 0..n {
                    for y in 0..n {
                        let s = &self.algebra.structure(x, y)[c];
                        if !num_traits::Zero::is_zero(s) {
                            b = &b + &a[x].wedge(&f[y]).scale_q(s);
                        }
                    }
                }
                if !b.is_zero() {
                    worst = worst.max(b.max_abs_coeff().max(f64::MIN_POSITIVE));
                }
            }
        }
        worst
    }

    /// Checks `A_{d_i σ} = Ad_{h⁻¹}(δ_i^* A_σ) + h⁻¹dh` on every face; exactly
    /// when `tol == 0` and the transition allows it, otherwise up to `tol`.
    pub fn check_gauge(&self, p: &BundleData, tol: f64) -> Result<(), GaugeViolation> {
        assert_eq!(p.base(), &self.base, "connection and bundle over different bases");
        let alg = &self.algebra;
        for d in 1..=self.base.dim() {
            for id in self.base.ids(d) {
                for i in 0..=d {
                    let h = p.transition(id, i).canonical(alg);
                    let face_form = self.at(self.base.face_of(id, i));
                    let pulled: Vec<PolyForm> = self.get(id).iter().map(|w| w.pullback(&PolyMap::face(d, i))).collect();
                    let defect = if h.is_identity() {
                        max_defect(&face_form, &pulled)
                    } else if alg.is_abelian() {
                        let rhs: Vec<PolyForm> = pulled
                            .iter()
                            .zip(d_coords(&h.abelian_log(alg)))
                            .map(|(a, b)| a + &b)
                            .collect();
                        max_defect(&face_form, &rhs)
                    } else if h.is_constant() {
                        let g = h.eval(alg, &vec![0.0; d - 1]).inverse();
                        max_defect(&face_form, &apply_matrix(&ad_matrix(alg, &g), &pulled))
                    } else {
                        sampled_gauge_defect(alg, &h, &face_form, &pulled)
                    };
                    if defect > tol {
                        return Err(GaugeViolation { simplex: id, face: i, defect });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn scale_coords(&self, c: &Scalar) -> Connection {
        Connection {
            base: self.base.clone(),
            algebra: self.algebra.clone(),
            forms: self
                .forms
                .iter()
                .map(|row| row.iter().map(|a| a.iter().map(|w| w.scale(c)).collect()).collect())
                .collect(),
        }
    }
}

/// `F = dA + ½[A ∧ A]` in coordinates: `F^c = dA^c + Σ_{a<b} f^c_{ab} A^a ∧ A^b`.
pub fn curvature_of(alg: &LieAlgebra, a: &[PolyForm]) -> Vec<PolyForm> {
    let n = alg.dim();
    let mut f: Vec<PolyForm> = a.iter().map(PolyForm::d).collect();
    if alg.is_abelian() {
        return f;
    }
    for x in 0..n {
        for y in (x + 1)..n {
            let wedge = a[x].wedge(&a[y]);
            if wedge.is_zero() {
                continue;
            }
            for (c, s) in alg.structure(x, y).iter().enumerate() {
                if !num_traits::Zero::is_zero(s) {
                    f[c] = &f[c] + &wedge.scale_q(s);
                }
            }
        }
    }
    f
}

fn sampled_gauge_defect(alg: &LieAlgebra, h: &TransitionMap, face_form: &[PolyForm], pulled: &[PolyForm]) -> f64 {
    let m = h.dim();
    let coords_at = |w: &[PolyForm], u: &[f64], k: usize| -> Vec<f64> {
        w.iter().map(|f| f.comp(&[k as u8]).eval_f64(u).re).collect()
    };
    let mut worst: f64 = 0.0;
    for u in sample_points(m) {
        let hinv = h.eval(alg, &u).inverse();
        let mc = h.maurer_cartan_at(alg, &u);
        for k in 0..m {
            let lhs = coords_at(face_form, &u, k);
            let ad = alg.ad(&hinv, &coords_at(pulled, &u, k));
            for a in 0..alg.dim() {
                worst = worst.max((lhs[a] - ad[a] - mc[k][a]).abs());
            }
        }
    }
    worst
}

/// The value `δ_i^* A_σ` must take so that the face relation holds, given the
/// chart form on the face.
fn face_prescription(alg: &LieAlgebra, h: &TransitionMap, face_form: Vec<PolyForm>) -> Result<Vec<PolyForm>, Error> {
    if h.is_identity() {
        return Ok(face_form);
    }
    if alg.is_abelian() {
        return Ok(face_form
            .iter()
            .zip(d_coords(&h.abelian_log(alg)))
            .map(|(a, b)| a - &b)
            .collect());
    }
    if h.is_constant() {
        let g = h.eval(alg, &vec![0.0; h.dim()]);
        return Ok(apply_matrix(&ad_matrix(alg, &g), &face_form));
    }
    Err(Error::Unsupported(
        "connections for non-abelian bundles with non-constant transitions".into(),
    ))
}

/// Builds a connection skeleton by skeleton: on each simplex the face
/// prescriptions are extended inward, then `extra(σ)` is added (it must
/// vanish on the boundary).
pub fn skeletal_connection(
    p: &BundleData,
    tol: f64,
    mut extra: impl FnMut(SimplexId) -> Option<Vec<PolyForm>>,
) -> Result<Connection, Error> {
    let base = p.base();
    let alg = p.algebra();
    let mut conn = Connection::zero(base, alg);
    for d in 1..=base.dim() {
        for id in base.ids(d) {
            let pres: Vec<Vec<PolyForm>> = (0..=d)
                .map(|i| {
                    let h = p.transition(id, i).canonical(alg);
                    face_prescription(alg, &h, conn.at(base.face_of(id, i)))
                })
                .collect::<Result<_, _>>()?;
            let mut a: Vec<PolyForm> = (0..alg.dim())
                .map(|c| {
                    let facets: Vec<PolyForm> = pres.iter().map(|pr| pr[c].clone()).collect();
                    whitney_extend_tol(d, &facets, tol)
                })
                .collect::<Result<_, _>>()
                .map_err(|e| Error::AtSimplex {
                    dim: id.dim,
                    index: id.index,
                    source: alloc::boxed::Box::new(e),
                })?;
            if let Some(bump) = extra(id) {
                for (x, y) in a.iter_mut().zip(&bump) {
                    *x = &*x + y;
                }
            }
            conn.set(id, a);
        }
    }
    Ok(conn)
}

/// The canonical connection obtained by extending face data with no interior
/// correction. Float data is extended with tolerance `1e-9`.
pub fn construct_connection(p: &BundleData) -> Result<Connection, Error> {
    skeletal_connection(p, 1e-9, |_| None)
}

/// A concordance on `X × Δ¹` between two connections on the same bundle.
pub struct Concordance {
    pub prism: Prism,
    pub bundle: BundleData,
    pub connection: Connection,
}

/// `Ã = (1 − t) pr^*A₀ + t pr^*A₁` on `pr^*P`, with `t` the interval coordinate.
/// Each face relation is affine in the connection, so `Ã` is compatible
/// whenever `A₀` and `A₁` are.
pub fn concordance(p: &BundleData, a0: &Connection, a1: &Connection) -> Result<Concordance, Error> {
    if a0.base() != p.base() || a1.base() != p.base() {
        return Err(Error::BaseMismatch("connections must live on the bundle's base".into()));
    }
    let prism = product_with_interval(p.base());
    let bundle = p.pullback(&prism.pr)?;
    let alg = p.algebra();
    let forms = prism
        .cells
        .iter()
        .enumerate()
        .map(|(m, row)| {
            row.iter()
                .map(|cell| {
                    let t = Poly::barycentric(m);
                    let mut s = Poly::zero(m);
                    for (v, &b) in cell.interval.iter().enumerate() {
                        if b == 1 {
                            s = &s + &t[v];
                        }
                    }
                    let one_minus = &Poly::one(m) - &s;
                    let x0 = a0.at(&cell.base);
                    let x1 = a1.at(&cell.base);
                    (0..alg.dim())
                        .map(|c| &x0[c].mul_fn(&one_minus) + &x1[c].mul_fn(&s))
                        .collect()
                })
                .collect()
        })
        .collect();
    let connection = Connection::new(prism.set.clone(), alg.clone(), forms)?;
    Ok(Concordance {
        prism,
        bundle,
        connection,
    })
}

/// Changes every chart by a constant gauge `γ_σ = exp(ξ_σ)`:
/// `h' = γ_σ⁻¹ h γ_{d_i σ}` and `A' = Ad_{γ⁻¹} A`.
pub fn constant_gauge_change(
    p: &BundleData,
    a: &Connection,
    xi: &[Vec<Vec<f64>>],
) -> Result<(BundleData, Connection), Error> {
    let base = p.base();
    let alg = p.algebra();
    let float_factor = |v: &[f64], dim: usize| -> Vec<Poly> { v.iter().map(|c| Poly::constant(dim, Scalar::float(*c))).collect() };
    let mut transitions: Vec<Vec<Vec<TransitionMap>>> = vec![Vec::new()];
    for d in 1..=base.dim() {
        let row = base
            .ids(d)
            .map(|id| {
                (0..=d)
                    .map(|i| {
                        let face = base.face_of(id, i);
                        let neg: Vec<f64> = xi[d][id.index].iter().map(|c| -c).collect();
                        TransitionMap::from_factors(d - 1, vec![float_factor(&neg, d - 1)])
                            .mul(p.transition(id, i))
                            .mul(&TransitionMap::from_factors(
                                d - 1,
                                vec![float_factor(&xi[face.id.dim][face.id.index], d - 1)],
                            ))
                    })
                    .collect()
            })
            .collect();
        transitions.push(row);
    }
    let bundle = BundleData::new(base.clone(), alg.clone(), transitions)?;
    let forms = (0..=base.dim())
        .map(|d| {
            base.ids(d)
                .map(|id| {
                    let g = alg.exp(&xi[d][id.index]).inverse();
                    apply_matrix(&ad_matrix(alg, &g), a.get(id))
                })
                .collect()
        })
        .collect();
    Ok((bundle, Connection::new(base.clone(), alg.clone(), forms)?))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::clutch_bundle;
    use crate::simplicial::boundary_sphere;

    #[test]
    fn clutch_connection_is_compatible() {
        let p = clutch_bundle(3);
        let a = construct_connection(&p).unwrap();
        assert!(a.check_gauge(&p, 0.0).is_ok());
        assert_eq!(a.bianchi_defect(), 0.0);
    }

    #[test]
    fn perturbation_is_located() {
        let p = clutch_bundle(1);
        let mut a = construct_connection(&p).unwrap();
        let id = SimplexId::new(2, 0);
        let bad = vec![&a.get(id)[0] + &PolyForm::dx(2, 0)];
        a.set(id, bad);
        let v = a.check_gauge(&p, 0.0).unwrap_err();
        assert_eq!(v.simplex, id);
    }

    #[test]
    fn zero_connection_on_trivial_su2() {
        let x = boundary_sphere(3);
        let p = BundleData::trivial(&x, &LieAlgebra::su2());
        let a = construct_connection(&p).unwrap();
        assert!(a.forms().iter().flatten().flatten().all(PolyForm::is_zero));
        let c = concordance(&p, &a, &a).unwrap();
        assert!(c.connection.check_gauge(&c.bundle, 0.0).is_ok());
    }
}
