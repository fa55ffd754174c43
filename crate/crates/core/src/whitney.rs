//! Extending polynomial forms from the boundary of a simplex to its interior.
//!
//! Facets are filled one at a time. Facet 0 is extended by pulling back along
//! an affine retraction onto it; facet `j ≥ 1` is extended by a cone from
//! vertex `j`, which vanishes on every facet where the residual already
//! vanishes, so earlier facets are never disturbed.

use alloc::vec::Vec;

use crate::form::PolyForm;
use crate::poly::{Poly, PolyMap};
use crate::scalar::Scalar;
use crate::Error;

/// Checks that `prescribed[j]` (a form on facet `j` of `Δ^d`) agree on the
/// pairwise intersections of facets.
pub fn check_prescription(d: usize, prescribed: &[PolyForm]) -> Result<(), Error> {
    check_prescription_tol(d, prescribed, 0.0)
}

/// [`check_prescription`] allowing coefficient differences up to `tol`, for
/// float data.
pub fn check_prescription_tol(d: usize, prescribed: &[PolyForm], tol: f64) -> Result<(), Error> {
    assert_eq!(prescribed.len(), d + 1, "one prescription per facet");
    if d < 2 {
        return Ok(());
    }
    for j in 1..=d {
        for i in 0..j {
            let a = prescribed[j].pullback(&PolyMap::face(d - 1, i));
            let b = prescribed[i].pullback(&PolyMap::face(d - 1, j - 1));
            if a != b && (tol == 0.0 || (&a - &b).max_abs_coeff() > tol) {
                return Err(Error::InconsistentPrescription(i, j));
            }
        }
    }
    Ok(())
}

/// A form on `Δ^d` whose pull-back to facet `j` is `prescribed[j]`.
pub fn whitney_extend(d: usize, prescribed: &[PolyForm]) -> Result<PolyForm, Error> {
    whitney_extend_tol(d, prescribed, 0.0)
}

/// [`whitney_extend`] for float prescriptions that agree only up to `tol`.
pub fn whitney_extend_tol(d: usize, prescribed: &[PolyForm], tol: f64) -> Result<PolyForm, Error> {
    assert!(d >= 1, "Δ^0 has no boundary");
    let k = prescribed[0].deg();
    assert!(
        prescribed.iter().all(|p| p.deg() == k && p.dim() == d - 1),
        "prescriptions must be degree-{k} forms on Δ^{}",
        d - 1
    );
    check_prescription_tol(d, prescribed, tol)?;
    let mut omega = prescribed[0].pullback(&retraction_onto_facet0(d));
    for j in 1..=d {
        let r = &prescribed[j] - &omega.pullback(&PolyMap::face(d, j));
        if !r.is_zero() {
            omega = &omega + &cone_from_vertex(d, j, &r);
        }
    }
    debug_assert!(tol > 0.0 || (0..=d).all(|j| omega.pullback(&PolyMap::face(d, j)) == prescribed[j]));
    Ok(omega)
}

/// Affine map `Δ^d → Δ^{d-1}` that is the identity on facet 0 and sends
/// vertex 0 to the barycentre of that facet.
fn retraction_onto_facet0(d: usize) -> PolyMap {
    let t = Poly::barycentric(d);
    let share = t[0].scale(&Scalar::ratio(1, d as i64));
    PolyMap::new(d, (1..d).map(|a| &t[a + 1] + &share).collect())
}

/// Extends `r` (a form on facet `j`) from vertex `j`:
/// `η = D^{m+2k} π*r` with `π` the radial projection onto the facet and
/// `D = 1 − t_j`, which is polynomial once `m` bounds the coefficient degrees.
fn cone_from_vertex(d: usize, j: usize, r: &PolyForm) -> PolyForm {
    let k = r.deg();
    let t = Poly::barycentric(d);
    let facet_vertex = |a: usize| if a < j { a } else { a + 1 };
    // N_a: barycentric coordinate of the facet's vertex a, as a function on Δ^d.
    let n: Vec<Poly> = (0..d).map(|a| t[facet_vertex(a)].clone()).collect();
    let big_d = &Poly::one(d) - &t[j];
    let n_forms: Vec<PolyForm> = n.iter().map(|p| PolyForm::function(p.clone()).d()).collect();
    let d_form = PolyForm::function(big_d.clone()).d();
    // D dN_a − N_a dD, the numerator of d(N_a / D)
    let radial: Vec<PolyForm> = (0..d)
        .map(|a| &n_forms[a].mul_fn(&big_d) - &d_form.mul_fn(&n[a]))
        .collect();
    let m = r.poly_degree().max(u32::from(k == 0));
    let mut eta = PolyForm::zero(d, k);
    for (idx, f) in r.comps() {
        let mut coeff = Poly::zero(d);
        for (alpha, c) in f.terms() {
            let mut term = Poly::constant(d, c.clone());
            for (a, &e) in alpha.iter().enumerate() {
                term = &term * &n[a + 1].pow(e);
            }
            let total: u32 = alpha.iter().sum();
            term = &term * &big_d.pow(m - total);
            coeff = &coeff + &term;
        }
        let mut piece = PolyForm::function(coeff);
        for &a in idx {
            piece = piece.wedge(&radial[a as usize + 1]);
        }
        eta = &eta + &piece;
    }
    eta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::PolyForm;

    #[test]
    fn zero_and_constant_prescriptions() {
        let zero: Vec<PolyForm> = (0..3).map(|_| PolyForm::zero(1, 1)).collect();
        assert!(whitney_extend(2, &zero).unwrap().is_zero());
        let c = PolyForm::function(Poly::constant(1, Scalar::ratio(3, 4)));
        let ext = whitney_extend(2, &[c.clone(), c.clone(), c]).unwrap();
        assert_eq!(ext, PolyForm::function(Poly::constant(2, Scalar::ratio(3, 4))));
    }

    #[test]
    fn endpoint_values_on_an_edge() {
        let a = PolyForm::function(Poly::constant(0, Scalar::from_int(2)));
        let b = PolyForm::function(Poly::constant(0, Scalar::from_int(-5)));
        let ext = whitney_extend(1, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(ext.pullback(&PolyMap::face(1, 0)), a);
        assert_eq!(ext.pullback(&PolyMap::face(1, 1)), b);
    }

    #[test]
    fn restriction_of_global_form_is_recovered() {
        // prescription coming from a global 1-form on Δ³
        let x = |i| Poly::var(3, i);
        let w = PolyForm::from_comps(
            3,
            1,
            [
                (alloc::vec![0u8], &(&x(1) * &x(2)) + &Poly::one(3)),
                (alloc::vec![2u8], x(0).pow(2)),
            ],
        );
        let pres: Vec<PolyForm> = (0..=3).map(|j| w.pullback(&PolyMap::face(3, j))).collect();
        let ext = whitney_extend(3, &pres).unwrap();
        for j in 0..=3 {
            assert_eq!(ext.pullback(&PolyMap::face(3, j)), pres[j]);
        }
    }

    #[test]
    fn inconsistent_prescription_names_faces() {
        let c = |v| PolyForm::function(Poly::constant(1, Scalar::from_int(v)));
        let err = whitney_extend(2, &[c(1), c(1), c(2)]).unwrap_err();
        assert_eq!(err, Error::InconsistentPrescription(0, 2));
    }
}
