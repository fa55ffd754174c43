//! Simplicial differential forms: one polynomial form per nondegenerate simplex.
//!
//! A degenerate simplex `X(ε)x` carries the pull-back of `ω_x` along the affine
//! collapse `Δ^m → Δ^n` induced by `ε`.

use alloc::vec::Vec;

use crate::form::PolyForm;
use crate::poly::PolyMap;
use crate::scalar::Scalar;
use crate::simplicial::{Cochain, Simplex, SimplexId, SimplicialMap, SimplicialSet};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialForm {
    base: SimplicialSet,
    deg: usize,
    forms: Vec<Vec<PolyForm>>,
}

/// First face-compatibility failure found by [`SimplicialForm::check`].
#[derive(Clone, Debug, PartialEq)]
pub struct FaceViolation {
    pub simplex: SimplexId,
    pub face: usize,
    pub target: Simplex,
}

impl core::fmt::Display for FaceViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "face {} of simplex {} disagrees with the form on {}",
            self.face, self.simplex, self.target
        )
    }
}

impl SimplicialForm {
    /// Assembles a form from per-simplex data; call [`check`](Self::check) to
    /// validate face compatibility.
    pub fn new(base: SimplicialSet, deg: usize, forms: Vec<Vec<PolyForm>>) -> Result<Self, Error> {
        if forms.len() != base.dim() + 1 {
            return Err(Error::InvalidSimplicialSet("one form list per dimension required".into()));
        }
        for (d, row) in forms.iter().enumerate() {
            if row.len() != base.count(d) || row.iter().any(|w| w.dim() != d || w.deg() != deg) {
                return Err(Error::DegreeMismatch { expected: deg, found: row.first().map_or(deg, PolyForm::deg) });
            }
        }
        Ok(SimplicialForm { base, deg, forms })
    }

    pub fn zero(base: &SimplicialSet, deg: usize) -> Self {
        let forms = (0..=base.dim())
            .map(|d| (0..base.count(d)).map(|_| PolyForm::zero(d, deg)).collect())
            .collect();
        SimplicialForm {
            base: base.clone(),
            deg,
            forms,
        }
    }

    /// The form whose value on every `d`-simplex is `f(d)`.
    pub fn from_fn(base: &SimplicialSet, deg: usize, f: impl Fn(SimplexId) -> PolyForm) -> Result<Self, Error> {
        let forms = (0..=base.dim()).map(|d| base.ids(d).map(&f).collect()).collect();
        SimplicialForm::new(base.clone(), deg, forms)
    }

    pub fn base(&self) -> &SimplicialSet {
        &self.base
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn get(&self, id: SimplexId) -> &PolyForm {
        &self.forms[id.dim][id.index]
    }

    pub fn set(&mut self, id: SimplexId, w: PolyForm) {
        assert!(w.dim() == id.dim && w.deg() == self.deg);
        self.forms[id.dim][id.index] = w;
    }

    pub fn forms(&self) -> &[Vec<PolyForm>] {
        &self.forms
    }

    /// Value on a possibly degenerate simplex.
    pub fn at(&self, y: &Simplex) -> PolyForm {
        let w = self.get(y.id);
        if y.is_nondegenerate() {
            w.clone()
        } else {
            w.pullback(&PolyMap::vertex_map(&y.surj, y.id.dim))
        }
    }

    /// Verifies `δ_i^* ω_Σ = ω_{d_i Σ}` on every face.
    pub fn check(&self) -> Result<(), FaceViolation> {
        for d in 1..=self.base.dim() {
            for id in self.base.ids(d) {
                for i in 0..=d {
                    let target = self.base.face_of(id, i);
                    if self.get(id).pullback(&PolyMap::face(d, i)) != self.at(target) {
                        return Err(FaceViolation {
                            simplex: id,
                            face: i,
                            target: target.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Face check with a numerical tolerance, for float-mode data.
    pub fn check_approx(&self, tol: f64) -> Result<(), FaceViolation> {
        for d in 1..=self.base.dim() {
            for id in self.base.ids(d) {
                for i in 0..=d {
                    let target = self.base.face_of(id, i);
                    let diff = &self.get(id).pullback(&PolyMap::face(d, i)) - &self.at(target);
                    if diff.max_abs_coeff() > tol {
                        return Err(FaceViolation {
                            simplex: id,
                            face: i,
                            target: target.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn map(&self, deg: usize, f: impl Fn(&PolyForm) -> PolyForm) -> SimplicialForm {
        SimplicialForm {
            base: self.base.clone(),
            deg,
            forms: self.forms.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    pub fn d(&self) -> SimplicialForm {
        self.map(self.deg + 1, PolyForm::d)
    }

    pub fn wedge(&self, other: &SimplicialForm) -> SimplicialForm {
        assert_eq!(self.base, other.base, "wedge of forms on different simplicial sets");
        SimplicialForm {
            base: self.base.clone(),
            deg: self.deg + other.deg,
            forms: self
                .forms
                .iter()
                .zip(&other.forms)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.wedge(y)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SimplicialForm {
        self.map(self.deg, |w| w.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().flatten().all(PolyForm::is_zero)
    }

    /// `(f^*ω)_Σ = ω_{f(Σ)}`
    pub fn pullback(&self, f: &SimplicialMap) -> Result<SimplicialForm, Error> {
        if f.target() != &self.base {
            return Err(Error::BaseMismatch("pull-back map does not land in the form's base".into()));
        }
        let src = f.source();
        let forms = (0..=src.dim())
            .map(|d| src.ids(d).map(|id| self.at(f.image(id))).collect())
            .collect();
        Ok(SimplicialForm {
            base: src.clone(),
            deg: self.deg,
            forms,
        })
    }

    /// `(∫ω)(Σ) = ∫_{Δ^k} ω_Σ` on nondegenerate `k`-simplices, `k = deg`.
    pub fn integrate(&self) -> Cochain {
        let k = self.deg;
        Cochain {
            dim: k,
            values: self
                .base
                .ids(k)
                .map(|id| self.get(id).integrate_top().expect("top degree"))
                .collect(),
        }
    }
}

impl<'a> core::ops::Add<&'a SimplicialForm> for &'a SimplicialForm {
    type Output = SimplicialForm;
    fn add(self, rhs: &'a SimplicialForm) -> SimplicialForm {
        assert_eq!(self.base, rhs.base);
        SimplicialForm {
            base: self.base.clone(),
            deg: self.deg,
            forms: self
                .forms
                .iter()
                .zip(&rhs.forms)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}

impl<'a> core::ops::Sub<&'a SimplicialForm> for &'a SimplicialForm {
    type Output = SimplicialForm;
    fn sub(self, rhs: &'a SimplicialForm) -> SimplicialForm {
        assert_eq!(self.base, rhs.base);
        SimplicialForm {
            base: self.base.clone(),
            deg: self.deg,
            forms: self
                .forms
                .iter()
                .zip(&rhs.forms)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }
}

/// Prescriptions on the facets of a `d`-simplex, read off a partially built
/// simplicial form through the face maps of `base`.
pub fn facet_data(base: &SimplicialSet, id: SimplexId, at: impl Fn(&Simplex) -> PolyForm) -> Vec<PolyForm> {
    (0..=id.dim).map(|i| at(base.face_of(id, i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::simplicial::{standard_simplex_complex, two_disk_sphere};

    #[test]
    fn induced_form_on_standard_simplex_is_compatible() {
        // a global form on Δ² restricted to every face of the standard simplex
        let c = standard_simplex_complex(2);
        let w = PolyForm::from_comps(2, 1, [(alloc::vec![0u8], Poly::var(2, 1))]);
        let sf = SimplicialForm::from_fn(&c.set, 1, |id| {
            let verts = &c.cells[id.dim][id.index];
            w.pullback(&PolyMap::vertex_map(verts, 2))
        })
        .unwrap();
        assert!(sf.check().is_ok());
    }

    #[test]
    fn perturbed_form_fails_at_located_face() {
        let x = two_disk_sphere();
        let mut sf = SimplicialForm::zero(&x, 0);
        assert!(sf.check().is_ok());
        sf.set(SimplexId::new(1, 2), PolyForm::function(Poly::var(1, 0)));
        let v = sf.check().unwrap_err();
        assert_eq!(v.simplex, SimplexId::new(1, 2));
    }

    #[test]
    fn zero_forms_integrate_to_vertex_values() {
        let x = two_disk_sphere();
        let sf = SimplicialForm::from_fn(&x, 0, |id| {
            PolyForm::function(Poly::constant(id.dim, Scalar::from_int(7)))
        })
        .unwrap();
        let c = sf.integrate();
        assert_eq!(c.values, alloc::vec![Scalar::from_int(7); 3]);
    }
}
