//! Seeded generators for test data: rational polynomials and forms, simplicial
//! forms, connections, Lie algebra and group elements, monotone maps.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundle::{BundleData, TransitionMap};
use crate::connection::{skeletal_connection, Connection};
use crate::form::{index_sets, PolyForm};
use crate::lie::{GroupElement, LieAlgebra};
use crate::poly::{Poly, PolyMap};
use crate::scalar::{Q, Scalar};
use crate::simplicial::{HornPresentation, SimplicialSet};
use crate::simplicial_form::SimplicialForm;
use crate::whitney::whitney_extend;
use crate::Error;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `n/d` with `|n| ≤ num`, `1 ≤ d ≤ den`.
pub fn random_q(rng: &mut Rng64, num: i64, den: i64) -> Q {
    Q::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

/// A polynomial of total degree `≤ degree` with about `density` of the
/// possible monomials present.
pub fn random_poly(rng: &mut Rng64, nvars: usize, degree: u32, density: f64) -> Poly {
    let mut p = Poly::zero(nvars);
    for exps in monomials(nvars, degree) {
        if rng.gen_bool(density) {
            p.add_term(exps, Scalar::from_q(random_q(rng, 5, 4)));
        }
    }
    p
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in 0..=degree {
        for mut rest in monomials(nvars - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

pub fn random_form(rng: &mut Rng64, dim: usize, deg: usize, poly_deg: u32) -> PolyForm {
    let mut w = PolyForm::zero(dim, deg);
    if deg > dim {
        return w;
    }
    for idx in index_sets(dim, deg) {
        w.add_comp(idx, random_poly(rng, dim, poly_deg, 0.5));
    }
    w
}

/// `t_0 t_1 ⋯ t_d`, which vanishes on every facet of `Δ^d`.
pub fn bubble(d: usize) -> Poly {
    Poly::barycentric(d).iter().fold(Poly::one(d), |acc, t| &acc * t)
}

/// A random compatible `k`-form: faces are extended inward and a random
/// bubble term is added on each simplex.
pub fn random_simplicial_form(rng: &mut Rng64, x: &SimplicialSet, k: usize, poly_deg: u32) -> SimplicialForm {
    let mut sf = SimplicialForm::zero(x, k);
    for id in x.ids(0) {
        if k == 0 {
            let c = Scalar::from_q(random_q(rng, 5, 3));
            sf.set(id, PolyForm::function(Poly::constant(0, c)));
        }
    }
    for d in 1..=x.dim() {
        for id in x.ids(d) {
            let pres: Vec<PolyForm> = (0..=d).map(|i| sf.at(x.face_of(id, i))).collect();
            let mut w = whitney_extend(d, &pres).expect("faces of a compatible form agree");
            if k <= d {
                w = &w + &random_form(rng, d, k, poly_deg).mul_fn(&bubble(d));
            }
            sf.set(id, w);
        }
    }
    sf
}

pub fn random_lie_element(rng: &mut Rng64, alg: &LieAlgebra, scale: f64) -> Vec<f64> {
    (0..alg.dim()).map(|_| rng.gen_range(-scale..scale)).collect()
}

pub fn random_lie_element_q(rng: &mut Rng64, alg: &LieAlgebra) -> Vec<Scalar> {
    (0..alg.dim()).map(|_| Scalar::from_q(random_q(rng, 4, 3))).collect()
}

pub fn random_group_element(rng: &mut Rng64, alg: &LieAlgebra) -> GroupElement {
    let x = random_lie_element(rng, alg, 2.0);
    alg.exp(&x)
}

/// A random connection: the canonical extension plus a random bubble term on
/// every simplex of positive dimension.
pub fn random_connection(rng: &mut Rng64, p: &BundleData) -> Result<Connection, Error> {
    let n = p.algebra().dim();
    skeletal_connection(p, 1e-9, |id| {
        let b = bubble(id.dim);
        Some((0..n).map(|_| random_form(rng, id.dim, 1, 1).mul_fn(&b)).collect())
    })
}

/// A monotone map `[m] → [n]`.
pub fn random_monotone(rng: &mut Rng64, m: usize, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..=m).map(|_| rng.gen_range(0..=n)).collect();
    v.sort_unstable();
    v
}

/// A random `U(1)` cocycle over a horn: gauge logs `G_σ` and integer windings
/// `m_{σ,i}` give `log h_{σ,i} = G_σ ∘ δ^i − G_{d_i σ} + τ m_{σ,i}`.
pub fn random_u1_horn_bundle(rng: &mut Rng64, horn: &HornPresentation, poly_deg: u32) -> BundleData {
    let x = horn.set();
    let alg = LieAlgebra::u1();
    let gauge: Vec<Vec<Poly>> = (0..=x.dim())
        .map(|d| x.ids(d).map(|_| random_poly(rng, d, poly_deg, 0.6).scale(&Scalar::tau())).collect())
        .collect();
    let mut transitions: Vec<Vec<Vec<TransitionMap>>> = vec![Vec::new()];
    for d in 1..=x.dim() {
        let row = x
            .ids(d)
            .map(|id| {
                (0..=d)
                    .map(|i| {
                        let f = x.face_of(id, i).id;
                        let winding = Scalar::from_int(rng.gen_range(-2..=2));
                        let log = &(&PolyMap::face(d, i).pull_poly(&gauge[d][id.index]) - &gauge[f.dim][f.index])
                            + &Poly::constant(d - 1, &winding * &Scalar::tau());
                        TransitionMap::exp(vec![log]).canonical(&alg)
                    })
                    .collect()
            })
            .collect();
        transitions.push(row);
    }
    BundleData::new(x.clone(), alg, transitions).expect("well-shaped")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_sphere, horn};

    #[test]
    fn generators_are_deterministic() {
        let a = random_poly(&mut rng(7), 3, 3, 0.5);
        let b = random_poly(&mut rng(7), 3, 3, 0.5);
        assert_eq!(a, b);
    }

    #[test]
    fn random_simplicial_forms_are_compatible() {
        let x = boundary_sphere(3);
        for k in 0..=2 {
            let sf = random_simplicial_form(&mut rng(k as u64), &x, k, 2);
            assert!(sf.check().is_ok(), "k = {k}");
        }
    }

    #[test]
    fn random_horn_data_is_a_cocycle() {
        for (n, k) in [(2, 1), (3, 0)] {
            let h = horn(n, k).unwrap();
            let p = random_u1_horn_bundle(&mut rng(3), &h, 2);
            assert!(p.validate(0.0).is_ok());
        }
    }

    #[test]
    fn random_connection_is_compatible() {
        let x = boundary_sphere(3);
        let p = BundleData::trivial(&x, &LieAlgebra::su2());
        let a = random_connection(&mut rng(1), &p).unwrap();
        assert!(a.check_gauge(&p, 0.0).is_ok());
        assert!(!a.forms()[2][0].iter().all(PolyForm::is_zero));
    }
}
