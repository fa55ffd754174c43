//! Small matrix Lie algebras and their groups.
//!
//! Elements are coordinate vectors in a fixed real basis of skew-Hermitian
//! (or real skew-symmetric) matrices. Structure constants are rational, so
//! brackets of exact coordinates stay exact.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::linalg::{QMatrix, Rref};
use crate::scalar::{GaussQ, Scalar, C64, Q};
use crate::Error;

/// Exact complex matrix with Gaussian-rational entries.
pub type GMat = Vec<Vec<GaussQ>>;
/// Complex float matrix used for group elements.
pub type CMat = DMatrix<C64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieKind {
    U1,
    Su2,
    So3,
    U(usize),
    Su(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    kind: LieKind,
    n: usize,
    basis: Vec<GMat>,
    /// `structure[a][b]` are the coordinates of `[e_a, e_b]`.
    structure: Vec<Vec<Vec<Q>>>,
    gram_inv: QMatrix,
}

fn gzero() -> GaussQ {
    GaussQ::new(Q::zero(), Q::zero())
}

fn g(re: Q, im: Q) -> GaussQ {
    GaussQ::new(re, im)
}

fn zero_mat(n: usize) -> GMat {
    vec![vec![gzero(); n]; n]
}

fn gmat_mul(a: &GMat, b: &GMat) -> GMat {
    let n = a.len();
    let mut out = zero_mat(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn gmat_sub(a: &GMat, b: &GMat) -> GMat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

/// `Re tr(a† b)`
fn real_inner(a: &GMat, b: &GMat) -> Q {
    let mut acc = Q::zero();
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            acc += &x.re * &y.re + &x.im * &y.im;
        }
    }
    acc
}

impl LieAlgebra {
    pub fn u1() -> Self {
        Self::build(LieKind::U1, 1, vec![vec![vec![g(Q::zero(), Q::one())]]])
    }

    /// `e_k = −iσ_k/2`, so that `[e_1, e_2] = e_3` cyclically.
    pub fn su2() -> Self {
        let h = Q::new(1.into(), 2.into());
        let z = Q::zero;
        let e1 = vec![vec![gzero(), g(z(), -h.clone())], vec![g(z(), -h.clone()), gzero()]];
        let e2 = vec![vec![gzero(), g(-h.clone(), z())], vec![g(h.clone(), z()), gzero()]];
        let e3 = vec![vec![g(z(), -h.clone()), gzero()], vec![gzero(), g(z(), h)]];
        Self::build(LieKind::Su2, 2, vec![e1, e2, e3])
    }

    /// `(L_k)_{ij} = −ε_{kij}`, so that `[L_1, L_2] = L_3` cyclically.
    pub fn so3() -> Self {
        let basis = (0..3)
            .map(|k| {
                let mut m = zero_mat(3);
                for i in 0..3 {
                    for j in 0..3 {
                        let e = levi_civita(k, i, j);
                        if e != 0 {
                            m[i][j] = g(Q::from_integer((-e).into()), Q::zero());
                        }
                    }
                }
                m
            })
            .collect();
        Self::build(LieKind::So3, 3, basis)
    }

    /// `u(n)`: `iE_jj`, then for `j < k` the pair `E_jk − E_kj`, `i(E_jk + E_kj)`.
    pub fn u(n: usize) -> Result<Self, Error> {
        if !(1..=4).contains(&n) {
            return Err(Error::UnsupportedAlgebra(format!("u({n})")));
        }
        let mut basis = Vec::new();
        for j in 0..n {
            let mut m = zero_mat(n);
            m[j][j] = g(Q::zero(), Q::one());
            basis.push(m);
        }
        basis.extend(off_diagonal(n));
        Ok(Self::build(if n == 1 { LieKind::U1 } else { LieKind::U(n) }, n, basis))
    }

    /// `su(n)`: `i(E_ll − E_{l+1,l+1})`, then the off-diagonal pairs as in `u(n)`.
    pub fn su(n: usize) -> Result<Self, Error> {
        if !(2..=4).contains(&n) {
            return Err(Error::UnsupportedAlgebra(format!("su({n})")));
        }
        let mut basis = Vec::new();
        for l in 0..n - 1 {
            let mut m = zero_mat(n);
            m[l][l] = g(Q::zero(), Q::one());
            m[l + 1][l + 1] = g(Q::zero(), -Q::one());
            basis.push(m);
        }
        basis.extend(off_diagonal(n));
        Ok(Self::build(LieKind::Su(n), n, basis))
    }

    /// Parses `u1`, `su2`, `so3`, `u<n>`, `su<n>` (also `u(n)`, `su(n)`).
    pub fn by_name(name: &str) -> Result<Self, Error> {
        let s: String = name.chars().filter(|c| !matches!(c, '(' | ')')).collect();
        match s.as_str() {
            "u1" => Ok(Self::u1()),
            "su2" => Ok(Self::su2()),
            "so3" => Ok(Self::so3()),
            _ => {
                let parse = |rest: &str| rest.parse::<usize>().map_err(|_| Error::UnsupportedAlgebra(name.to_string()));
                if let Some(rest) = s.strip_prefix("su") {
                    Self::su(parse(rest)?)
                } else if let Some(rest) = s.strip_prefix('u') {
                    Self::u(parse(rest)?)
                } else {
                    Err(Error::UnsupportedAlgebra(name.to_string()))
                }
            }
        }
    }

    fn build(kind: LieKind, n: usize, basis: Vec<GMat>) -> Self {
        let dim = basis.len();
        let mut gram = QMatrix::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                gram.set(a, b, real_inner(&basis[a], &basis[b]));
            }
        }
        let mut aug = QMatrix::zeros(dim, 2 * dim);
        for a in 0..dim {
            for b in 0..dim {
                aug.set(a, b, gram.get(a, b).clone());
            }
            aug.set(a, dim + a, Q::one());
        }
        let rref = Rref::new(&aug);
        let mut gram_inv = QMatrix::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                gram_inv.set(a, b, rref.reduced.get(a, dim + b).clone());
            }
        }
        let mut alg = LieAlgebra {
            kind,
            n,
            basis,
            structure: Vec::new(),
            gram_inv,
        };
        let structure = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        let ab = gmat_mul(&alg.basis[a], &alg.basis[b]);
                        let ba = gmat_mul(&alg.basis[b], &alg.basis[a]);
                        alg.gcoords(&gmat_sub(&ab, &ba))
                    })
                    .collect()
            })
            .collect();
        alg.structure = structure;
        alg
    }

    fn gcoords(&self, m: &GMat) -> Vec<Q> {
        let rhs: Vec<Q> = self.basis.iter().map(|e| real_inner(e, m)).collect();
        (0..self.dim())
            .map(|a| {
                let mut acc = Q::zero();
                for (b, r) in rhs.iter().enumerate() {
                    acc += self.gram_inv.get(a, b) * r;
                }
                acc
            })
            .collect()
    }

    pub fn kind(&self) -> LieKind {
        self.kind
    }

    pub fn name(&self) -> String {
        match self.kind {
            LieKind::U1 => "u1".into(),
            LieKind::Su2 => "su2".into(),
            LieKind::So3 => "so3".into(),
            LieKind::U(n) => format!("u{n}"),
            LieKind::Su(n) => format!("su{n}"),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[GMat] {
        &self.basis
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Whether the defining representation is unitary, i.e. Chern classes apply.
    pub fn is_unitary_family(&self) -> bool {
        !matches!(self.kind, LieKind::So3)
    }

    /// Coordinates of `[e_a, e_b]`.
    pub fn structure(&self, a: usize, b: usize) -> &[Q] {
        &self.structure[a][b]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![Scalar::zero(); dim];
        for a in 0..dim {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for (c, f) in self.structure[a][b].iter().enumerate() {
                    if !f.is_zero() {
                        out[c] += &xy.mul_q(f);
                    }
                }
            }
        }
        out
    }

    /// Defining matrix `Σ x_a e_a` with scalar entries.
    pub fn matrix(&self, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        let n = self.n;
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let e = &self.basis[a][i][j];
                    if !e.is_zero() {
                        m[i][j] += &(xa * &Scalar::from_gauss(e.clone()));
                    }
                }
            }
        }
        m
    }

    pub fn matrix_f64(&self, x: &[f64]) -> CMat {
        let n = self.n;
        let mut m = CMat::zeros(n, n);
        for (a, &xa) in x.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let e = &self.basis[a][i][j];
                    m[(i, j)] += C64::new(crate::scalar::q_to_f64(&e.re), crate::scalar::q_to_f64(&e.im)) * xa;
                }
            }
        }
        m
    }

    /// Coordinates of a matrix in the span of the basis (orthogonal projection).
    pub fn coords_f64(&self, m: &CMat) -> Vec<f64> {
        let dim = self.dim();
        let rhs: Vec<f64> = self
            .basis
            .iter()
            .map(|e| {
                let mut acc = 0.0;
                for i in 0..self.n {
                    for j in 0..self.n {
                        let v = m[(i, j)];
                        acc += crate::scalar::q_to_f64(&e[i][j].re) * v.re + crate::scalar::q_to_f64(&e[i][j].im) * v.im;
                    }
                }
                acc
            })
            .collect();
        (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| crate::scalar::q_to_f64(self.gram_inv.get(a, b)) * rhs[b])
                    .sum()
            })
            .collect()
    }

    pub fn exp(&self, x: &[f64]) -> GroupElement {
        GroupElement {
            matrix: expm(&self.matrix_f64(x)),
        }
    }

    /// `Ad_g x = g x g⁻¹` in coordinates.
    pub fn ad(&self, gr: &GroupElement, x: &[f64]) -> Vec<f64> {
        let m = &gr.matrix * self.matrix_f64(x) * gr.inverse().matrix;
        self.coords_f64(&m)
    }

    /// `tr(xy)` in the defining representation.
    pub fn trace_form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let a = self.matrix(x);
        let b = self.matrix(y);
        let mut acc = Scalar::zero();
        for i in 0..self.n {
            for k in 0..self.n {
                acc += &(&a[i][k] * &b[k][i]);
            }
        }
        acc
    }

    /// Maximal violation of antisymmetry and the Jacobi identity on basis triples.
    pub fn jacobi_defect(&self) -> Q {
        let dim = self.dim();
        let e = |a: usize| -> Vec<Scalar> { (0..dim).map(|b| Scalar::from_int(i64::from(a == b))).collect() };
        let mut worst = Q::zero();
        let mut note = |v: &[Scalar]| {
            for s in v {
                if let Some(q) = s.as_q() {
                    let q = if q < Q::zero() { -q } else { q };
                    if q > worst {
                        worst = q;
                    }
                }
            }
        };
        for a in 0..dim {
            for b in 0..dim {
                let ab = self.bracket(&e(a), &e(b));
                let ba = self.bracket(&e(b), &e(a));
                note(&ab.iter().zip(&ba).map(|(x, y)| x + y).collect::<Vec<_>>());
                for c in 0..dim {
                    let t1 = self.bracket(&e(a), &self.bracket(&e(b), &e(c)));
                    let t2 = self.bracket(&e(b), &self.bracket(&e(c), &e(a)));
                    let t3 = self.bracket(&e(c), &self.bracket(&e(a), &e(b)));
                    let s: Vec<Scalar> = (0..dim).map(|i| &(&t1[i] + &t2[i]) + &t3[i]).collect();
                    note(&s);
                }
            }
        }
        worst
    }

    pub fn check_same(&self, other: &LieAlgebra) -> Result<(), Error> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch(self.name(), other.name()));
        }
        Ok(())
    }
}

/// Matrix exponential by scaling and squaring of a Taylor polynomial.
pub fn expm(m: &CMat) -> CMat {
    let n = m.nrows();
    let norm: f64 = m.iter().map(|c| c.norm()).sum();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m * C64::new(scale, 0.0);
    let mut term = CMat::identity(n, n);
    let mut sum = CMat::identity(n, n);
    for k in 1..=18 {
        term = &term * &a * C64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn off_diagonal(n: usize) -> Vec<GMat> {
    let mut out = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            let mut a = zero_mat(n);
            a[j][k] = g(Q::one(), Q::zero());
            a[k][j] = g(-Q::one(), Q::zero());
            out.push(a);
            let mut b = zero_mat(n);
            b[j][k] = g(Q::zero(), Q::one());
            b[k][j] = g(Q::zero(), Q::one());
            out.push(b);
        }
    }
    out
}

/// A group element as a complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub matrix: CMat,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            matrix: CMat::identity(n, n),
        }
    }

    /// Inverse, using unitarity.
    pub fn inverse(&self) -> Self {
        GroupElement {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Self {
        GroupElement {
            matrix: &self.matrix * &other.matrix,
        }
    }

    /// `‖g†g − I‖_max`, the distance from the unitary group.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let d = self.matrix.adjoint() * &self.matrix - CMat::identity(n, n);
        d.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn det(&self) -> C64 {
        self.matrix.clone().determinant()
    }
}
