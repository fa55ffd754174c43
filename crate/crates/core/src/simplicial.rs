//! Finite simplicial sets presented by nondegenerate simplices and face maps.
//!
//! A general (possibly degenerate) `m`-simplex is written `X(ε)(x)` for a
//! nondegenerate `x` of dimension `n` and a monotone surjection `ε : [m] ↠ [n]`.
//! This factorisation is unique, so [`Simplex`] equality is simplex equality.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{solve, QMatrix, Rref, Solve};
use crate::scalar::{Scalar, Q};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

impl core::fmt::Display for SimplexId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}.{}", self.dim, self.index)
    }
}

/// `X(surj)(id)`: a nondegenerate simplex with a degeneracy applied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub id: SimplexId,
    /// Monotone surjection `[m] ↠ [id.dim]` as its list of values.
    pub surj: Vec<usize>,
}

impl Simplex {
    pub fn nondeg(id: SimplexId) -> Self {
        Simplex {
            id,
            surj: (0..=id.dim).collect(),
        }
    }

    /// Builds from a degeneracy word `s_{j_1} ⋯ s_{j_r}` with `j_1 > … > j_r`.
    pub fn from_word(id: SimplexId, word: &[usize]) -> Result<Self, Error> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSimplicialSet(format!(
                "degeneracy word {word:?} is not strictly decreasing"
            )));
        }
        let m = id.dim + word.len();
        if word.iter().any(|&j| j >= m) {
            return Err(Error::InvalidSimplicialSet(format!(
                "degeneracy word {word:?} out of range for a {m}-simplex"
            )));
        }
        let mut surj = vec![0usize; m + 1];
        for k in 0..m {
            surj[k + 1] = surj[k] + usize::from(!word.contains(&k));
        }
        Ok(Simplex { id, surj })
    }

    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.surj.len() == self.id.dim + 1
    }

    /// Normalised degeneracy word, strictly decreasing.
    pub fn word(&self) -> Vec<usize> {
        (0..self.dim())
            .rev()
            .filter(|&j| self.surj[j] == self.surj[j + 1])
            .collect()
    }
}

impl core::fmt::Display for Simplex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.id)?;
        let w = self.word();
        if !w.is_empty() {
            write!(f, " [")?;
            for (n, j) in w.iter().enumerate() {
                if n > 0 {
                    write!(f, " ")?;
                }
                write!(f, "s{j}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn is_monotone_surjection(s: &[usize], n: usize) -> bool {
    !s.is_empty() && s[0] == 0 && *s.last().unwrap() == n && s.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
}

/// Epi–mono factorisation of a monotone map given by its values:
/// returns `(η, image)` with `θ = image ∘ η`.
fn epi_mono(theta: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut eta = Vec::with_capacity(theta.len());
    for &v in theta {
        if image.last() != Some(&v) {
            image.push(v);
        }
        eta.push(image.len() - 1);
    }
    (eta, image)
}

/// A finite simplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    counts: Vec<usize>,
    /// `faces[d][idx][i]` is `d_i` of the nondegenerate simplex `d.idx`, for `d ≥ 1`.
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl SimplicialSet {
    /// Builds and validates a simplicial set from per-dimension counts and face
    /// targets (`faces[d]` is empty for `d = 0`).
    pub fn new(counts: Vec<usize>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self, Error> {
        let mut counts = counts;
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        let mut faces = faces;
        faces.resize(counts.len(), Vec::new());
        let x = SimplicialSet { counts, faces };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidSimplicialSet(m));
        if !self.faces[0].is_empty() {
            return bad("vertices have no faces".into());
        }
        for d in 1..self.counts.len() {
            if self.faces[d].len() != self.counts[d] {
                return bad(format!("dimension {d}: expected {} face records", self.counts[d]));
            }
            for (idx, fs) in self.faces[d].iter().enumerate() {
                if fs.len() != d + 1 {
                    return bad(format!("simplex {d}.{idx} needs {} faces", d + 1));
                }
                for (i, f) in fs.iter().enumerate() {
                    if f.dim() != d - 1
                        || f.id.dim >= self.counts.len()
                        || f.id.index >= self.counts[f.id.dim]
                        || !is_monotone_surjection(&f.surj, f.id.dim)
                    {
                        return bad(format!("face {d}.{idx}.{i} -> {f} is not a valid {}-simplex", d - 1));
                    }
                }
            }
        }
        for d in 2..self.counts.len() {
            for idx in 0..self.counts[d] {
                let x = Simplex::nondeg(SimplexId::new(d, idx));
                for j in 1..=d {
                    for i in 0..j {
                        let a = self.face(&self.face(&x, j), i);
                        let b = self.face(&self.face(&x, i), j - 1);
                        if a != b {
                            return bad(format!(
                                "simplicial identity d{i} d{j} = d{} d{i} fails on {d}.{idx}: {a} vs {b}",
                                j - 1
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn ids(&self, d: usize) -> impl Iterator<Item = SimplexId> {
        (0..self.count(d)).map(move |i| SimplexId::new(d, i))
    }

    pub fn all_ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.counts.len()).flat_map(move |d| self.ids(d))
    }

    /// The stored face `d_i` of a nondegenerate simplex.
    pub fn face_of(&self, id: SimplexId, i: usize) -> &Simplex {
        &self.faces[id.dim][id.index][i]
    }

    /// `X(θ)(y)` for a monotone `θ : [m] → [dim y]` given by its values.
    pub fn act(&self, theta: &[usize], y: &Simplex) -> Simplex {
        let composite: Vec<usize> = theta.iter().map(|&t| y.surj[t]).collect();
        let (eta, image) = epi_mono(&composite);
        let inner = self.act_mono(&image, y.id);
        Simplex {
            id: inner.id,
            surj: eta.iter().map(|&e| inner.surj[e]).collect(),
        }
    }

    /// `X(ι)(x)` for an injective monotone `ι` and nondegenerate `x`.
    fn act_mono(&self, iota: &[usize], x: SimplexId) -> Simplex {
        let p = x.dim;
        if iota.len() == p + 1 {
            return Simplex::nondeg(x);
        }
        let a = (0..=p).find(|v| !iota.contains(v)).unwrap();
        let rest: Vec<usize> = iota.iter().map(|&v| if v > a { v - 1 } else { v }).collect();
        let z = self.face_of(x, a).clone();
        self.act(&rest, &z)
    }

    /// `d_i y`
    pub fn face(&self, y: &Simplex, i: usize) -> Simplex {
        let m = y.dim();
        let theta: Vec<usize> = (0..=m).filter(|&v| v != i).collect();
        self.act(&theta, y)
    }

    /// `s_j y`
    pub fn degeneracy(&self, y: &Simplex, j: usize) -> Simplex {
        let m = y.dim();
        let theta: Vec<usize> = (0..=m + 1).map(|v| if v <= j { v } else { v - 1 }).collect();
        self.act(&theta, y)
    }

    /// Matrix of `∂_k : C_k → C_{k-1}` on normalised chains.
    pub fn boundary_matrix(&self, k: usize) -> QMatrix {
        assert!(k >= 1, "boundary operator needs k ≥ 1");
        let mut m = QMatrix::zeros(self.count(k - 1), self.count(k));
        for id in self.ids(k) {
            for i in 0..=k {
                let f = self.face_of(id, i);
                if f.is_nondegenerate() {
                    let s = if i % 2 == 0 { Q::one() } else { -Q::one() };
                    m.add_to(f.id.index, id.index, &s);
                }
            }
        }
        m
    }

    /// Betti numbers over `ℚ` for `k = 0..=max_dim`.
    pub fn betti_numbers(&self, max_dim: usize) -> Vec<usize> {
        let rank = |k: usize| {
            if k == 0 || k > self.dim() {
                0
            } else {
                self.boundary_matrix(k).rank()
            }
        };
        (0..=max_dim)
            .map(|k| self.count(k) - rank(k) - rank(k + 1))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn boundary(&self, c: &Chain) -> Chain {
        assert!(c.dim >= 1);
        Chain {
            dim: c.dim - 1,
            coeffs: self.boundary_matrix(c.dim).apply(&c.coeffs),
        }
    }

    /// `(dc)(σ) = c(∂σ)`
    pub fn coboundary(&self, c: &Cochain) -> Cochain {
        let k = c.dim;
        if k >= self.dim() {
            return Cochain::zero(self, k + 1);
        }
        Cochain {
            dim: k + 1,
            values: self.boundary_matrix(k + 1).transpose().apply(&c.values),
        }
    }

    /// Solves `db = c`. On failure returns a cycle `z` with `⟨c, z⟩ ≠ 0`.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<Cochain, Chain> {
        let k = c.dim;
        let a = if k == 0 {
            QMatrix::zeros(self.count(0), 0)
        } else {
            self.boundary_matrix(k).transpose()
        };
        match solve(&a, &c.values) {
            Solve::Solution(b) => Ok(Cochain {
                dim: k.saturating_sub(1),
                values: b,
            }),
            Solve::Obstruction(y) => Err(Chain {
                dim: k,
                coeffs: primitive_integral(&y).into_iter().map(Scalar::from_q).collect(),
            }),
        }
    }

    /// Basis of the cycle space `ker ∂_k` (all of `C_0` for `k = 0`).
    pub fn cycle_basis(&self, k: usize) -> Vec<Chain> {
        let n = self.count(k);
        let vecs = if k == 0 {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect()
        } else {
            Rref::new(&self.boundary_matrix(k)).kernel_basis()
        };
        vecs.into_iter()
            .map(|v| Chain {
                dim: k,
                coeffs: primitive_integral(&v).into_iter().map(Scalar::from_q).collect(),
            })
            .collect()
    }
}

/// Rescales a rational vector to a primitive integer vector with positive
/// first nonzero entry.
fn primitive_integral(v: &[Q]) -> Vec<Q> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// A `k`-chain on nondegenerate generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub dim: usize,
    pub coeffs: Vec<Scalar>,
}

/// A `k`-cochain: one scalar per nondegenerate `k`-simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub dim: usize,
    pub values: Vec<Scalar>,
}

impl Chain {
    pub fn zero(x: &SimplicialSet, dim: usize) -> Self {
        Chain {
            dim,
            coeffs: vec![Scalar::zero(); x.count(dim)],
        }
    }

    pub fn from_ints(dim: usize, coeffs: &[i64]) -> Self {
        Chain {
            dim,
            coeffs: coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

impl Cochain {
    pub fn zero(x: &SimplicialSet, dim: usize) -> Self {
        Cochain {
            dim,
            values: vec![Scalar::zero(); x.count(dim)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn pair(&self, z: &Chain) -> Scalar {
        assert_eq!(self.dim, z.dim, "pairing cochain and chain of different degrees");
        let mut acc = Scalar::zero();
        for (a, b) in self.values.iter().zip(&z.coeffs) {
            acc += &(a * b);
        }
        acc
    }

    pub fn approx_eq(&self, other: &Cochain, tol: f64) -> bool {
        self.dim == other.dim
            && self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a.approx_eq(b, tol))
    }
}

impl<'a> core::ops::Sub<&'a Cochain> for &'a Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &'a Cochain) -> Cochain {
        assert_eq!(self.dim, rhs.dim);
        Cochain {
            dim: self.dim,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> core::ops::Add<&'a Cochain> for &'a Cochain {
    type Output = Cochain;
    fn add(self, rhs: &'a Cochain) -> Cochain {
        assert_eq!(self.dim, rhs.dim);
        Cochain {
            dim: self.dim,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A simplicial map, determined by the images of nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialSet,
    target: SimplicialSet,
    assignment: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(source: SimplicialSet, target: SimplicialSet, assignment: Vec<Vec<Simplex>>) -> Result<Self, Error> {
        let f = SimplicialMap {
            source,
            target,
            assignment,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn from_fn(
        source: &SimplicialSet,
        target: &SimplicialSet,
        f: impl Fn(SimplexId) -> Simplex,
    ) -> Result<Self, Error> {
        let assignment = (0..=source.dim())
            .map(|d| source.ids(d).map(&f).collect())
            .collect();
        SimplicialMap::new(source.clone(), target.clone(), assignment)
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        SimplicialMap {
            source: x.clone(),
            target: x.clone(),
            assignment: (0..=x.dim())
                .map(|d| x.ids(d).map(Simplex::nondeg).collect())
                .collect(),
        }
    }

    fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidMap(m));
        if self.assignment.len() != self.source.dim() + 1 {
            return bad("assignment must cover every dimension of the source".into());
        }
        for id in self.source.all_ids() {
            let Some(y) = self.assignment[id.dim].get(id.index) else {
                return bad(format!("no image for {id}"));
            };
            if y.dim() != id.dim
                || y.id.dim >= self.target.counts.len()
                || y.id.index >= self.target.count(y.id.dim)
                || !is_monotone_surjection(&y.surj, y.id.dim)
            {
                return bad(format!("image of {id} is not a {}-simplex of the target", id.dim));
            }
        }
        for d in 1..=self.source.dim() {
            for id in self.source.ids(d) {
                for i in 0..=d {
                    let lhs = self.apply(self.source.face_of(id, i));
                    let rhs = self.target.face(self.image(id), i);
                    if lhs != rhs {
                        return bad(format!("f(d{i} {id}) = {lhs} but d{i} f({id}) = {rhs}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &SimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &SimplicialSet {
        &self.target
    }

    pub fn image(&self, id: SimplexId) -> &Simplex {
        &self.assignment[id.dim][id.index]
    }

    pub fn assignment(&self) -> &[Vec<Simplex>] {
        &self.assignment
    }

    /// Image of a general simplex; maps commute with degeneracies.
    pub fn apply(&self, y: &Simplex) -> Simplex {
        self.target.act(&y.surj, self.image(y.id))
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap, Error> {
        if inner.target != self.source {
            return Err(Error::InvalidMap("composition of non-composable maps".into()));
        }
        let assignment = inner
            .assignment
            .iter()
            .map(|row| row.iter().map(|y| self.apply(y)).collect())
            .collect();
        Ok(SimplicialMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            assignment,
        })
    }

    pub fn push_chain(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero(&self.target, c.dim);
        for (idx, a) in c.coeffs.iter().enumerate() {
            let y = self.image(SimplexId::new(c.dim, idx));
            if y.is_nondegenerate() {
                out.coeffs[y.id.index] += a;
            }
        }
        out
    }

    /// `(f*c)(σ) = c(f σ)`, zero when `f σ` is degenerate.
    pub fn pull_cochain(&self, c: &Cochain) -> Cochain {
        Cochain {
            dim: c.dim,
            values: self
                .source
                .ids(c.dim)
                .map(|id| {
                    let y = self.image(id);
                    if y.is_nondegenerate() {
                        c.values[y.id.index].clone()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect(),
        }
    }
}

/// Strictly increasing `size`-subsets of `vertices`, lexicographic.
pub fn subsets_lex(vertices: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(vs: &[usize], start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..vs.len() {
            cur.push(vs[i]);
            rec(vs, i + 1, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vertices, 0, size, &mut Vec::new(), &mut out);
    out
}

/// An ordered simplicial complex: a downward-closed family of vertex sets.
/// Cells are listed per dimension in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedComplex {
    pub set: SimplicialSet,
    /// `cells[d][idx]` is the sorted vertex list of `d.idx`.
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl OrderedComplex {
    /// Builds the complex generated by the given maximal vertex sets.
    pub fn generated_by(maximal: &[Vec<usize>]) -> Self {
        let mut by_dim: BTreeMap<usize, alloc::collections::BTreeSet<Vec<usize>>> = BTreeMap::new();
        for m in maximal {
            let mut m = m.clone();
            m.sort_unstable();
            m.dedup();
            for size in 1..=m.len() {
                for s in subsets_lex(&m, size) {
                    by_dim.entry(size - 1).or_default().insert(s);
                }
            }
        }
        let top = by_dim.keys().next_back().copied().unwrap_or(0);
        let cells: Vec<Vec<Vec<usize>>> = (0..=top)
            .map(|d| by_dim.get(&d).map(|s| s.iter().cloned().collect()).unwrap_or_default())
            .collect();
        let lookup = |d: usize, v: &Vec<usize>| cells[d].binary_search(v).expect("face closed");
        let faces: Vec<Vec<Vec<Simplex>>> = (0..=top)
            .map(|d| {
                if d == 0 {
                    return Vec::new();
                }
                cells[d]
                    .iter()
                    .map(|c| {
                        (0..=d)
                            .map(|i| {
                                let mut f = c.clone();
                                f.remove(i);
                                Simplex::nondeg(SimplexId::new(d - 1, lookup(d - 1, &f)))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let counts = cells.iter().map(Vec::len).collect();
        let set = SimplicialSet::new(counts, faces).expect("ordered complexes are simplicial sets");
        OrderedComplex { set, cells }
    }

    pub fn find(&self, verts: &[usize]) -> Option<SimplexId> {
        let d = verts.len().checked_sub(1)?;
        let idx = self.cells.get(d)?.binary_search(&verts.to_vec()).ok()?;
        Some(SimplexId::new(d, idx))
    }

    /// The simplex with the given weakly increasing vertex sequence, degenerate
    /// when vertices repeat.
    pub fn simplex_on(&self, verts: &[usize]) -> Option<Simplex> {
        if verts.windows(2).any(|w| w[1] < w[0]) {
            return None;
        }
        let (surj, image) = epi_mono(verts);
        Some(Simplex {
            id: self.find(&image)?,
            surj,
        })
    }

    /// The inclusion into another complex containing every vertex set of this one.
    pub fn inclusion_into(&self, other: &OrderedComplex) -> Result<SimplicialMap, Error> {
        SimplicialMap::from_fn(&self.set, &other.set, |id| {
            let v = &self.cells[id.dim][id.index];
            Simplex::nondeg(other.find(v).expect("sub-complex"))
        })
    }
}

pub fn standard_simplex_complex(n: usize) -> OrderedComplex {
    OrderedComplex::generated_by(&[(0..=n).collect()])
}

/// `Δ^n`: nondegenerate `m`-simplices are the `(m+1)`-subsets of `[n]`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    standard_simplex_complex(n).set
}

pub fn boundary_sphere_complex(n: usize) -> OrderedComplex {
    let all: Vec<usize> = (0..=n + 1).collect();
    OrderedComplex::generated_by(&subsets_lex(&all, n + 1))
}

/// `∂Δ^{n+1}`, a model of `S^n`.
pub fn boundary_sphere(n: usize) -> SimplicialSet {
    boundary_sphere_complex(n).set
}

/// Two 2-simplices `N = 2.0` and `S = 2.1` glued along their whole boundary.
///
/// Vertices `0, 1, 2`; edges `01, 02, 12` (indices 0, 1, 2); both 2-cells have
/// `d_0 = 12`, `d_1 = 02`, `d_2 = 01`. The fundamental cycle is `N − S`.
pub fn two_disk_sphere() -> SimplicialSet {
    let v = |i| Simplex::nondeg(SimplexId::new(0, i));
    let e = |i| Simplex::nondeg(SimplexId::new(1, i));
    let edges = vec![vec![v(1), v(0)], vec![v(2), v(0)], vec![v(2), v(1)]];
    let tri = vec![e(2), e(1), e(0)];
    SimplicialSet::new(vec![3, 3, 2], vec![Vec::new(), edges, vec![tri.clone(), tri]]).expect("valid")
}

pub fn two_disk_fundamental_cycle() -> Chain {
    Chain::from_ints(2, &[1, -1])
}

/// The horn `Λ^n_k ⊂ Δ^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornPresentation {
    pub n: usize,
    pub k: usize,
    pub complex: OrderedComplex,
}

pub fn horn(n: usize, k: usize) -> Result<HornPresentation, Error> {
    if k > n || n == 0 {
        return Err(Error::InvalidHorn { n, k });
    }
    let faces: Vec<Vec<usize>> = (0..=n)
        .filter(|&j| j != k)
        .map(|j| (0..=n).filter(|&v| v != j).collect())
        .collect();
    Ok(HornPresentation {
        n,
        k,
        complex: OrderedComplex::generated_by(&faces),
    })
}

impl HornPresentation {
    pub fn set(&self) -> &SimplicialSet {
        &self.complex.set
    }

    pub fn inclusion(&self) -> SimplicialMap {
        self.complex
            .inclusion_into(&standard_simplex_complex(self.n))
            .expect("horn inclusion")
    }
}

/// A nondegenerate simplex of `X × Δ¹`: `(X(ε)x, b)` with `b : [m] → [1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrismCell {
    pub base: Simplex,
    pub interval: Vec<usize>,
}

/// `X × Δ¹` with its projection and end inclusions.
#[derive(Clone, Debug)]
pub struct Prism {
    pub set: SimplicialSet,
    pub cells: Vec<Vec<PrismCell>>,
    pub i0: SimplicialMap,
    pub i1: SimplicialMap,
    pub pr: SimplicialMap,
}

fn monotone_surjections(m: usize, n: usize) -> Vec<Vec<usize>> {
    // choose which m - n of the m steps are flat
    if n > m {
        return Vec::new();
    }
    subsets_lex(&(0..m).collect::<Vec<_>>(), m - n)
        .into_iter()
        .map(|flat| {
            let mut s = vec![0usize; m + 1];
            for k in 0..m {
                s[k + 1] = s[k] + usize::from(!flat.contains(&k));
            }
            s
        })
        .collect()
}

pub fn product_with_interval(x: &SimplicialSet) -> Prism {
    let top = x.dim() + 1;
    let mut cells: Vec<Vec<PrismCell>> = vec![Vec::new(); top + 1];
    for (m, row) in cells.iter_mut().enumerate() {
        for p in m.saturating_sub(1)..=m.min(x.dim()) {
            for id in x.ids(p) {
                for eps in monotone_surjections(m, p) {
                    for step in 0..=m + 1 {
                        let b: Vec<usize> = (0..=m).map(|j| usize::from(j >= step)).collect();
                        let degenerate = (0..m).any(|j| eps[j] == eps[j + 1] && b[j] == b[j + 1]);
                        if !degenerate {
                            row.push(PrismCell {
                                base: Simplex { id, surj: eps.clone() },
                                interval: b,
                            });
                        }
                    }
                }
            }
        }
        row.sort();
    }
    let lookup = |cells: &[Vec<PrismCell>], c: &PrismCell| -> usize {
        cells[c.base.dim()].binary_search(c).expect("prism cell")
    };
    let faces: Vec<Vec<Vec<Simplex>>> = (0..=top)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            cells[m]
                .iter()
                .map(|c| {
                    (0..=m)
                        .map(|i| {
                            let a = x.face(&c.base, i);
                            let mut b = c.interval.clone();
                            b.remove(i);
                            prism_normalize(&cells, &a, &b, &lookup)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let counts = cells.iter().map(Vec::len).collect();
    let set = SimplicialSet::new(counts, faces).expect("prism is a simplicial set");
    let end = |e: usize| {
        SimplicialMap::from_fn(x, &set, |id| {
            let c = PrismCell {
                base: Simplex::nondeg(id),
                interval: vec![e; id.dim + 1],
            };
            Simplex::nondeg(SimplexId::new(id.dim, lookup(&cells, &c)))
        })
        .expect("end inclusion")
    };
    let i0 = end(0);
    let i1 = end(1);
    let pr = SimplicialMap::from_fn(&set, x, |id| cells[id.dim][id.index].base.clone()).expect("projection");
    Prism {
        set,
        cells,
        i0,
        i1,
        pr,
    }
}

/// Writes the simplex `(a, b)` of `X × Δ¹` as a degeneracy of a nondegenerate cell.
fn prism_normalize(
    cells: &[Vec<PrismCell>],
    a: &Simplex,
    b: &[usize],
    lookup: &impl Fn(&[Vec<PrismCell>], &PrismCell) -> usize,
) -> Simplex {
    let pairs: Vec<(usize, usize)> = a.surj.iter().copied().zip(b.iter().copied()).collect();
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    let mut outer = Vec::with_capacity(pairs.len());
    for p in &pairs {
        if distinct.last() != Some(p) {
            distinct.push(*p);
        }
        outer.push(distinct.len() - 1);
    }
    let cell = PrismCell {
        base: Simplex {
            id: a.id,
            surj: distinct.iter().map(|p| p.0).collect(),
        },
        interval: distinct.iter().map(|p| p.1).collect(),
    };
    Simplex {
        id: SimplexId::new(distinct.len() - 1, lookup(cells, &cell)),
        surj: outer,
    }
}
