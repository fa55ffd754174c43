//! Exact dense linear algebra over `ℚ`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::scalar::{Scalar, Q};

/// Dense rational matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Q) {
        let e = &mut self.data[r * self.cols + c];
        *e += v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `self · v` for a vector of scalars.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &x.mul_q(a);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        Rref::new(self).pivots.len()
    }
}

/// Reduced row echelon form `R = E·A` together with the transform `E`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: QMatrix,
    pub transform: QMatrix,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn new(a: &QMatrix) -> Self {
        let mut r = a.clone();
        let mut e = QMatrix::identity(a.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            swap_rows(&mut r, row, p);
            swap_rows(&mut e, row, p);
            let inv = Q::one() / r.get(row, col);
            scale_row(&mut r, row, &inv);
            scale_row(&mut e, row, &inv);
            for i in 0..a.rows {
                if i != row && !r.get(i, col).is_zero() {
                    let f = r.get(i, col).clone();
                    axpy_row(&mut r, i, row, &f);
                    axpy_row(&mut e, i, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            reduced: r,
            transform: e,
            pivots,
        }
    }

    /// Basis of the null space `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let n = self.reduced.cols;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); n];
                v[f] = Q::one();
                for (r, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = -self.reduced.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

fn swap_rows(m: &mut QMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols {
        m.data.swap(a * m.cols + c, b * m.cols + c);
    }
}

fn scale_row(m: &mut QMatrix, r: usize, f: &Q) {
    for c in 0..m.cols {
        let e = &mut m.data[r * m.cols + c];
        if !e.is_zero() {
            *e *= f;
        }
    }
}

/// `row_i -= f · row_j`
fn axpy_row(m: &mut QMatrix, i: usize, j: usize, f: &Q) {
    for c in 0..m.cols {
        let v = m.get(j, c).clone();
        if !v.is_zero() {
            let e = &mut m.data[i * m.cols + c];
            *e -= f * v;
        }
    }
}

/// Outcome of solving `A x = b` with a rational matrix and scalar right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub enum Solve {
    /// A particular solution (free variables set to zero).
    Solution(Vec<Scalar>),
    /// A rational vector `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Obstruction(Vec<Q>),
}

pub fn solve(a: &QMatrix, b: &[Scalar]) -> Solve {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let rref = Rref::new(a);
    let eb = rref.transform.apply(b);
    for r in rref.pivots.len()..a.rows {
        if !eb[r].is_zero() {
            return Solve::Obstruction(rref.transform.row(r).to_vec());
        }
    }
    let mut x = vec![Scalar::zero(); a.cols];
    for (r, &pc) in rref.pivots.iter().enumerate() {
        x[pc] = eb[r].clone();
    }
    Solve::Solution(x)
}

/// Determinant by fraction-exact elimination.
pub fn det_q(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let v = &f * &a[col][j];
                a[i][j] -= v;
            }
        }
    }
    det
}
