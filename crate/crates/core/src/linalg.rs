//! Exact dense linear algebra over ℚ(q): Gaussian elimination, subspaces in
//! reduced echelon form, and linear maps between coordinate spaces.

use crate::arith::RatQ;
use crate::error::{Error, Result};

pub type Vector = Vec<RatQ>;

pub fn zero_vec(n: usize) -> Vector {
    vec![RatQ::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = RatQ::one();
    v
}

pub fn vec_add(a: &[RatQ], b: &[RatQ]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[RatQ], b: &[RatQ]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[RatQ], c: &RatQ) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[RatQ]) -> bool {
    a.iter().all(RatQ::is_zero)
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<RatQ>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero_vec(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = RatQ::one();
        }
        m
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<RatQ>>) -> Result<Self> {
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeError("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[RatQ] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &RatQ {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatQ) {
        self.data[i][j] = v;
    }

    pub fn into_rows(self) -> Vec<Vec<RatQ>> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = out.data[i][j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[RatQ]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::ShapeError(format!(
                "vector of length {} for matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(RatQ::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect())
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in self.data[r].iter_mut() {
                    if !x.is_zero() {
                        *x = x.mul_ref(&inv);
                    }
                }
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i == r || self.data[i][c].is_zero() {
                    continue;
                }
                let f = self.data[i][c].clone();
                for (x, p) in self.data[i].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = x.sub_ref(&f.mul_ref(p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vec(self.cols);
                v[f] = RatQ::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m.data[r][f].neg_ref();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = RatQ::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = aug.data.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Matrix { rows: n, cols: n, data })
    }

    /// Solves `A x = b` for one particular solution.
    pub fn solve(&self, b: &[RatQ]) -> Option<Vector> {
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][self.cols] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<RatQ> {
        if self.rows != self.cols {
            return Err(Error::ShapeError("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RatQ::one());
        }
        let mut a = self.data.clone();
        let mut sign = RatQ::one();
        let mut prev = RatQ::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(RatQ::zero());
                };
                a.swap(k, p);
                sign = sign.neg_ref();
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                    a[i][j] = t.div_ref(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign.mul_ref(&a[n - 1][n - 1]))
    }
}

/// A linear subspace of the coordinate space of dimension `ambient`, stored
/// as rows in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit_vec(ambient, i)).collect()).unwrap()
    }

    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::ShapeError(format!(
                "vectors do not live in a {ambient}-dimensional space"
            )));
        }
        let mut m = Matrix::from_rows(ambient, vectors)?;
        let r = m.rref().len();
        let mut basis = m.into_rows();
        basis.truncate(r);
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::ShapeError(format!(
                "subspaces of different ambient dimension {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, v)
    }

    pub fn contains(&self, v: &[RatQ]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(self.ambient, rows).unwrap().rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && self.sum(other).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // Solve Σ a_i u_i = Σ b_j v_j.
        let (k, l) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(self.ambient, k + l);
        for c in 0..self.ambient {
            for (i, u) in self.basis.iter().enumerate() {
                m.set(c, i, u[c].clone());
            }
            for (j, v) in other.basis.iter().enumerate() {
                m.set(c, k + j, v[c].neg_ref());
            }
        }
        let vectors = m
            .kernel()
            .into_iter()
            .map(|coef| {
                let mut out = zero_vec(self.ambient);
                for (i, u) in self.basis.iter().enumerate() {
                    if !coef[i].is_zero() {
                        out = vec_add(&out, &vec_scale(u, &coef[i]));
                    }
                }
                out
            })
            .collect();
        Subspace::span(self.ambient, vectors)
    }

    /// Is the sum of the pieces direct and equal to the whole space?
    pub fn is_direct_decomposition(pieces: &[&Subspace], ambient: usize) -> bool {
        let total: usize = pieces.iter().map(|p| p.dim()).sum();
        let mut all = Vec::new();
        for p in pieces {
            all.extend(p.basis.iter().cloned());
        }
        total == ambient && Subspace::span(ambient, all).map(|s| s.dim()).unwrap_or(0) == ambient
    }
}

/// Exact solution space of the homogeneous conditions `rows · x = 0`.
pub fn solve_linear(ambient: usize, conditions: Vec<Vector>) -> Result<Subspace> {
    if conditions.is_empty() {
        return Ok(Subspace::full(ambient));
    }
    let m = Matrix::from_rows(ambient, conditions)?;
    Subspace::span(ambient, m.kernel())
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn subspace_rank(a: &Subspace) -> usize {
    a.dim()
}

/// A linear map between coordinate spaces, `domain → codomain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[RatQ]) -> Result<Vector> {
        self.matrix.apply(v)
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap::new(self.matrix.mul(&inner.matrix)?))
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.codomain_dim(), self.matrix.transpose().into_rows()).unwrap()
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).map(|m| m == *self).unwrap_or(false)
    }
}
