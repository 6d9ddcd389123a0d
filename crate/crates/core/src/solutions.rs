//! Named solution families: diagonal Hecke solutions, the Drinfeld–Jimbo
//! matrices, and twists by invertible elements of `D⊗D`.

use std::sync::Arc;

use crate::algebra::{diagonal_algebra, mat_algebra, AlgebraRef};
use crate::arith::RatQ;
use crate::checkers::is_ybe;
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, Subspace, Vector};
use crate::tensor::Tensor2;
use crate::triples::mat_index;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `q/ω` for `+`, `−q⁻¹/ω` for `−`.
    pub fn diagonal_coefficient(self) -> RatQ {
        match self {
            Sign::Plus => RatQ::q().mul_ref(&RatQ::inv_omega()),
            Sign::Minus => RatQ::q_pow(-1).mul_ref(&RatQ::inv_omega()).neg_ref(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Data of a diagonal Hecke solution: a sign per index and the off-diagonal
/// ratios `b^{ik}` with `b^{ii} = 1`, `b^{ik} b^{ki} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalHeckeParams {
    k: usize,
    signs: Vec<Sign>,
    b: Vec<Vec<RatQ>>,
}

impl DiagonalHeckeParams {
    pub fn new(signs: Vec<Sign>, b: Vec<Vec<RatQ>>) -> Result<Self> {
        let k = signs.len();
        if k == 0 {
            return Err(Error::BadTwistData("empty index set".into()));
        }
        if b.len() != k || b.iter().any(|row| row.len() != k) {
            return Err(Error::BadTwistData(format!("b must be {k}×{k}")));
        }
        for i in 0..k {
            if !b[i][i].is_one() {
                return Err(Error::BadTwistData(format!("b^{{{i}{i}}} must be 1", i = i + 1)));
            }
            for j in i + 1..k {
                if !b[i][j].mul_ref(&b[j][i]).is_one() {
                    return Err(Error::BadTwistData(format!(
                        "b^{{{a}{c}}} b^{{{c}{a}}} must be 1",
                        a = i + 1,
                        c = j + 1
                    )));
                }
            }
        }
        Ok(DiagonalHeckeParams { k, signs, b })
    }

    /// All signs `+` and `b = 1`.
    pub fn standard(k: usize) -> Self {
        Self::with_signs(vec![Sign::Plus; k])
    }

    pub fn with_signs(signs: Vec<Sign>) -> Self {
        let k = signs.len();
        DiagonalHeckeParams {
            k,
            signs,
            b: vec![vec![RatQ::one(); k]; k],
        }
    }

    /// Sets `b^{ij} = v` and `b^{ji} = 1/v`.
    pub fn with_ratio(mut self, i: usize, j: usize, v: RatQ) -> Result<Self> {
        if i == j || i >= self.k || j >= self.k {
            return Err(Error::BadTwistData("ratio indices must be distinct and in range".into()));
        }
        let inv = v.inv().map_err(|_| Error::BadTwistData("ratio must be nonzero".into()))?;
        self.b[i][j] = v;
        self.b[j][i] = inv;
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn b(&self) -> &[Vec<RatQ>] {
        &self.b
    }

    /// `a^{ii}` from the sign, `a^{ik} = b^{ik}/ω` off the diagonal.
    pub fn coefficient(&self, i: usize, k: usize) -> RatQ {
        if i == k {
            self.signs[i].diagonal_coefficient()
        } else {
            self.b[i][k].mul_ref(&RatQ::inv_omega())
        }
    }

    pub fn all_plus(&self) -> bool {
        self.signs.iter().all(|s| *s == Sign::Plus)
    }
}

/// `S = Σ a^{ik} e_i⊗e_k` with the idempotents `e_i` given as vectors of
/// `alg`.
pub fn diagonal_hecke_on(p: &DiagonalHeckeParams, alg: &AlgebraRef, idempotents: &[Vector]) -> Result<Tensor2> {
    if idempotents.len() != p.k {
        return Err(Error::ShapeError(format!(
            "{} idempotents for {} indices",
            idempotents.len(),
            p.k
        )));
    }
    let mut s = Tensor2::zero(alg.clone());
    for i in 0..p.k {
        for k in 0..p.k {
            let term = Tensor2::pure(alg.clone(), &idempotents[i], &idempotents[k]).scale(&p.coefficient(i, k));
            s = s.add(&term)?;
        }
    }
    Ok(s)
}

/// The diagonal Hecke solution over `diagonal_algebra(k)`.
pub fn diagonal_hecke(p: &DiagonalHeckeParams) -> Result<Tensor2> {
    let alg = Arc::new(diagonal_algebra(p.k)?);
    let units: Vec<Vector> = (0..p.k).map(|i| unit_vec(p.k, i)).collect();
    diagonal_hecke_on(p, &alg, &units)
}

fn unit_term(n: usize, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    (mat_index(n, a.0, a.1), mat_index(n, b.0, b.1))
}

/// `q Σ e^i_i⊗e^i_i + Σ_{i≠j} e^i_i⊗e^j_j + ω Σ_{i<j} e^i_j⊗e^j_i`.
pub fn dj_closed(n: usize) -> Result<Tensor2> {
    dj_closed_over(Arc::new(mat_algebra(n)?), n)
}

pub(crate) fn dj_closed_over(alg: AlgebraRef, n: usize) -> Result<Tensor2> {
    let mut r = Tensor2::zero(alg);
    for i in 1..=n {
        for j in 1..=n {
            let c = if i == j { RatQ::q() } else { RatQ::one() };
            r.add_term(unit_term(n, (i, i), (j, j)), c)?;
            if i < j {
                r.add_term(unit_term(n, (i, j), (j, i)), RatQ::omega())?;
            }
        }
    }
    Ok(r)
}

/// Builds `R_n` from `R_{n−1}` one matrix size at a time:
/// `R_n = R_{n−1} + R₁ + P_{n−1}⊗P₁ + P₁⊗P_{n−1} + ω Σ_{i<n} e^i_n⊗e^n_i`
/// with `R₁ = q e^n_n⊗e^n_n`, `P_{n−1} = Σ_{i<n} e^i_i`, `P₁ = e^n_n`.
pub fn dj_recursive(n: usize) -> Result<Tensor2> {
    if n == 0 {
        return Err(Error::ShapeError("Mat_0 is not defined".into()));
    }
    let mut prev: Vec<((usize, usize), (usize, usize), RatQ)> = vec![((1, 1), (1, 1), RatQ::q())];
    for m in 2..=n {
        let mut next = prev.clone();
        next.push(((m, m), (m, m), RatQ::q()));
        for i in 1..m {
            next.push(((i, i), (m, m), RatQ::one()));
            next.push(((m, m), (i, i), RatQ::one()));
            next.push(((i, m), (m, i), RatQ::omega()));
        }
        prev = next;
    }
    let alg = Arc::new(mat_algebra(n)?);
    Tensor2::from_terms(alg, prev.into_iter().map(|(a, b, c)| (unit_term(n, a, b), c)))
}

/// An invertible element of `D⊗D` together with `F₂₁⁻¹`.
#[derive(Clone, Debug)]
pub struct TwistF {
    f: Tensor2,
    f21_inv: Tensor2,
}

impl TwistF {
    /// `F` must lie in `D⊗D` for the subalgebra `D` spanned by `d_basis` and
    /// be invertible there.
    pub fn new(f: Tensor2, d_basis: &[Vector]) -> Result<Self> {
        let alg = f.algebra().clone();
        let dim = alg.dim();
        let d = Subspace::span(dim, d_basis.to_vec())?;
        let dd: Vec<Vector> = d
            .basis()
            .iter()
            .flat_map(|x| {
                let alg = alg.clone();
                d.basis().iter().map(move |y| Tensor2::pure(alg.clone(), x, y).to_vector())
            })
            .collect();
        let dd = Subspace::span(dim * dim, dd)?;
        if !dd.contains(&f.to_vector()) {
            return Err(Error::BadTwistData("F does not lie in D⊗D".into()));
        }
        let f21_inv = f
            .flip()
            .inverse_on(d.basis())
            .ok_or_else(|| Error::BadTwistData("F is not invertible in D⊗D".into()))?;
        Ok(TwistF { f, f21_inv })
    }

    /// `F = Σ f^{ik} e^i_i⊗e^k_k` over `Mat_n` (`f` is `n×n`).
    pub fn diagonal(alg: &AlgebraRef, f: &[Vec<RatQ>]) -> Result<Self> {
        let n = f.len();
        if alg.dim() != n * n || f.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeError("twist matrix does not match Mat_n".into()));
        }
        let mut t = Tensor2::zero(alg.clone());
        for i in 1..=n {
            for k in 1..=n {
                t.add_term(unit_term(n, (i, i), (k, k)), f[i - 1][k - 1].clone())?;
            }
        }
        let diag: Vec<Vector> = (1..=n).map(|i| unit_vec(n * n, mat_index(n, i, i))).collect();
        Self::new(t, &diag)
    }

    pub fn f(&self) -> &Tensor2 {
        &self.f
    }

    pub fn f21_inv(&self) -> &Tensor2 {
        &self.f21_inv
    }

    /// `F X F₂₁⁻¹`.
    pub fn conjugate(&self, x: &Tensor2) -> Result<Tensor2> {
        self.f.mul(x)?.mul(&self.f21_inv)
    }

    pub fn preserves(&self, q: &Tensor2) -> Result<bool> {
        Ok(self.conjugate(q)? == *q)
    }
}

/// `F R F₂₁⁻¹`, after checking `F Q F₂₁⁻¹ = Q`.
pub fn twist(r: &Tensor2, f: &TwistF, q: &Tensor2) -> Result<Tensor2> {
    if !f.preserves(q)? {
        return Err(Error::TwistIncompatible);
    }
    let out = f.conjugate(r)?;
    let rep = is_ybe(&out);
    if !rep.passed {
        return Err(Error::InternalInconsistency(format!(
            "twisted R fails YBE with {} residual terms",
            rep.residual_len()
        )));
    }
    Ok(out)
}

/// `Σ_{i<j} e^i_j⊗e^j_i` over `Mat_n`: the canonical element of the
/// triangular split, the nilpotent part of `R_n / ω`.
pub fn triangular_q(alg: &AlgebraRef, n: usize) -> Result<Tensor2> {
    let mut q = Tensor2::zero(alg.clone());
    for i in 1..=n {
        for j in i + 1..=n {
            q.add_term(unit_term(n, (i, j), (j, i)), RatQ::one())?;
        }
    }
    Ok(q)
}
