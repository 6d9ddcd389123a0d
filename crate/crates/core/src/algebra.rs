//! Finite-dimensional unital associative algebras given by structure
//! constants, with an optional trace functional inducing a symmetric cyclic
//! form `(a, b) = t(ab)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::RatQ;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vec, vec_add, vec_scale, zero_vec, Matrix, Subspace, Vector};

/// Products `b_i b_j = Σ c_ij^k b_k` as sparse lists.
pub type Structure = Vec<Vec<(usize, RatQ)>>;

/// Results of the checks run when an algebra is constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub associative: bool,
    pub unital: bool,
    pub cyclic_trace: bool,
    pub nondegenerate: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    table: Structure,
    unit: Vector,
    trace: Option<Vector>,
    gram: Option<Matrix>,
    certificate: Certificate,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.dim())
    }
}

/// The Gram matrix `G_ij = t(b_i b_j)` of a trace form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, a: &[RatQ], b: &[RatQ]) -> RatQ {
        let gb = self.gram.apply(b).expect("form dimension");
        a.iter()
            .zip(&gb)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .fold(RatQ::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram
            .determinant()
            .map(|d| !d.is_zero())
            .unwrap_or(false)
    }

    /// Restricted pairing matrix `(p_i, m_j)`.
    pub fn pairing(&self, p: &[Vector], m: &[Vector]) -> Matrix {
        let mut g = Matrix::zeros(p.len(), m.len());
        for (i, pi) in p.iter().enumerate() {
            for (j, mj) in m.iter().enumerate() {
                g.set(i, j, self.eval(pi, mj));
            }
        }
        g
    }
}

impl Algebra {
    /// Builds an algebra and runs every structural check. Fails when
    /// associativity, the unit law, or trace cyclicity is violated.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Structure,
        unit: Vector,
        trace: Option<Vector>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::ShapeError(format!(
                "structure table has {} entries for dimension {dim}",
                table.len()
            )));
        }
        if unit.len() != dim || trace.as_ref().is_some_and(|t| t.len() != dim) {
            return Err(Error::ShapeError("unit or trace has the wrong length".into()));
        }
        for outs in &table {
            if outs.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::ShapeError("structure constant index out of range".into()));
            }
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidAlgebra(format!("duplicate basis label {l:?}")));
            }
        }
        let table = table
            .into_iter()
            .map(|outs| {
                let mut v = zero_vec(dim);
                for (k, c) in outs {
                    v[k] = v[k].add_ref(&c);
                }
                sparse(&v)
            })
            .collect();
        let mut alg = Algebra {
            name: name.into(),
            labels,
            index,
            table,
            unit,
            trace,
            gram: None,
            certificate: Certificate {
                associative: false,
                unital: false,
                cyclic_trace: false,
                nondegenerate: false,
            },
        };
        if !alg.check_associative() {
            return Err(Error::InvalidAlgebra(format!("{} is not associative", alg.name)));
        }
        if !alg.check_unit() {
            return Err(Error::InvalidAlgebra(format!("{}: unit is not a two-sided identity", alg.name)));
        }
        alg.certificate.associative = true;
        alg.certificate.unital = true;
        if let Some(t) = alg.trace.clone() {
            let mut g = Matrix::zeros(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    let v = alg.table[i * dim + j]
                        .iter()
                        .fold(RatQ::zero(), |acc, (k, c)| acc.add_ref(&c.mul_ref(&t[*k])));
                    g.set(i, j, v);
                }
            }
            let form = BilinearForm { gram: g };
            if !form.is_symmetric() {
                return Err(Error::InvalidAlgebra(format!("{}: trace is not cyclic", alg.name)));
            }
            alg.certificate.cyclic_trace = true;
            alg.certificate.nondegenerate = form.is_nondegenerate();
            alg.gram = Some(form.gram);
        }
        Ok(alg)
    }

    fn check_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i * n + j];
                for k in 0..n {
                    let mut left = zero_vec(n);
                    for (a, c) in ij {
                        for (b, d) in &self.table[a * n + k] {
                            left[*b] = left[*b].add_ref(&c.mul_ref(d));
                        }
                    }
                    let mut right = zero_vec(n);
                    for (a, c) in &self.table[j * n + k] {
                        for (b, d) in &self.table[i * n + a] {
                            right[*b] = right[*b].add_ref(&c.mul_ref(d));
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_unit(&self) -> bool {
        (0..self.dim()).all(|i| {
            let e = unit_vec(self.dim(), i);
            self.mul_vec(&self.unit, &e) == e && self.mul_vec(&e, &self.unit) == e
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn trace(&self) -> Option<&Vector> {
        self.trace.as_ref()
    }

    /// `b_i b_j` as a sparse list.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, RatQ)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul_vec(&self, a: &[RatQ], b: &[RatQ]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = out[*k].add_ref(&xy.mul_ref(c));
                }
            }
        }
        out
    }

    pub fn form(&self) -> Result<BilinearForm> {
        self.gram
            .clone()
            .map(|gram| BilinearForm { gram })
            .ok_or(Error::DegenerateForm)
    }

    pub fn has_nondegenerate_form(&self) -> bool {
        self.certificate.nondegenerate
    }

    /// Closure of a subspace under multiplication.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|a| s.basis().iter().all(|b| s.contains(&self.mul_vec(a, b))))
    }

    /// `left · sub ⊆ sub` and `sub · left ⊆ sub`.
    pub fn is_bimodule(&self, left: &Subspace, sub: &Subspace) -> bool {
        left.basis().iter().all(|d| {
            sub.basis()
                .iter()
                .all(|x| sub.contains(&self.mul_vec(d, x)) && sub.contains(&self.mul_vec(x, d)))
        })
    }
}

fn sparse(v: &[RatQ]) -> Vec<(usize, RatQ)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn mat_label(i: usize, j: usize) -> String {
    format!("m:{i},{j}")
}

/// `Mat_n` with matrix units `e^i_j` (label `m:i,j`, 1-based) and the
/// ordinary trace.
pub fn mat_algebra(n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::ShapeError("Mat_0 is not defined".into()));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let dim = n * n;
    let mut labels = Vec::with_capacity(dim);
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            labels.push(mat_label(i + 1, j + 1));
            for l in 0..n {
                table[idx(i, j) * dim + idx(j, l)] = vec![(idx(i, l), RatQ::one())];
            }
        }
    }
    let mut unit = zero_vec(dim);
    let mut trace = zero_vec(dim);
    for i in 0..n {
        unit[idx(i, i)] = RatQ::one();
        trace[idx(i, i)] = RatQ::one();
    }
    Algebra::new(format!("mat:{n}"), labels, table, unit, Some(trace))
}

/// The commutative algebra ℂ^k with orthonormal idempotents `e_i`.
pub fn diagonal_algebra(k: usize) -> Result<Algebra> {
    if k == 0 {
        return Err(Error::ShapeError("diagonal algebra of dimension 0".into()));
    }
    diagonal_algebra_indexed(&(1..=k).collect::<Vec<_>>(), format!("diag:{k}"))
}

/// Diagonal idempotents labelled `d:i` by the given indices.
pub fn diagonal_algebra_indexed(indices: &[usize], name: impl Into<String>) -> Result<Algebra> {
    let k = indices.len();
    let labels = indices.iter().map(|i| format!("d:{i}")).collect();
    let mut table = vec![Vec::new(); k * k];
    for i in 0..k {
        table[i * k + i] = vec![(i, RatQ::one())];
    }
    let ones = vec![RatQ::one(); k];
    Algebra::new(name, labels, table, ones.clone(), Some(ones))
}

/// The zero algebra (where 1 = 0).
pub fn zero_algebra() -> Algebra {
    Algebra::new("zero", Vec::new(), Vec::new(), Vec::new(), Some(Vec::new())).unwrap()
}

/// Direct sum of algebras with traces `Σ sign_s · t_s`; labels are prefixed
/// `s0:`, `s1:`, …
pub fn direct_sum_many(parts: &[(&Algebra, i64)]) -> Result<Algebra> {
    let dim: usize = parts.iter().map(|(a, _)| a.dim()).sum();
    let mut labels = Vec::with_capacity(dim);
    let mut table = vec![Vec::new(); dim * dim];
    let mut unit = Vec::with_capacity(dim);
    let mut trace = Vec::with_capacity(dim);
    let mut offset = 0;
    let mut names = Vec::new();
    for (s, (a, sign)) in parts.iter().enumerate() {
        let t = a
            .trace()
            .ok_or_else(|| Error::InvalidAlgebra(format!("{} has no trace", a.name())))?;
        let sign = RatQ::int(*sign);
        names.push(if sign.is_one() { a.name().to_string() } else { format!("-{}", a.name()) });
        for i in 0..a.dim() {
            labels.push(format!("s{s}:{}", a.label(i)));
            for j in 0..a.dim() {
                table[(offset + i) * dim + offset + j] = a
                    .mul_basis(i, j)
                    .iter()
                    .map(|(k, c)| (offset + k, c.clone()))
                    .collect();
            }
        }
        unit.extend(a.unit().iter().cloned());
        trace.extend(t.iter().map(|x| x.mul_ref(&sign)));
        offset += a.dim();
    }
    Algebra::new(format!("sum({})", names.join(",")), labels, table, unit, Some(trace))
}

pub fn direct_sum(a: &Algebra, b: &Algebra, sign: i64) -> Result<Algebra> {
    if sign != 1 && sign != -1 {
        return Err(Error::ShapeError("direct sum sign must be ±1".into()));
    }
    direct_sum_many(&[(a, 1), (b, sign)])
}

/// `A ⊗ B` with basis pairs (label `(a)x(b)`) and the product trace.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (ta, tb) = match (a.trace(), b.trace()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::InvalidAlgebra("tensor product needs traces on both factors".into())),
    };
    let (m, n) = (a.dim(), b.dim());
    let dim = m * n;
    let mut labels = Vec::with_capacity(dim);
    let mut unit = zero_vec(dim);
    let mut trace = zero_vec(dim);
    for i in 0..m {
        for j in 0..n {
            labels.push(format!("({})x({})", a.label(i), b.label(j)));
            unit[i * n + j] = a.unit()[i].mul_ref(&b.unit()[j]);
            trace[i * n + j] = ta[i].mul_ref(&tb[j]);
        }
    }
    let mut table = vec![Vec::new(); dim * dim];
    for i1 in 0..m {
        for j1 in 0..n {
            for i2 in 0..m {
                for j2 in 0..n {
                    let mut outs = Vec::new();
                    for (k, c) in a.mul_basis(i1, i2) {
                        for (l, d) in b.mul_basis(j1, j2) {
                            outs.push((k * n + l, c.mul_ref(d)));
                        }
                    }
                    table[(i1 * n + j1) * dim + i2 * n + j2] = outs;
                }
            }
        }
    }
    Algebra::new(format!("({})x({})", a.name(), b.name()), labels, table, unit, Some(trace))
}

/// Kronecker product of coordinate vectors, matching [`tensor_product`].
pub fn kron_vec(u: &[RatQ], v: &[RatQ]) -> Vector {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for x in u {
        for y in v {
            out.push(x.mul_ref(y));
        }
    }
    out
}

/// A basis of `P` and the basis of `M` dual to it: `(p_i, m^k) = δ_i^k`.
pub fn dual_basis(form: &BilinearForm, p: &Subspace, m: &Subspace) -> Result<(Vec<Vector>, Vec<Vector>)> {
    if p.ambient() != m.ambient() {
        return Err(Error::ShapeError("subspaces live in different spaces".into()));
    }
    let dual = dual_vectors(form, p.basis(), m.basis())?;
    Ok((p.basis().to_vec(), dual))
}

/// Vectors in the span of `m` dual to the given (independent) vectors `p`.
pub fn dual_vectors(form: &BilinearForm, p: &[Vector], m: &[Vector]) -> Result<Vec<Vector>> {
    if p.len() != m.len() {
        return Err(Error::NotPaired);
    }
    let g = form.pairing(p, m);
    let x = g.inverse().ok_or(Error::NotPaired)?;
    let ambient = form.gram().rows();
    Ok((0..m.len())
        .map(|k| {
            let mut v = zero_vec(ambient);
            for (j, mj) in m.iter().enumerate() {
                let c = x.get(j, k);
                if !c.is_zero() {
                    v = vec_add(&v, &vec_scale(mj, c));
                }
            }
            v
        })
        .collect())
}

/// Orthogonal complement of `d` inside `within` with respect to the form.
pub fn orthogonal_complement_in(form: &BilinearForm, within: &Subspace, d: &Subspace) -> Result<Subspace> {
    let pairing = form.pairing(within.basis(), d.basis());
    // coefficients c with Σ c_i (w_i, d_j) = 0 for all j
    let conds = pairing.transpose();
    let kernel = if d.dim() == 0 {
        (0..within.dim()).map(|i| unit_vec(within.dim(), i)).collect()
    } else {
        conds.kernel()
    };
    let vectors = kernel
        .into_iter()
        .map(|c| {
            let mut v = zero_vec(within.ambient());
            for (i, w) in within.basis().iter().enumerate() {
                if !c[i].is_zero() {
                    v = vec_add(&v, &vec_scale(w, &c[i]));
                }
            }
            v
        })
        .filter(|v| !is_zero_vec(v))
        .collect();
    Subspace::span(within.ambient(), vectors)
}

pub type AlgebraRef = Arc<Algebra>;

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> Vector {
        unit_vec(n * n, (i - 1) * n + (j - 1))
    }

    #[test]
    fn one_dimensional_matrix_algebra() {
        let a = mat_algebra(1).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.trace().unwrap()[0].is_one());
    }

    #[test]
    fn matrix_unit_law() {
        let a = mat_algebra(2).unwrap();
        assert_eq!(a.mul_vec(&e(2, 1, 2), &e(2, 2, 1)), e(2, 1, 1));
        assert!(is_zero_vec(&a.mul_vec(&e(2, 1, 2), &e(2, 1, 2))));
    }

    #[test]
    fn mat2_gram_pairs_transposes() {
        let a = mat_algebra(2).unwrap();
        let g = a.form().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let expected = if j == k && l == i { RatQ::one() } else { RatQ::zero() };
                        assert_eq!(g.gram().get(i * 2 + j, k * 2 + l), &expected);
                    }
                }
            }
        }
        assert!(a.has_nondegenerate_form());
    }

    #[test]
    fn diagonal_algebra_basics() {
        let d = diagonal_algebra(2).unwrap();
        assert!(is_zero_vec(&d.mul_vec(&unit_vec(2, 0), &unit_vec(2, 1))));
        assert_eq!(d.form().unwrap().gram(), &Matrix::identity(2));
        assert_eq!(d.unit(), &vec![RatQ::one(), RatQ::one()]);
    }

    #[test]
    fn signed_direct_sum_negates_second_block() {
        let m = mat_algebra(2).unwrap();
        let s = direct_sum(&m, &m, -1).unwrap();
        let g = s.form().unwrap();
        let g0 = m.form().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.gram().get(i, j), g0.gram().get(i, j));
                assert_eq!(g.gram().get(4 + i, 4 + j), &g0.gram().get(i, j).neg_ref());
                assert!(g.gram().get(i, 4 + j).is_zero());
            }
        }
        assert_eq!(s.unit()[..4], m.unit()[..]);
        assert_eq!(s.unit()[4..], m.unit()[..]);
        assert!(s.certificate().associative && s.certificate().cyclic_trace);
    }

    #[test]
    fn sum_with_zero_algebra() {
        let m = mat_algebra(2).unwrap();
        let s = direct_sum(&m, &zero_algebra(), 1).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.form().unwrap().gram(), m.form().unwrap().gram());
    }

    #[test]
    fn tensor_products() {
        let m = mat_algebra(2).unwrap();
        let t = tensor_product(&m, &m).unwrap();
        assert_eq!(t.dim(), 16);
        assert!(t.has_nondegenerate_form());
        let one = diagonal_algebra(1).unwrap();
        let t1 = tensor_product(&one, &m).unwrap();
        assert_eq!(t1.form().unwrap().gram(), m.form().unwrap().gram());
        // t(x⊗y) = t(x) t(y)
        let tr = t.trace().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(tr[i * 4 + j], m.trace().unwrap()[i].mul_ref(&m.trace().unwrap()[j]));
            }
        }
    }

    #[test]
    fn non_associative_rejected() {
        // b0 b0 = b1, b1 b0 = 0, but b0 b1 = b0 breaks (b0 b0) b0 = b0 (b0 b0)
        let labels = vec!["a".to_string(), "b".to_string()];
        let mut table = vec![Vec::new(); 4];
        table[0] = vec![(1, RatQ::one())];
        table[1] = vec![(0, RatQ::one())];
        assert!(Algebra::new("bad", labels, table, zero_vec(2), None).is_err());
    }

    #[test]
    fn dual_basis_examples() {
        let a = mat_algebra(2).unwrap();
        let g = a.form().unwrap();
        let p = Subspace::span(4, vec![e(2, 1, 2)]).unwrap();
        let m = Subspace::span(4, vec![e(2, 2, 1)]).unwrap();
        let (ps, ms) = dual_basis(&g, &p, &m).unwrap();
        assert_eq!(ps, vec![e(2, 1, 2)]);
        assert_eq!(ms, vec![e(2, 2, 1)]);

        let diag = Subspace::span(4, vec![e(2, 1, 1), e(2, 2, 2)]).unwrap();
        let (ps, ms) = dual_basis(&g, &diag, &diag).unwrap();
        assert_eq!(ps, ms);

        assert!(matches!(dual_basis(&g, &p, &p), Err(Error::NotPaired)));
    }

    #[test]
    fn solve_right_annihilator() {
        // x · e^1_1 = 0 in Mat_2
        let a = mat_algebra(2).unwrap();
        let target = e(2, 1, 1);
        let mut conds = vec![zero_vec(4); 4];
        for j in 0..4 {
            let prod = a.mul_vec(&unit_vec(4, j), &target);
            for (k, c) in prod.iter().enumerate() {
                conds[k][j] = c.clone();
            }
        }
        let s = crate::linalg::solve_linear(4, conds).unwrap();
        let expected = Subspace::span(4, vec![e(2, 1, 2), e(2, 2, 2)]).unwrap();
        assert_eq!(s, expected);
    }
}
