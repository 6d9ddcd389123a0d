//! Permutation elements, canonical elements of paired subspaces, the
//! projector subspaces `M±`, associative triples and their assembly into
//! Yang–Baxter solutions.

use std::sync::Arc;

use crate::algebra::{
    direct_sum_many, dual_vectors, kron_vec, mat_algebra, orthogonal_complement_in, tensor_product, Algebra,
    AlgebraRef, BilinearForm,
};
use crate::arith::RatQ;
use crate::checkers::{is_hecke, is_ybe, CheckReport, Identity, Residual};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, solve_linear, unit_vec, vec_add, vec_scale, vec_sub, zero_vec, LinearMap, Matrix, Subspace, Vector};
use crate::tensor::Tensor2;

/// `Σ x_i ⊗ y_i`.
pub fn sum_of_pure(alg: &AlgebraRef, xs: &[Vector], ys: &[Vector]) -> Tensor2 {
    let mut t = Tensor2::zero(alg.clone());
    for (x, y) in xs.iter().zip(ys) {
        t = t.add(&Tensor2::pure(alg.clone(), x, y)).expect("same algebra");
    }
    t
}

/// Canonical element `Σ p_i ⊗ m^i` of the pairing between the spans of `p`
/// and `m`, computed from the given spanning vectors.
pub fn canonical_element(alg: &AlgebraRef, form: &BilinearForm, p: &[Vector], m: &[Vector]) -> Result<Tensor2> {
    let dual = dual_vectors(form, p, m)?;
    Ok(sum_of_pure(alg, p, &dual))
}

/// Canonical element of the form restricted to `sub` (the permutation of
/// the subalgebra, embedded in `A⊗A`).
pub fn restricted_permutation(alg: &AlgebraRef, sub: &Subspace) -> Result<Tensor2> {
    let form = alg.form()?;
    canonical_element(alg, &form, sub.basis(), sub.basis()).map_err(|e| match e {
        Error::NotPaired => Error::DegenerateForm,
        other => other,
    })
}

/// `σ_A = Σ b_i ⊗ b^i` for the trace form of `A`.
pub fn permutation_element(alg: &AlgebraRef) -> Result<Tensor2> {
    if !alg.has_nondegenerate_form() {
        return Err(Error::DegenerateForm);
    }
    let form = alg.form()?;
    let x = form.gram().inverse().ok_or(Error::DegenerateForm)?;
    let d = alg.dim();
    let mut t = Tensor2::zero(alg.clone());
    for i in 0..d {
        for j in 0..d {
            t.add_term((i, j), x.get(j, i).clone())?;
        }
    }
    Ok(t)
}

/// Two subspaces in duality under the trace form.
#[derive(Clone, Debug)]
pub struct PairedSubspaces {
    alg: AlgebraRef,
    form: BilinearForm,
    n_plus: Subspace,
    n_minus: Subspace,
    plus_basis: Vec<Vector>,
    minus_dual: Vec<Vector>,
}

impl PairedSubspaces {
    pub fn new(alg: AlgebraRef, n_plus: Subspace, n_minus: Subspace) -> Result<Self> {
        let form = alg.form()?;
        if n_plus.ambient() != alg.dim() || n_minus.ambient() != alg.dim() {
            return Err(Error::ShapeError("subspace ambient dimension differs from the algebra".into()));
        }
        let plus_basis = n_plus.basis().to_vec();
        let minus_dual = dual_vectors(&form, &plus_basis, n_minus.basis())?;
        Ok(PairedSubspaces {
            alg,
            form,
            n_plus,
            n_minus,
            plus_basis,
            minus_dual,
        })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn n_plus(&self) -> &Subspace {
        &self.n_plus
    }

    pub fn n_minus(&self) -> &Subspace {
        &self.n_minus
    }

    /// `({α_i}, {β^i})` with `(α_i, β^k) = δ_i^k`.
    pub fn dual_bases(&self) -> (&[Vector], &[Vector]) {
        (&self.plus_basis, &self.minus_dual)
    }
}

/// `Q = Σ α_i ⊗ β^i ∈ N₊⊗N₋`.
pub fn canonical_pair_element(p: &PairedSubspaces) -> Tensor2 {
    sum_of_pure(&p.alg, &p.plus_basis, &p.minus_dual)
}

/// `(π₊, π₋)` with `π₊(μ) = Σ α_i (μ, β^i)` and `π₋(μ) = Σ (α_i, μ) β^i`.
pub fn projectors(p: &PairedSubspaces) -> (LinearMap, LinearMap) {
    let d = p.alg.dim();
    let mut plus = Matrix::zeros(d, d);
    let mut minus = Matrix::zeros(d, d);
    for c in 0..d {
        let e = unit_vec(d, c);
        let mut img_p = zero_vec(d);
        let mut img_m = zero_vec(d);
        for (a, b) in p.plus_basis.iter().zip(&p.minus_dual) {
            let x = p.form.eval(&e, b);
            if !x.is_zero() {
                img_p = vec_add(&img_p, &vec_scale(a, &x));
            }
            let y = p.form.eval(a, &e);
            if !y.is_zero() {
                img_m = vec_add(&img_m, &vec_scale(b, &y));
            }
        }
        for r in 0..d {
            plus.set(r, c, img_p[r].clone());
            minus.set(r, c, img_m[r].clone());
        }
    }
    (LinearMap::new(plus), LinearMap::new(minus))
}

fn projector_subspace(alg: &Algebra, basis: &[Vector], pi: &LinearMap) -> Result<Subspace> {
    let d = alg.dim();
    let mut conditions = Vec::new();
    for a1 in basis {
        for a2 in basis {
            // columns: π(α₁ e_c) α₂ − α₁ π(e_c α₂)
            let cols: Vec<Vector> = (0..d)
                .map(|c| {
                    let e = unit_vec(d, c);
                    let left = alg.mul_vec(&pi.apply(&alg.mul_vec(a1, &e))?, a2);
                    let right = alg.mul_vec(a1, &pi.apply(&alg.mul_vec(&e, a2))?);
                    Ok(vec_sub(&left, &right))
                })
                .collect::<Result<_>>()?;
            for k in 0..d {
                let row: Vector = cols.iter().map(|v| v[k].clone()).collect();
                if !is_zero_vec(&row) {
                    conditions.push(row);
                }
            }
        }
    }
    solve_linear(d, conditions)
}

/// `M± = {μ | π±(α₁μ)α₂ = α₁π±(μα₂) for α₁, α₂ ∈ N±}`.
pub fn compute_m_pm(p: &PairedSubspaces) -> Result<(Subspace, Subspace)> {
    let (pp, pm) = projectors(p);
    let plus = projector_subspace(&p.alg, p.n_plus.basis(), &pp)?;
    let minus = projector_subspace(&p.alg, p.n_minus.basis(), &pm)?;
    Ok((plus, minus))
}

/// Checks that `M₊ + M₋` is the whole algebra and that `Q` solves YBE.
pub fn paired_subspaces_check(p: &PairedSubspaces) -> Result<CheckReport> {
    let (mp, mm) = compute_m_pm(p)?;
    let q = canonical_pair_element(p);
    let ybe = is_ybe(&q);
    let mut failures = Vec::new();
    if mp.sum(&mm)?.dim() != p.alg.dim() {
        failures.push(format!(
            "M+ + M- has dimension {} of {}",
            mp.sum(&mm)?.dim(),
            p.alg.dim()
        ));
    }
    if !ybe.passed {
        failures.push(format!("Q fails YBE ({} residual terms)", ybe.residual_len()));
    }
    Ok(CheckReport {
        identity: Identity::PairedSplit,
        passed: failures.is_empty(),
        residual: ybe.residual,
        failures,
    })
}

/// Diagonal `D = M₊ ∩ M₋` and the orthogonal complements `N±` of `D` in `M±`.
#[derive(Clone, Debug)]
pub struct AssocTriple {
    alg: AlgebraRef,
    form: BilinearForm,
    m_plus: Subspace,
    m_minus: Subspace,
    d: Subspace,
    n_plus: Subspace,
    n_minus: Subspace,
}

impl AssocTriple {
    pub fn new(alg: AlgebraRef, m_plus: Subspace, m_minus: Subspace) -> Result<Self> {
        let form = alg.form()?;
        if m_plus.ambient() != alg.dim() || m_minus.ambient() != alg.dim() {
            return Err(Error::ShapeError("subspace ambient dimension differs from the algebra".into()));
        }
        let d = m_plus.intersect(&m_minus)?;
        let n_plus = orthogonal_complement_in(&form, &m_plus, &d)?;
        let n_minus = orthogonal_complement_in(&form, &m_minus, &d)?;
        Ok(AssocTriple {
            alg,
            form,
            m_plus,
            m_minus,
            d,
            n_plus,
            n_minus,
        })
    }

    /// A triple whose diagonal and nilpotent parts are given directly.
    pub fn from_parts(alg: AlgebraRef, d: Subspace, n_plus: Subspace, n_minus: Subspace) -> Result<Self> {
        let form = alg.form()?;
        let m_plus = d.sum(&n_plus)?;
        let m_minus = d.sum(&n_minus)?;
        Ok(AssocTriple {
            alg,
            form,
            m_plus,
            m_minus,
            d,
            n_plus,
            n_minus,
        })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn m_plus(&self) -> &Subspace {
        &self.m_plus
    }

    pub fn m_minus(&self) -> &Subspace {
        &self.m_minus
    }

    pub fn diagonal(&self) -> &Subspace {
        &self.d
    }

    pub fn n_plus(&self) -> &Subspace {
        &self.n_plus
    }

    pub fn n_minus(&self) -> &Subspace {
        &self.n_minus
    }

    pub fn paired(&self) -> Result<PairedSubspaces> {
        PairedSubspaces::new(self.alg.clone(), self.n_plus.clone(), self.n_minus.clone())
    }

    /// Canonical element of the `N₊`/`N₋` pairing.
    pub fn q(&self) -> Result<Tensor2> {
        Ok(canonical_pair_element(&self.paired()?))
    }

    /// Permutation element of `D`, embedded in `A⊗A`.
    pub fn sigma_d(&self) -> Result<Tensor2> {
        restricted_permutation(&self.alg, &self.d)
    }
}

fn isotropic(form: &BilinearForm, s: &Subspace) -> bool {
    s.basis().iter().all(|a| s.basis().iter().all(|b| form.eval(a, b).is_zero()))
}

fn orthogonal(form: &BilinearForm, a: &Subspace, b: &Subspace) -> bool {
    a.basis().iter().all(|x| b.basis().iter().all(|y| form.eval(x, y).is_zero()))
}

/// Runs every defining check and names each violation.
pub fn validate_triple(t: &AssocTriple) -> CheckReport {
    let mut failures = Vec::new();
    let alg = &t.alg;
    if !alg.is_subalgebra(&t.m_plus) {
        failures.push("M+ is not a subalgebra".to_string());
    }
    if !alg.is_subalgebra(&t.m_minus) {
        failures.push("M- is not a subalgebra".to_string());
    }
    let gd = t.form.pairing(t.d.basis(), t.d.basis());
    if t.d.dim() > 0 && gd.inverse().is_none() {
        failures.push("form restricted to D is degenerate".to_string());
    }
    if !Subspace::is_direct_decomposition(&[&t.n_minus, &t.d, &t.n_plus], alg.dim()) {
        failures.push(format!(
            "N- + D + N+ is not a direct decomposition (dims {} + {} + {} in {})",
            t.n_minus.dim(),
            t.d.dim(),
            t.n_plus.dim(),
            alg.dim()
        ));
    }
    // duality and isotropy
    let paired = t.n_plus.dim() == t.n_minus.dim()
        && (t.n_plus.dim() == 0 || t.form.pairing(t.n_plus.basis(), t.n_minus.basis()).inverse().is_some());
    if !paired {
        failures.push("N- is not dual to N+".to_string());
    }
    if !isotropic(&t.form, &t.n_plus) {
        failures.push("N+ is not isotropic".to_string());
    }
    if !isotropic(&t.form, &t.n_minus) {
        failures.push("N- is not isotropic".to_string());
    }
    // bimodules
    if !alg.is_bimodule(&t.d, &t.n_plus) {
        failures.push("N+ is not a D-bimodule".to_string());
    }
    if !alg.is_bimodule(&t.d, &t.n_minus) {
        failures.push("N- is not a D-bimodule".to_string());
    }
    // orthogonality
    if !orthogonal(&t.form, &t.d, &t.n_plus) || !orthogonal(&t.form, &t.d, &t.n_minus) {
        failures.push("D is not orthogonal to N- + N+".to_string());
    }
    CheckReport::structural(Identity::Triple, failures)
}

/// `R = S + Q`, after checking that `S ∈ D⊗D` solves YBE and the Hecke
/// condition with constant `hecke_c`.
pub fn assemble_from_triple(t: &AssocTriple, s: &Tensor2, hecke_c: &RatQ) -> Result<Tensor2> {
    let ybe = is_ybe(s);
    if !ybe.passed {
        return Err(Error::Precondition(Box::new(ybe)));
    }
    let hecke = is_hecke(s, &t.sigma_d()?, hecke_c)?;
    if !hecke.passed {
        return Err(Error::Precondition(Box::new(hecke)));
    }
    let r = s.add(&t.q()?)?;
    let check = is_ybe(&r);
    if !check.passed {
        return Err(Error::InternalInconsistency(format!(
            "S + Q fails YBE with {} residual terms",
            check.residual_len()
        )));
    }
    Ok(r)
}

fn revalidated(t: AssocTriple) -> Result<AssocTriple> {
    let rep = validate_triple(&t);
    if rep.passed {
        Ok(t)
    } else {
        Err(Error::InvalidTriple(rep.failures))
    }
}

/// Swaps the roles of `M₊` and `M₋`.
pub fn triple_transpose(t: &AssocTriple) -> AssocTriple {
    AssocTriple {
        alg: t.alg.clone(),
        form: t.form.clone(),
        m_plus: t.m_minus.clone(),
        m_minus: t.m_plus.clone(),
        d: t.d.clone(),
        n_plus: t.n_minus.clone(),
        n_minus: t.n_plus.clone(),
    }
}

fn pad(v: &[RatQ], before: usize, after: usize) -> Vector {
    let mut out = zero_vec(before);
    out.extend(v.iter().cloned());
    out.extend(zero_vec(after));
    out
}

fn sum_subspace(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    let (da, db) = (a.ambient(), b.ambient());
    let mut vs: Vec<Vector> = a.basis().iter().map(|v| pad(v, 0, db)).collect();
    vs.extend(b.basis().iter().map(|v| pad(v, da, 0)));
    Subspace::span(da + db, vs)
}

/// Triple on `A₁ ⊕ A₂` with trace `t₁ ⊕ t₂`.
pub fn triple_sum(t1: &AssocTriple, t2: &AssocTriple) -> Result<AssocTriple> {
    let alg = Arc::new(direct_sum_many(&[(&t1.alg, 1), (&t2.alg, 1)])?);
    let t = AssocTriple::new(
        alg,
        sum_subspace(&t1.m_plus, &t2.m_plus)?,
        sum_subspace(&t1.m_minus, &t2.m_minus)?,
    )?;
    revalidated(t)
}

/// Triple on `A₀ ⊗ M` with `M±` replaced by `A₀ ⊗ M±`.
pub fn triple_product_trivial(a0: &Algebra, t: &AssocTriple) -> Result<AssocTriple> {
    if a0.trace().is_none() {
        return Err(Error::InvalidAlgebra("trivial factor needs a trace".into()));
    }
    let alg = Arc::new(tensor_product(a0, &t.alg)?);
    let lift = |s: &Subspace| -> Result<Subspace> {
        let mut vs = Vec::new();
        for a in 0..a0.dim() {
            let e = unit_vec(a0.dim(), a);
            for v in s.basis() {
                vs.push(kron_vec(&e, v));
            }
        }
        Subspace::span(alg.dim(), vs)
    };
    let out = AssocTriple::new(alg.clone(), lift(&t.m_plus)?, lift(&t.m_minus)?)?;
    revalidated(out)
}

/// Coordinate index of the matrix unit `e^i_j` (1-based) in `Mat_n`.
pub fn mat_index(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

fn mat_units(n: usize, pred: impl Fn(usize, usize) -> bool) -> Vec<Vector> {
    let mut vs = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if pred(i, j) {
                vs.push(unit_vec(n * n, mat_index(n, i, j)));
            }
        }
    }
    vs
}

/// `M₊` = upper-left `Mat_{n−1}` block, `e^n_n` and the last column;
/// `M₋` = same block, `e^n_n` and the last row.
pub fn dj_triple(n: usize) -> Result<AssocTriple> {
    if n < 2 {
        return Err(Error::TooSmall("the recursive split needs n >= 2".into()));
    }
    let alg = Arc::new(mat_algebra(n)?);
    let plus = Subspace::span(n * n, mat_units(n, |i, j| (i < n && j < n) || j == n))?;
    let minus = Subspace::span(n * n, mat_units(n, |i, j| (i < n && j < n) || i == n))?;
    AssocTriple::new(alg, plus, minus)
}

/// Upper and lower triangular matrices with the diagonal as `D`.
pub fn triangular_triple(n: usize) -> Result<AssocTriple> {
    let alg = Arc::new(mat_algebra(n)?);
    let plus = Subspace::span(n * n, mat_units(n, |i, j| i <= j))?;
    let minus = Subspace::span(n * n, mat_units(n, |i, j| i >= j))?;
    AssocTriple::new(alg, plus, minus)
}

/// `N₊ = span{e^{p(i)}_i}`, `N₋ = span{e^i_{p(i)}}` for an index permutation
/// `p` of `{1..n}` (given 1-based).
pub fn exotic_pairing(perm: &[usize]) -> Result<PairedSubspaces> {
    let n = perm.len();
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || seen[p] {
            return Err(Error::ShapeError("not a permutation of 1..n".into()));
        }
        seen[p] = true;
    }
    let alg = Arc::new(mat_algebra(n)?);
    let plus = (1..=n).map(|i| unit_vec(n * n, mat_index(n, perm[i - 1], i))).collect();
    let minus = (1..=n).map(|i| unit_vec(n * n, mat_index(n, i, perm[i - 1]))).collect();
    PairedSubspaces::new(alg, Subspace::span(n * n, plus)?, Subspace::span(n * n, minus)?)
}

/// The two-leg residual of a report, if it has one.
pub fn residual_of(report: &CheckReport) -> Option<&Tensor2> {
    match &report.residual {
        Residual::Two(t) => Some(t),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal_algebra, direct_sum};
    use crate::checkers::{check_intertwining, hecke_lift_defect};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn e(n: usize, i: usize, j: usize) -> usize {
        mat_index(n, i, j)
    }

    #[test]
    fn permutation_of_mat2_is_flip() {
        let a = Arc::new(mat_algebra(2).unwrap());
        let s = permutation_element(&a).unwrap();
        assert_eq!(s.len(), 4);
        for i in 1..=2 {
            for j in 1..=2 {
                assert!(s.coeff(e(2, i, j), e(2, j, i)).is_one());
            }
        }
        assert!(is_ybe(&s).passed);
        assert!(check_intertwining(&s).unwrap().passed);
    }

    #[test]
    fn permutation_of_diagonal() {
        let d = Arc::new(diagonal_algebra(3).unwrap());
        let s = permutation_element(&d).unwrap();
        assert_eq!(s, Tensor2::from_terms(d, (0..3).map(|i| ((i, i), RatQ::one()))).unwrap());
    }

    #[test]
    fn permutation_is_basis_independent() {
        let a = Arc::new(mat_algebra(2).unwrap());
        let form = a.form().unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        let basis: Vec<Vector> = loop {
            let vs: Vec<Vector> = (0..4)
                .map(|_| (0..4).map(|_| RatQ::int(rng.gen_range(-3..4))).collect())
                .collect();
            if Subspace::span(4, vs.clone()).unwrap().dim() == 4 {
                break vs;
            }
        };
        let s = canonical_element(&a, &form, &basis, &basis).unwrap();
        assert_eq!(s, permutation_element(&a).unwrap());
    }

    #[test]
    fn signed_sum_permutation() {
        let m = mat_algebra(2).unwrap();
        let a = Arc::new(direct_sum(&m, &m, -1).unwrap());
        let s = permutation_element(&a).unwrap();
        assert!(is_ybe(&s).passed);
        assert!(check_intertwining(&s).unwrap().passed);
        // second block carries the sign
        assert_eq!(s.coeff(4 + e(2, 1, 2), 4 + e(2, 2, 1)), RatQ::int(-1));
    }

    #[test]
    fn dj_split_canonical_element() {
        let t = dj_triple(3).unwrap();
        let q = t.q().unwrap();
        let expected = Tensor2::from_terms(
            t.algebra().clone(),
            (1..3).map(|i| ((e(3, i, 3), e(3, 3, i)), RatQ::one())),
        )
        .unwrap();
        assert_eq!(q, expected);
        assert!(validate_triple(&t).passed);
        assert!(hecke_lift_defect(&q, &t.sigma_d().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn exotic_examples() {
        let id = exotic_pairing(&[1, 2, 3]).unwrap();
        let q = canonical_pair_element(&id);
        assert_eq!(q.len(), 3);
        assert!(q.coeff(e(3, 2, 2), e(3, 2, 2)).is_one());

        let swap = exotic_pairing(&[2, 1]).unwrap();
        let q = canonical_pair_element(&swap);
        assert!(q.coeff(e(2, 2, 1), e(2, 1, 2)).is_one());
        assert!(q.coeff(e(2, 1, 2), e(2, 2, 1)).is_one());
        assert!(is_ybe(&q).passed);
        let (mp, _) = compute_m_pm(&swap).unwrap();
        assert_eq!(mp.dim(), 4);
        assert!(paired_subspaces_check(&swap).unwrap().passed);
    }

    #[test]
    fn projector_examples() {
        let t = dj_triple(2).unwrap();
        let p = t.paired().unwrap();
        let (pp, pm) = projectors(&p);
        assert!(pp.is_idempotent() && pm.is_idempotent());
        assert!(is_zero_vec(&pp.apply(&unit_vec(4, e(2, 1, 1))).unwrap()));
        for v in p.n_plus().basis() {
            assert_eq!(&pp.apply(v).unwrap(), v);
        }
        // adjointness
        let f = p.form();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..5 {
            let x: Vector = (0..4).map(|_| RatQ::int(rng.gen_range(-4..5))).collect();
            let y: Vector = (0..4).map(|_| RatQ::int(rng.gen_range(-4..5))).collect();
            assert_eq!(f.eval(&pp.apply(&x).unwrap(), &y), f.eval(&x, &pm.apply(&y).unwrap()));
        }
        let (mp, mm) = compute_m_pm(&p).unwrap();
        assert!(mp.contains_subspace(&t.diagonal().sum(t.n_plus()).unwrap()));
        assert!(mm.contains_subspace(t.n_minus()));
    }

    #[test]
    fn triangular_and_trivial_triples() {
        let t = triangular_triple(3).unwrap();
        assert!(validate_triple(&t).passed);
        assert_eq!(t.diagonal().dim(), 3);
        let a = Arc::new(mat_algebra(2).unwrap());
        let trivial = AssocTriple::new(a.clone(), Subspace::full(4), Subspace::full(4)).unwrap();
        assert!(validate_triple(&trivial).passed);
        assert!(trivial.q().unwrap().is_zero());
    }

    #[test]
    fn broken_triple_reports_each_violation() {
        let a = Arc::new(mat_algebra(2).unwrap());
        let m = Subspace::span(4, vec![unit_vec(4, e(2, 1, 2))]).unwrap();
        let t = AssocTriple::new(a, m.clone(), m).unwrap();
        let rep = validate_triple(&t);
        assert!(!rep.passed);
        assert!(rep.failures.iter().any(|f| f.contains("degenerate")));
        assert!(rep.failures.iter().any(|f| f.contains("direct decomposition")));
    }

    #[test]
    fn permutation_splits_over_triples() {
        for t in [dj_triple(3).unwrap(), triangular_triple(3).unwrap()] {
            let q = t.q().unwrap();
            let sigma = permutation_element(t.algebra()).unwrap();
            let split = t.sigma_d().unwrap().add(&q).unwrap().add(&q.flip()).unwrap();
            assert_eq!(sigma, split);
            // Q commutes with D like the permutation
            for d1 in t.diagonal().basis() {
                for d2 in t.diagonal().basis() {
                    let l = Tensor2::pure(t.algebra().clone(), d1, d2).mul(&q).unwrap();
                    let r = q.mul(&Tensor2::pure(t.algebra().clone(), d2, d1)).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn category_operations() {
        let t = dj_triple(2).unwrap();
        let tt = triple_transpose(&triple_transpose(&t));
        assert_eq!(tt.m_plus(), t.m_plus());
        assert_eq!(tt.n_minus(), t.n_minus());
        let s = triple_sum(&t, &t).unwrap();
        assert_eq!(s.algebra().dim(), 8);
        let p = triple_product_trivial(&diagonal_algebra(2).unwrap(), &t).unwrap();
        assert_eq!(p.algebra().dim(), 8);
        assert!(is_ybe(&p.q().unwrap()).passed);
    }
}
