//! Spectral-parameter solutions: the Hecke inverse identity, baxterization
//! `R(z,u) = zR − uR₂₁⁻¹`, Yang-type matrices, and the spectral YBE checked
//! as an exact polynomial identity in `z, u, v`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::AlgebraRef;
use crate::arith::{RatQ, SpectralPoly};
use crate::checkers::{common_denominator, is_unitary, is_ybe, CheckReport, Identity, Residual};
use crate::error::{Error, Result};
use crate::tensor::{pair_product, same_algebra, Key2, Key3, Tensor2, Tensor3};
use crate::triples::permutation_element;

pub const ZU: [&str; 2] = ["z", "u"];
const ZUV: [&str; 3] = ["z", "u", "v"];

/// A two-leg tensor with polynomial coefficients in named parameters.
#[derive(Clone, Debug)]
pub struct SpectralTensor2 {
    alg: AlgebraRef,
    params: Vec<String>,
    terms: BTreeMap<Key2, SpectralPoly>,
}

impl PartialEq for SpectralTensor2 {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.params == other.params && self.terms == other.terms
    }
}

impl SpectralTensor2 {
    pub fn zero(alg: AlgebraRef, params: &[&str]) -> Self {
        SpectralTensor2 {
            alg,
            params: params.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// `Σ_m monomial_m · T_m`.
    pub fn from_components(alg: AlgebraRef, params: &[&str], parts: &[(Vec<u32>, &Tensor2)]) -> Result<Self> {
        let mut out = Self::zero(alg, params);
        for (exp, t) in parts {
            if !same_algebra(&out.alg, t.algebra()) {
                return Err(Error::AlgebraMismatch);
            }
            if exp.len() != params.len() {
                return Err(Error::ShapeError("exponent arity differs from the parameter list".into()));
            }
            for (k, c) in t.terms() {
                let mono = SpectralPoly::from_terms(out.params.clone(), [(exp.clone(), c.clone())]);
                out.add_term(*k, mono)?;
            }
        }
        Ok(out)
    }

    pub fn add_term(&mut self, (i, j): Key2, p: SpectralPoly) -> Result<()> {
        let d = self.alg.dim();
        if i >= d || j >= d {
            return Err(Error::ShapeError(format!("index ({i},{j}) out of range")));
        }
        if p.vars() != self.params.as_slice() {
            return Err(Error::ShapeError("coefficient parameters differ from the tensor's".into()));
        }
        let sum = match self.terms.remove(&(i, j)) {
            Some(old) => old.add(&p),
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert((i, j), sum);
        }
        Ok(())
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn terms(&self) -> &BTreeMap<Key2, SpectralPoly> {
        &self.terms
    }

    /// Decomposition `Σ_m monomial_m · T_m` with constant tensors `T_m`.
    pub fn components(&self) -> BTreeMap<Vec<u32>, Tensor2> {
        let mut out: BTreeMap<Vec<u32>, Tensor2> = BTreeMap::new();
        for (k, p) in &self.terms {
            for (e, c) in p.terms() {
                out.entry(e.clone())
                    .or_insert_with(|| Tensor2::zero(self.alg.clone()))
                    .add_term(*k, c.clone())
                    .expect("index in range");
            }
        }
        out
    }

    /// Substitutes values for all parameters.
    pub fn specialize(&self, values: &[RatQ]) -> Result<Tensor2> {
        if values.len() != self.params.len() {
            return Err(Error::ShapeError("wrong number of parameter values".into()));
        }
        let mut t = Tensor2::zero(self.alg.clone());
        for (k, p) in &self.terms {
            t.add_term(*k, p.eval(values))?;
        }
        Ok(t)
    }
}

/// `R₂₁⁻¹ = R − ω𝒫`, valid when `(R𝒫)² = ω R𝒫 + 1` with `𝒫` the
/// permutation element.
pub fn hecke_inverse_21(r: &Tensor2) -> Result<Tensor2> {
    let p = permutation_element(r.algebra())?;
    let one = Tensor2::one(r.algebra().clone());
    let rp = r.mul(&p)?;
    let defect = rp.mul(&rp)?.sub(&rp.scale(&RatQ::omega()))?.sub(&one)?;
    if !defect.is_zero() {
        return Err(Error::NotHecke);
    }
    let inv = r.sub(&p.scale(&RatQ::omega()))?;
    let r21 = r.flip();
    if r21.mul(&inv)? != one || inv.mul(&r21)? != one {
        return Err(Error::InternalInconsistency("R − ω𝒫 is not the inverse of R₂₁".into()));
    }
    Ok(inv)
}

/// `R(z,u) = zR − uR₂₁⁻¹`.
pub fn baxterize(r: &Tensor2) -> Result<SpectralTensor2> {
    let inv = hecke_inverse_21(r)?;
    SpectralTensor2::from_components(r.algebra().clone(), &ZU, &[(vec![1, 0], r), (vec![0, 1], &inv.neg())])
}

/// `(z − u)·1⊗1 + λ𝒫`, the Yang matrix with its pole cleared.
pub fn yang_matrix(alg: &AlgebraRef, lam: &RatQ) -> Result<SpectralTensor2> {
    let one = Tensor2::one(alg.clone());
    unitary_form(alg, &one, lam)
}

fn unitary_form(alg: &AlgebraRef, s: &Tensor2, lam: &RatQ) -> Result<SpectralTensor2> {
    let p = permutation_element(alg)?.scale(lam);
    SpectralTensor2::from_components(
        alg.clone(),
        &ZU,
        &[(vec![1, 0], s), (vec![0, 1], &s.neg()), (vec![0, 0], &p)],
    )
}

/// `(z − u)S + λ𝒫` for a unitary YBE solution `S`.
pub fn unitary_deform_yang(s: &Tensor2, lam: &RatQ) -> Result<SpectralTensor2> {
    let ybe = is_ybe(s);
    if !ybe.passed {
        return Err(Error::Precondition(Box::new(ybe)));
    }
    let unit = is_unitary(s);
    if !unit.passed {
        return Err(Error::Precondition(Box::new(unit)));
    }
    let out = unitary_form(s.algebra(), s, lam)?;
    let rep = spectral_ybe(&out)?;
    if !rep.passed {
        return Err(Error::InternalInconsistency(format!(
            "deformed solution fails the spectral YBE with {} residual terms",
            rep.residual_len()
        )));
    }
    Ok(out)
}

fn add_poly(acc: &mut HashMap<Key3, SpectralPoly>, t: &Tensor3, exp: &[u32], sign: i64) {
    for (k, c) in t.terms() {
        let c = if sign < 0 { c.neg_ref() } else { c.clone() };
        let mono = SpectralPoly::from_terms(ZUV.iter().map(|s| s.to_string()).collect(), [(exp.to_vec(), c)]);
        match acc.remove(k) {
            Some(old) => {
                let s = old.add(&mono);
                if !s.is_zero() {
                    acc.insert(*k, s);
                }
            }
            None => {
                acc.insert(*k, mono);
            }
        }
    }
}

/// `R₁₂(z,u)R₁₃(z,v)R₂₃(u,v) − R₂₃(u,v)R₁₃(z,v)R₁₂(z,u)` as polynomials in
/// `z, u, v`. A tensor without parameters is checked as a constant solution.
pub fn spectral_ybe(rf: &SpectralTensor2) -> Result<CheckReport> {
    if rf.params.is_empty() {
        let constant = rf.specialize(&[])?;
        let rep = is_ybe(&constant);
        return Ok(CheckReport { identity: Identity::SpectralYbe, ..rep });
    }
    if rf.params != ZU {
        return Err(Error::ShapeError("spectral YBE expects parameters (z, u)".into()));
    }
    let comps = rf.components();
    // the identity is homogeneous of degree one in each factor, so a common
    // denominator can be cleared up front
    let l = common_denominator(comps.values().flat_map(|t| t.terms().values()));
    let scale = RatQ::from_poly(l.clone());
    let comps: Vec<(Vec<u32>, Tensor2)> = comps
        .into_iter()
        .map(|(e, t)| (e, if l.is_one() { t } else { t.scale(&scale) }))
        .collect();
    let mut acc: HashMap<Key3, SpectralPoly> = HashMap::new();
    for (e1, t1) in &comps {
        for (e2, t2) in &comps {
            let lhs12_13 = pair_product(t1, (0, 1), t2, (0, 2))?;
            for (e3, t3) in &comps {
                // R12(z,u): z^{e1.0} u^{e1.1}; R13(z,v): z^{e2.0} v^{e2.1}; R23(u,v): u^{e3.0} v^{e3.1}
                let exp = vec![e1[0] + e2[0], e1[1] + e3[0], e2[1] + e3[1]];
                let lhs = lhs12_13.mul_legs(t3, (1, 2), true)?;
                add_poly(&mut acc, &lhs, &exp, 1);
                let rhs = pair_product(t3, (1, 2), t2, (0, 2))?.mul_legs(t1, (0, 1), true)?;
                add_poly(&mut acc, &rhs, &exp, -1);
            }
        }
    }
    let inv3 = if l.is_one() { None } else { Some(scale.pow(3).inv()?) };
    let residual: BTreeMap<Key3, SpectralPoly> = acc
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| (k, inv3.as_ref().map_or(p.clone(), |c| p.scale(c))))
        .collect();
    Ok(CheckReport::from_residual(
        Identity::SpectralYbe,
        Residual::Spectral(rf.alg.clone(), residual),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mat_algebra;
    use crate::solutions::dj_closed;
    use std::sync::Arc;

    #[test]
    fn dj2_inverse_and_baxterization() {
        let r = dj_closed(2).unwrap();
        let inv = hecke_inverse_21(&r).unwrap();
        let p = permutation_element(r.algebra()).unwrap();
        assert_eq!(r.sub(&inv).unwrap(), p.scale(&RatQ::omega()));
        let rf = baxterize(&r).unwrap();
        assert!(rf.components().keys().all(|e| e.iter().all(|&x| x <= 1)));
        assert_eq!(rf.specialize(&[RatQ::one(), RatQ::zero()]).unwrap(), r);
        assert_eq!(rf.specialize(&[RatQ::int(5), RatQ::zero()]).unwrap(), r.scale(&RatQ::int(5)));
        let z = RatQ::int(3);
        assert_eq!(rf.specialize(&[z.clone(), z.clone()]).unwrap(), p.scale(&RatQ::omega().mul_ref(&z)));
        assert!(spectral_ybe(&rf).unwrap().passed);
    }

    #[test]
    fn scalar_inverse() {
        let r = dj_closed(1).unwrap();
        let inv = hecke_inverse_21(&r).unwrap();
        assert_eq!(inv.coeff(0, 0), RatQ::q_pow(-1));
    }

    #[test]
    fn non_hecke_rejected() {
        let a = Arc::new(mat_algebra(2).unwrap());
        let mut r = dj_closed(2).unwrap();
        r.add_term((0, 3), RatQ::one()).unwrap();
        assert!(matches!(hecke_inverse_21(&r), Err(Error::NotHecke)));
        assert!(matches!(hecke_inverse_21(&Tensor2::one(a)), Err(Error::NotHecke)));
    }

    #[test]
    fn perturbed_baxterization_fails() {
        let r = dj_closed(2).unwrap();
        let mut rf = baxterize(&r).unwrap();
        rf.add_term((0, 1), SpectralPoly::linear(&ZU, "z", RatQ::one())).unwrap();
        assert!(!spectral_ybe(&rf).unwrap().passed);
    }

    #[test]
    fn yang_and_constant_cases() {
        let a = Arc::new(mat_algebra(2).unwrap());
        assert!(spectral_ybe(&yang_matrix(&a, &RatQ::one()).unwrap()).unwrap().passed);
        assert!(spectral_ybe(&yang_matrix(&a, &RatQ::zero()).unwrap()).unwrap().passed);
        let a1 = Arc::new(mat_algebra(1).unwrap());
        assert!(spectral_ybe(&yang_matrix(&a1, &RatQ::frac(3, 2)).unwrap()).unwrap().passed);
        let p = permutation_element(&a).unwrap();
        let constant = SpectralTensor2::from_components(a, &[], &[(vec![], &p)]).unwrap();
        assert!(spectral_ybe(&constant).unwrap().passed);
    }

    #[test]
    fn unitary_deformations() {
        let a = Arc::new(mat_algebra(2).unwrap());
        let p = permutation_element(&a).unwrap();
        assert!(unitary_deform_yang(&p, &RatQ::one()).is_ok());
        let s = Tensor2::from_terms(
            a.clone(),
            [
                ((0, 0), RatQ::one()),
                ((3, 3), RatQ::one()),
                ((0, 3), RatQ::int(2)),
                ((3, 0), RatQ::frac(1, 2)),
            ],
        )
        .unwrap();
        assert!(unitary_deform_yang(&s, &RatQ::one()).is_ok());
        let bad = Tensor2::one(a).scale(&RatQ::q());
        assert!(matches!(unitary_deform_yang(&bad, &RatQ::one()), Err(Error::Precondition(_))));
    }
}
