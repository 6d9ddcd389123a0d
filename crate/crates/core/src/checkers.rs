//! Exact verification of the tensor identities used throughout the crate.
//! Every check returns the full residual so failures can be localized.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::AlgebraRef;
use crate::arith::{BigRat, RatQ, SpectralPoly, ZPoly};
use crate::error::Result;
use crate::tensor::{pair_product, Key3, Tensor2, Tensor3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Ybe,
    Cybe,
    Hecke,
    HeckeLiftDefect,
    Unitary,
    SpectralYbe,
    Intertwining,
    PairedSplit,
    Triple,
    Bd,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Ybe => "ybe",
            Identity::Cybe => "cybe",
            Identity::Hecke => "hecke",
            Identity::HeckeLiftDefect => "hecke_lift_defect",
            Identity::Unitary => "unitary",
            Identity::SpectralYbe => "spectral_ybe",
            Identity::Intertwining => "intertwining",
            Identity::PairedSplit => "paired_split",
            Identity::Triple => "triple",
            Identity::Bd => "bd",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub enum Residual {
    /// Structural checks carry their findings in `CheckReport::failures`.
    None,
    Two(Tensor2),
    Three(Tensor3),
    Spectral(AlgebraRef, BTreeMap<Key3, SpectralPoly>),
}

impl Residual {
    pub fn len(&self) -> usize {
        match self {
            Residual::None => 0,
            Residual::Two(t) => t.len(),
            Residual::Three(t) => t.len(),
            Residual::Spectral(_, m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub identity: Identity,
    pub passed: bool,
    pub residual: Residual,
    /// Named violations for structural checks.
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn from_residual(identity: Identity, residual: Residual) -> Self {
        CheckReport {
            identity,
            passed: residual.is_empty(),
            residual,
            failures: Vec::new(),
        }
    }

    pub fn structural(identity: Identity, failures: Vec<String>) -> Self {
        CheckReport {
            identity,
            passed: failures.is_empty(),
            residual: Residual::None,
            failures,
        }
    }

    pub fn residual_len(&self) -> usize {
        self.residual.len()
    }
}

fn poly_lcm(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = a.gcd(b);
    a.div_exact(&g).mul(b)
}

/// Common denominator of all coefficients (a polynomial in q).
pub(crate) fn common_denominator<'a>(coeffs: impl Iterator<Item = &'a RatQ>) -> ZPoly {
    let mut l = ZPoly::one();
    for c in coeffs {
        l = poly_lcm(&l, c.den());
    }
    l
}

fn ybe_sides(r: &Tensor2) -> Result<Tensor3> {
    // R12 R13 R23 − R23 R13 R12
    let lhs = pair_product(r, (0, 1), r, (0, 2))?.mul_legs(r, (1, 2), true)?;
    let rhs = pair_product(r, (1, 2), r, (0, 2))?.mul_legs(r, (0, 1), true)?;
    lhs.sub(&rhs)
}

/// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂`.
pub fn is_ybe(r: &Tensor2) -> CheckReport {
    let l = common_denominator(r.terms().values());
    let residual = if l.is_one() {
        ybe_sides(r).expect("same algebra")
    } else {
        // the identity is cubic homogeneous, so clear denominators first
        let lr = RatQ::from_poly(l.clone());
        let scaled = ybe_sides(&r.scale(&lr)).expect("same algebra");
        if scaled.is_zero() {
            scaled
        } else {
            scaled.scale(&lr.pow(3).inv().expect("nonzero denominator"))
        }
    };
    CheckReport::from_residual(Identity::Ybe, Residual::Three(residual))
}

/// Residual computed through explicit leg embeddings; slow, used to
/// cross-check [`is_ybe`].
pub fn ybe_residual_by_embedding(r: &Tensor2) -> Result<Tensor3> {
    use crate::tensor::{embed12, embed13, embed23};
    let (r12, r13, r23) = (embed12(r), embed13(r), embed23(r));
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    lhs.sub(&rhs)
}

/// YBE after substituting a rational value for q; a fast pre-filter.
pub fn ybe_spot_check(r: &Tensor2, q0: &BigRat) -> Result<bool> {
    let at = r.map_coeffs(|c| Ok(RatQ::from_bigrat(&c.eval(q0)?)))?;
    Ok(is_ybe(&at).passed)
}

/// `[r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃] = 0`.
pub fn is_cybe(r: &Tensor2) -> CheckReport {
    let comm = |a: (usize, usize), b: (usize, usize)| -> Tensor3 {
        pair_product(r, a, r, b)
            .and_then(|x| x.sub(&pair_product(r, b, r, a)?))
            .expect("same algebra")
    };
    let residual = comm((0, 1), (0, 2))
        .add(&comm((0, 1), (1, 2)))
        .and_then(|x| x.add(&comm((0, 2), (1, 2))))
        .expect("same algebra");
    CheckReport::from_residual(Identity::Cybe, Residual::Three(residual))
}

fn hecke_lhs(s: &Tensor2, sigma: &Tensor2) -> Result<Tensor2> {
    s.flip().mul(s)?.sub(&sigma.mul(s)?)
}

/// `S₂₁S − σS = c·1⊗1`.
pub fn is_hecke(s: &Tensor2, sigma: &Tensor2, c: &RatQ) -> Result<CheckReport> {
    let one = Tensor2::one(s.algebra().clone());
    let residual = hecke_lhs(s, sigma)?.sub(&one.scale(c))?;
    Ok(CheckReport::from_residual(Identity::Hecke, Residual::Two(residual)))
}

/// The constant `c` with `S₂₁S − σS = c·1⊗1`, if there is one.
pub fn hecke_constant(s: &Tensor2, sigma: &Tensor2) -> Result<Option<RatQ>> {
    let lhs = hecke_lhs(s, sigma)?;
    let one = Tensor2::one(s.algebra().clone());
    let Some((k, u)) = one.terms().iter().next() else {
        return Ok(None);
    };
    let c = lhs.coeff(k.0, k.1).div_ref(u)?;
    Ok((lhs == one.scale(&c)).then_some(c))
}

/// `σ_D Q + Q²`; zero exactly when `S + Q` inherits the Hecke condition.
pub fn hecke_lift_defect(q: &Tensor2, sigma_d: &Tensor2) -> Result<Tensor2> {
    sigma_d.mul(q)?.add(&q.mul(q)?)
}

/// `S S₂₁ = 1⊗1`.
pub fn is_unitary(s: &Tensor2) -> CheckReport {
    let one = Tensor2::one(s.algebra().clone());
    let residual = s.mul(&s.flip()).and_then(|x| x.sub(&one)).expect("same algebra");
    CheckReport::from_residual(Identity::Unitary, Residual::Two(residual))
}

/// `(a⊗1)σ = σ(1⊗a)` and `(1⊗a)σ = σ(a⊗1)` for every basis element `a`.
/// The residual is the first nonzero defect found.
pub fn check_intertwining(sigma: &Tensor2) -> Result<CheckReport> {
    let alg = sigma.algebra().clone();
    let unit = alg.unit().clone();
    for a in 0..alg.dim() {
        let e = crate::linalg::unit_vec(alg.dim(), a);
        let a1 = Tensor2::pure(alg.clone(), &e, &unit);
        let one_a = Tensor2::pure(alg.clone(), &unit, &e);
        let d1 = a1.mul(sigma)?.sub(&sigma.mul(&one_a)?)?;
        if !d1.is_zero() {
            return Ok(CheckReport::from_residual(Identity::Intertwining, Residual::Two(d1)));
        }
        let d2 = one_a.mul(sigma)?.sub(&sigma.mul(&a1)?)?;
        if !d2.is_zero() {
            return Ok(CheckReport::from_residual(Identity::Intertwining, Residual::Two(d2)));
        }
    }
    Ok(CheckReport::from_residual(Identity::Intertwining, Residual::None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal_algebra, mat_algebra};
    use std::sync::Arc;

    fn mat(n: usize) -> AlgebraRef {
        Arc::new(mat_algebra(n).unwrap())
    }

    fn flip_element(alg: &AlgebraRef, n: usize) -> Tensor2 {
        let mut t = Tensor2::zero(alg.clone());
        for i in 0..n {
            for j in 0..n {
                t.add_term((i * n + j, j * n + i), RatQ::one()).unwrap();
            }
        }
        t
    }

    fn e(n: usize, i: usize, j: usize) -> usize {
        (i - 1) * n + j - 1
    }

    fn dj2(a: &AlgebraRef) -> Tensor2 {
        Tensor2::from_terms(
            a.clone(),
            [
                ((e(2, 1, 1), e(2, 1, 1)), RatQ::q()),
                ((e(2, 2, 2), e(2, 2, 2)), RatQ::q()),
                ((e(2, 1, 1), e(2, 2, 2)), RatQ::one()),
                ((e(2, 2, 2), e(2, 1, 1)), RatQ::one()),
                ((e(2, 1, 2), e(2, 2, 1)), RatQ::omega()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ybe_examples() {
        let a = mat(2);
        let s = flip_element(&a, 2);
        assert!(is_ybe(&s).passed);
        assert!(is_ybe(&Tensor2::one(a.clone())).passed);
        let mut bad = s.clone();
        bad.add_term((e(2, 1, 1), e(2, 1, 2)), RatQ::one()).unwrap();
        let rep = is_ybe(&bad);
        assert!(!rep.passed);
        assert_eq!(
            match rep.residual {
                Residual::Three(t) => t,
                _ => unreachable!(),
            },
            ybe_residual_by_embedding(&bad).unwrap()
        );
    }

    #[test]
    fn ybe_with_denominators_matches_embedding_route() {
        let a = mat(2);
        let mut r = dj2(&a).scale(&RatQ::inv_omega());
        assert!(is_ybe(&r).passed);
        r.add_term((e(2, 2, 1), e(2, 1, 1)), RatQ::inv_omega()).unwrap();
        let Residual::Three(fast) = is_ybe(&r).residual else { unreachable!() };
        assert!(!fast.is_zero());
        assert_eq!(fast, ybe_residual_by_embedding(&r).unwrap());
    }

    #[test]
    fn cybe_examples() {
        let a = mat(2);
        assert!(is_cybe(&Tensor2::zero(a.clone())).passed);
        // every leg product of e¹₂⊗e¹₂ vanishes, so it is a (trivial) solution
        let r = Tensor2::from_terms(a.clone(), [((e(2, 1, 2), e(2, 1, 2)), RatQ::one())]).unwrap();
        assert!(is_cybe(&r).passed);
        let r = Tensor2::from_terms(a.clone(), [((e(2, 1, 2), e(2, 2, 1)), RatQ::one())]).unwrap();
        assert!(!is_cybe(&r).passed);
        let classical = Tensor2::from_terms(
            a,
            [
                ((e(2, 1, 1), e(2, 1, 1)), RatQ::one()),
                ((e(2, 2, 2), e(2, 2, 2)), RatQ::one()),
                ((e(2, 1, 2), e(2, 2, 1)), RatQ::int(2)),
            ],
        )
        .unwrap();
        assert!(is_cybe(&classical).passed);
    }

    #[test]
    fn hecke_examples() {
        let a = mat(2);
        let sigma = flip_element(&a, 2);
        let c = RatQ::inv_omega().pow(2);
        let s = dj2(&a).scale(&RatQ::inv_omega());
        assert!(is_hecke(&s, &sigma, &c).unwrap().passed);
        assert_eq!(hecke_constant(&s, &sigma).unwrap(), Some(c.clone()));
        // simultaneous flip
        assert!(is_hecke(&s.flip(), &sigma.flip(), &c).unwrap().passed);

        let d = Arc::new(diagonal_algebra(2).unwrap());
        let sd = Tensor2::from_terms(
            d.clone(),
            [
                ((0, 0), RatQ::q()),
                ((1, 1), RatQ::q()),
                ((0, 1), RatQ::one()),
                ((1, 0), RatQ::one()),
            ],
        )
        .unwrap()
        .scale(&RatQ::inv_omega());
        let sigma_d = Tensor2::from_terms(d, [((0, 0), RatQ::one()), ((1, 1), RatQ::one())]).unwrap();
        assert!(is_hecke(&sd, &sigma_d, &c).unwrap().passed);

        let one = Tensor2::one(a);
        assert!(hecke_constant(&one, &sigma).unwrap().is_none());
        assert!(!is_hecke(&one, &sigma, &RatQ::q()).unwrap().passed);
    }

    #[test]
    fn hecke_lift_defect_examples() {
        let a = mat(2);
        let s = flip_element(&a, 2);
        assert!(hecke_lift_defect(&Tensor2::zero(a.clone()), &s).unwrap().is_zero());
        assert_eq!(hecke_lift_defect(&s, &s).unwrap(), Tensor2::one(a).scale(&RatQ::int(2)));
    }

    #[test]
    fn unitary_examples() {
        let a = mat(2);
        assert!(is_unitary(&flip_element(&a, 2)).passed);
        let b = Tensor2::from_terms(
            a.clone(),
            [
                ((e(2, 1, 1), e(2, 1, 1)), RatQ::one()),
                ((e(2, 2, 2), e(2, 2, 2)), RatQ::one()),
                ((e(2, 1, 1), e(2, 2, 2)), RatQ::int(2)),
                ((e(2, 2, 2), e(2, 1, 1)), RatQ::frac(1, 2)),
            ],
        )
        .unwrap();
        assert!(is_unitary(&b).passed);
        assert!(!is_unitary(&Tensor2::one(a).scale(&RatQ::q())).passed);
    }

    #[test]
    fn intertwining_of_flip() {
        let a = mat(3);
        assert!(check_intertwining(&flip_element(&a, 3)).unwrap().passed);
        assert!(!check_intertwining(&Tensor2::one(a)).unwrap().passed);
    }

    #[test]
    fn spot_check_agrees() {
        let a = mat(2);
        assert!(ybe_spot_check(&dj2(&a), &BigRat::from_integer(3.into())).unwrap());
    }
}
