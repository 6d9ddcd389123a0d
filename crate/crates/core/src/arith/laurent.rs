use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::ZPoly;
use super::ratq::RatQ;
use super::BigRat;

/// A Laurent polynomial `Σ c_k q^k` with rational coefficients.
///
/// Arithmetic happens in [`RatQ`]; this type is the sparse view used when a
/// value is known to be Laurent (q, q⁻¹, ω and the numerators of λ = 1/ω).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentQ {
    terms: BTreeMap<i64, BigRat>,
}

impl LaurentQ {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(exp: i64, c: BigRat) -> Self {
        let mut l = Self::new();
        l.add_term(exp, c);
        l
    }

    pub fn add_term(&mut self, exp: i64, c: BigRat) {
        let e = self.terms.entry(exp).or_insert_with(BigRat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The Laurent expansion of `r`, if its denominator is `c·q^k`.
    pub fn from_ratq(r: &RatQ) -> Option<Self> {
        let low = r.den().low_order();
        let rest = r.den().shift_down(low);
        if !rest.is_constant() {
            return None;
        }
        let c = rest.coeffs()[0].clone();
        let mut l = Self::new();
        for (e, v) in r.num().terms_desc() {
            l.add_term(e as i64 - low as i64, BigRat::new(v.clone(), c.clone()));
        }
        Some(l)
    }

    pub fn to_ratq(&self) -> RatQ {
        let Some((&low, _)) = self.terms.iter().next() else {
            return RatQ::zero();
        };
        let shift = (-low).max(0) as usize;
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let top = *self.terms.keys().next_back().unwrap() + shift as i64;
        let mut coeffs = vec![BigInt::zero(); top as usize + 1];
        for (e, c) in &self.terms {
            let scaled = c * BigRat::from_integer(den_lcm.clone());
            coeffs[(e + shift as i64) as usize] = scaled.to_integer();
        }
        let den = ZPoly::monomial(den_lcm, shift);
        RatQ::new(ZPoly::from_coeffs(coeffs), den).expect("nonzero denominator")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_expansion() {
        let l = LaurentQ::from_ratq(&RatQ::omega()).unwrap();
        assert_eq!(l.terms().len(), 2);
        assert_eq!(l.terms()[&1], BigRat::one());
        assert_eq!(l.terms()[&-1], -BigRat::one());
        assert_eq!(l.to_ratq(), RatQ::omega());
    }

    #[test]
    fn non_laurent_is_rejected() {
        assert!(LaurentQ::from_ratq(&RatQ::inv_omega()).is_none());
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let mut l = LaurentQ::term(-3, BigRat::new(1.into(), 2.into()));
        l.add_term(2, BigRat::new((-5).into(), 3.into()));
        assert_eq!(LaurentQ::from_ratq(&l.to_ratq()).unwrap(), l);
    }
}
