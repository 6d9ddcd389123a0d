//! The field ℚ(q) of rational functions in the deformation parameter.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::ZPoly;
use super::BigRat;
use crate::error::{Error, Result};

/// A reduced quotient `num / den` of integer polynomials in `q`.
///
/// `gcd(num, den) = 1` in ℤ[q] (content included) and `den` has a positive
/// leading coefficient, so every value has exactly one representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatQ {
    num: ZPoly,
    den: ZPoly,
}

impl RatQ {
    pub fn zero() -> Self {
        RatQ {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: i64) -> Self {
        RatQ {
            num: ZPoly::constant(BigInt::from(c)),
            den: ZPoly::one(),
        }
    }

    pub fn from_bigrat(r: &BigRat) -> Self {
        RatQ {
            num: ZPoly::constant(r.numer().clone()),
            den: ZPoly::constant(r.denom().clone()),
        }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_bigrat(&BigRational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RatQ {
            num: p,
            den: ZPoly::one(),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(ZPoly::monomial(BigInt::one(), k as usize))
        } else {
            RatQ {
                num: ZPoly::one(),
                den: ZPoly::monomial(BigInt::one(), (-k) as usize),
            }
        }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `ω = q - q⁻¹`.
    pub fn omega() -> Self {
        Self::new(ZPoly::from_i64s(&[-1, 0, 1]), ZPoly::from_i64s(&[0, 1])).unwrap()
    }

    /// `1/ω`.
    pub fn inv_omega() -> Self {
        Self::new(ZPoly::from_i64s(&[0, 1]), ZPoly::from_i64s(&[-1, 0, 1])).unwrap()
    }

    /// Builds and normalizes `num / den`.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatQ { num, den }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a polynomial in `q` (denominator 1).
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number, if it does not depend on `q`.
    pub fn as_constant(&self) -> Option<BigRat> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.coeffs().first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den.coeffs()[0].clone()))
        } else {
            None
        }
    }

    fn as_int(&self) -> Option<&BigInt> {
        if self.den.is_one() && self.num.degree() == Some(0) {
            self.num.coeffs().first()
        } else {
            None
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if other.den.is_one() {
            // gcd(a + b·d, d) = gcd(a, d) = 1
            return RatQ {
                num: self.num.add(&other.num.mul(&self.den)),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return other.add_ref(self);
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let (da, db) = (self.den.div_exact(&g), other.den.div_exact(&g));
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        Self::normalized(num, da.mul(&other.den))
    }

    pub fn neg_ref(&self) -> Self {
        RatQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn scale_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        let g = k.gcd(&self.den.content());
        if g.is_one() {
            RatQ {
                num: self.num.scale(k),
                den: self.den.clone(),
            }
        } else {
            RatQ {
                num: self.num.scale(&(k / &g)),
                den: self.den.div_scalar(&g),
            }
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        if let Some(k) = self.as_int() {
            return other.scale_int(k);
        }
        if let Some(k) = other.as_int() {
            return self.scale_int(k);
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = other.den.div_exact(&g1);
        let n2 = other.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatQ { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatQ { num, den })
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q0: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::EvaluationPole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// `d/dq` evaluated at `q = 1`.
    pub fn derivative_at_one(&self) -> Result<BigRat> {
        let one = BigRational::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(Error::EvaluationPole("1".into()));
        }
        let n = self.num.eval(&one);
        let dn = self.num.derivative().eval(&one);
        let dd = self.den.derivative().eval(&one);
        Ok((dn * &d - n * dd) / (&d * &d))
    }

    /// Laurent terms `(exponent, coefficient)` when the denominator is a power
    /// of `q` (times a positive integer).
    fn laurent_parts(&self) -> Option<(i64, BigInt, Vec<(i64, BigInt)>)> {
        let low = self.den.low_order();
        let rest = self.den.shift_down(low);
        if !rest.is_constant() {
            return None;
        }
        let c = rest.coeffs()[0].clone();
        let terms = self
            .num
            .terms_desc()
            .map(|(e, v)| (e as i64 - low as i64, v.clone()))
            .collect();
        Some((low as i64, c, terms))
    }
}

pub(crate) fn fmt_laurent(terms: &[(i64, BigInt)], latex: bool) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        let s = match (*e, latex) {
            (0, _) => c.to_string(),
            (e, false) if c.is_one() => format!("q^{e}"),
            (e, false) => format!("{c}*q^{e}"),
            (1, true) if c.is_one() => "q".to_string(),
            (1, true) if *c == -BigInt::one() => "-q".to_string(),
            (1, true) => format!("{c}q"),
            (e, true) if c.is_one() => format!("q^{{{e}}}"),
            (e, true) if *c == -BigInt::one() => format!("-q^{{{e}}}"),
            (e, true) => format!("{c}q^{{{e}}}"),
        };
        parts.push(s);
    }
    if latex {
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if p.starts_with('-') {
                out.push_str(&format!(" - {}", &p[1..]));
            } else {
                out.push_str(&format!(" + {p}"));
            }
        }
        out
    } else {
        parts.join("+")
    }
}

fn poly_terms(p: &ZPoly, shift: i64) -> Vec<(i64, BigInt)> {
    p.terms_desc().map(|(e, c)| (e as i64 - shift, c.clone())).collect()
}

impl RatQ {
    /// Renders using the scalar string grammar (or LaTeX when `latex`).
    pub fn render(&self, latex: bool) -> String {
        if let Some((_, c, terms)) = self.laurent_parts() {
            if c.is_one() {
                return fmt_laurent(&terms, latex);
            }
            if latex {
                return format!("\\frac{{{}}}{{{}}}", fmt_laurent(&terms, true), c);
            }
            return format!("({})/({})", fmt_laurent(&terms, false), c);
        }
        let low = self.den.low_order() as i64;
        let n = fmt_laurent(&poly_terms(&self.num, low), latex);
        let d = fmt_laurent(&poly_terms(&self.den, low), latex);
        if latex {
            format!("\\frac{{{n}}}{{{d}}}")
        } else {
            format!("({n})/({d})")
        }
    }
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatQ({self})")
    }
}

impl Default for RatQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RatQ {
    fn from(c: i64) -> Self {
        RatQ::int(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&RatQ> for &RatQ {
            type Output = RatQ;
            fn $method(self, rhs: &RatQ) -> RatQ {
                self.$inner(rhs)
            }
        }
        impl $tr<RatQ> for RatQ {
            type Output = RatQ;
            fn $method(self, rhs: RatQ) -> RatQ {
                self.$inner(&rhs)
            }
        }
        impl $tr<&RatQ> for RatQ {
            type Output = RatQ;
            fn $method(self, rhs: &RatQ) -> RatQ {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        self.neg_ref()
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        self.neg_ref()
    }
}

impl AddAssign<&RatQ> for RatQ {
    fn add_assign(&mut self, rhs: &RatQ) {
        *self = self.add_ref(rhs);
    }
}
