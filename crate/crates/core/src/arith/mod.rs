//! Exact scalar tower: integers, rationals, Laurent polynomials in `q`,
//! rational functions in `q`, and polynomials in spectral parameters.

pub mod laurent;
pub mod parse;
pub mod poly;
pub mod ratq;
pub mod spectral;

pub use laurent::LaurentQ;
pub use parse::parse_scalar;
pub use poly::ZPoly;
pub use ratq::RatQ;
pub use spectral::SpectralPoly;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type BigRat = num_rational::BigRational;

pub fn scalar_add(a: &RatQ, b: &RatQ) -> RatQ {
    a.add_ref(b)
}

pub fn scalar_mul(a: &RatQ, b: &RatQ) -> RatQ {
    a.mul_ref(b)
}

pub fn scalar_neg(a: &RatQ) -> RatQ {
    a.neg_ref()
}

pub fn scalar_inv(a: &RatQ) -> crate::Result<RatQ> {
    a.inv()
}

pub fn eval_q(a: &RatQ, q0: &BigRat) -> crate::Result<BigRat> {
    a.eval(q0)
}

pub fn derivative_at_one(a: &RatQ) -> crate::Result<BigRat> {
    a.derivative_at_one()
}
