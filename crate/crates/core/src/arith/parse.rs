//! Parser for the scalar string grammar used in every JSON artifact:
//!
//! ```text
//! laurent  := "0" | term ("+" term)*
//! term     := int | int "*q^" int | "q^" int
//! rational := laurent | "(" laurent ")/(" laurent ")"
//! ```
//!
//! Whitespace is ignored. As a convenience `q`, `-q^k`, `c*q` and plain
//! integer fractions `a/b` are also accepted.

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::LaurentQ;
use super::ratq::RatQ;
use super::BigRat;
use crate::error::{Error, Result};

pub fn parse_scalar(s: &str) -> Result<RatQ> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if let Some(rest) = s.strip_prefix('(') {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
        let num = parse_laurent(&rest[..close])?;
        let tail = &rest[close + 1..];
        let den_src = tail
            .strip_prefix("/(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected \")/(...)\" in {s:?}")))?;
        let den = parse_laurent(den_src)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return num.to_ratq().div_ref(&den.to_ratq());
    }
    if let Some((a, b)) = s.split_once('/') {
        let den = parse_int(b)?;
        if den == BigInt::from(0) {
            return Err(Error::DivisionByZero);
        }
        return Ok(RatQ::from_bigrat(&BigRat::new(parse_int(a)?, den)));
    }
    Ok(parse_laurent(&s)?.to_ratq())
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn parse_exp(s: &str) -> Result<i64> {
    s.parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
}

fn parse_term(t: &str) -> Result<(i64, BigInt)> {
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff, rest) = match t.find('q') {
        None => return Ok((0, parse_int(t)?)),
        Some(pos) => {
            let head = &t[..pos];
            let coeff = match head {
                "" => BigInt::one(),
                "-" => -BigInt::one(),
                h => parse_int(h.strip_suffix('*').ok_or_else(|| {
                    Error::Parse(format!("expected '*' before q in {t:?}"))
                })?)?,
            };
            (coeff, &t[pos + 1..])
        }
    };
    let exp = if rest.is_empty() {
        1
    } else {
        parse_exp(
            rest.strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("expected '^' after q in {t:?}")))?,
        )?
    };
    Ok((exp, coeff))
}

pub(crate) fn parse_laurent(s: &str) -> Result<LaurentQ> {
    let mut out = LaurentQ::new();
    for t in s.split('+') {
        let (e, c) = parse_term(t)?;
        out.add_term(e, BigRat::from_integer(c));
    }
    Ok(out)
}
