use std::collections::BTreeMap;
use std::fmt;

use super::ratq::RatQ;

/// Polynomial in named spectral parameters with [`RatQ`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SpectralPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, RatQ>,
}

impl SpectralPoly {
    pub fn zero(vars: &[&str]) -> Self {
        SpectralPoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: RatQ) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// `c · var`.
    pub fn linear(vars: &[&str], var: &str, c: RatQ) -> Self {
        let mut p = Self::zero(vars);
        let mut exp = vec![0; vars.len()];
        exp[p.var_index(var).expect("unknown variable")] = 1;
        p.add_term(exp, c);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, RatQ> {
        &self.terms
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, RatQ)>) -> Self {
        let mut p = SpectralPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    fn var_index(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: RatQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(e) => {
                *e = e.add_ref(&c);
                if e.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "spectral variable lists differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&RatQ::int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = SpectralPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatQ) -> Self {
        if c.is_one() {
            return self.clone();
        }
        let mut out = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul_ref(c));
        }
        out
    }

    /// Re-expresses the polynomial in `target` variables, sending the i-th own
    /// variable to `target[mapping[i]]`.
    pub fn embed(&self, target: &[&str], mapping: &[usize]) -> Self {
        assert_eq!(mapping.len(), self.vars.len());
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; target.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[mapping[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Substitutes values for all variables.
    pub fn eval(&self, values: &[RatQ]) -> RatQ {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = RatQ::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                t = t.mul_ref(&v.pow(k));
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Maximum exponent of each variable.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.vars.len()];
        for e in self.terms.keys() {
            for (a, b) in d.iter_mut().zip(e) {
                *a = (*a).max(*b);
            }
        }
        d
    }
}

impl fmt::Debug for SpectralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(&self.vars)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                    .collect();
                format!("({c}){}", if mono.is_empty() { String::new() } else { format!("*{}", mono.join("*")) })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
