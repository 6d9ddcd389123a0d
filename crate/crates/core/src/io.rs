//! JSON encodings of scalars, algebras, tensors, reports and specs.
//! Scalars always travel as strings in the scalar grammar.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{diagonal_algebra, mat_algebra, Algebra, AlgebraRef, Structure};
use crate::arith::{parse_scalar, RatQ, SpectralPoly};
use crate::baxterize::SpectralTensor2;
use crate::bd::{validate_bd, BdTriple};
use crate::checkers::{CheckReport, Residual};
use crate::error::{Error, Result};
use crate::linalg::{zero_vec, Subspace, Vector};
use crate::solutions::{DiagonalHeckeParams, Sign};
use crate::tensor::{Tensor2, Tensor3};
use crate::triples::AssocTriple;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn scalar_to_json(c: &RatQ) -> Value {
    Value::String(c.render(false))
}

pub fn scalar_from_json(v: &Value) -> Result<RatQ> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) if n.is_i64() => Ok(RatQ::int(n.as_i64().unwrap())),
        other => Err(parse_err(format!("expected a scalar string, got {other}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct StructureEntry {
    i: String,
    j: String,
    out: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDump {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    basis: Vec<String>,
    unit: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trace: Option<BTreeMap<String, String>>,
    structure: Vec<StructureEntry>,
}

fn sparse_vec(alg: &Algebra, v: &[RatQ]) -> BTreeMap<String, String> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (alg.label(i).to_string(), c.render(false)))
        .collect()
}

fn dense_vec(labels: &BTreeMap<&str, usize>, dim: usize, m: &BTreeMap<String, String>) -> Result<Vector> {
    let mut v = zero_vec(dim);
    for (l, s) in m {
        let i = *labels.get(l.as_str()).ok_or_else(|| parse_err(format!("unknown label {l}")))?;
        v[i] = parse_scalar(s)?;
    }
    Ok(v)
}

pub fn algebra_to_json(alg: &Algebra) -> Value {
    let mut structure = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let out: BTreeMap<_, _> = alg
                .mul_basis(i, j)
                .iter()
                .map(|(k, c)| (alg.label(*k).to_string(), c.render(false)))
                .collect();
            if !out.is_empty() {
                structure.push(StructureEntry {
                    i: alg.label(i).into(),
                    j: alg.label(j).into(),
                    out,
                });
            }
        }
    }
    let dump = AlgebraDump {
        name: Some(alg.name().to_string()),
        basis: alg.labels().to_vec(),
        unit: sparse_vec(alg, alg.unit()),
        trace: alg.trace().map(|t| sparse_vec(alg, t)),
        structure,
    };
    serde_json::to_value(dump).expect("serializable")
}

pub fn algebra_from_json(v: &Value) -> Result<Algebra> {
    let dump: AlgebraDump = serde_json::from_value(v.clone()).map_err(|e| parse_err(e.to_string()))?;
    let dim = dump.basis.len();
    let labels: BTreeMap<&str, usize> = dump.basis.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if labels.len() != dim {
        return Err(parse_err("repeated basis label"));
    }
    let idx = |l: &str| labels.get(l).copied().ok_or_else(|| parse_err(format!("unknown label {l}")));
    let mut table: Structure = vec![Vec::new(); dim * dim];
    for e in &dump.structure {
        let out = dense_vec(&labels, dim, &e.out)?;
        table[idx(&e.i)? * dim + idx(&e.j)?] = out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
    }
    let unit = dense_vec(&labels, dim, &dump.unit)?;
    let trace = dump.trace.as_ref().map(|t| dense_vec(&labels, dim, t)).transpose()?;
    let name = dump.name.unwrap_or_else(|| "custom".into());
    Algebra::new(name, dump.basis.clone(), table, unit, trace)
}

fn algebra_id(alg: &Algebra) -> Value {
    let named = ["mat:", "diag:"].iter().any(|p| alg.name().starts_with(p));
    let rebuilt = named.then(|| algebra_by_name(alg.name()).ok()).flatten();
    match rebuilt {
        Some(b) if b == *alg => Value::String(alg.name().to_string()),
        _ => algebra_to_json(alg),
    }
}

fn algebra_by_name(name: &str) -> Result<Algebra> {
    let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(format!("bad algebra id {name}")));
    if let Some(n) = name.strip_prefix("mat:") {
        mat_algebra(num(n)?)
    } else if let Some(k) = name.strip_prefix("diag:") {
        diagonal_algebra(num(k)?)
    } else {
        Err(parse_err(format!("unknown algebra id {name}")))
    }
}

fn algebra_from_id(v: &Value) -> Result<AlgebraRef> {
    let alg = match v {
        Value::String(s) => algebra_by_name(s)?,
        Value::Object(_) => algebra_from_json(v)?,
        _ => return Err(parse_err("algebra must be an id string or a dump")),
    };
    Ok(Arc::new(alg))
}

fn label_index(alg: &Algebra, v: &Value) -> Result<usize> {
    let l = v.as_str().ok_or_else(|| parse_err("label must be a string"))?;
    alg.index_of(l).ok_or_else(|| parse_err(format!("unknown label {l}")))
}

fn terms2_json(t: &Tensor2) -> Vec<Value> {
    let alg = t.algebra();
    t.terms()
        .iter()
        .map(|((i, j), c)| json!({"i": alg.label(*i), "j": alg.label(*j), "c": c.render(false)}))
        .collect()
}

fn terms3_json(t: &Tensor3) -> Vec<Value> {
    let alg = t.algebra();
    t.terms()
        .iter()
        .map(|((i, j, k), c)| {
            json!({"i": alg.label(*i), "j": alg.label(*j), "k": alg.label(*k), "c": c.render(false)})
        })
        .collect()
}

pub fn tensor2_to_json(t: &Tensor2) -> Value {
    json!({"algebra": algebra_id(t.algebra()), "terms": terms2_json(t)})
}

fn terms_of(v: &Value) -> Result<&Vec<Value>> {
    v.get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"terms\" array"))
}

pub fn tensor2_from_json(v: &Value) -> Result<Tensor2> {
    let alg = algebra_from_id(v.get("algebra").ok_or_else(|| parse_err("missing \"algebra\""))?)?;
    let mut t = Tensor2::zero(alg.clone());
    for term in terms_of(v)? {
        let i = label_index(&alg, &term["i"])?;
        let j = label_index(&alg, &term["j"])?;
        t.add_term((i, j), scalar_from_json(&term["c"])?)?;
    }
    Ok(t)
}

pub fn tensor3_to_json(t: &Tensor3) -> Value {
    json!({"algebra": algebra_id(t.algebra()), "terms": terms3_json(t)})
}

pub fn tensor3_from_json(v: &Value) -> Result<Tensor3> {
    let alg = algebra_from_id(v.get("algebra").ok_or_else(|| parse_err("missing \"algebra\""))?)?;
    let mut terms = Vec::new();
    for term in terms_of(v)? {
        let key = (
            label_index(&alg, &term["i"])?,
            label_index(&alg, &term["j"])?,
            label_index(&alg, &term["k"])?,
        );
        terms.push((key, scalar_from_json(&term["c"])?));
    }
    Tensor3::from_terms(alg, terms)
}

fn poly_json(p: &SpectralPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| json!({"exp": e, "c": c.render(false)}))
            .collect(),
    )
}

fn poly_from_json(vars: &[String], v: &Value) -> Result<SpectralPoly> {
    let arr = v.as_array().ok_or_else(|| parse_err("polynomial must be a term list"))?;
    let mut terms = Vec::new();
    for t in arr {
        let exp: Vec<u32> = serde_json::from_value(t["exp"].clone()).map_err(|e| parse_err(e.to_string()))?;
        if exp.len() != vars.len() {
            return Err(parse_err("exponent tuple has the wrong arity"));
        }
        terms.push((exp, scalar_from_json(&t["c"])?));
    }
    Ok(SpectralPoly::from_terms(vars.to_vec(), terms))
}

pub fn spectral_to_json(t: &SpectralTensor2) -> Value {
    let alg = t.algebra();
    let terms: Vec<Value> = t
        .terms()
        .iter()
        .map(|((i, j), p)| json!({"i": alg.label(*i), "j": alg.label(*j), "poly": poly_json(p)}))
        .collect();
    json!({"algebra": algebra_id(alg), "params": t.params(), "terms": terms})
}

pub fn spectral_from_json(v: &Value) -> Result<SpectralTensor2> {
    let alg = algebra_from_id(v.get("algebra").ok_or_else(|| parse_err("missing \"algebra\""))?)?;
    let params: Vec<String> =
        serde_json::from_value(v["params"].clone()).map_err(|_| parse_err("missing \"params\" list"))?;
    let refs: Vec<&str> = params.iter().map(String::as_str).collect();
    let mut t = SpectralTensor2::zero(alg.clone(), &refs);
    for term in terms_of(v)? {
        let i = label_index(&alg, &term["i"])?;
        let j = label_index(&alg, &term["j"])?;
        t.add_term((i, j), poly_from_json(&params, &term["poly"])?)?;
    }
    Ok(t)
}

/// Is this JSON document a spectral tensor (it carries `params`)?
pub fn is_spectral_json(v: &Value) -> bool {
    v.get("params").is_some()
}

pub fn report_to_json(r: &CheckReport) -> Value {
    let residual_terms = match &r.residual {
        Residual::None => Vec::new(),
        Residual::Two(t) => terms2_json(t),
        Residual::Three(t) => terms3_json(t),
        Residual::Spectral(alg, m) => m
            .iter()
            .map(|((i, j, k), p)| {
                json!({"i": alg.label(*i), "j": alg.label(*j), "k": alg.label(*k), "poly": poly_json(p)})
            })
            .collect(),
    };
    let mut out = json!({
        "identity": r.identity.name(),
        "passed": r.passed,
        "residual_terms": residual_terms,
    });
    if !r.failures.is_empty() {
        out["failures"] = json!(r.failures);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TripleSpec {
    algebra: Value,
    m_plus: Vec<BTreeMap<String, String>>,
    m_minus: Vec<BTreeMap<String, String>>,
}

pub fn triple_from_json(v: &Value) -> Result<AssocTriple> {
    let spec: TripleSpec = serde_json::from_value(v.clone()).map_err(|e| parse_err(e.to_string()))?;
    let alg = algebra_from_id(&spec.algebra)?;
    let labels: BTreeMap<&str, usize> = alg.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let space = |vs: &[BTreeMap<String, String>]| -> Result<Subspace> {
        let vecs = vs.iter().map(|m| dense_vec(&labels, alg.dim(), m)).collect::<Result<Vec<_>>>()?;
        Subspace::span(alg.dim(), vecs)
    };
    let plus = space(&spec.m_plus)?;
    let minus = space(&spec.m_minus)?;
    AssocTriple::new(alg.clone(), plus, minus)
}

pub fn triple_to_json(t: &AssocTriple) -> Value {
    let alg = t.algebra();
    let vecs = |s: &Subspace| s.basis().iter().map(|v| sparse_vec(alg, v)).collect::<Vec<_>>();
    json!({"algebra": algebra_to_json(alg), "m_plus": vecs(t.m_plus()), "m_minus": vecs(t.m_minus())})
}

/// A BD triple with the sign and ratio data of its diagonal solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BdSpec {
    pub n: usize,
    #[serde(default)]
    pub gamma1: Vec<usize>,
    #[serde(default)]
    pub gamma2: Vec<usize>,
    #[serde(default)]
    pub tau: Vec<[usize; 2]>,
    /// Keyed by the representatives `Γ̂∖Γ̂₂` (diagonal units, 1-based);
    /// missing entries default to `+`.
    #[serde(default)]
    pub diag_signs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_b: Option<Vec<Vec<String>>>,
}

impl BdSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| parse_err(e.to_string()))
    }

    pub fn triple(&self) -> BdTriple {
        BdTriple::new(
            self.n,
            self.gamma1.clone(),
            self.gamma2.clone(),
            self.tau.iter().map(|p| (p[0], p[1])).collect(),
        )
    }

    /// Validates the triple and builds the diagonal parameters.
    pub fn params(&self) -> Result<DiagonalHeckeParams> {
        let reps = validate_bd(&self.triple())?.representatives();
        let mut signs = vec![Sign::Plus; reps.len()];
        for (key, s) in &self.diag_signs {
            let idx: usize = key.trim().parse().map_err(|_| parse_err(format!("bad diag_signs key {key}")))?;
            let pos = reps
                .iter()
                .position(|&r| r == idx)
                .ok_or_else(|| parse_err(format!("diag_signs key {idx} is not a representative of the diagonal")))?;
            signs[pos] = match s.as_str() {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                _ => return Err(parse_err(format!("sign must be \"+\" or \"-\", got {s}"))),
            };
        }
        match &self.twist_b {
            None => Ok(DiagonalHeckeParams::with_signs(signs)),
            Some(rows) => {
                let b = rows
                    .iter()
                    .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                DiagonalHeckeParams::new(signs, b)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baxterize::{baxterize, yang_matrix};
    use crate::bd::BdModel;
    use crate::checkers::is_ybe;
    use crate::solutions::dj_closed;
    use crate::triples::triangular_triple;

    fn round2(t: &Tensor2) -> Tensor2 {
        let s = serde_json::to_string(&tensor2_to_json(t)).unwrap();
        tensor2_from_json(&serde_json::from_str(&s).unwrap()).unwrap()
    }

    #[test]
    fn tensor_round_trip_by_id() {
        let r = dj_closed(3).unwrap();
        let v = tensor2_to_json(&r);
        assert_eq!(v["algebra"], "mat:3");
        assert_eq!(round2(&r), r);
    }

    #[test]
    fn tensor_round_trip_by_dump() {
        let m = BdModel::build(&BdTriple::cremmer_gervais(3)).unwrap();
        let q = m.canonical_q().unwrap();
        assert!(tensor2_to_json(&q)["algebra"].is_object());
        assert_eq!(round2(&q), q);
    }

    #[test]
    fn tensor3_and_report() {
        let r = dj_closed(2).unwrap().add(&Tensor2::one(Arc::new(mat_algebra(2).unwrap()))).unwrap();
        let rep = is_ybe(&r);
        let v = report_to_json(&rep);
        assert_eq!(v["identity"], "ybe");
        assert_eq!(v["passed"], false);
        assert_eq!(v["residual_terms"].as_array().unwrap().len(), rep.residual_len());
        if let Residual::Three(t) = &rep.residual {
            let back = tensor3_from_json(&tensor3_to_json(t)).unwrap();
            assert_eq!(&back, t);
        }
    }

    #[test]
    fn spectral_round_trip() {
        let rf = baxterize(&dj_closed(2).unwrap()).unwrap();
        let back = spectral_from_json(&spectral_to_json(&rf)).unwrap();
        assert_eq!(back.terms(), rf.terms());
        let alg = Arc::new(mat_algebra(2).unwrap());
        let y = yang_matrix(&alg, &RatQ::frac(3, 2)).unwrap();
        let v = spectral_to_json(&y);
        assert!(is_spectral_json(&v));
        assert_eq!(spectral_from_json(&v).unwrap().terms(), y.terms());
    }

    #[test]
    fn algebra_and_triple_round_trip() {
        let t = triangular_triple(2).unwrap();
        let a = algebra_from_json(&algebra_to_json(t.algebra())).unwrap();
        assert_eq!(&a, &**t.algebra());
        let back = triple_from_json(&triple_to_json(&t)).unwrap();
        assert_eq!(back.diagonal().dim(), 2);
        assert!(matches!(algebra_from_json(&json!({"basis": 3})), Err(Error::Parse(_))));
    }

    #[test]
    fn bd_spec_params() {
        let v = json!({"n": 3, "gamma1": [1], "gamma2": [2], "tau": [[1, 2]], "diag_signs": {"1": "-"}});
        let spec = BdSpec::from_json(&v).unwrap();
        let p = spec.params().unwrap();
        assert_eq!(p.signs(), &[Sign::Minus]);
        let bad = json!({"n": 3, "tau": [[1, 2]], "gamma1": [1], "gamma2": [2], "diag_signs": {"2": "+"}});
        assert!(BdSpec::from_json(&bad).unwrap().params().is_err());
        let twisted = json!({"n": 2, "twist_b": [["1", "q^1"], ["q^-1", "1"]]});
        let p = BdSpec::from_json(&twisted).unwrap().params().unwrap();
        assert_eq!(p.b()[0][1], RatQ::q());
    }

    mod props {
        use super::*;
        use crate::algebra::mat_algebra;
        use proptest::prelude::*;
        use std::sync::Arc;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn tensor_json_round_trip(terms in prop::collection::vec((0usize..4, 0usize..4, -3i64..4, -2i64..3), 0..8)) {
                let mut t = Tensor2::zero(Arc::new(mat_algebra(2).unwrap()));
                for (i, j, c, k) in terms {
                    t.add_term((i, j), RatQ::int(c).mul_ref(&RatQ::q_pow(k))).unwrap();
                }
                prop_assert_eq!(round2(&t), t);
            }
        }
    }
}
