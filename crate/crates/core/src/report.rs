//! One document tree behind both output formats: JSON (sorted keys, exact
//! integers) and the aligned human table.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};
use thiserror::Error;

use crate::invariants::{ConsistencyReport, InvariantRecord};
use crate::knowledge::Knowledge;
use crate::laurent::LaurentPoly;
use crate::verdict::{FamilyCertificate, GordianBounds, KinkinessBounds, Thm1Range, Verdict, VerdictBundle, KINK_RULE};

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Int(BigInt),
    Str(String),
    Bool(bool),
    Poly(LaurentPoly),
    Know(Knowledge<i64>),
    List(Vec<Node>),
    Map(BTreeMap<String, Node>),
}

impl Node {
    pub fn int(v: impl Into<BigInt>) -> Node {
        Node::Int(v.into())
    }

    pub fn str(s: impl Into<String>) -> Node {
        Node::Str(s.into())
    }

    pub fn map<I, K>(entries: I) -> Node
    where
        I: IntoIterator<Item = (K, Node)>,
        K: Into<String>,
    {
        Node::Map(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Node::Int(v) => Value::Number(big_number(v)),
            Node::Str(s) => Value::String(s.clone()),
            Node::Bool(b) => Value::Bool(*b),
            Node::Poly(p) => Value::Array(
                p.terms()
                    .map(|(e, c)| {
                        Value::Array(vec![Value::Number(e.into()), Value::Number(big_number(c))])
                    })
                    .collect(),
            ),
            Node::Know(k) => knowledge_json(k),
            Node::List(items) => Value::Array(items.iter().map(Node::to_json).collect()),
            Node::Map(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("document serializes");
        s.push('\n');
        s
    }

    /// Flattened `key  value` lines, nested keys joined by '.'.
    pub fn to_table(&self) -> String {
        let mut rows = Vec::new();
        self.flatten("", &mut rows);
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }

    fn flatten(&self, prefix: &str, rows: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match self {
            Node::Map(m) => m.iter().for_each(|(k, v)| v.flatten(&join(k), rows)),
            Node::List(items) if items.is_empty() => rows.push((prefix.to_string(), "(none)".into())),
            Node::List(items) => items
                .iter()
                .enumerate()
                .for_each(|(i, v)| v.flatten(&join(&i.to_string()), rows)),
            leaf => rows.push((prefix.to_string(), leaf.scalar_text())),
        }
    }

    fn scalar_text(&self) -> String {
        match self {
            Node::Int(v) => v.to_string(),
            Node::Str(s) => s.clone(),
            Node::Bool(b) => if *b { "yes" } else { "no" }.to_string(),
            Node::Poly(p) => p.to_string(),
            Node::Know(k) => k.to_string(),
            Node::List(_) | Node::Map(_) => unreachable!("containers are flattened"),
        }
    }
}

fn big_number(v: &BigInt) -> Number {
    Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

fn knowledge_json(k: &Knowledge<i64>) -> Value {
    let end = |v: Option<i64>, inf: &str| v.map_or(Value::String(inf.into()), |x| Value::Number(x.into()));
    match k {
        Knowledge::Exact(v) => serde_json::json!({ "exact": v }),
        Knowledge::Bounds { lo, hi } => {
            serde_json::json!({ "bounds": [end(*lo, "-inf"), end(*hi, "+inf")] })
        }
        Knowledge::Unknown => Value::String("unknown".into()),
    }
}

pub fn record_node(r: &InvariantRecord) -> Node {
    Node::map([
        ("knot", Node::str(&r.knot)),
        ("sigma", Node::int(r.sigma)),
        ("tau", Node::Know(r.tau)),
        ("epsilon", Node::Know(r.epsilon)),
        ("alexander", Node::Poly(r.alexander.clone())),
        ("determinant", Node::Int(r.determinant.clone())),
        ("d1", Node::Know(r.d1)),
    ])
}

pub fn verdict_node(v: &Verdict) -> Node {
    let mut m = BTreeMap::new();
    m.insert("claim".to_string(), Node::str(v.claim.as_str()));
    m.insert("holds".to_string(), Node::str(v.holds.as_str()));
    m.insert("rule".to_string(), Node::str(&v.rule));
    if let Some(w) = &v.witness {
        m.insert("witness".to_string(), Node::str(w.to_string()));
    }
    if let Some(n) = &v.note {
        m.insert("note".to_string(), Node::str(n));
    }
    Node::Map(m)
}

pub fn kinkiness_node(k: &KinkinessBounds) -> Node {
    Node::map([
        ("k_plus_lb", Node::int(k.k_plus_lb)),
        ("k_minus_lb", Node::int(k.k_minus_lb)),
        ("rule", Node::str(KINK_RULE)),
    ])
}

pub fn gordian_node(g: &GordianBounds) -> Node {
    Node::map([
        ("n_pos_lb", Node::int(g.n_pos_lb)),
        ("n_neg_lb", Node::int(g.n_neg_lb)),
        ("rule", Node::str("skein inequalities for sigma and tau")),
    ])
}

pub fn bundle_node(b: &VerdictBundle) -> Node {
    Node::map([
        ("knot", Node::str(&b.record.knot)),
        ("target", Node::str(&b.target.knot)),
        ("positon", verdict_node(&b.positon)),
        ("negaton", verdict_node(&b.negaton)),
        ("kinkiness", kinkiness_node(&b.kinkiness)),
        ("only_positive", verdict_node(&b.only_positive)),
        ("only_negative", verdict_node(&b.only_negative)),
        ("gordian", gordian_node(&b.gordian)),
    ])
}

pub fn thm1_node(r: &Thm1Range) -> Node {
    Node::map([
        ("base", record_node(&r.base)),
        (
            "range",
            Node::str(format!(
                "0 < n < -2*({}) + ({} - 1)/2",
                r.tau, r.epsilon
            )),
        ),
        ("admissible_n", Node::List(r.cables.iter().map(|c| Node::int(c.n)).collect())),
        (
            "cables",
            Node::List(
                r.cables
                    .iter()
                    .map(|c| {
                        Node::map([
                            ("n", Node::int(c.n)),
                            ("invariants", record_node(&c.bundle.record)),
                            ("verdicts", bundle_node(&c.bundle)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

pub fn family_node(f: &FamilyCertificate) -> Node {
    Node::map([
        ("base", record_node(&f.base)),
        ("pairwise_distinct_alexander", Node::Bool(f.pairwise_distinct)),
        (
            "members",
            Node::List(
                f.members
                    .iter()
                    .map(|m| {
                        Node::map([
                            ("i", Node::int(m.index)),
                            ("invariants", record_node(&m.record)),
                            ("sigma_drop", Node::str(m.sigma_witness.to_string())),
                            ("tau_drop", Node::str(m.tau_witness.to_string())),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

pub fn crosscheck_node(c: &ConsistencyReport) -> Node {
    Node::map([
        ("knot", Node::str(&c.knot)),
        ("braid", Node::str(c.braid.to_string())),
        ("symbolic_sigma", Node::int(c.symbolic_sigma)),
        ("braid_sigma", Node::int(c.braid_sigma)),
        ("symbolic_alexander", Node::Poly(c.symbolic_alexander.clone())),
        ("braid_alexander", Node::Poly(c.braid_alexander.clone())),
        ("agree", Node::Bool(c.agrees())),
    ])
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed record document: {0}")]
pub struct DecodeError(pub String);

/// Inverse of `record_node(..).to_json()`.
pub fn record_from_json(v: &Value) -> Result<InvariantRecord, DecodeError> {
    let obj = v.as_object().ok_or_else(|| DecodeError("not an object".into()))?;
    let field = |k: &str| obj.get(k).ok_or_else(|| DecodeError(format!("missing field {k}")));
    let knot = field("knot")?
        .as_str()
        .ok_or_else(|| DecodeError("knot must be a string".into()))?
        .to_string();
    Ok(InvariantRecord {
        knot,
        sigma: small_int(field("sigma")?)?,
        tau: knowledge_from_json(field("tau")?)?,
        epsilon: knowledge_from_json(field("epsilon")?)?,
        alexander: poly_from_json(field("alexander")?)?,
        determinant: big_int(field("determinant")?)?,
        d1: knowledge_from_json(field("d1")?)?,
    })
}

fn big_int(v: &Value) -> Result<BigInt, DecodeError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| DecodeError(format!("{n} is not an integer")))
        }
        other => Err(DecodeError(format!("expected integer, found {other}"))),
    }
}

fn small_int(v: &Value) -> Result<i64, DecodeError> {
    v.as_i64().ok_or_else(|| DecodeError(format!("expected 64-bit integer, found {v}")))
}

fn poly_from_json(v: &Value) -> Result<LaurentPoly, DecodeError> {
    let terms = v.as_array().ok_or_else(|| DecodeError("polynomial must be a term list".into()))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        match t.as_array().map(Vec::as_slice) {
            Some([e, c]) => out.push((small_int(e)?, big_int(c)?)),
            _ => return Err(DecodeError(format!("bad term {t}"))),
        }
    }
    Ok(LaurentPoly::from_terms(out))
}

fn knowledge_from_json(v: &Value) -> Result<Knowledge<i64>, DecodeError> {
    if v.as_str() == Some("unknown") {
        return Ok(Knowledge::Unknown);
    }
    let obj = v.as_object().filter(|o| o.len() == 1);
    let end = |x: &Value, inf: &str| -> Result<Option<i64>, DecodeError> {
        if x.as_str() == Some(inf) {
            Ok(None)
        } else {
            small_int(x).map(Some)
        }
    };
    match obj.and_then(|o| o.iter().next()) {
        Some((k, x)) if k == "exact" => Ok(Knowledge::Exact(small_int(x)?)),
        Some((k, Value::Array(ends))) if k == "bounds" && ends.len() == 2 => Ok(Knowledge::Bounds {
            lo: end(&ends[0], "-inf")?,
            hi: end(&ends[1], "+inf")?,
        }),
        _ => Err(DecodeError(format!("bad knowledge value {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::invariants::Engine;

    #[test]
    fn record_json_shape() {
        let r = Engine::global().invariants(&parse("torus(2,3)").unwrap()).unwrap();
        let json = record_node(&r).to_json();
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"alexander":[[-1,1],[0,-1],[1,1]],"d1":{"bounds":["-inf",0]},"determinant":3,"epsilon":{"exact":1},"knot":"torus(2,3)","sigma":-2,"tau":{"exact":1}}"#
        );
        assert_eq!(record_from_json(&json), Ok(r));
    }

    #[test]
    fn table_uses_same_values() {
        let r = Engine::global().invariants(&parse("cable(2,3,torus(2,-5))").unwrap()).unwrap();
        let table = record_node(&r).to_table();
        assert!(table.contains("sigma        -2\n"), "{table}");
        assert!(table.contains("tau          -2\n"));
        assert!(table.contains("epsilon      -1\n"));
        assert!(table.contains("d1           <= -2\n"));
    }

    #[test]
    fn huge_integers_stay_exact() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let v = Node::Int(big.clone()).to_json();
        assert_eq!(v.to_string(), "123456789012345678901234567890");
        assert_eq!(big_int(&v), Ok(big));
    }

    #[test]
    fn rejects_malformed_records() {
        assert!(record_from_json(&serde_json::json!({"knot": "unknot"})).is_err());
        assert!(knowledge_from_json(&serde_json::json!({"bounds": [1]})).is_err());
    }
}
