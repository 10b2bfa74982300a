//! JSON wire format for monomials and polynomials.
//!
//! A leaf is `["x", i]` or `["y", j]`, an internal node `["*", left, right]`;
//! a polynomial is a list of `{"coeff": "num/den", "mono": monomial}`.

use serde_json::{json, Value};

use super::monomial::{Monomial, Variable};
use super::polynomial::GradedPolynomial;
use crate::rational;
use crate::{Error, Result};

pub fn monomial_to_json(m: &Monomial) -> Value {
    match m {
        Monomial::Leaf(v) => {
            let tag = if v.is_odd() { "y" } else { "x" };
            json!([tag, v.index])
        }
        Monomial::Node { left, right, .. } => {
            json!(["*", monomial_to_json(left), monomial_to_json(right)])
        }
    }
}

/// Parses a monomial; the result is canonicalized.
pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    Ok(parse_tree(v)?.canonicalize())
}

fn parse_tree(v: &Value) -> Result<Monomial> {
    let bad = || Error::Format(format!("bad monomial {v}"));
    let arr = v.as_array().ok_or_else(bad)?;
    match (arr.first().and_then(Value::as_str), arr.len()) {
        (Some("*"), 3) => Ok(Monomial::raw_node(parse_tree(&arr[1])?, parse_tree(&arr[2])?)),
        (Some(tag @ ("x" | "y")), 2) => {
            let i = arr[1].as_u64().filter(|&i| i >= 1).ok_or_else(bad)? as usize;
            Ok(Monomial::Leaf(if tag == "x" { Variable::x(i) } else { Variable::y(i) }))
        }
        _ => Err(bad()),
    }
}

pub fn polynomial_to_json(p: &GradedPolynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({"coeff": rational::format(c), "mono": monomial_to_json(m)}))
            .collect(),
    )
}

pub fn polynomial_from_json(v: &Value) -> Result<GradedPolynomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Format("polynomial must be a JSON array".into()))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let coeff = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Format(format!("term without string coeff: {t}")))?;
        let mono = t
            .get("mono")
            .ok_or_else(|| Error::Format(format!("term without mono: {t}")))?;
        terms.push((rational::parse(coeff)?, parse_tree(mono)?));
    }
    Ok(GradedPolynomial::from_terms(terms))
}
