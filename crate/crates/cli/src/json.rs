//! JSON encodings of elements, function tables and probe reports.

use serde_json::{json, Map, Value};
use weyl_core::algebra::{Element, Monomial};
use weyl_core::cohomology::{FunctionTable, LinearProbe, ProbeVerdict};
use weyl_core::scalar::{self, Scalar};
use weyl_core::{Result, Signature, WeylError};

use crate::expr::format_element;

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(WeylError::Parse {
        pos: 0,
        msg: msg.into(),
    })
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(scalar::format_scalar(x))
}

fn monomial_fields(m: &Monomial) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("alpha".into(), m.alpha.iter().map(scalar_json).collect());
    map.insert("k".into(), json!(m.k));
    map.insert("mu".into(), json!(m.mu));
    map
}

pub fn monomial_json(m: &Monomial) -> Value {
    Value::Object(monomial_fields(m))
}

/// `{"terms":[{"c":..,"alpha":[..],"k":[..],"mu":[..]}]}` in canonical order.
pub fn element_json(e: &Element) -> Value {
    let terms: Vec<Value> = e
        .iter()
        .map(|(m, c)| {
            let mut map = Map::new();
            map.insert("c".into(), scalar_json(c));
            map.extend(monomial_fields(m));
            Value::Object(map)
        })
        .collect();
    json!({ "terms": terms })
}

fn scalar_from(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => scalar::parse_scalar(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(scalar::int(i)),
            None => bad(format!("non-integer number {n}; use a \"p/q\" string")),
        },
        other => bad(format!("expected a rational, got {other}")),
    }
}

fn int_vec(v: Option<&Value>, field: &str) -> Result<Vec<i64>> {
    match v.and_then(Value::as_array) {
        Some(items) => items
            .iter()
            .map(|x| x.as_i64().map_or_else(|| bad(format!("{field}: expected integers")), Ok))
            .collect(),
        None => bad(format!("missing array \"{field}\"")),
    }
}

/// Reads a monomial object; an optional `"c"` must be 1.
pub fn monomial_from_json(sig: &Signature, v: &Value) -> Result<Monomial> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return bad("monomial must be an object"),
    };
    if let Some(c) = obj.get("c") {
        if scalar_from(c)? != scalar::int(1) {
            return bad("a monomial key cannot carry a coefficient");
        }
    }
    let alpha = match obj.get("alpha").and_then(Value::as_array) {
        Some(items) => items.iter().map(scalar_from).collect::<Result<Vec<_>>>()?,
        None => return bad("missing array \"alpha\""),
    };
    let m = Monomial::new(alpha, int_vec(obj.get("k"), "k")?, int_vec(obj.get("mu"), "mu")?);
    m.validate(sig)?;
    Ok(m)
}

pub fn element_from_json(sig: &Signature, v: &Value) -> Result<Element> {
    let terms = match v.get("terms").and_then(Value::as_array) {
        Some(t) => t,
        None => return bad("missing array \"terms\""),
    };
    let mut e = Element::zero();
    for t in terms {
        let c = match t.get("c") {
            Some(c) => scalar_from(c)?,
            None => return bad("term without \"c\""),
        };
        let mut stripped = t.clone();
        if let Some(o) = stripped.as_object_mut() {
            o.remove("c");
        }
        e.add_term(monomial_from_json(sig, &stripped)?, c);
    }
    Ok(e)
}

pub fn table_json(t: &FunctionTable) -> Value {
    let entries: Vec<Value> = t
        .iter()
        .map(|(m, v)| json!({ "monomial": monomial_json(m), "value": scalar_json(v) }))
        .collect();
    json!({ "entries": entries })
}

pub fn table_from_json(sig: &Signature, v: &Value) -> Result<FunctionTable> {
    let entries = match v.get("entries").and_then(Value::as_array) {
        Some(e) => e,
        None => return bad("missing array \"entries\""),
    };
    let mut table = FunctionTable::new();
    for entry in entries {
        let m = match entry.get("monomial") {
            Some(m) => monomial_from_json(sig, m)?,
            None => return bad("entry without \"monomial\""),
        };
        let value = match entry.get("value") {
            Some(x) => scalar_from(x)?,
            None => return bad("entry without \"value\""),
        };
        table.insert(m, value);
    }
    Ok(table)
}

pub fn probe_json(sig: &Signature, probe: &LinearProbe) -> Value {
    let witness: Vec<Value> = probe
        .witness()
        .into_iter()
        .map(|row| {
            json!({
                "u": monomial_json(&row.u),
                "v": monomial_json(&row.v),
                "lhs": element_json(&row.bracket),
                "rhs": scalar_json(&row.rhs),
                "equation": format!("f({}) = {}", format_element(sig, &row.bracket), scalar::format_scalar(&row.rhs)),
            })
        })
        .collect();
    let (verdict, solution) = match &probe.verdict {
        ProbeVerdict::Consistent(t) => ("consistent", table_json(t)),
        ProbeVerdict::Inconsistent(_) => ("inconsistent", Value::Null),
    };
    json!({
        "verdict": verdict,
        "unknowns": probe.unknowns.len(),
        "rows": probe.rows.len(),
        "witness": witness,
        "solution": solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    #[test]
    fn element_round_trip() {
        let sig = Signature::standard([0, 0, 0, 1, 1]).unwrap();
        let e = parse_expression(&sig, "1/2*x[-3] d1^2 s1 - q1 + 4").unwrap();
        let v = element_json(&e);
        assert_eq!(element_from_json(&sig, &v).unwrap(), e);
        let text = v.to_string();
        assert!(text.starts_with(r#"{"terms":[{"c":"1/2","alpha":["-3","0"],"k":[0,1],"mu":[2,0]}"#), "{text}");
    }

    #[test]
    fn table_round_trip() {
        let sig = Signature::standard([0, 0, 1, 0, 0]).unwrap();
        let m = crate::expr::parse_monomial(&sig, "x[2] t1^-1 d1").unwrap();
        let t = FunctionTable::from_entries([(m, scalar::ratio(-1, 3))]);
        assert_eq!(table_from_json(&sig, &table_json(&t)).unwrap(), t);
    }

    #[test]
    fn rejects_malformed() {
        let sig = Signature::standard([0, 0, 0, 1, 0]).unwrap();
        assert!(element_from_json(&sig, &json!({"terms": [{"alpha": ["1"], "k": [0], "mu": [0]}]})).is_err());
        assert!(element_from_json(&sig, &json!({"terms": [{"c": "1", "alpha": ["1"], "k": [1], "mu": [0]}]})).is_err());
        assert!(table_from_json(&sig, &json!({"rows": []})).is_err());
    }
}
