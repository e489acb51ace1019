//! JSON forms of the domain types with schema validation.
//!
//! Series: `{"n":2,"spec":{"kind":"Q"},"coeffs":[{"e":[-2,3],"c":"1/2"}],
//! "cert":{"lo":[0,0],"hi":[4,null],"tails":[{"axis":1,"threshold":0,
//! "slope":-1,"exceptions":[]}]}}`. Scalars use the text form (`a/b`,
//! `[c0,c1,...]`); operators are tagged trees.

use crate::basefield::{FieldScalar, FieldSpec};
use crate::series::{BoundCertificate, Exponents, Prec, SliceRule, TruncatedSeries};
use crate::operator::OperatorExpr;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema error at {path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError {
        path: path.into(),
        message: message.into(),
    })
}

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    let coeffs: Vec<Value> = s
        .coeffs()
        .iter()
        .map(|(e, c)| json!({"e": e.0, "c": c.to_text()}))
        .collect();
    let cert = s.cert();
    let lo: Vec<i64> = cert.lo.iter().map(|r| r.base).collect();
    let hi: Vec<Value> = cert
        .hi
        .iter()
        .map(|h| match h {
            Prec::Finite(v) => json!(v),
            Prec::Unbounded => Value::Null,
        })
        .collect();
    let tails: Vec<Value> = cert
        .lo
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_constant())
        .map(|(i, r)| {
            let exceptions: Vec<Value> = r.exceptions.iter().map(|(m, v)| json!([m, v])).collect();
            json!({
                "axis": i + 1,
                "threshold": r.threshold,
                "base": r.base,
                "slope": r.slope,
                "below": r.below,
                "exceptions": exceptions,
            })
        })
        .collect();
    json!({
        "n": s.arity(),
        "spec": serde_json::to_value(s.spec()).expect("spec serializes"),
        "coeffs": coeffs,
        "cert": {"lo": lo, "hi": hi, "tails": tails},
    })
}

pub fn series_from_json(v: &Value) -> Result<TruncatedSeries, SchemaError> {
    let obj = v.as_object().ok_or(SchemaError {
        path: "$".into(),
        message: "expected object".into(),
    })?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or(SchemaError {
            path: "$.n".into(),
            message: "expected arity".into(),
        })? as usize;
    let spec: FieldSpec = serde_json::from_value(
        obj.get("spec").cloned().unwrap_or(Value::Null),
    )
    .map_err(|e| SchemaError {
        path: "$.spec".into(),
        message: e.to_string(),
    })?;
    let cert = cert_from_json(obj.get("cert").unwrap_or(&Value::Null), n)?;
    let mut terms = Vec::new();
    if let Some(list) = obj.get("coeffs").and_then(Value::as_array) {
        for (k, item) in list.iter().enumerate() {
            let path = format!("$.coeffs[{}]", k);
            let e = item
                .get("e")
                .and_then(Value::as_array)
                .ok_or(SchemaError {
                    path: path.clone(),
                    message: "missing exponent".into(),
                })?;
            let exps: Result<Vec<i64>, _> = e
                .iter()
                .map(|x| x.as_i64().ok_or(()))
                .collect();
            let exps = match exps {
                Ok(x) if x.len() == n => x,
                _ => return err(&path, "bad exponent tuple"),
            };
            let text = item
                .get("c")
                .and_then(Value::as_str)
                .ok_or(SchemaError {
                    path: path.clone(),
                    message: "missing coefficient".into(),
                })?;
            let c = FieldScalar::parse(&spec, text)
                .map_err(|e| SchemaError {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
            terms.push((Exponents(exps), c));
        }
    }
    TruncatedSeries::new(spec, cert, terms).map_err(|e| SchemaError {
        path: "$.coeffs".into(),
        message: e.to_string(),
    })
}

fn cert_from_json(v: &Value, n: usize) -> Result<BoundCertificate, SchemaError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return err("$.cert", "expected certificate object"),
    };
    let lo_vals = obj
        .get("lo")
        .and_then(Value::as_array)
        .ok_or(SchemaError {
            path: "$.cert.lo".into(),
            message: "expected array".into(),
        })?;
    if lo_vals.len() != n {
        return err("$.cert.lo", format!("expected {} entries", n));
    }
    let mut lo: Vec<SliceRule> = Vec::new();
    for (i, x) in lo_vals.iter().enumerate() {
        match x.as_i64() {
            Some(b) => lo.push(SliceRule::constant(b)),
            None => return err(&format!("$.cert.lo[{}]", i), "expected integer"),
        }
    }
    let hi_vals = obj
        .get("hi")
        .and_then(Value::as_array)
        .ok_or(SchemaError {
            path: "$.cert.hi".into(),
            message: "expected array".into(),
        })?;
    if hi_vals.len() != n {
        return err("$.cert.hi", format!("expected {} entries", n));
    }
    let mut hi = Vec::new();
    for (i, x) in hi_vals.iter().enumerate() {
        match x {
            Value::Null => hi.push(Prec::Unbounded),
            _ => match x.as_i64() {
                Some(h) => hi.push(Prec::Finite(h)),
                None => return err(&format!("$.cert.hi[{}]", i), "expected integer or null"),
            },
        }
    }
    if let Some(tails) = obj.get("tails").and_then(Value::as_array) {
        for (k, t) in tails.iter().enumerate() {
            let path = format!("$.cert.tails[{}]", k);
            let axis = t.get("axis").and_then(Value::as_u64).unwrap_or(0) as usize;
            if axis == 0 || axis > n {
                return err(&path, "axis out of range");
            }
            let threshold = t.get("threshold").and_then(Value::as_i64).unwrap_or(0);
            let base = t.get("base").and_then(Value::as_i64).unwrap_or(lo[axis - 1].base);
            let slope = t.get("slope").and_then(Value::as_i64).unwrap_or(0);
            let mut exceptions = BTreeMap::new();
            if let Some(list) = t.get("exceptions").and_then(Value::as_array) {
                for pair in list {
                    let a = pair.get(0).and_then(Value::as_i64);
                    let b = pair.get(1).and_then(Value::as_i64);
                    match (a, b) {
                        (Some(m), Some(v)) => {
                            exceptions.insert(m, v);
                        }
                        _ => return err(&path, "bad exception pair"),
                    }
                }
            }
            let below = t
                .get("below")
                .and_then(Value::as_i64)
                .unwrap_or(base + slope * threshold);
            lo[axis - 1] = SliceRule {
                exceptions,
                threshold,
                base,
                slope,
                below,
            };
        }
    }
    // validation: constant windows must be nonempty per axis
    for i in 0..n {
        if let (true, Prec::Finite(h)) = (lo[i].is_constant(), hi[i]) {
            if lo[i].base > h {
                return err(
                    &format!("$.cert(axis {})", i + 1),
                    format!("lower bound {} exceeds cutoff {}", lo[i].base, h),
                );
            }
        }
    }
    Ok(BoundCertificate { lo, hi })
}

pub fn operator_to_json(op: &OperatorExpr) -> Value {
    match op {
        OperatorExpr::Id => json!({"op": "id"}),
        OperatorExpr::Scale(c) => json!({
            "op": "scale",
            "spec": serde_json::to_value(c.spec()).expect("spec serializes"),
            "c": c.to_text(),
        }),
        OperatorExpr::MulBy(g) => json!({"op": "mul_by", "g": series_to_json(g)}),
        OperatorExpr::Proj(axis, cutoff) => json!({"op": "proj", "axis": axis, "cutoff": cutoff}),
        OperatorExpr::CoProj(axis, cutoff) => {
            json!({"op": "co_proj", "axis": axis, "cutoff": cutoff})
        }
        OperatorExpr::FiniteRank(phi, v) => {
            let reads: Vec<Value> = phi
                .iter()
                .map(|(e, c)| json!({"e": e.0, "c": c.to_text()}))
                .collect();
            json!({"op": "finite_rank", "phi": reads, "v": series_to_json(v)})
        }
        OperatorExpr::Sum(terms) => {
            json!({"op": "sum", "terms": terms.iter().map(operator_to_json).collect::<Vec<_>>()})
        }
        OperatorExpr::Compose(factors) => json!({
            "op": "compose",
            "factors": factors.iter().map(operator_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn operator_from_json(v: &Value) -> Result<OperatorExpr, SchemaError> {
    let obj: &Map<String, Value> = v.as_object().ok_or(SchemaError {
        path: "$".into(),
        message: "expected operator object".into(),
    })?;
    let tag = obj.get("op").and_then(Value::as_str).ok_or(SchemaError {
        path: "$.op".into(),
        message: "missing op tag".into(),
    })?;
    match tag {
        "id" => Ok(OperatorExpr::Id),
        "scale" => {
            let spec: FieldSpec = serde_json::from_value(
                obj.get("spec").cloned().unwrap_or(Value::Null),
            )
            .map_err(|e| SchemaError {
                path: "$.spec".into(),
                message: e.to_string(),
            })?;
            let text = obj.get("c").and_then(Value::as_str).unwrap_or("0");
            let c = FieldScalar::parse(&spec, text).map_err(|e| SchemaError {
                path: "$.c".into(),
                message: e.to_string(),
            })?;
            Ok(OperatorExpr::Scale(c))
        }
        "mul_by" => Ok(OperatorExpr::MulBy(series_from_json(
            obj.get("g").unwrap_or(&Value::Null),
        )?)),
        "proj" | "co_proj" => {
            let axis = obj.get("axis").and_then(Value::as_u64).ok_or(SchemaError {
                path: "$.axis".into(),
                message: "missing axis".into(),
            })? as usize;
            let cutoff = obj.get("cutoff").and_then(Value::as_i64).unwrap_or(0);
            Ok(if tag == "proj" {
                OperatorExpr::Proj(axis, cutoff)
            } else {
                OperatorExpr::CoProj(axis, cutoff)
            })
        }
        "finite_rank" => {
            let v_series = series_from_json(obj.get("v").unwrap_or(&Value::Null))?;
            let spec = v_series.spec().clone();
            let mut phi = Vec::new();
            if let Some(list) = obj.get("phi").and_then(Value::as_array) {
                for (k, item) in list.iter().enumerate() {
                    let path = format!("$.phi[{}]", k);
                    let e: Vec<i64> = item
                        .get("e")
                        .and_then(Value::as_array)
                        .map(|a| a.iter().filter_map(Value::as_i64).collect())
                        .unwrap_or_default();
                    if e.len() != v_series.arity() {
                        return err(&path, "bad exponent tuple");
                    }
                    let text = item.get("c").and_then(Value::as_str).unwrap_or("0");
                    let c = FieldScalar::parse(&spec, text).map_err(|er| SchemaError {
                        path,
                        message: er.to_string(),
                    })?;
                    phi.push((Exponents(e), c));
                }
            }
            Ok(OperatorExpr::FiniteRank(phi, v_series))
        }
        "sum" => {
            let terms = obj
                .get("terms")
                .and_then(Value::as_array)
                .map(|a| a.iter().map(operator_from_json).collect::<Result<_, _>>())
                .transpose()?
                .unwrap_or_default();
            Ok(OperatorExpr::Sum(terms))
        }
        "compose" => {
            let factors = obj
                .get("factors")
                .and_then(Value::as_array)
                .map(|a| a.iter().map(operator_from_json).collect::<Result<_, _>>())
                .transpose()?
                .unwrap_or_default();
            Ok(OperatorExpr::Compose(factors))
        }
        other => err("$.op", format!("unknown operator tag '{}'", other)),
    }
}
