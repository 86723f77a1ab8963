//! JSON encodings shared by the CLI and the verification harness. Every
//! top-level document carries `"schema": "rho-lattice/1"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::abelian::FinAbPresentation;
use crate::cyclic_ring::{RingElement, RingModulus};
use crate::error::{Error, Result};
use crate::special::SpecialElementCatalog;
use crate::surgery::{LensParams, NormalCoords, StructureElement, StructureSetDescriptor};
use crate::suspension::{SuspensionResult, TorsionBasis};

pub const SCHEMA: &str = "rho-lattice/1";

/// Adds the schema tag to an object.
pub fn tagged(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    v
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

pub fn ring_to_json(a: &RingElement) -> Value {
    let coeffs: Vec<Value> = a
        .coeffs()
        .iter()
        .map(|c| json!([c.numer().to_string(), c.denom().to_string()]))
        .collect();
    json!({ "N": a.n(), "kind": a.modulus().kind_str(), "coeffs": coeffs })
}

fn big(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        Value::Number(n) => n.to_string().parse().map_err(|_| bad(format!("not an integer: {n}"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

pub fn ring_from_json(v: &Value) -> Result<RingElement> {
    let n = field(v, "N")?.as_u64().ok_or_else(|| bad("`N` must be a positive integer"))? as usize;
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("truncated");
    let modulus = RingModulus::from_kind_str(n, kind)?;
    let coeffs = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| bad("`coeffs` must be an array"))?
        .iter()
        .map(|c| match c {
            Value::Array(pair) if pair.len() == 2 => {
                let den = big(&pair[1])?;
                if den == BigInt::from(0) {
                    return Err(bad("zero denominator"));
                }
                Ok(BigRational::new(big(&pair[0])?, den))
            }
            other => Ok(BigRational::from_integer(big(other)?)),
        })
        .collect::<Result<Vec<_>>>()?;
    RingElement::from_coeffs(modulus, coeffs)
}

pub fn presentation_to_json(g: &FinAbPresentation) -> Value {
    json!({ "factors": g.factors() })
}

pub fn params_to_json(p: &LensParams) -> Value {
    serde_json::to_value(p).expect("params serialize")
}

pub fn params_from_json(v: &Value) -> Result<LensParams> {
    Ok(serde_json::from_value(v.clone())?)
}

pub fn element_to_json(x: &StructureElement) -> Value {
    json!({
        "params": params_to_json(&x.params),
        "rho": ring_to_json(&x.rho),
        "coords": serde_json::to_value(&x.coords).expect("coords serialize"),
    })
}

/// Reads an element; a missing `rho` means 0 and missing `coords` mean 0.
pub fn element_from_json(v: &Value) -> Result<StructureElement> {
    let p = params_from_json(field(v, "params")?)?;
    let mut x = StructureElement::zero(&p);
    if let Some(r) = v.get("rho") {
        x.rho = ring_from_json(r)?;
    }
    if let Some(c) = v.get("coords") {
        let c: NormalCoords = serde_json::from_value(c.clone())?;
        x.coords = c;
    }
    x.check()?;
    Ok(x)
}

pub fn descriptor_to_json(s: &StructureSetDescriptor) -> Value {
    let mut m = Map::new();
    m.insert("params".into(), params_to_json(&s.params));
    m.insert("free_rank".into(), json!(s.free_rank));
    m.insert("torsion".into(), presentation_to_json(&s.torsion));
    m.insert("method".into(), serde_json::to_value(s.method).expect("method"));
    if let Some(members) = &s.kernel_members {
        m.insert("members".into(), serde_json::to_value(members).expect("members"));
    }
    Value::Object(m)
}

pub fn suspension_to_json(r: &SuspensionResult) -> Value {
    json!({
        "params": params_to_json(&r.target),
        "determined": r.determined.as_ref().map(element_to_json),
        "candidates": r.candidates.iter().map(element_to_json).collect::<Vec<_>>(),
        "new_t4_values": r.new_t4_values(),
    })
}

pub fn basis_to_json(b: &TorsionBasis) -> Value {
    json!({
        "params": params_to_json(&b.params),
        "mu4": b.mu4.iter().map(element_to_json).collect::<Vec<_>>(),
        "mu4m2": b.mu4m2.iter().map(element_to_json).collect::<Vec<_>>(),
        "orders": b.orders(),
        "choice_log": serde_json::to_value(&b.choice_log).expect("log"),
    })
}

pub fn catalog_to_json(c: &SpecialElementCatalog) -> Value {
    json!({
        "N": c.n,
        "k": c.k,
        "f": ring_to_json(&c.f),
        "f_k": ring_to_json(&c.f_k),
        "f_prime_k": ring_to_json(&c.f_prime_k),
        "g": ring_to_json(&c.g),
        "h_l": c.h_l.iter().map(ring_to_json).collect::<Vec<_>>(),
        "h": c.h.as_ref().map(ring_to_json),
        "a_l": c.a_l.iter().map(ring_to_json).collect::<Vec<_>>(),
    })
}
