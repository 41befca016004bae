//! JSON reading and writing. Every number is an exact string (`"p/q"` or `"p"`);
//! plain JSON integers are accepted on input.

use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cf::{cycle_string, eigenline_matrix, CfData, CfError, Mu, SymmetryReport, Synthesized};
use crate::exact::{fmt_rat, parse_rat, Int, IntMat, Poly, Rat};
use crate::numfield::{AlgNum, Automorphism, FieldError, Interval, NumberField};
use crate::palindromy::{CaseWitness, Certificate, TableReport, Verdict, Witness};
use crate::sail::{FixedPoint, SailPatch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

fn schema(path: &str, msg: impl Into<String>) -> InputError {
    InputError::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}

pub fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))
}

pub fn rat_from_json(v: &Value, path: &str) -> Result<Rat, InputError> {
    match v {
        Value::String(s) => parse_rat(s).ok_or_else(|| schema(path, format!("not a rational: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(Rat::from_integer(
            n.to_string().parse::<Int>().expect("integer literal"),
        )),
        _ => Err(schema(path, "expected an exact number string")),
    }
}

pub fn int_from_json(v: &Value, path: &str) -> Result<Int, InputError> {
    let r = rat_from_json(v, path)?;
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(schema(path, format!("not an integer: {}", fmt_rat(&r))))
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, InputError> {
    v.get(key).ok_or_else(|| schema(path, format!("missing field {key:?}")))
}

/// A square integer matrix, either bare or wrapped as `{"matrix": ...}`.
pub fn int_matrix_from_json(v: &Value) -> Result<IntMat, InputError> {
    let v = v.get("matrix").unwrap_or(v);
    let rows = array(v, "matrix")?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, &format!("matrix[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| int_from_json(x, &format!("matrix[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = parsed.len();
    if n == 0 || parsed.iter().any(|r| r.len() != n) {
        return Err(schema("matrix", "expected a non-empty square matrix"));
    }
    IntMat::from_rows(parsed).map_err(|e| schema("matrix", e.to_string()))
}

pub fn field_from_json(v: &Value) -> Result<Arc<NumberField>, InputError> {
    let coeffs = array(field(v, "min_poly", "field")?, "field.min_poly")?
        .iter()
        .enumerate()
        .map(|(i, c)| rat_from_json(c, &format!("field.min_poly[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NumberField::new(Poly::new(coeffs))?)
}

pub fn alg_from_json(k: &Arc<NumberField>, v: &Value, path: &str) -> Result<AlgNum, InputError> {
    let v = v.get("coords").unwrap_or(v);
    let coords = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, c)| rat_from_json(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgNum::new(k, coords)?)
}

/// `{"dimension", "field", "coords", "identity_embedding"}`; the embedding is
/// the 1-based index of a real root in ascending order and defaults to 1.
pub fn cf_from_json(v: &Value) -> Result<CfData, InputError> {
    let k = field_from_json(field(v, "field", "cf")?)?;
    let coords = array(field(v, "coords", "cf")?, "cf.coords")?
        .iter()
        .enumerate()
        .map(|(i, c)| alg_from_json(&k, c, &format!("cf.coords[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(d) = v.get("dimension") {
        let d = d.as_u64().ok_or_else(|| schema("cf.dimension", "expected an integer"))?;
        if d as usize != coords.len() + 1 || d as usize != k.degree() {
            return Err(schema(
                "cf.dimension",
                format!("{d} disagrees with field degree {} and {} coords", k.degree(), coords.len()),
            ));
        }
    }
    let root = match v.get("identity_embedding") {
        None => 1,
        Some(r) => r
            .as_u64()
            .filter(|&r| r >= 1)
            .ok_or_else(|| schema("cf.identity_embedding", "expected a 1-based root index"))?
            as usize,
    };
    Ok(eigenline_matrix(&k, &coords, root - 1)?)
}

/// `{"X": matrix, "omega"?: AlgNum, "psi"?: AlgNum, "condition"?: k}`.
pub fn witness_from_json(k: &Arc<NumberField>, v: &Value) -> Result<Witness, InputError> {
    let x = int_matrix_from_json(field(v, "X", "witness")?)?;
    let opt = |key: &str| {
        v.get(key)
            .map(|a| alg_from_json(k, a, &format!("witness.{key}")))
            .transpose()
    };
    let condition = match v.get("condition") {
        None => None,
        Some(c) => Some(
            c.as_u64()
                .ok_or_else(|| schema("witness.condition", "expected an integer"))? as usize,
        ),
    };
    Ok(Witness {
        x,
        omega: opt("omega")?,
        psi: opt("psi")?,
        condition,
    })
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn int_json(i: &Int) -> Value {
    Value::String(i.to_string())
}

pub fn int_matrix_json(m: &IntMat) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_json).collect()))
            .collect(),
    )
}

pub fn alg_json(a: &AlgNum) -> Value {
    json!({ "coords": a.coords_strings() })
}

pub fn automorphism_json(a: &Automorphism) -> Value {
    json!({ "image": alg_json(a.image()) })
}

fn interval_json(iv: &Interval) -> Value {
    json!([rat_json(&iv.lo), rat_json(&iv.hi)])
}

fn mu_json(m: &Mu) -> Value {
    match m {
        Mu::Exact(a, _) => match a.as_rational() {
            Some(r) => rat_json(&r),
            None => alg_json(a),
        },
        Mu::Approx(iv) => json!({ "interval": interval_json(iv) }),
    }
}

pub fn cf_json(cf: &CfData) -> Value {
    json!({
        "dimension": cf.dimension(),
        "field": { "min_poly": cf.field().min_poly().coeffs().iter().map(rat_json).collect::<Vec<_>>() },
        "coords": cf.coords().iter().map(alg_json).collect::<Vec<_>>(),
        "identity_embedding": cf.identity_root() + 1,
    })
}

pub fn symmetry_report_json(r: &SymmetryReport) -> Value {
    let mut m = Map::new();
    m.insert("symmetry".into(), Value::Bool(true));
    m.insert("g".into(), int_matrix_json(&r.g));
    m.insert(
        "kind".into(),
        Value::String(format!("{:?}", r.kind).to_lowercase()),
    );
    m.insert("sigma".into(), Value::String(cycle_string(&r.sigma)));
    m.insert("sigma_normal".into(), Value::String(cycle_string(&r.sigma_normal())));
    m.insert("order".into(), json!(r.order_of_sigma));
    m.insert("cyclic".into(), Value::Bool(r.cyclic));
    m.insert("proper".into(), Value::Bool(r.proper));
    m.insert("mu".into(), Value::Array(r.mu.iter().map(mu_json).collect()));
    m.insert("multiplier".into(), alg_json(&r.multiplier));
    m.insert("char_poly".into(), Value::String(r.char_poly.to_string()));
    if let Some(red) = &r.reduced {
        m.insert("square".into(), symmetry_report_json(red));
    }
    Value::Object(m)
}

pub fn patch_json(p: &SailPatch) -> Value {
    json!({
        "cone": p.cone.to_string(),
        "bound": p.bound,
        "vertices": p.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "facets": p.facets,
        "provisional": p.provisional,
        "truncated": p.truncated,
    })
}

pub fn fixed_point_json(f: &FixedPoint) -> Value {
    json!({
        "point": f.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "cone": f.cone.to_string(),
    })
}

pub fn case_witness_json(w: &CaseWitness, x: &IntMat) -> Value {
    json!({
        "kind": w.kind.to_string(),
        "case": w.case_index,
        "z": w.z.iter().map(|v| v.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "basis": w.basis.iter().map(|v| v.iter().map(rat_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "X": int_matrix_json(x),
        "iterations": w.iterations,
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Holds(c) => certificate_json(c),
        Verdict::Fails(reason) => json!({ "verdict": "fails", "reason": reason }),
    }
}

fn certificate_json(c: &Certificate) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), Value::String("holds".into()));
    m.insert("condition".into(), json!(c.condition));
    m.insert("X".into(), int_matrix_json(&c.x));
    m.insert("omega".into(), alg_json(&c.omega));
    if let Some(p) = &c.psi {
        m.insert("psi".into(), alg_json(p));
    }
    if let Some(t) = &c.trace {
        m.insert("trace".into(), rat_json(t));
    }
    if let Some(a) = &c.automorphism {
        m.insert("automorphism".into(), automorphism_json(a));
    }
    Value::Object(m)
}

pub fn table_report_json(r: &TableReport) -> Value {
    json!({ "passed": r.passed(), "lines": r.lines() })
}

pub fn synthesized_json(s: &Synthesized) -> Value {
    json!({
        "operator": int_matrix_json(&s.operator.a),
        "char_poly": s.operator.char_poly.to_string(),
        "unit": alg_json(&s.unit),
        "coeffs": s.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}
