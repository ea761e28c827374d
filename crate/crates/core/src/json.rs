//! Lossless JSON encoding of traces and diagnoses.
//!
//! Big integers travel as decimal strings so no reader has to round them.
//! Object keys are emitted in sorted order, which keeps output byte-stable.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::diagnose::{Diagnosis, Evidence, Finding, Locus, MistakeCode, Verdict};
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, FieldTag, Matrix};
use crate::scalar::{QuadRational, RadicalSum, Rational, Scalar};
use crate::spectrum::CharPoly;
use crate::trace::{Payload, Step, StepKind, Trace};

pub const SCHEMA_VERSION: &str = "1";

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(r) => rational_json(r),
        Scalar::Radical(x) => radical_json(x),
        Scalar::Quadratic(q) => json!({
            "a": rational_json(q.rational_part()),
            "b": rational_json(q.surd_coeff()),
            "d": q.radicand().to_string(),
        }),
        Scalar::Float(x) => json!({ "float": float_json(*x) }),
    }
}

fn radical_json(x: &RadicalSum) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(r, c)| json!({ "coeff": rational_json(c), "radicand": r.to_string() }))
        .collect();
    json!({ "terms": terms })
}

fn float_json(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("NaN")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn matrix_json(m: &ExactMatrix) -> Value {
    let (rows, cols) = m.shape();
    let entries: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(scalar_json).collect()))
        .collect();
    json!({ "field": m.field_tag().to_string(), "rows": rows, "cols": cols, "entries": entries })
}

pub fn payload_json(p: &Payload) -> Value {
    match p {
        Payload::Bool(b) => json!({ "type": "bool", "value": b }),
        Payload::Scalar(s) => json!({ "type": "scalar", "value": scalar_json(s) }),
        Payload::Scalars(xs) => {
            json!({ "type": "scalars", "value": xs.iter().map(scalar_json).collect::<Vec<_>>() })
        }
        Payload::Vectors(vs) => {
            let value: Vec<Value> = vs
                .iter()
                .map(|v| Value::Array(v.iter().map(scalar_json).collect()))
                .collect();
            json!({ "type": "vectors", "column_vectors": true, "value": value })
        }
        Payload::Matrix(m) => json!({ "type": "matrix", "value": matrix_json(m) }),
        Payload::Polynomial(c) => {
            let coeffs: Vec<Value> = c.coefficients().iter().map(rational_json).collect();
            json!({ "type": "polynomial", "value": coeffs })
        }
        Payload::Text(t) => json!({ "type": "text", "value": t }),
        Payload::Record(fields) => {
            let value: Vec<Value> = fields
                .iter()
                .map(|(k, v)| json!({ "label": k, "value": payload_json(v) }))
                .collect();
            json!({ "type": "record", "value": value })
        }
        Payload::List(items) => {
            json!({ "type": "list", "value": items.iter().map(payload_json).collect::<Vec<_>>() })
        }
    }
}

pub fn trace_json(t: &Trace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| json!({ "kind": s.kind.as_str(), "note": s.note, "payload": payload_json(&s.payload) }))
        .collect();
    json!({ "schema_version": SCHEMA_VERSION, "operation": t.operation, "steps": steps })
}

pub fn diagnosis_json(d: &Diagnosis) -> Value {
    let findings: Vec<Value> = d
        .findings
        .iter()
        .map(|f| {
            let evidence: Vec<Value> = f
                .evidence
                .iter()
                .map(|e| json!({ "fact": e.fact, "value": payload_json(&e.value) }))
                .collect();
            json!({
                "code": f.code.as_str(),
                "locus": { "component": f.locus.component, "columns": f.locus.columns },
                "evidence": evidence,
            })
        })
        .collect();
    let mut root = json!({
        "schema_version": SCHEMA_VERSION,
        "verdict": d.verdict.to_string(),
        "findings": findings,
    });
    if let Some(res) = &d.residuals {
        let map: Map<String, Value> = res.iter().map(|(k, v)| (k.clone(), float_json(*v))).collect();
        root["residuals"] = Value::Object(map);
    }
    root
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// An empty trace renders as an empty document.
pub fn render_trace_json(t: &Trace) -> String {
    if t.is_empty() {
        return String::new();
    }
    pretty(&trace_json(t))
}

pub fn render_diagnosis_json(d: &Diagnosis) -> String {
    pretty(&diagnosis_json(d))
}

fn parse_doc(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

pub fn parse_trace_json(text: &str) -> Result<Trace> {
    if text.trim().is_empty() {
        return Ok(Trace::default());
    }
    trace_from_json(&parse_doc(text)?)
}

pub fn parse_diagnosis_json(text: &str) -> Result<Diagnosis> {
    diagnosis_from_json(&parse_doc(text)?)
}

fn check_version(v: &Value) -> Result<()> {
    match v.get("schema_version").and_then(Value::as_str) {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(bad(format!("unsupported schema version {other}"))),
        None => Err(bad("missing schema_version")),
    }
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?
        .as_str()
        .ok_or_else(|| bad(format!("field {key:?} must be a string")))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    get(v, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field {key:?} must be an array")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("field {key:?} must be a nonnegative integer")))
}

fn bigint(v: &Value, key: &str) -> Result<BigInt> {
    get_str(v, key)?
        .parse()
        .map_err(|_| bad(format!("field {key:?} is not an integer")))
}

fn biguint(v: &Value, key: &str) -> Result<BigUint> {
    get_str(v, key)?
        .parse()
        .map_err(|_| bad(format!("field {key:?} is not a natural number")))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    let num = bigint(v, "num")?;
    let den = bigint(v, "den")?;
    if den <= BigInt::from(0) {
        return Err(bad("denominator must be positive"));
    }
    Ok(Rational::new(num, den))
}

fn float_from_json(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad("float out of range")),
        Value::String(s) => match s.as_str() {
            "NaN" => Ok(f64::NAN),
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            _ => Err(bad(format!("unknown float {s:?}"))),
        },
        _ => Err(bad("float must be a number")),
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    if let Some(x) = v.get("float") {
        return Ok(Scalar::Float(float_from_json(x)?));
    }
    if v.get("terms").is_some() {
        let mut terms = Vec::new();
        for t in get_array(v, "terms")? {
            terms.push((
                rational_from_json(get(t, "coeff")?)?,
                BigInt::from(biguint(t, "radicand")?),
            ));
        }
        return Ok(Scalar::Radical(RadicalSum::from_terms(terms)?));
    }
    if v.get("d").is_some() {
        let a = rational_from_json(get(v, "a")?)?;
        let b = rational_from_json(get(v, "b")?)?;
        return Ok(Scalar::Quadratic(QuadRational::new(a, b, biguint(v, "d")?)?));
    }
    Ok(Scalar::Rational(rational_from_json(v)?))
}

fn parse_field(tag: &str) -> Result<FieldTag> {
    Ok(match tag {
        "rational" => FieldTag::Rational,
        "radical" => FieldTag::RadicalSum,
        "float64" => FieldTag::Float64,
        _ => {
            let d = tag
                .strip_prefix("quadratic(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("unknown field {tag:?}")))?;
            FieldTag::QuadRational(d)
        }
    })
}

fn typed<T: crate::scalar::Element>(
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    f: impl Fn(Scalar) -> Option<T>,
) -> Result<Matrix<T>> {
    let data = entries
        .into_iter()
        .map(|s| f(s).ok_or_else(|| bad("matrix entry does not match its field")))
        .collect::<Result<Vec<T>>>()?;
    Matrix::new(rows, cols, data)
}

pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix> {
    let field = parse_field(get_str(v, "field")?)?;
    let rows = get_usize(v, "rows")?;
    let cols = get_usize(v, "cols")?;
    let mut entries = Vec::with_capacity(rows * cols);
    let listed = get_array(v, "entries")?;
    if listed.len() != rows {
        return Err(bad("row count does not match entries"));
    }
    for row in listed {
        let row = row.as_array().ok_or_else(|| bad("matrix rows must be arrays"))?;
        if row.len() != cols {
            return Err(bad("column count does not match entries"));
        }
        for x in row {
            entries.push(scalar_from_json(x)?);
        }
    }
    Ok(match field {
        FieldTag::Rational => ExactMatrix::Rational(typed(rows, cols, entries, |s| match s {
            Scalar::Rational(r) => Some(r),
            _ => None,
        })?),
        FieldTag::RadicalSum => ExactMatrix::Radical(typed(rows, cols, entries, |s| match s {
            Scalar::Radical(r) => Some(r),
            _ => None,
        })?),
        FieldTag::QuadRational(d) => ExactMatrix::Quadratic(typed(rows, cols, entries, |s| match s {
            Scalar::Quadratic(q) => Some(q),
            Scalar::Rational(r) => Some(QuadRational::from_rational(r, &d)),
            _ => None,
        })?),
        FieldTag::Float64 => ExactMatrix::Float(typed(rows, cols, entries, |s| match s {
            Scalar::Float(x) => Some(x),
            _ => None,
        })?),
    })
}

fn scalars(v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of scalars"))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

pub fn payload_from_json(v: &Value) -> Result<Payload> {
    let value = get(v, "value")?;
    Ok(match get_str(v, "type")? {
        "bool" => Payload::Bool(value.as_bool().ok_or_else(|| bad("bool payload"))?),
        "scalar" => Payload::Scalar(scalar_from_json(value)?),
        "scalars" => Payload::Scalars(scalars(value)?),
        "vectors" => Payload::Vectors(
            value
                .as_array()
                .ok_or_else(|| bad("vectors payload"))?
                .iter()
                .map(scalars)
                .collect::<Result<_>>()?,
        ),
        "matrix" => Payload::Matrix(matrix_from_json(value)?),
        "polynomial" => {
            let coeffs = value
                .as_array()
                .ok_or_else(|| bad("polynomial payload"))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            Payload::Polynomial(CharPoly::new(coeffs)?)
        }
        "text" => Payload::Text(value.as_str().ok_or_else(|| bad("text payload"))?.to_string()),
        "record" => Payload::Record(
            value
                .as_array()
                .ok_or_else(|| bad("record payload"))?
                .iter()
                .map(|f| Ok((get_str(f, "label")?.to_string(), payload_from_json(get(f, "value")?)?)))
                .collect::<Result<_>>()?,
        ),
        "list" => Payload::List(
            value
                .as_array()
                .ok_or_else(|| bad("list payload"))?
                .iter()
                .map(payload_from_json)
                .collect::<Result<_>>()?,
        ),
        other => return Err(bad(format!("unknown payload type {other:?}"))),
    })
}

pub fn trace_from_json(v: &Value) -> Result<Trace> {
    check_version(v)?;
    let mut trace = Trace::new(get_str(v, "operation")?);
    for s in get_array(v, "steps")? {
        let kind = get_str(s, "kind")?;
        let kind = StepKind::parse(kind).ok_or_else(|| bad(format!("unknown step kind {kind:?}")))?;
        trace.steps.push(Step::new(
            kind,
            get_str(s, "note")?,
            payload_from_json(get(s, "payload")?)?,
        ));
    }
    Ok(trace)
}

pub fn diagnosis_from_json(v: &Value) -> Result<Diagnosis> {
    check_version(v)?;
    let verdict = match get_str(v, "verdict")? {
        "valid" => Verdict::Valid,
        "invalid" => Verdict::Invalid,
        other => return Err(bad(format!("unknown verdict {other:?}"))),
    };
    let mut findings = Vec::new();
    for f in get_array(v, "findings")? {
        let code = get_str(f, "code")?;
        let code = MistakeCode::parse(code).ok_or_else(|| bad(format!("unknown code {code:?}")))?;
        let locus = get(f, "locus")?;
        let columns = get_array(locus, "columns")?
            .iter()
            .map(|c| {
                c.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| bad("column numbers must be integers"))
            })
            .collect::<Result<_>>()?;
        let evidence = get_array(f, "evidence")?
            .iter()
            .map(|e| Ok(Evidence::new(get_str(e, "fact")?, payload_from_json(get(e, "value")?)?)))
            .collect::<Result<_>>()?;
        findings.push(Finding {
            code,
            locus: Locus::columns(get_str(locus, "component")?, columns),
            evidence,
        });
    }
    let residuals = match v.get("residuals") {
        None => None,
        Some(r) => {
            let obj = r.as_object().ok_or_else(|| bad("residuals must be an object"))?;
            let mut map = BTreeMap::new();
            for (k, x) in obj {
                map.insert(k.clone(), float_from_json(x)?);
            }
            Some(map)
        }
    };
    Ok(Diagnosis {
        verdict,
        findings,
        residuals,
    })
}
