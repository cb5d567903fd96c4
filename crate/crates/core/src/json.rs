//! JSON encoding of scalars, classes, sublattices and normal forms.
//!
//! Integers are JSON numbers, or decimal strings beyond 2⁵³. Rationals are
//! strings `"p/q"` (`"p"` when integral). Gaussian rationals are
//! `{"re": .., "im": ..}`, or a plain rational when the imaginary part is 0.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::gcy::NormalForm;
use crate::lattice::Sublattice;
use crate::mukai::{AnyClass, GradedClass, H2_RANK, RANK};
use crate::scalar::{CRat, Coeff, Flavor, Int, Rat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub fn schema(path: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema { path: path.to_string(), message: message.into() }
}

pub fn parse_document(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

const SAFE: i64 = 1 << 53;

pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Int {
    fn to_json(&self) -> Value {
        match i64::try_from(self) {
            Ok(n) if n.abs() <= SAFE => json!(n),
            _ => Value::String(self.to_string()),
        }
    }
}

impl ToJson for Rat {
    fn to_json(&self) -> Value {
        if self.is_integer() {
            Value::String(self.numer().to_string())
        } else {
            Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }
}

impl ToJson for CRat {
    fn to_json(&self) -> Value {
        if self.im.is_zero() {
            self.re.to_json()
        } else {
            json!({"re": self.re.to_json(), "im": self.im.to_json()})
        }
    }
}

impl ToJson for Scalar {
    fn to_json(&self) -> Value {
        match self {
            Scalar::Int(n) => n.to_json(),
            Scalar::Rat(q) => q.to_json(),
            Scalar::CRat(z) => z.to_json(),
        }
    }
}

impl<T: Coeff + ToJson> ToJson for GradedClass<T> {
    fn to_json(&self) -> Value {
        json!({
            "flavor": T::FLAVOR.name(),
            "r": self.r().to_json(),
            "c": self.c().iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "s": self.s().to_json(),
        })
    }
}

impl ToJson for AnyClass {
    fn to_json(&self) -> Value {
        match self {
            AnyClass::Int(x) => x.to_json(),
            AnyClass::Rat(x) => x.to_json(),
            AnyClass::Complex(x) => x.to_json(),
        }
    }
}

impl ToJson for Sublattice {
    fn to_json(&self) -> Value {
        json!({
            "rank": self.rank(),
            "basis": self.rows().iter().map(|r| vec_to_json(r)).collect::<Vec<_>>(),
            "saturated": self.is_saturated(),
        })
    }
}

impl ToJson for NormalForm {
    fn to_json(&self) -> Value {
        match self {
            NormalForm::Symplectic { lambda, b, omega } => json!({
                "type": "symplectic",
                "lambda": lambda.to_json(),
                "B": vec_to_json(b),
                "omega": vec_to_json(omega),
            }),
            NormalForm::Complex { sigma, b } => json!({
                "type": "complex",
                "sigma": vec_to_json(sigma),
                "B": vec_to_json(b),
            }),
        }
    }
}

pub fn vec_to_json<T: ToJson>(v: &[T]) -> Value {
    Value::Array(v.iter().map(ToJson::to_json).collect())
}

fn parse_int_str(s: &str, path: &str) -> Result<Int, JsonError> {
    s.trim().parse::<Int>().map_err(|_| schema(path, format!("'{s}' is not an integer")))
}

fn parse_rat_str(s: &str, path: &str) -> Result<Rat, JsonError> {
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int_str(s, path)?)),
        Some((p, q)) => {
            let p = parse_int_str(p, path)?;
            let q = parse_int_str(q, path)?;
            if q.is_zero() {
                return Err(schema(path, "zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub fn parse_int(v: &Value, path: &str) -> Result<Int, JsonError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(schema(path, "expected an integer, got a floating-point number"))
            }
        }
        Value::String(s) => parse_int_str(s, path),
        _ => Err(schema(path, "expected an integer")),
    }
}

pub fn parse_rat(v: &Value, path: &str) -> Result<Rat, JsonError> {
    match v {
        Value::String(s) => parse_rat_str(s, path),
        Value::Number(_) => parse_int(v, path).map(Rat::from_integer),
        Value::Object(_) => {
            let z = parse_crat(v, path)?;
            if !z.im.is_zero() {
                return Err(schema(path, "expected a rational, got a non-real complex number"));
            }
            Ok(z.re)
        }
        _ => Err(schema(path, "expected a rational (number or \"p/q\" string)")),
    }
}

pub fn parse_crat(v: &Value, path: &str) -> Result<CRat, JsonError> {
    match v {
        Value::Object(m) => {
            check_keys(m, &["re", "im"], path)?;
            let re = m.get("re").map(|x| parse_rat(x, &format!("{path}.re"))).transpose()?.unwrap_or_default();
            let im = m.get("im").map(|x| parse_rat(x, &format!("{path}.im"))).transpose()?.unwrap_or_default();
            Ok(CRat::new(re, im))
        }
        _ => parse_rat(v, path).map(CRat::real),
    }
}

pub fn parse_scalar(v: &Value, path: &str) -> Result<Scalar, JsonError> {
    match v {
        Value::Number(_) => parse_int(v, path).map(Scalar::Int),
        Value::String(s) if !s.contains('/') => parse_int_str(s, path).map(Scalar::Int),
        Value::String(_) => parse_rat(v, path).map(Scalar::Rat),
        Value::Object(_) => parse_crat(v, path).map(Scalar::CRat),
        _ => Err(schema(path, "expected a number, rational string or {\"re\",\"im\"} object")),
    }
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), JsonError> {
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(schema(&format!("{path}.{k}"), "unexpected field"));
        }
    }
    Ok(())
}

pub fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, JsonError> {
    let m = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    m.get(key).ok_or_else(|| schema(&format!("{path}.{key}"), "missing field"))
}

pub fn array<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>, JsonError> {
    let a = v.as_array().ok_or_else(|| schema(path, "expected an array"))?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(schema(path, format!("expected {n} entries, got {}", a.len())));
        }
    }
    Ok(a)
}

pub fn parse_vec<T>(
    v: &Value,
    path: &str,
    len: Option<usize>,
    f: impl Fn(&Value, &str) -> Result<T, JsonError>,
) -> Result<Vec<T>, JsonError> {
    array(v, path, len)?.iter().enumerate().map(|(i, x)| f(x, &format!("{path}[{i}]"))).collect()
}

pub fn parse_rat_h2(v: &Value, path: &str) -> Result<Vec<Rat>, JsonError> {
    parse_vec(v, path, Some(H2_RANK), parse_rat)
}

pub fn parse_crat_h2(v: &Value, path: &str) -> Result<Vec<CRat>, JsonError> {
    parse_vec(v, path, Some(H2_RANK), parse_crat)
}

/// A class `{"r", "c", "s"}` with optional `"flavor"`. Without a flavor the
/// smallest one fitting every coordinate is used; a declared flavor promotes
/// the coordinates and rejects values that do not fit.
pub fn parse_class(v: &Value, path: &str) -> Result<AnyClass, JsonError> {
    let m = v.as_object().ok_or_else(|| schema(path, "expected a class object {\"r\",\"c\",\"s\"}"))?;
    check_keys(m, &["flavor", "r", "c", "s"], path)?;
    let r = parse_scalar(field(v, "r", path)?, &format!("{path}.r"))?;
    let c = parse_vec(field(v, "c", path)?, &format!("{path}.c"), Some(H2_RANK), parse_scalar)?;
    let s = parse_scalar(field(v, "s", path)?, &format!("{path}.s"))?;
    let mut coords = Vec::with_capacity(RANK);
    coords.push(r);
    coords.extend(c);
    coords.push(s);
    let coords: Vec<Scalar> = coords.into_iter().map(|x| x.normalized()).collect();
    let inferred = coords.iter().map(Scalar::flavor).max().unwrap_or(Flavor::Int);
    let flavor = match m.get("flavor") {
        None => inferred,
        Some(Value::String(name)) => {
            let f = Flavor::parse(name).ok_or_else(|| schema(&format!("{path}.flavor"), "unknown flavor"))?;
            if f < inferred {
                return Err(schema(
                    &format!("{path}.flavor"),
                    format!("declared {} but coordinates need {}", f.name(), inferred.name()),
                ));
            }
            f
        }
        Some(_) => return Err(schema(&format!("{path}.flavor"), "expected a string")),
    };
    Ok(match flavor {
        Flavor::Int => AnyClass::Int(GradedClass::unflatten(
            coords.iter().map(|x| x.to_int().expect("integral")).collect(),
        )
        .expect("24")),
        Flavor::Rat => AnyClass::Rat(GradedClass::unflatten(
            coords.iter().map(|x| x.to_rat().expect("rational")).collect(),
        )
        .expect("24")),
        Flavor::Complex => {
            AnyClass::Complex(GradedClass::unflatten(coords.iter().map(Scalar::to_crat).collect()).expect("24"))
        }
    })
}

/// `{"basis": [[24 ints], ..]}` or a bare array of rows.
pub fn parse_sublattice(v: &Value, path: &str) -> Result<Sublattice, JsonError> {
    let (rows_v, rows_path) = match v {
        Value::Object(m) => {
            check_keys(m, &["rank", "basis", "saturated"], path)?;
            (field(v, "basis", path)?, format!("{path}.basis"))
        }
        _ => (v, path.to_string()),
    };
    let rows = parse_vec(rows_v, &rows_path, None, |r, p| parse_vec(r, p, Some(RANK), parse_int))?;
    let l = Sublattice::from_rows(rows);
    if let Some(k) = v.get("rank") {
        let k = parse_int(k, &format!("{path}.rank"))?;
        if k != Int::from(l.rank()) {
            return Err(schema(&format!("{path}.rank"), format!("rank {k} does not match basis rank {}", l.rank())));
        }
    }
    Ok(l)
}

pub fn parse_normal_form(v: &Value, path: &str) -> Result<NormalForm, JsonError> {
    let ty = field(v, "type", path)?.as_str().ok_or_else(|| schema(&format!("{path}.type"), "expected a string"))?;
    let b = parse_rat_h2(field(v, "B", path)?, &format!("{path}.B"))?;
    match ty {
        "symplectic" => Ok(NormalForm::Symplectic {
            lambda: parse_crat(field(v, "lambda", path)?, &format!("{path}.lambda"))?,
            b,
            omega: parse_rat_h2(field(v, "omega", path)?, &format!("{path}.omega"))?,
        }),
        "complex" => Ok(NormalForm::Complex { sigma: parse_crat_h2(field(v, "sigma", path)?, &format!("{path}.sigma"))?, b }),
        other => Err(schema(&format!("{path}.type"), format!("unknown normal form type '{other}'"))),
    }
}

/// Compact text rendering of a rational vector, listing nonzero entries.
pub fn sparse_text<T: std::fmt::Display + Zero>(v: &[T]) -> String {
    let parts: Vec<String> =
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| format!("[{i}]={x}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}
