//! JSON encoding shared by the CLI and the examples.
//!
//! Field elements are arrays of `"num/den"` strings over the power basis
//! `1, γ, …`; matrices are row-major nested arrays. On input an element may
//! also be an integer, a rational string such as `"9/2"`, or a short
//! expression in `γ` (alias `g`) such as `"1/2 + 3γ - γ^2"`.

use crate::arith::{FieldElement, Mat2, NumberField, Rational};
use crate::hyperbolic::HPoint;
use crate::tree::TreeVertex;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct JsonError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError(msg.into()))
}

pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn element_to_json(x: &FieldElement) -> Value {
    Value::Array(x.coeffs().iter().map(|c| Value::String(rational_to_string(c))).collect())
}

pub fn matrix_to_json(m: &Mat2) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(element_to_json).collect()))
            .collect(),
    )
}

pub fn vertex_to_json(v: &TreeVertex) -> Value {
    json!({ "n": v.n, "b": element_to_json(&v.b) })
}

pub fn point_to_json(p: &HPoint) -> Value {
    json!({ "z": [float(p.z.re), float(p.z.im)], "t": float(p.t) })
}

/// `x` rounded to 12 significant digits. Non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    json!(rounded)
}

pub fn parse_rational(s: &str) -> Result<Rational, JsonError> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| JsonError(format!("bad rational {s:?}")))?;
    let d: BigInt = d.trim().parse().map_err(|_| JsonError(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

fn json_rational(v: &Value) -> Result<Rational, JsonError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => err(format!("non-integer number {n}; use a \"num/den\" string")),
        },
        Value::String(s) => parse_rational(s),
        other => err(format!("expected a rational, got {other}")),
    }
}

/// `[c0, c1, …]`, an integer, a rational string or a `γ`-expression.
pub fn parse_element(v: &Value, field: &NumberField) -> Result<FieldElement, JsonError> {
    match v {
        Value::Array(items) => {
            if items.len() > field.degree() {
                return err(format!(
                    "element has {} coefficients but the field has degree {}",
                    items.len(),
                    field.degree()
                ));
            }
            let mut coeffs = items.iter().map(json_rational).collect::<Result<Vec<_>, _>>()?;
            coeffs.resize(field.degree(), Rational::zero());
            Ok(field.element(coeffs))
        }
        Value::String(s) => parse_expression(s, field),
        Value::Number(_) => Ok(field.from_rational(json_rational(v)?)),
        other => err(format!("expected a field element, got {other}")),
    }
}

/// Sums of terms `c`, `c*γ^k`, `cγ`, `γ^k` with rational `c`.
pub fn parse_expression(s: &str, field: &NumberField) -> Result<FieldElement, JsonError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return err("empty expression");
    }
    let mut total = field.zero();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        if rest.starts_with(['+', '-']) {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let mut t = parse_term(term, field, s)?;
        if negative {
            t = -t;
        }
        total = &total + &t;
        rest = tail;
    }
    Ok(total)
}

fn parse_term(term: &str, field: &NumberField, whole: &str) -> Result<FieldElement, JsonError> {
    let bad = || JsonError(format!("cannot parse {whole:?}"));
    let Some(pos) = term.find(['γ', 'g']) else {
        return Ok(field.from_rational(parse_rational(term).map_err(|_| bad())?));
    };
    if field.is_rationals() {
        return err(format!("{whole:?} uses γ but no minpoly was given"));
    }
    let coef = term[..pos].trim_end_matches('*');
    let coef = if coef.is_empty() { Rational::one() } else { parse_rational(coef).map_err(|_| bad())? };
    let power = &term[pos + term[pos..].chars().next().map_or(1, char::len_utf8)..];
    let k: u32 = match power.strip_prefix('^') {
        Some(k) => k.parse().map_err(|_| bad())?,
        None if power.is_empty() => 1,
        None => return Err(bad()),
    };
    Ok(field.gen().pow(k).scale(&coef))
}

pub fn parse_matrix(v: &Value, field: &NumberField) -> Result<Mat2, JsonError> {
    let rows = v.as_array().filter(|r| r.len() == 2);
    let Some(rows) = rows else {
        return err(format!("expected a 2×2 matrix, got {v}"));
    };
    let mut entries = Vec::with_capacity(4);
    for r in rows {
        match r.as_array() {
            Some(r) if r.len() == 2 => {
                for x in r {
                    entries.push(parse_element(x, field)?);
                }
            }
            _ => return err(format!("expected a 2×2 matrix, got {v}")),
        }
    }
    let [a, b, c, d]: [FieldElement; 4] = entries.try_into().expect("four entries");
    Ok(Mat2::new(a, b, c, d))
}

pub fn parse_minpoly(v: Option<&Value>) -> Result<NumberField, JsonError> {
    let Some(v) = v.filter(|v| !v.is_null()) else {
        return Ok(NumberField::rationals());
    };
    let coeffs = v
        .as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>());
    let Some(coeffs) = coeffs else {
        return err(format!("minpoly must be an array of integers, got {v}"));
    };
    NumberField::new(&coeffs).map_err(|e| JsonError(format!("minpoly {v}: {e}")))
}

pub fn parse_vertex(v: &Value, field: &NumberField) -> Result<TreeVertex, JsonError> {
    let n = v.get("n").and_then(Value::as_i64);
    let b = v.get("b");
    match (n, b) {
        (Some(n), Some(b)) => Ok(TreeVertex { n, b: parse_element(b, field)? }),
        _ => err(format!("expected a vertex {{\"n\": int, \"b\": element}}, got {v}")),
    }
}

pub fn parse_point(v: &Value) -> Result<HPoint, JsonError> {
    let z = v.get("z").and_then(Value::as_array).filter(|z| z.len() == 2);
    let re = z.and_then(|z| z[0].as_f64());
    let im = z.and_then(|z| z[1].as_f64());
    let t = v.get("t").and_then(Value::as_f64);
    match (re, im, t) {
        (Some(re), Some(im), Some(t)) => {
            HPoint::new(Complex64::new(re, im), t).map_err(|e| JsonError(e.to_string()))
        }
        _ => err(format!("expected a point {{\"z\": [re, im], \"t\": float}}, got {v}")),
    }
}

/// A group document `{"minpoly"?: [...], "generators": [matrix, …]}`.
pub fn parse_group(v: &Value) -> Result<(NumberField, Vec<Mat2>), JsonError> {
    let Some(obj) = v.as_object() else {
        return err(format!("expected a group object, got {v}"));
    };
    let field = parse_minpoly(obj.get("minpoly"))?;
    let Some(gens) = obj.get("generators").and_then(Value::as_array) else {
        return err("group is missing \"generators\"");
    };
    let gens = gens.iter().map(|g| parse_matrix(g, &field)).collect::<Result<_, _>>()?;
    Ok((field, gens))
}

/// Typed field access on a payload object.
pub struct Payload<'a>(pub &'a Map<String, Value>);

impl<'a> Payload<'a> {
    pub fn get(&self, key: &str) -> Option<&'a Value> {
        self.0.get(key).filter(|v| !v.is_null())
    }

    pub fn require(&self, key: &str) -> Result<&'a Value, JsonError> {
        self.get(key).ok_or_else(|| JsonError(format!("missing field \"{key}\"")))
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>, JsonError> {
        self.get(key)
            .map(|v| v.as_u64().ok_or_else(|| JsonError(format!("\"{key}\" must be a nonnegative integer"))))
            .transpose()
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, JsonError> {
        self.get(key)
            .map(|v| v.as_f64().ok_or_else(|| JsonError(format!("\"{key}\" must be a number"))))
            .transpose()
    }

    pub fn str(&self, key: &str) -> Result<Option<&'a str>, JsonError> {
        self.get(key)
            .map(|v| v.as_str().ok_or_else(|| JsonError(format!("\"{key}\" must be a string"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn golden() -> NumberField {
        NumberField::new(&[-1, -1, 1]).unwrap()
    }

    #[test]
    fn elements_round_trip() {
        let k = golden();
        let x = k.element(vec![ratio(-1, 2), ratio(3, 1)]);
        let v = element_to_json(&x);
        assert_eq!(v, json!(["-1/2", "3/1"]));
        assert_eq!(parse_element(&v, &k).unwrap(), x);
    }

    #[test]
    fn expressions() {
        let k = golden();
        let g = k.gen();
        assert_eq!(parse_element(&json!("γ"), &k).unwrap(), g);
        assert_eq!(parse_element(&json!("g"), &k).unwrap(), g);
        assert_eq!(parse_element(&json!("2γ"), &k).unwrap(), g.scale(&ratio(2, 1)));
        assert_eq!(parse_element(&json!("1/2*γ^2"), &k).unwrap(), g.pow(2).scale(&ratio(1, 2)));
        assert_eq!(
            parse_element(&json!("1 - γ + 3/4 γ^2"), &k).unwrap(),
            &(&k.one() - &g) + &g.pow(2).scale(&ratio(3, 4))
        );
        assert_eq!(parse_element(&json!(7), &k).unwrap(), k.from_int(7));
        assert!(parse_element(&json!("γ"), &NumberField::rationals()).is_err());
        assert!(parse_element(&json!("2x"), &k).is_err());
        assert!(parse_element(&json!("1/0"), &k).is_err());
    }

    #[test]
    fn floats_have_twelve_digits() {
        assert_eq!(float(4f64.ln()).to_string(), "1.38629436112");
        assert_eq!(float(2.0).to_string(), "2.0");
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn matrices_and_groups() {
        let q = NumberField::rationals();
        let m = parse_matrix(&json!([[0, -1], [1, "0"]]), &q).unwrap();
        assert_eq!(m, Mat2::from_ints(&q, [[0, -1], [1, 0]]));
        assert_eq!(matrix_to_json(&m), json!([[["0/1"], ["-1/1"]], [["1/1"], ["0/1"]]]));
        assert!(parse_matrix(&json!([[1, 2, 3], [4, 5, 6]]), &q).is_err());
        let (k, gens) = parse_group(&json!({"minpoly": [1, 0, 1], "generators": [[[1, "γ"], [0, 1]]]})).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(gens[0].get(0, 1), &k.gen());
    }
}
