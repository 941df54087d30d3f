//! JSON encodings of instances, equations and reports.
//!
//! Exact numbers are strings `"p/q"` (or `"p"` for integers) and complex
//! values are `[re, im]`. Objects are emitted with a fixed key order.

use std::str::FromStr;

use fuchsian_core::frobenius::{ApparentCheck, FiniteCheck, IndicialRoots, InfinityCheck, VerificationReport};
use fuchsian_core::model::{ApparentPoint, ExponentPair, FinitePoint, FuchsianInstance, Violation};
use fuchsian_core::overdet::{CaseReport, FloatReport, QuadraticConstraint};
use fuchsian_core::{FuchsianEquation, GaussianRational, Polynomial};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

fn bad(path: &str, message: impl Into<String>) -> FormatError {
    FormatError { path: path.to_string(), message: message.into() }
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn scalar(c: &GaussianRational) -> Value {
    json!([rational(c.re()), rational(c.im())])
}

pub fn complex_float(c: &Complex64) -> Value {
    json!([c.re, c.im])
}

fn scalars(v: &[GaussianRational]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

fn pair(p: &ExponentPair) -> Value {
    json!([scalar(&p.rho1), scalar(&p.rho2)])
}

pub fn parse_rational(v: &Value, path: &str) -> Result<BigRational, FormatError> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            let parsed = match s.split_once('/') {
                Some((n, d)) => {
                    let n = BigInt::from_str(n.trim()).map_err(|_| bad(path, format!("bad numerator in {s:?}")))?;
                    let d = BigInt::from_str(d.trim()).map_err(|_| bad(path, format!("bad denominator in {s:?}")))?;
                    if d.is_zero() {
                        return Err(bad(path, "zero denominator"));
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from_integer(
                    BigInt::from_str(s).map_err(|_| bad(path, format!("not a rational: {s:?}")))?,
                ),
            };
            Ok(parsed)
        }
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| bad(path, "numbers must be integers; write fractions as \"p/q\"")),
        _ => Err(bad(path, "expected a rational")),
    }
}

/// `[re, im]`, or a bare rational for a real value.
pub fn parse_scalar(v: &Value, path: &str) -> Result<GaussianRational, FormatError> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(GaussianRational::new(
            parse_rational(&parts[0], &format!("{path}[0]"))?,
            parse_rational(&parts[1], &format!("{path}[1]"))?,
        )),
        Value::Array(_) => Err(bad(path, "complex values are [re, im]")),
        other => Ok(GaussianRational::from_real(parse_rational(other, path)?)),
    }
}

fn parse_pair(v: &Value, path: &str) -> Result<ExponentPair, FormatError> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(ExponentPair::new(
            parse_scalar(&parts[0], &format!("{path}[0]"))?,
            parse_scalar(&parts[1], &format!("{path}[1]"))?,
        )),
        _ => Err(bad(path, "expected a pair of exponents")),
    }
}

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| bad(path, format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], FormatError> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| bad(path, "expected an array"))
}

pub fn parse_instance(v: &Value) -> Result<FuchsianInstance, FormatError> {
    if !v.is_object() {
        return Err(bad("$", "expected an object"));
    }
    let finite_points = array(field(v, "finite_points", "$")?, "$.finite_points")?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let path = format!("$.finite_points[{i}]");
            Ok(FinitePoint {
                t: parse_scalar(field(p, "t", &path)?, &format!("{path}.t"))?,
                exponents: parse_pair(field(p, "exponents", &path)?, &format!("{path}.exponents"))?,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let infinity_exponents = parse_pair(field(v, "infinity_exponents", "$")?, "$.infinity_exponents")?;
    let apparent_points = match v.get("apparent") {
        None | Some(Value::Null) => Vec::new(),
        Some(list) => array(list, "$.apparent")?
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let path = format!("$.apparent[{j}]");
                Ok(ApparentPoint {
                    q: parse_scalar(field(a, "q", &path)?, &format!("{path}.q"))?,
                    momentum: parse_scalar(field(a, "p", &path)?, &format!("{path}.p"))?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?,
    };
    Ok(FuchsianInstance::new(finite_points, infinity_exponents, apparent_points))
}

pub fn instance(inst: &FuchsianInstance) -> Value {
    let finite: Vec<Value> =
        inst.finite_points.iter().map(|p| json!({"t": scalar(&p.t), "exponents": pair(&p.exponents)})).collect();
    let apparent: Vec<Value> =
        inst.apparent_points.iter().map(|a| json!({"q": scalar(&a.q), "p": scalar(&a.momentum)})).collect();
    json!({
        "finite_points": finite,
        "infinity_exponents": pair(&inst.infinity_exponents),
        "apparent": apparent,
    })
}

pub fn equation(eq: &FuchsianEquation) -> Value {
    json!({"G": scalars(&eq.g_coeffs()), "H": scalars(&eq.h_coeffs())})
}

/// Reads `{"G": [...], "H": [...]}` for the given instance.
pub fn parse_equation(v: &Value, inst: &FuchsianInstance) -> Result<FuchsianEquation, FormatError> {
    let poly = |key: &str| -> Result<Polynomial, FormatError> {
        let path = format!("$.{key}");
        let coeffs = array(field(v, key, "$")?, &path)?
            .iter()
            .enumerate()
            .map(|(k, c)| parse_scalar(c, &format!("{path}[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    };
    FuchsianEquation::new(inst.clone(), poly("G")?, poly("H")?).map_err(|e| bad("$", e.to_string()))
}

pub fn violation(v: &Violation) -> String {
    match v {
        Violation::DuplicateFinite { first, second } => {
            format!("finite points {} and {} coincide", first + 1, second + 1)
        }
        Violation::DuplicateApparent { first, second } => {
            format!("apparent points {} and {} coincide", first + 1, second + 1)
        }
        Violation::ApparentInP { apparent, finite } => {
            format!("apparent point {} coincides with finite point {}", apparent + 1, finite + 1)
        }
        Violation::TooFewFinitePoints { n } => format!("need at least 2 finite points, found {n}"),
    }
}

fn roots(found: &IndicialRoots) -> Value {
    json!({
        "sum": scalar(&found.sum),
        "product": scalar(&found.product),
        "roots": found.roots.as_ref().map_or(Value::Null, pair),
    })
}

fn finite_check(c: &FiniteCheck) -> Value {
    json!({
        "t": scalar(&c.t),
        "expected": pair(&c.expected),
        "found": roots(&c.found),
        "matches": c.matches,
    })
}

fn apparent_check(c: &ApparentCheck) -> Value {
    json!({
        "q": scalar(&c.q),
        "indicial": roots(&c.indicial),
        "exponents_ok": c.exponents_ok,
        "residue": scalar(&c.residue),
        "double_pole": scalar(&c.double_pole),
        "momentum": scalar(&c.momentum),
        "momentum_ok": c.momentum_ok,
        "omega": c.omega.as_ref().map_or(Value::Null, scalar),
        "log_free": c.log_free,
        "residual_ok": c.residual_ok,
        "passed": c.passed(),
    })
}

fn infinity_check(c: &InfinityCheck) -> Value {
    json!({
        "expected": pair(&c.expected),
        "found": roots(&c.found),
        "matches": c.matches,
    })
}

pub fn report(r: &VerificationReport) -> Value {
    json!({
        "finite": r.finite.iter().map(finite_check).collect::<Vec<_>>(),
        "apparent": r.apparent.iter().map(apparent_check).collect::<Vec<_>>(),
        "infinity": infinity_check(&r.infinity),
        "overall": r.overall,
    })
}

pub fn case_report(c: &CaseReport) -> Value {
    json!({
        "n": c.n,
        "N": c.apparent,
        "case": c.case.as_str(),
        "h_free_dim": c.h_free_dim,
        "constraint_count": c.constraint_count,
        "total_dimension": c.total_dimension,
    })
}

/// Momentum indices are 1-based, matching the numbering of the apparent
/// points.
pub fn constraint(c: &QuadraticConstraint) -> Value {
    let terms = |m: &std::collections::BTreeMap<usize, GaussianRational>| {
        Value::Object(m.iter().map(|(k, v)| ((k + 1).to_string(), scalar(v))).collect::<Map<_, _>>())
    };
    json!({
        "j": c.j + 1,
        "quad": terms(&c.quad),
        "lin": terms(&c.lin),
        "const": scalar(&c.const_term),
    })
}

pub fn float_report(r: &FloatReport) -> Value {
    let points: Vec<Value> = r
        .apparent
        .iter()
        .map(|a| {
            json!({
                "omega_abs": a.omega_abs,
                "residue_err": a.residue_err,
                "double_pole_abs": a.double_pole_abs,
                "momentum_err": a.momentum_err,
            })
        })
        .collect();
    json!({
        "apparent": points,
        "max_deviation": r.max_deviation,
        "tolerance": r.tolerance,
        "passed": r.passed,
    })
}

/// Indented `key: value` lines for `--format text`.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        // [re, im] of exact strings
        Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_string) => {
            let re = a[0].as_str().unwrap_or_default();
            let im = a[1].as_str().unwrap_or_default();
            Some(match (re, im) {
                (r, "0") => r.to_string(),
                ("0", i) => format!("{i}i"),
                (r, i) if i.starts_with('-') => format!("{r}{i}i"),
                (r, i) => format!("{r}+{i}i"),
            })
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let parts: Option<Vec<String>> = a.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{}]\n", i + 1));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}
