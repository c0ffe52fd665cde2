//! JSON certificates for verdicts and immersion maps, and their independent
//! re-validation.
//!
//! Every document has the keys `schema_version`, `model`, `parameters`,
//! `b`, `degree`, `verdict` and `certificate`. Rationals are `p/q` strings
//! and Gaussian rationals use `p/q+r/s i`. Objects serialize with sorted
//! keys, so equal inputs give byte-identical output.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::immersion::{verify_immersion, Component, ImmersionMap, Target, VerifyOutcome};
use crate::models::{get_model, resolved_parameters, ModelSpec};
use crate::multi_index::{GradedOrder, MultiIndex};
use crate::resolvability::{resolvability, validate_witness, Verdict, Witness};
use crate::scalar::{format_rational, parse_rational, CScalar, Rational};
use crate::series::text::{parse_bi, write_bi};
use crate::series::{BiSeries, HolSeries};

pub const SCHEMA_VERSION: u64 = 1;

/// Where the diastasis came from; enough to rebuild it.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Model(ModelSpec),
    /// Series in the text format.
    Series(String),
}

impl Source {
    pub fn build(&self, degree: u32) -> Result<BiSeries> {
        match self {
            Source::Model(spec) => get_model(spec, degree),
            Source::Series(text) => {
                let s = parse_bi(text)?;
                if s.degree() < degree {
                    return Err(Error::OutOfRange {
                        degree,
                        max: s.degree(),
                    });
                }
                Ok(s)
            }
        }
    }

    fn header(&self) -> Result<(Value, Value)> {
        Ok(match self {
            Source::Model(spec) => {
                let params: Map<String, Value> = resolved_parameters(spec)?
                    .into_iter()
                    .map(|(k, v)| (k, Value::String(v)))
                    .collect();
                (Value::String(spec.name.clone()), Value::Object(params))
            }
            Source::Series(text) => (Value::String("series".into()), json!({ "series": text })),
        })
    }

    fn from_header(model: &Value, params: &Value) -> Result<Self> {
        let name = model.as_str().ok_or_else(|| bad("model must be a string"))?;
        let params = params.as_object().ok_or_else(|| bad("parameters must be an object"))?;
        if name == "series" {
            let text = params
                .get("series")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("series certificates carry parameters.series"))?;
            return Ok(Source::Series(text.to_string()));
        }
        let mut spec = ModelSpec::new(name);
        for (k, v) in params {
            let v = v
                .as_str()
                .ok_or_else(|| bad(&format!("parameter {k} must be a string")))?;
            spec.parameters.insert(k.clone(), v.to_string());
        }
        Ok(Source::Model(spec))
    }
}

/// Embeds `s` in the certificate as text.
pub fn series_source(s: &BiSeries) -> Source {
    Source::Series(write_bi(s))
}

fn bad(msg: &str) -> Error {
    Error::Parse(format!("certificate: {msg}"))
}

fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn scalar(c: &CScalar) -> Value {
    Value::String(c.to_canonical())
}

fn multi_index(m: &MultiIndex) -> Value {
    Value::Array(m.0.iter().map(|&e| Value::from(e)).collect())
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Vector {
            basis,
            components,
            value,
        } => json!({
            "type": "vector",
            "basis": basis.iter().map(multi_index).collect::<Vec<_>>(),
            "components": components.iter().map(scalar).collect::<Vec<_>>(),
            "value": rational(value),
        }),
        Witness::Coefficient { j, k, value } => json!({
            "type": "coefficient",
            "j": j,
            "k": k,
            "value": rational(value),
        }),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::ResolvableUpTo { degree, rank } => json!({
            "kind": "resolvable_up_to",
            "degree": degree,
            "rank": rank,
        }),
        Verdict::CertifiedNotResolvable { degree, .. } => json!({
            "kind": "certified_not_resolvable",
            "degree": degree,
        }),
        Verdict::CertifiedResolvable { rank } => json!({
            "kind": "certified_resolvable",
            "rank": rank,
        }),
    }
}

fn envelope(source: &Source, b: &Rational, degree: u32, verdict: Value, certificate: Value) -> Result<Value> {
    let (model, parameters) = source.header()?;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "model": model,
        "parameters": parameters,
        "b": rational(b),
        "degree": degree,
        "verdict": verdict,
        "certificate": certificate,
    }))
}

pub fn verdict_certificate(source: &Source, b: &Rational, degree: u32, v: &Verdict) -> Result<Value> {
    let cert = v.witness().map(witness_json).unwrap_or(Value::Null);
    envelope(source, b, degree, verdict_json(v), cert)
}

fn target_json(t: &Target) -> Value {
    match t {
        Target::Flat => json!({ "kind": "flat" }),
        Target::Curvature(b) => json!({ "kind": "curvature", "b": rational(b) }),
        Target::Indefinite => json!({ "kind": "indefinite" }),
    }
}

pub fn immersion_json(map: &ImmersionMap) -> Value {
    let components: Vec<Value> = map
        .components
        .iter()
        .map(|c| {
            let o = c.series.order();
            let terms: Vec<Value> = c
                .series
                .iter()
                .map(|(j, v)| json!({ "m": multi_index(o.index(j)), "c": scalar(v) }))
                .collect();
            json!({ "radicand": rational(&c.radicand), "sign": c.sign, "terms": terms })
        })
        .collect();
    json!({
        "type": "immersion",
        "target": target_json(&map.target),
        "arity": map.arity,
        "degree": map.degree,
        "components": components,
    })
}

pub fn immersion_certificate(source: &Source, b: &Rational, degree: u32, map: &ImmersionMap) -> Result<Value> {
    let verdict = json!({ "kind": "immersion", "components": map.len(), "verified": true });
    envelope(source, b, degree, verdict, immersion_json(map))
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing key {key:?}")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?
        .as_str()
        .ok_or_else(|| bad(&format!("{key} must be a string")))
}

fn get_u64(v: &Value, key: &str) -> Result<u64> {
    get(v, key)?
        .as_u64()
        .ok_or_else(|| bad(&format!("{key} must be a nonnegative integer")))
}

fn parse_multi_index(v: &Value) -> Result<MultiIndex> {
    let a = v.as_array().ok_or_else(|| bad("multi-index must be an array"))?;
    a.iter()
        .map(|e| {
            e.as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| bad("bad exponent"))
        })
        .collect::<Result<Vec<u32>>>()
        .map(MultiIndex)
}

fn parse_scalar(v: &Value) -> Result<CScalar> {
    CScalar::parse(v.as_str().ok_or_else(|| bad("scalar must be a string"))?)
}

pub fn parse_witness(v: &Value) -> Result<Witness> {
    match get_str(v, "type")? {
        "vector" => {
            let basis = get(v, "basis")?
                .as_array()
                .ok_or_else(|| bad("basis must be an array"))?
                .iter()
                .map(parse_multi_index)
                .collect::<Result<Vec<_>>>()?;
            let components = get(v, "components")?
                .as_array()
                .ok_or_else(|| bad("components must be an array"))?
                .iter()
                .map(parse_scalar)
                .collect::<Result<Vec<_>>>()?;
            Ok(Witness::Vector {
                basis,
                components,
                value: parse_rational(get_str(v, "value")?)?,
            })
        }
        "coefficient" => Ok(Witness::Coefficient {
            j: get_u64(v, "j")? as u32,
            k: get_u64(v, "k")? as u32,
            value: parse_rational(get_str(v, "value")?)?,
        }),
        other => Err(bad(&format!("unknown witness type {other:?}"))),
    }
}

pub fn parse_immersion(v: &Value) -> Result<ImmersionMap> {
    if get_str(v, "type")? != "immersion" {
        return Err(bad("not an immersion"));
    }
    let t = get(v, "target")?;
    let target = match get_str(t, "kind")? {
        "flat" => Target::Flat,
        "curvature" => Target::Curvature(parse_rational(get_str(t, "b")?)?),
        "indefinite" => Target::Indefinite,
        other => return Err(bad(&format!("unknown target {other:?}"))),
    };
    let arity = get_u64(v, "arity")? as usize;
    let degree = get_u64(v, "degree")? as u32;
    let order = GradedOrder::new(arity, degree);
    let mut components = Vec::new();
    for c in get(v, "components")?
        .as_array()
        .ok_or_else(|| bad("components must be an array"))?
    {
        let mut series = HolSeries::zero_in(&order, degree);
        for term in get(c, "terms")?
            .as_array()
            .ok_or_else(|| bad("terms must be an array"))?
        {
            let m = parse_multi_index(get(term, "m")?)?;
            if m.arity() != arity || m.degree() > degree {
                return Err(bad(&format!("term {m:?} outside arity {arity}, degree {degree}")));
            }
            series.add_at(order.ordinal(&m)?, &parse_scalar(get(term, "c")?)?);
        }
        let sign = get(c, "sign")?.as_i64().ok_or_else(|| bad("sign must be an integer"))?;
        if sign != 1 && sign != -1 {
            return Err(bad("sign must be 1 or -1"));
        }
        components.push(Component {
            radicand: parse_rational(get_str(c, "radicand")?)?,
            series,
            sign: sign as i8,
        });
    }
    Ok(ImmersionMap {
        components,
        target,
        arity,
        degree,
    })
}

/// Outcome of re-validating a certificate document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: String,
    pub valid: bool,
    pub detail: String,
}

/// Rebuilds the diastasis from the recorded model and re-checks the
/// certificate without trusting the recorded verdict.
pub fn check_certificate(doc: &Value) -> Result<CheckReport> {
    let version = get_u64(doc, "schema_version")?;
    if version != SCHEMA_VERSION {
        return Err(bad(&format!("unsupported schema_version {version}")));
    }
    let source = Source::from_header(get(doc, "model")?, get(doc, "parameters")?)?;
    let b = parse_rational(get_str(doc, "b")?)?;
    let degree = get_u64(doc, "degree")? as u32;
    let verdict = get(doc, "verdict")?;
    let kind = get_str(verdict, "kind")?.to_string();
    let cert = get(doc, "certificate")?;
    let d = source.build(degree)?;
    let (valid, detail) = match kind.as_str() {
        "certified_not_resolvable" => match parse_witness(cert)? {
            w @ Witness::Vector { .. } => match validate_witness(&d, &b, &w) {
                Ok(v) => (true, format!("witness value {}", format_rational(&v))),
                Err(e) => (false, e.to_string()),
            },
            Witness::Coefficient { .. } => {
                return Err(bad(
                    "coefficient witnesses are checked by the Hartogs criterion, not here",
                ))
            }
        },
        "resolvable_up_to" => {
            let again = resolvability(&d, &b, degree)?;
            let rank = get(verdict, "rank")?.as_u64().map(|r| r as usize);
            let recorded = Verdict::ResolvableUpTo { degree, rank };
            if again == recorded {
                (true, "verdict reproduced".into())
            } else {
                (false, format!("re-run gives {}", verdict_json(&again)))
            }
        }
        "immersion" => {
            let map = parse_immersion(cert)?;
            match verify_immersion(&map, &d, &b, degree)? {
                VerifyOutcome::Ok => (true, format!("{} components verified", map.len())),
                VerifyOutcome::Residual {
                    m_j,
                    m_k,
                    expected,
                    found,
                } => (
                    false,
                    format!("pullback differs at ({m_j:?}, {m_k:?}): expected {expected}, found {found}"),
                ),
            }
        }
        other => return Err(bad(&format!("cannot check verdict kind {other:?}"))),
    };
    Ok(CheckReport { kind, valid, detail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::factor_immersion;
    use crate::scalar::{rat, rat_int};

    fn cp(scale: &str) -> Source {
        Source::Model(ModelSpec::new("cp").with("n", "1").with("scale", scale))
    }

    #[test]
    fn witness_round_trip_and_check() {
        let src = cp("1/2");
        let d = src.build(4).unwrap();
        let v = resolvability(&d, &rat_int(1), 4).unwrap();
        assert!(v.is_not_resolvable());
        let doc = verdict_certificate(&src, &rat_int(1), 4, &v).unwrap();
        assert_eq!(doc["certificate"]["value"], "-1/8");
        assert_eq!(
            parse_witness(&doc["certificate"]).unwrap(),
            v.witness().unwrap().clone()
        );
        let r = check_certificate(&doc).unwrap();
        assert!(r.valid, "{r:?}");
        let mut forged = doc.clone();
        forged["certificate"]["value"] = json!("-1/4");
        assert!(!check_certificate(&forged).unwrap().valid);
    }

    #[test]
    fn resolvable_is_rerun() {
        let src = cp("2");
        let d = src.build(4).unwrap();
        let v = resolvability(&d, &rat_int(1), 4).unwrap();
        let doc = verdict_certificate(&src, &rat_int(1), 4, &v).unwrap();
        assert!(doc["certificate"].is_null());
        assert!(check_certificate(&doc).unwrap().valid);
        let mut forged = doc.clone();
        forged["verdict"]["rank"] = json!(7);
        assert!(!check_certificate(&forged).unwrap().valid);
    }

    #[test]
    fn immersion_round_trip() {
        let src = Source::Model(ModelSpec::new("ch").with("n", "2"));
        let d = src.build(3).unwrap();
        let map = factor_immersion(&d, &rat_int(0), 3).unwrap();
        let doc = immersion_certificate(&src, &rat_int(0), 3, &map).unwrap();
        assert_eq!(parse_immersion(&doc["certificate"]).unwrap(), map);
        assert!(check_certificate(&doc).unwrap().valid);
        let mut forged = doc.clone();
        forged["certificate"]["components"][0]["radicand"] = json!("1/3");
        assert!(!check_certificate(&forged).unwrap().valid);
    }

    #[test]
    fn series_source_round_trip() {
        let d = BiSeries::norm_sqr(1, 3);
        let src = series_source(&d);
        let v = resolvability(&d, &rat(-1, 1), 3).unwrap();
        let doc = verdict_certificate(&src, &rat_int(-1), 3, &v).unwrap();
        assert_eq!(doc["model"], "series");
        assert!(check_certificate(&doc).unwrap().valid);
    }

    #[test]
    fn deterministic_rendering() {
        let src = cp("1/2");
        let d = src.build(4).unwrap();
        let v = resolvability(&d, &rat_int(1), 4).unwrap();
        let a = render(&verdict_certificate(&src, &rat_int(1), 4, &v).unwrap());
        let b = render(&verdict_certificate(&src, &rat_int(1), 4, &v).unwrap());
        assert_eq!(a, b);
        let keys: Vec<&str> = a
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        assert_eq!(
            keys,
            [
                "b",
                "certificate",
                "degree",
                "model",
                "parameters",
                "schema_version",
                "verdict"
            ]
        );
    }

    #[test]
    fn malformed_documents() {
        assert!(check_certificate(&json!({})).is_err());
        assert!(check_certificate(&json!({"schema_version": 9})).is_err());
    }
}
