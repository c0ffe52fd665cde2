//! Catalog of concrete potentials and the registry that builds them by name.

mod catalog;
pub mod config;

pub use catalog::{
    calabi_profile, calabi_tube, cartan_bergman_diastasis, cartan_hartogs_diastasis, cigar_diastasis, fbh_diastasis,
    hartogs_diastasis, phi_b, space_form_diastasis, taubnut_potential, CalabiTube, Cartan, TaubNutMode,
};

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, format_rational, parse_rational, rat, rat_int, Rational};
use crate::series::{BiSeries, HolSeries};

/// Univariate profiles `F` for rotation-invariant Hartogs domains.
#[derive(Clone, Debug, PartialEq)]
pub enum HartogsProfile {
    /// `e^{−t}`.
    Springer,
    /// `α/(x + α)`.
    Alpha(Rational),
    /// `(x + 1)^{−1/2}`.
    InvSqrt,
    /// `(x + 1)^{−p}`.
    InvPow(Rational),
    /// `(1 − t)^p`.
    OneMinusPow(Rational),
    /// `(x − 1)(x − 11/4)(x + 3/4)`.
    RhpCubic,
}

impl HartogsProfile {
    pub fn series(&self, degree: u32) -> Result<HolSeries> {
        let d = degree as u64;
        let c: Vec<Rational> = match self {
            HartogsProfile::Springer => (0..=d)
                .map(|k| Rational::new(if k % 2 == 0 { 1.into() } else { (-1).into() }, factorial(k)))
                .collect(),
            HartogsProfile::Alpha(a) => {
                if !a.is_positive() {
                    return Err(Error::InvalidParameter(format!("alpha must be positive, got {a}")));
                }
                let r = -a.recip();
                (0..=d).map(|k| num_traits::pow(r.clone(), k as usize)).collect()
            }
            HartogsProfile::InvSqrt => (0..=d).map(|k| binomial(&rat(-1, 2), k)).collect(),
            HartogsProfile::InvPow(p) => {
                if !p.is_positive() {
                    return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
                }
                (0..=d).map(|k| binomial(&-p.clone(), k)).collect()
            }
            HartogsProfile::OneMinusPow(p) => {
                if !p.is_positive() {
                    return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
                }
                (0..=d)
                    .map(|k| {
                        let b = binomial(p, k);
                        if k % 2 == 0 {
                            b
                        } else {
                            -b
                        }
                    })
                    .collect()
            }
            HartogsProfile::RhpCubic => {
                let all = [rat(33, 16), rat(-1, 16), rat_int(-3), rat_int(1)];
                (0..=d)
                    .map(|k| all.get(k as usize).cloned().unwrap_or_else(Rational::zero))
                    .collect()
            }
        };
        Ok(HolSeries::univariate(&c, degree))
    }
}

/// A named model with string-valued parameters (`p/q` or integers).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
}

impl ModelSpec {
    pub fn new(name: &str) -> Self {
        ModelSpec {
            name: name.to_string(),
            parameters: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: &str) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn rational(&self, key: &str, default: Option<&str>) -> Result<Rational> {
        match (self.parameters.get(key), default) {
            (Some(v), _) => parse_rational(v),
            (None, Some(d)) => parse_rational(d),
            (None, None) => Err(Error::InvalidParameter(format!(
                "model {} needs parameter {key}",
                self.name
            ))),
        }
    }

    fn integer(&self, key: &str, default: Option<usize>) -> Result<usize> {
        match self.parameters.get(key) {
            Some(v) => v
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("{key} must be a nonnegative integer, got {v:?}"))),
            None => {
                default.ok_or_else(|| Error::InvalidParameter(format!("model {} needs parameter {key}", self.name)))
            }
        }
    }

    fn text(&self, key: &str, default: &str) -> String {
        self.parameters.get(key).cloned().unwrap_or_else(|| default.to_string())
    }
}

/// One parameter of a catalog entry.
#[derive(Clone, Debug, Serialize)]
pub struct ParamInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub default: Option<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub parameters: Vec<ParamInfo>,
}

const fn p(name: &'static str, kind: &'static str, default: Option<&'static str>) -> ParamInfo {
    ParamInfo { name, kind, default }
}

const SCALE: ParamInfo = p("scale", "rational", Some("1"));

/// Every registered model with its parameter schema.
pub fn catalog() -> Vec<ModelInfo> {
    let hartogs = |name, description, extra: Option<ParamInfo>| {
        let mut params = vec![p("n", "integer", Some("2"))];
        params.extend(extra);
        params.push(SCALE);
        ModelInfo {
            name,
            description,
            parameters: params,
        }
    };
    vec![
        ModelInfo {
            name: "flat",
            description: "Euclidean diastasis on C^n",
            parameters: vec![p("n", "integer", Some("1")), SCALE],
        },
        ModelInfo {
            name: "cp",
            description: "Fubini-Study diastasis on CP^n",
            parameters: vec![p("n", "integer", Some("1")), SCALE],
        },
        ModelInfo {
            name: "ch",
            description: "hyperbolic diastasis on CH^n",
            parameters: vec![p("n", "integer", Some("1")), SCALE],
        },
        ModelInfo {
            name: "space-form",
            description: "space form of curvature 4b",
            parameters: vec![p("n", "integer", Some("1")), p("b", "rational", None), SCALE],
        },
        hartogs("springer", "Hartogs domain with F = exp(-t)", None),
        hartogs(
            "hartogs-alpha",
            "Hartogs domain with F = alpha/(x+alpha)",
            Some(p("alpha", "rational", None)),
        ),
        hartogs("hartogs-inv-sqrt", "Hartogs domain with F = (x+1)^(-1/2)", None),
        hartogs(
            "hartogs-inv-pow",
            "Hartogs domain with F = (x+1)^(-p)",
            Some(p("p", "rational", None)),
        ),
        hartogs(
            "hartogs-one-minus-pow",
            "Hartogs domain with F = (1-t)^p",
            Some(p("p", "rational", None)),
        ),
        hartogs("rhp-cubic", "Hartogs domain with F = (x-1)(x-11/4)(x+3/4)", None),
        ModelInfo {
            name: "cartan",
            description: "Bergman diastasis of a classical domain (type 1..4)",
            parameters: vec![
                p("type", "integer", None),
                p("n", "integer", None),
                p("m", "integer", Some("1")),
                SCALE,
            ],
        },
        ModelInfo {
            name: "cartan-hartogs",
            description: "Cartan-Hartogs domain over a classical domain",
            parameters: vec![
                p("type", "integer", None),
                p("n", "integer", None),
                p("m", "integer", Some("1")),
                p("mu", "rational", None),
                SCALE,
            ],
        },
        ModelInfo {
            name: "fbh",
            description: "Fock-Bargmann-Hartogs domain in C^(n+m)",
            parameters: vec![
                p("n", "integer", Some("1")),
                p("m", "integer", Some("1")),
                p("mu", "rational", None),
                p("nu", "rational", None),
                SCALE,
            ],
        },
        ModelInfo {
            name: "cigar",
            description: "cigar soliton on C",
            parameters: vec![SCALE],
        },
        ModelInfo {
            name: "taub-nut",
            description: "Taub-NUT potential (mode slice or full)",
            parameters: vec![p("m", "rational", None), p("mode", "text", Some("slice")), SCALE],
        },
        ModelInfo {
            name: "calabi-tube",
            description: "Calabi's tube metric on C^n",
            parameters: vec![p("n", "integer", Some("1")), SCALE],
        },
        ModelInfo {
            name: "phi-b",
            description: "circular potential Phi_B on C^3",
            parameters: vec![SCALE],
        },
    ]
}

pub fn model_info(name: &str) -> Option<ModelInfo> {
    catalog().into_iter().find(|m| m.name == name)
}

fn cartan_of(spec: &ModelSpec) -> Result<Cartan> {
    let n = spec.integer("n", None)?;
    Ok(match spec.integer("type", None)? {
        1 => Cartan::I(spec.integer("m", Some(1))?, n),
        2 => Cartan::II(n),
        3 => Cartan::III(n),
        4 => Cartan::IV(n),
        t => return Err(Error::InvalidParameter(format!("unknown Cartan type {t}"))),
    })
}

/// The Hartogs profile behind a model, if it has one.
pub fn hartogs_profile(spec: &ModelSpec) -> Result<Option<HartogsProfile>> {
    Ok(Some(match spec.name.as_str() {
        "springer" => HartogsProfile::Springer,
        "hartogs-alpha" => HartogsProfile::Alpha(spec.rational("alpha", None)?),
        "hartogs-inv-sqrt" => HartogsProfile::InvSqrt,
        "hartogs-inv-pow" => HartogsProfile::InvPow(spec.rational("p", None)?),
        "hartogs-one-minus-pow" => HartogsProfile::OneMinusPow(spec.rational("p", None)?),
        "rhp-cubic" => HartogsProfile::RhpCubic,
        _ => return Ok(None),
    }))
}

/// Builds the (scaled) diastasis of a registered model.
pub fn get_model(spec: &ModelSpec, degree: u32) -> Result<BiSeries> {
    let info =
        model_info(&spec.name).ok_or_else(|| Error::InvalidParameter(format!("unknown model {:?}", spec.name)))?;
    for key in spec.parameters.keys() {
        if !info.parameters.iter().any(|p| p.name == key) {
            return Err(Error::InvalidParameter(format!(
                "model {} has no parameter {key}",
                spec.name
            )));
        }
    }
    let scale = spec.rational("scale", Some("1"))?;
    if !scale.is_positive() {
        return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
    }
    let positive = |key: &str, v: usize| -> Result<usize> {
        if v == 0 {
            Err(Error::InvalidParameter(format!("{key} must be positive")))
        } else {
            Ok(v)
        }
    };
    let d = match spec.name.as_str() {
        "flat" => space_form_diastasis(positive("n", spec.integer("n", Some(1))?)?, &Rational::zero(), degree)?,
        "cp" => space_form_diastasis(positive("n", spec.integer("n", Some(1))?)?, &Rational::one(), degree)?,
        "ch" => space_form_diastasis(positive("n", spec.integer("n", Some(1))?)?, &-Rational::one(), degree)?,
        "space-form" => space_form_diastasis(
            positive("n", spec.integer("n", Some(1))?)?,
            &spec.rational("b", None)?,
            degree,
        )?,
        "cartan" => cartan_bergman_diastasis(cartan_of(spec)?, degree)?.0,
        "cartan-hartogs" => {
            let t = cartan_of(spec)?;
            let (bergman, gamma) = cartan_bergman_diastasis(t, degree)?;
            let base = bergman.scale_rational(&Rational::new(1.into(), gamma.into()));
            cartan_hartogs_diastasis(&base, &spec.rational("mu", None)?, degree)?
        }
        "fbh" => fbh_diastasis(
            spec.integer("n", Some(1))?,
            spec.integer("m", Some(1))?,
            &spec.rational("mu", None)?,
            &spec.rational("nu", None)?,
            degree,
        )?,
        "cigar" => cigar_diastasis(degree),
        "taub-nut" => {
            let mode = match spec.text("mode", "slice").as_str() {
                "slice" => TaubNutMode::Slice,
                "full" => TaubNutMode::Full,
                other => return Err(Error::InvalidParameter(format!("unknown taub-nut mode {other:?}"))),
            };
            taubnut_potential(&spec.rational("m", None)?, mode, degree)?
        }
        "calabi-tube" => calabi_tube(positive("n", spec.integer("n", Some(1))?)?, degree)?.diastasis,
        "phi-b" => phi_b(degree)?,
        _ => {
            let f = hartogs_profile(spec)?.expect("registered Hartogs model");
            hartogs_diastasis(&f.series(degree)?, positive("n", spec.integer("n", Some(2))?)?, degree)?
        }
    };
    Ok(if scale.is_one() { d } else { d.scale_rational(&scale) })
}

/// Canonical `p/q` rendering of every parameter, defaults filled in.
pub fn resolved_parameters(spec: &ModelSpec) -> Result<BTreeMap<String, String>> {
    let info =
        model_info(&spec.name).ok_or_else(|| Error::InvalidParameter(format!("unknown model {:?}", spec.name)))?;
    let mut out = BTreeMap::new();
    for param in &info.parameters {
        let raw = spec.parameters.get(param.name).map(String::as_str).or(param.default);
        let Some(raw) = raw else { continue };
        let v = match param.kind {
            "rational" => format_rational(&parse_rational(raw)?),
            _ => raw.trim().to_string(),
        };
        out.insert(param.name.to_string(), v);
    }
    Ok(out)
}
