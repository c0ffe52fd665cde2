use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use calabi_core::bell::{bell_complete, bell_partial, cigar_limit, cigar_scan};
use calabi_core::cert::{
    check_certificate, immersion_certificate, render, verdict_certificate, Source, SCHEMA_VERSION,
};
use calabi_core::domains::{
    bergman_scaling_decision, cartan_hartogs_decision, ch_immersion, factored_base_maps, wallach_membership,
    DomainInvariants, Membership,
};
use calabi_core::einstein::{einstein_estimate, EinsteinOutcome};
use calabi_core::error::Error;
use calabi_core::immersion::{factor_immersion, verify_immersion, VerifyOutcome};
use calabi_core::models::config::load_config;
use calabi_core::models::{cartan_bergman_diastasis, catalog, Cartan, ModelSpec};
use calabi_core::resolvability::resolvability;
use calabi_core::scalar::{format_rational, parse_rational, rat_int, Rational};

#[derive(Parser)]
#[command(
    name = "calabi",
    version,
    about = "Exact Calabi criteria for local Kähler immersions"
)]
struct Cli {
    /// Re-validate a certificate or immersion file and exit.
    #[arg(long, value_name = "FILE")]
    check_certificate: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// b-resolvability verdict with a certificate.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Curvature parameter of the target space form.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        b: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verified truncated immersion map.
    EmitImmersion {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        b: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Wallach-set decision for a scaled Bergman metric.
    Wallach {
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        gamma: Option<u32>,
        /// Classical domain: `1:m,n`, `2:n`, `3:n`, `4:n` or `ball:d`.
        #[arg(long, conflicts_with_all = ["r", "a", "gamma"])]
        domain: Option<String>,
        #[arg(long)]
        c: String,
        /// Decide the Cartan–Hartogs metric with this μ instead.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Cigar-metric scan and limit report.
    Cigar {
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, default_value_t = 40)]
        terms: u32,
    },
    /// Partial (with --k) or complete Bell polynomial.
    Bell {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        /// Comma-separated arguments x_1, x_2, ...
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        x: Vec<String>,
    },
    /// Einstein constant in Bochner coordinates.
    Einstein {
        #[command(flatten)]
        input: InputArgs,
        /// Curvature of a space-form model (cp, ch, flat, space-form).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// List the model catalog with parameter schemas.
    Models,
}

#[derive(Args, Clone, Default)]
struct InputArgs {
    /// Model name, optionally followed by its dimension `n`.
    #[arg(long, num_args = 1..=2, value_names = ["NAME", "N"])]
    model: Vec<String>,
    /// TOML model file.
    #[arg(long, conflicts_with_all = ["model", "series"])]
    config: Option<PathBuf>,
    /// Series in the text format.
    #[arg(long, conflicts_with = "model")]
    series: Option<PathBuf>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long = "type")]
    kind: Option<String>,
    #[arg(long)]
    scale: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    /// Extra model parameter `key=value`.
    #[arg(long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
}

/// Exit 2 with a diagnostic.
struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

type Out = Result<(Value, u8), Fail>;

fn rational(s: &str, what: &str) -> Result<Rational, Fail> {
    parse_rational(s).map_err(|e| Fail(format!("--{what}: {e}")))
}

fn resolve_input(input: &InputArgs) -> Result<(Source, u32), Fail> {
    if let Some(path) = &input.series {
        let text = std::fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
        // parse now so errors carry the file name
        let s = calabi_core::series::text::parse_bi(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
        let degree = input.degree.unwrap_or(s.degree());
        return Ok((Source::Series(text), degree));
    }
    let (mut spec, file_degree) = if let Some(path) = &input.config {
        let c = load_config(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
        (c.spec, c.degree)
    } else {
        let name = input
            .model
            .first()
            .ok_or_else(|| Fail("one of --model, --config or --series is required".into()))?;
        let mut spec = ModelSpec::new(name);
        if let Some(n) = input.model.get(1) {
            spec.parameters.insert("n".into(), n.clone());
        }
        (spec, None)
    };
    let flags = [
        ("n", &input.n),
        ("m", &input.m),
        ("type", &input.kind),
        ("scale", &input.scale),
        ("alpha", &input.alpha),
        ("p", &input.p),
        ("mu", &input.mu),
        ("nu", &input.nu),
        ("mode", &input.mode),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            spec.parameters.insert(k.into(), v.clone());
        }
    }
    for kv in &input.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Fail(format!("--param expects key=value, got {kv:?}")))?;
        spec.parameters.insert(k.trim().into(), v.trim().into());
    }
    let degree = input
        .degree
        .or(file_degree)
        .ok_or_else(|| Fail("--degree is required".into()))?;
    Ok((Source::Model(spec), degree))
}

fn analyze(input: &InputArgs, b: &str) -> Out {
    let b = rational(b, "b")?;
    let (source, degree) = resolve_input(input)?;
    let d = source.build(degree)?;
    let v = resolvability(&d, &b, degree)?;
    let code = if v.is_not_resolvable() { 1 } else { 0 };
    Ok((verdict_certificate(&source, &b, degree, &v)?, code))
}

fn emit_immersion(input: &InputArgs, b: &str) -> Out {
    let b = rational(b, "b")?;
    let (source, degree) = resolve_input(input)?;
    let d = source.build(degree)?;
    let verdict = resolvability(&d, &b, degree)?;
    if verdict.is_not_resolvable() {
        return Ok((verdict_certificate(&source, &b, degree, &verdict)?, 1));
    }
    let map = match &source {
        Source::Model(spec) if spec.name == "cartan-hartogs" && b == rat_int(1) => {
            let get = |k: &str| spec.parameters.get(k).cloned();
            let n: usize = get("n")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Fail("n is required".into()))?;
            let t = match get("type").as_deref() {
                Some("1") => Cartan::I(get("m").and_then(|v| v.parse().ok()).unwrap_or(1), n),
                Some("2") => Cartan::II(n),
                Some("3") => Cartan::III(n),
                Some("4") => Cartan::IV(n),
                _ => return Err(Fail("type must be 1, 2, 3 or 4".into())),
            };
            let mu = rational(&get("mu").ok_or_else(|| Fail("mu is required".into()))?, "mu")?;
            let alpha = rational(&get("scale").unwrap_or_else(|| "1".into()), "scale")?;
            let (bergman, gamma) = cartan_bergman_diastasis(t, degree)?;
            let maps = factored_base_maps(&bergman, degree);
            ch_immersion(&maps, &mu, gamma, &alpha, degree)?
        }
        _ => factor_immersion(&d, &b, degree)?,
    };
    match verify_immersion(&map, &d, &b, degree)? {
        VerifyOutcome::Ok => Ok((immersion_certificate(&source, &b, degree, &map)?, 0)),
        VerifyOutcome::Residual { m_j, m_k, .. } => Err(Fail(format!(
            "internal error: map fails verification at ({m_j:?}, {m_k:?})"
        ))),
    }
}

fn parse_domain(s: &str) -> Result<DomainInvariants, Fail> {
    let (kind, sizes) = s.split_once(':').ok_or_else(|| Fail(format!("bad --domain {s:?}")))?;
    let sizes: Vec<usize> = sizes
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Fail(format!("bad sizes in --domain {s:?}")))?;
    let one = |v: &[usize]| -> Result<usize, Fail> {
        match v {
            [n] if *n >= 1 => Ok(*n),
            _ => Err(Fail(format!("--domain {s:?} needs one positive size"))),
        }
    };
    Ok(match kind {
        "ball" => DomainInvariants::ball(one(&sizes)? as u32),
        "1" => match sizes[..] {
            [m, n] if m >= 1 && n >= 1 => DomainInvariants::classical(Cartan::I(m, n)),
            _ => return Err(Fail("--domain 1:m,n".into())),
        },
        "2" => DomainInvariants::classical(Cartan::II(one(&sizes)?)),
        "3" if one(&sizes)? >= 2 => DomainInvariants::classical(Cartan::III(sizes[0])),
        "4" if one(&sizes)? != 2 => DomainInvariants::classical(Cartan::IV(sizes[0])),
        _ => return Err(Fail(format!("unsupported --domain {s:?}"))),
    })
}

fn membership_json(m: &Membership) -> Value {
    match m {
        Membership::Discrete(k) => json!({ "kind": "discrete", "k": k }),
        Membership::Continuous => json!({ "kind": "continuous" }),
        Membership::Outside => json!({ "kind": "outside" }),
    }
}

fn wallach(
    r: Option<u32>,
    a: Option<&str>,
    gamma: Option<u32>,
    domain: Option<&str>,
    c: &str,
    mu: Option<&str>,
) -> Out {
    let inv = match domain {
        Some(d) => parse_domain(d)?,
        None => {
            let (Some(r), Some(a), Some(g)) = (r, a, gamma) else {
                return Err(Fail("give --r, --a and --gamma, or --domain".into()));
            };
            DomainInvariants::new(r, rational(a, "a")?, g, 0)?
        }
    };
    let c = rational(c, "c")?;
    let invariants = json!({
        "r": inv.r,
        "a": format_rational(&inv.a),
        "genus": inv.genus,
        "threshold": format_rational(&inv.threshold()),
    });
    let out = match mu {
        None => {
            let decision = bergman_scaling_decision(&inv, &c)?;
            let eta = &c * rat_int(inv.genus as i64);
            json!({
                "schema_version": SCHEMA_VERSION,
                "invariants": invariants,
                "c": format_rational(&c),
                "eta": format_rational(&eta),
                "membership": membership_json(&wallach_membership(&inv, &eta)),
                "decision": decision,
            })
        }
        Some(mu) => {
            let mu = rational(mu, "mu")?;
            let d = cartan_hartogs_decision(&inv, &mu, &c)?;
            json!({
                "schema_version": SCHEMA_VERSION,
                "invariants": invariants,
                "c": format_rational(&c),
                "mu": format_rational(&mu),
                "decision": d.holds,
                "failing_m": d.failing_m,
                "checked_through": d.checked_through,
            })
        }
    };
    Ok((out, 0))
}

fn cigar(c: &str, nmax: u32, terms: u32) -> Out {
    let c = rational(c, "c")?;
    let scan = cigar_scan(&c, nmax)?;
    let limit = cigar_limit(&c, terms)?;
    let first = match &scan.first_negative {
        Some(neg) => json!({
            "n": neg.n,
            "y": format_rational(&neg.y),
            "coefficient": format_rational(&neg.coefficient),
        }),
        None => Value::Null,
    };
    Ok((
        json!({
            "schema_version": SCHEMA_VERSION,
            "c": format_rational(&c),
            "n_max": nmax,
            "first_negative": first,
            "limit": {
                "terms": terms,
                "zeta2_lower": format_rational(&limit.zeta2.0),
                "zeta2_upper": format_rational(&limit.zeta2.1),
                "lower": format_rational(&limit.bounds.0),
                "upper": format_rational(&limit.bounds.1),
                "value_float": limit.value,
                "reference_float": limit.reference,
            },
        }),
        0,
    ))
}

fn bell(n: u32, k: Option<u32>, x: &[String]) -> Out {
    let x: Vec<Rational> = x.iter().map(|v| rational(v, "x")).collect::<Result<_, _>>()?;
    let (kind, value) = match k {
        Some(k) => ("partial", bell_partial(n, k, &x)?),
        None => ("complete", bell_complete(n, &x)?),
    };
    Ok((
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": kind,
            "n": n,
            "k": k,
            "x": x.iter().map(format_rational).collect::<Vec<_>>(),
            "value": format_rational(&value),
        }),
        0,
    ))
}

fn einstein(input: &InputArgs, b: Option<&str>) -> Out {
    let (mut source, degree) = resolve_input(input)?;
    if let Some(b) = b {
        let b = rational(b, "b")?;
        match &mut source {
            Source::Model(spec) if ["cp", "ch", "flat", "space-form"].contains(&spec.name.as_str()) => {
                spec.name = "space-form".into();
                spec.parameters.insert("b".into(), format_rational(&b));
            }
            _ => return Err(Fail("--b applies only to space-form models".into())),
        }
    }
    let d = source.build(degree)?;
    let out = match einstein_estimate(&d, degree)? {
        EinsteinOutcome::Einstein { lambda, flat, degree } => json!({
            "lambda": format_rational(&lambda),
            "flat": flat,
            "degree": degree,
        }),
        EinsteinOutcome::NotEinstein {
            lambda_guess,
            m_j,
            m_k,
            residual,
            degree,
        } => json!({
            "not_einstein_at": {
                "m_j": m_j.0,
                "m_k": m_k.0,
                "degree": degree,
                "residual": residual.to_canonical(),
                "lambda_guess": format_rational(&lambda_guess),
            },
        }),
    };
    let (model, params) = match &source {
        Source::Model(spec) => (json!(spec.name), json!(calabi_core::models::resolved_parameters(spec)?)),
        Source::Series(_) => (json!("series"), json!({})),
    };
    Ok((
        json!({
            "schema_version": SCHEMA_VERSION,
            "model": model,
            "parameters": params,
            "degree": degree,
            "result": out,
        }),
        0,
    ))
}

fn check(path: &PathBuf) -> Out {
    let text = std::fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| Fail(format!("{}: line {}: {e}", path.display(), e.line())))?;
    let r = check_certificate(&doc)?;
    let code = if r.valid { 0 } else { 1 };
    Ok((json!({ "kind": r.kind, "valid": r.valid, "detail": r.detail }), code))
}

fn run(cli: &Cli) -> Out {
    if let Some(path) = &cli.check_certificate {
        return check(path);
    }
    match &cli.command {
        None => Err(Fail(
            "a subcommand or --check-certificate is required (see --help)".into(),
        )),
        Some(Command::Analyze { input, b, .. }) => analyze(input, b),
        Some(Command::EmitImmersion { input, b, .. }) => emit_immersion(input, b),
        Some(Command::Wallach {
            r,
            a,
            gamma,
            domain,
            c,
            mu,
        }) => wallach(*r, a.as_deref(), *gamma, domain.as_deref(), c, mu.as_deref()),
        Some(Command::Cigar { c, nmax, terms }) => cigar(c, *nmax, *terms),
        Some(Command::Bell { n, k, x }) => bell(*n, *k, x),
        Some(Command::Einstein { input, b }) => einstein(input, b.as_deref()),
        Some(Command::Models) => Ok((serde_json::to_value(catalog()).expect("catalog serializes"), 0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match &cli.command {
        Some(Command::Analyze { output, .. }) | Some(Command::EmitImmersion { output, .. }) => output.clone(),
        _ => None,
    };
    match run(&cli) {
        Ok((value, code)) => {
            let text = render(&value);
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
