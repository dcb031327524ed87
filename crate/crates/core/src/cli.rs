//! Batch front end: one JSON document in, one report out.
//!
//! Exit codes: 0 success, 1 malformed input, 2 a mathematical condition
//! failed (the report names the conditions), 3 an internal consistency check
//! failed.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::character::{PadicCharacter, TCharacter};
use crate::error::Error;
use crate::root_datum::{DatumSpec, RootDatum, WeylSpec, DEFAULT_WEYL_CAP};
use crate::trianguline::{
    check_twist_conditions, classify_point, hat_construction, twisted_translate_pi,
    TriangulinePoint,
};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    CheckTranslation,
    TranslateVerma,
    TranslatePs,
    Weights,
    Weyl,
    ClassifyTrianguline,
    Hat,
    TranslatePi,
}

impl Subcommand {
    pub const ALL: [Subcommand; 8] = [
        Subcommand::CheckTranslation,
        Subcommand::TranslateVerma,
        Subcommand::TranslatePs,
        Subcommand::Weights,
        Subcommand::Weyl,
        Subcommand::ClassifyTrianguline,
        Subcommand::Hat,
        Subcommand::TranslatePi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::CheckTranslation => "check-translation",
            Subcommand::TranslateVerma => "translate-verma",
            Subcommand::TranslatePs => "translate-ps",
            Subcommand::Weights => "weights",
            Subcommand::Weyl => "weyl",
            Subcommand::ClassifyTrianguline => "classify-trianguline",
            Subcommand::Hat => "hat",
            Subcommand::TranslatePi => "translate-pi",
        }
    }
}

impl FromStr for Subcommand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown subcommand `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub enum InputSource {
    Inline(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct CommandRequest {
    pub subcommand: Subcommand,
    pub input: InputSource,
    pub format: Format,
    pub weyl_cap: usize,
}

impl CommandRequest {
    pub fn inline(subcommand: Subcommand, input: &str, format: Format) -> Self {
        CommandRequest {
            subcommand,
            input: InputSource::Inline(input.to_string()),
            format,
            weyl_cap: DEFAULT_WEYL_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A torus character given bare or wrapped as `{"hw": ..}` / `{"inducing": ..}`,
/// so that reports can be fed back in.
#[derive(Deserialize)]
#[serde(untagged)]
enum CharInput {
    Bare(TCharacter),
    Verma {
        hw: TCharacter,
        #[serde(default)]
        #[allow(dead_code)]
        label: Option<String>,
    },
    Dual {
        inducing: TCharacter,
    },
}

impl CharInput {
    fn into_char(self) -> TCharacter {
        match self {
            CharInput::Bare(c) | CharInput::Verma { hw: c, .. } | CharInput::Dual { inducing: c } => c,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointInput {
    Wrapped { point: TriangulinePoint },
    Bare(TriangulinePoint),
}

impl PointInput {
    fn into_point(self) -> TriangulinePoint {
        match self {
            PointInput::Wrapped { point } | PointInput::Bare(point) => point,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckTranslationIn {
    datum: DatumSpec,
    lambda: Weight,
    mu: Weight,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TranslateIn {
    datum: DatumSpec,
    lambda: CharInput,
    mu: CharInput,
    #[serde(default = "identity_spec")]
    w: WeylSpec,
}

fn identity_spec() -> WeylSpec {
    WeylSpec::Identity
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsIn {
    datum: DatumSpec,
    highest: Weight,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeylIn {
    datum: DatumSpec,
    #[serde(default)]
    element: Option<WeylSpec>,
    #[serde(default)]
    weight: Option<Weight>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistIn {
    point: TriangulinePoint,
    w1: i64,
    w2: i64,
    theta: PadicCharacter,
}

enum Failure {
    Malformed(String),
    Conditions { message: String, failures: Vec<String>, report: Option<Value> },
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleMismatch(m) => Failure::Internal(m),
            Error::MalformedPoint => Failure::Malformed(e.to_string()),
            ref other if !other.failures().is_empty() => Failure::Conditions {
                message: other.to_string(),
                failures: other.failures(),
                report: None,
            },
            other => Failure::Malformed(other.to_string()),
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(doc: &Value) -> Result<T, Failure> {
    T::deserialize(doc).map_err(|e| Failure::Malformed(format!("invalid input: {e}")))
}

fn datum(spec: &DatumSpec, cap: usize) -> Result<RootDatum, Failure> {
    Ok(RootDatum::from_spec(spec)?.with_weyl_cap(cap))
}

/// A successful report: the json value and its text rendering.
struct Report {
    json: Value,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run_inner(req: &CommandRequest, doc: &Value) -> Result<Report, Failure> {
    match req.subcommand {
        Subcommand::CheckTranslation => {
            let input: CheckTranslationIn = parse(doc)?;
            let rd = datum(&input.datum, req.weyl_cap)?;
            let report = rd.check_translation_conditions(&input.lambda, &input.mu)?;
            let json = to_value(&report);
            if !report.all_hold() {
                return Err(Failure::Conditions {
                    message: "translation conditions failed".into(),
                    failures: report.failures.clone(),
                    report: Some(json),
                });
            }
            let mut text = String::new();
            for (k, v) in json.as_object().expect("object") {
                if k != "failures" {
                    let _ = writeln!(text, "{k}: {v}");
                }
            }
            Ok(Report { json, text })
        }
        Subcommand::TranslateVerma | Subcommand::TranslatePs => {
            let input: TranslateIn = parse(doc)?;
            let rd = datum(&input.datum, req.weyl_cap)?;
            let w = rd.resolve(&input.w)?;
            let (l, m) = (input.lambda.into_char(), input.mu.into_char());
            if req.subcommand == Subcommand::TranslateVerma {
                let out = rd.translate_verma(&l, &m, &w)?;
                let text = format!("M^B({})\nderivative: {}\n", out.hw, out.hw.derivative());
                Ok(Report { json: to_value(&out), text })
            } else {
                let out = rd.translate_principal_series(&l, &m, &w)?;
                let text = format!(
                    "D(G) ⊗ E_{{{}}}\nderivative: {}\n",
                    out.inducing,
                    out.inducing.derivative()
                );
                Ok(Report { json: to_value(&out), text })
            }
        }
        Subcommand::Weights => {
            let input: WeightsIn = parse(doc)?;
            let rd = datum(&input.datum, req.weyl_cap)?;
            let m = rd.weight_multiplicities(&input.highest)?;
            let mut text = format!("highest: {}\ndimension: {}\n", m.highest(), m.dimension());
            for (k, v) in m.iter() {
                let _ = writeln!(text, "{k}  x{v}");
            }
            Ok(Report { json: to_value(&m), text })
        }
        Subcommand::Weyl => {
            let input: WeylIn = parse(doc)?;
            let rd = datum(&input.datum, req.weyl_cap)?;
            let g = rd.weyl_group()?;
            let positive: Vec<Weight> = rd
                .positive_roots()
                .iter()
                .map(|r| Weight::from_ints(&r.vector))
                .collect();
            let mut json = json!({
                "rank": rd.rank(),
                "semisimple_rank": rd.semisimple_rank(),
                "order": g.order(),
                "positive_roots": positive,
                "rho": rd.rho(),
                "longest": g.longest(),
            });
            let mut text = format!(
                "rank: {}\nsemisimple rank: {}\norder: {}\nrho: {}\nlongest: {}\npositive roots: {}\n",
                rd.rank(),
                rd.semisimple_rank(),
                g.order(),
                rd.rho(),
                g.longest(),
                positive.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
            );
            if let Some(spec) = &input.element {
                let w = rd.resolve(spec)?;
                json["element"] = json!({
                    "word": w.word().iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "length": rd.length(&w),
                    "sign": w.sign(),
                    "matrix": w.matrix().rows(),
                });
                let _ = writeln!(text, "element: {w} (length {})", rd.length(&w));
                if let Some(lambda) = &input.weight {
                    let dot = rd.dot_action(&w, lambda)?;
                    let lin = rd.linear_action(&w, lambda)?;
                    json["dot"] = to_value(&dot);
                    json["linear"] = to_value(&lin);
                    let _ = writeln!(text, "w·λ = {dot}\nw(λ) = {lin}");
                }
            } else if input.weight.is_some() {
                return Err(Failure::Malformed("`weight` requires `element`".into()));
            }
            Ok(Report { json, text })
        }
        Subcommand::ClassifyTrianguline => {
            let s = parse::<PointInput>(doc)?.into_point();
            let c = classify_point(&s)?;
            let json = to_value(&c);
            let mut text = format!("point: {s}\n");
            for (k, v) in json.as_object().expect("object") {
                let _ = writeln!(text, "{k}: {}", plain(v));
            }
            Ok(Report { json, text })
        }
        Subcommand::Hat | Subcommand::TranslatePi => {
            let input: TwistIn = parse(doc)?;
            let report = check_twist_conditions(&input.point, input.w1, input.w2, &input.theta);
            if !report.all_hold() {
                return Err(Failure::Conditions {
                    message: "twist conditions failed".into(),
                    failures: report.failures.clone(),
                    report: Some(to_value(&report)),
                });
            }
            let hat = hat_construction(&input.point, input.w1, input.w2, &input.theta)?;
            if req.subcommand == Subcommand::Hat {
                let json = json!({
                    "s_hat": hat.s_hat,
                    "mu_tilde": hat.mu_tilde,
                    "conditions": report,
                });
                let text = format!("s_hat: {}\nmu_tilde: {}\n", hat.s_hat, hat.mu_tilde);
                Ok(Report { json, text })
            } else {
                let seq = twisted_translate_pi(&input.point, input.w1, input.w2, &input.theta)?;
                let json = json!({
                    "s_hat": hat.s_hat,
                    "sub": seq.sub,
                    "quot": seq.quot,
                });
                let text = format!(
                    "s_hat: {}\nsub:  D(G) ⊗ E_{{{}}}\nquot: D(G) ⊗ E_{{{}}}\n",
                    hat.s_hat, seq.sub.inducing, seq.quot.inducing
                );
                Ok(Report { json, text })
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.contains_key("rat") => {
            let s: crate::scalar::Scalar = serde_json::from_value(v.clone()).expect("scalar json");
            s.to_string()
        }
        other => other.to_string(),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

pub fn run_command(req: &CommandRequest) -> Outcome {
    let raw = match &req.input {
        InputSource::Inline(s) => s.clone(),
        InputSource::File(p) => match std::fs::read_to_string(p) {
            Ok(s) => s,
            Err(e) => return malformed(format!("cannot read {}: {e}", p.display())),
        },
    };
    let doc: Value = match serde_json::from_str(&raw) {
        Ok(v) => v,
        Err(e) => return malformed(format!("invalid JSON: {e}")),
    };
    match run_inner(req, &doc) {
        Ok(r) => Outcome {
            exit_code: 0,
            stdout: match req.format {
                Format::Json => pretty(&r.json),
                Format::Text => r.text,
            },
            stderr: String::new(),
        },
        Err(Failure::Malformed(m)) => malformed(m),
        Err(Failure::Internal(m)) => Outcome {
            exit_code: 3,
            stdout: String::new(),
            stderr: format!("internal consistency violation: {m}\n"),
        },
        Err(Failure::Conditions { message, failures, report }) => {
            let stdout = match req.format {
                Format::Json => {
                    let mut v = json!({ "error": message, "failures": failures });
                    if let Some(r) = report {
                        v["report"] = r;
                    }
                    pretty(&v)
                }
                Format::Text => format!("failed: {}\n{message}\n", failures.join(", ")),
            };
            Outcome {
                exit_code: 2,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn malformed(message: String) -> Outcome {
    Outcome {
        exit_code: 1,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}
