//! Run configuration: a structured text document with `[model]`, `[command]`,
//! and `[output]` sections that round-trips losslessly through the domain
//! types. Unknown keys are rejected; defaults are filled at parse time so the
//! echoed configuration pins the run.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    ApproximationModel, Envelope, FunctionalEquationData, GammaFactorTerm, SeriesSpec,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    /// Malformed document; the message carries line/key context from the
    /// parser.
    #[error("config parse error: {0}")]
    Parse(String),
    /// Well-formed document that violates a module invariant.
    #[error("config validation error: {0}")]
    Validation(String),
}

/// Complex number serialized as `x+yi` with 17 significant digits, enough to
/// round-trip any f64 pair exactly.
pub fn format_complex(z: Complex64) -> String {
    if z.im >= 0.0 || z.im.is_nan() {
        format!("{:.16e}+{:.16e}i", z.re, z.im)
    } else {
        format!("{:.16e}-{:.16e}i", z.re, -z.im)
    }
}

/// Parse `x+yi` style complex literals; plain reals and pure-imaginary forms
/// like `-2.5i` are accepted.
pub fn parse_complex(text: &str) -> Result<Complex64, ConfigError> {
    let s = text.trim();
    let bad = || ConfigError::Validation(format!("cannot parse complex number from {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let parse_real = |chunk: &str| -> Result<f64, ConfigError> {
        match chunk {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => other.parse::<f64>().map_err(|_| bad()),
        }
    };
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Split at the last sign that is not a leading sign or an exponent
        // sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            // The split index is >= 1, so the real chunk is never empty.
            Some(k) => {
                let re = body[..k].parse::<f64>().map_err(|_| bad())?;
                let sign = if bytes[k] as char == '-' { -1.0 } else { 1.0 };
                let im = parse_real(&body[k + 1..])?;
                Ok(Complex64::new(re, sign * im))
            }
            None => Ok(Complex64::new(0.0, parse_real(body)?)),
        }
    } else {
        Ok(Complex64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaTermConfig {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<GammaTermConfig>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope_power: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandConfig {
    pub name: String,
    pub a: String,
    pub t: f64,
    pub u: f64,
    pub epsilon: f64,
    pub hit_tol: f64,
    pub radius: f64,
    pub sigma: f64,
    /// Strip half-width for counting windows; when absent it is calibrated
    /// from the strip predicates at run time and echoed in the manifest.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_bound: Option<f64>,
    /// Explicit rectangle override for count/locate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_left: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_right: Option<f64>,
    pub gamma: f64,
    pub t_grid: Vec<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: String,
    pub prefix: String,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub command: CommandConfig,
    pub output: OutputConfig,
}

pub const COMMANDS: [&str; 12] = [
    "eval",
    "count",
    "locate",
    "scan-line",
    "cluster",
    "strip",
    "verify-spira",
    "verify-count",
    "verify-cluster",
    "verify-critical-zero",
    "verify-critical",
    "verify-strip",
];

/// Partially specified document as written by a user; defaults are filled by
/// [`parse_config`].
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    model: ModelConfig,
    command: RawCommand,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCommand {
    name: String,
    a: Option<String>,
    t: Option<f64>,
    u: Option<f64>,
    epsilon: Option<f64>,
    hit_tol: Option<f64>,
    radius: Option<f64>,
    sigma: Option<f64>,
    sigma_bound: Option<f64>,
    sigma_left: Option<f64>,
    sigma_right: Option<f64>,
    gamma: Option<f64>,
    t_grid: Option<Vec<f64>>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<String>,
    prefix: Option<String>,
    workers: Option<usize>,
}

fn default_t_grid() -> Vec<f64> {
    (0..20).map(|k| 50.0 + 450.0 * k as f64 / 19.0).collect()
}

/// Build the model described by the `[model]` section.
pub fn build_model(model: &ModelConfig) -> Result<ApproximationModel, ConfigError> {
    let inline_keys = model.coefficients.is_some()
        || model.exponents.is_some()
        || model.lambda.is_some()
        || model.delta.is_some()
        || model.omega.is_some();
    let built = match model.preset.as_deref() {
        Some("zeta") => {
            if inline_keys {
                return Err(ConfigError::Validation(
                    "preset and inline series keys are mutually exclusive".into(),
                ));
            }
            let n = model.n.unwrap_or(3);
            if n < 1 {
                return Err(ConfigError::Validation("preset needs n >= 1".into()));
            }
            ApproximationModel::zeta_preset(n)
        }
        Some(other) => {
            return Err(ConfigError::Validation(format!(
                "unknown preset {other:?}; available: zeta"
            )))
        }
        None => {
            let coefficients = model
                .coefficients
                .as_ref()
                .ok_or_else(|| missing("model.coefficients"))?
                .iter()
                .map(|s| parse_complex(s))
                .collect::<Result<Vec<_>, _>>()?;
            let exponents = model
                .exponents
                .clone()
                .ok_or_else(|| missing("model.exponents"))?;
            let envelope = Envelope {
                scale: model.envelope_scale.unwrap_or(1.0),
                power: model.envelope_power.unwrap_or(1.0),
            };
            let series = SeriesSpec::new(coefficients, exponents, envelope)
                .map_err(|e| ConfigError::Validation(e.to_string()))?;
            let omega = model
                .omega
                .as_ref()
                .ok_or_else(|| missing("model.omega"))?
                .iter()
                .map(|t| GammaFactorTerm {
                    alpha: t.alpha,
                    beta: t.beta,
                })
                .collect();
            let fe = FunctionalEquationData::new(
                model.lambda.ok_or_else(|| missing("model.lambda"))?,
                model.delta.ok_or_else(|| missing("model.delta"))?,
                omega,
            );
            ApproximationModel::new(series, fe)
        }
    };
    let built = match model.sigma0 {
        Some(sigma0) => built.with_sigma0(sigma0),
        None => built,
    };
    // Degenerate truncations (N < 3 presets) stay usable behind the warning
    // channel; everything else is a hard validation error.
    if let Some(v) = built
        .validate()
        .iter()
        .find(|v| !v.is_degenerate_truncation())
    {
        return Err(ConfigError::Validation(v.to_string()));
    }
    Ok(built)
}

fn missing(key: &str) -> ConfigError {
    ConfigError::Validation(format!("inline model needs {key}"))
}

/// Inline `[model]` section capturing every field of a model, so that
/// `build_model(model_to_config(m)) == m`.
pub fn model_to_config(model: &ApproximationModel) -> ModelConfig {
    ModelConfig {
        preset: None,
        n: None,
        coefficients: Some(
            model
                .series()
                .coefficients()
                .iter()
                .map(|&a| format_complex(a))
                .collect(),
        ),
        exponents: Some(model.series().exponents().to_vec()),
        lambda: Some(model.fe().lambda()),
        delta: Some(model.fe().delta()),
        omega: Some(
            model
                .fe()
                .omega()
                .iter()
                .map(|t| GammaTermConfig {
                    alpha: t.alpha,
                    beta: t.beta,
                })
                .collect(),
        ),
        envelope_scale: Some(model.series().envelope().scale),
        envelope_power: Some(model.series().envelope().power),
        sigma0: Some(model.sigma0()),
    }
}

/// Parse and validate a config document, filling defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    if !COMMANDS.contains(&raw.command.name.as_str()) {
        return Err(ConfigError::Validation(format!(
            "unknown command {:?}; available: {}",
            raw.command.name,
            COMMANDS.join(", ")
        )));
    }
    let model = build_model(&raw.model)?;

    let command = CommandConfig {
        name: raw.command.name,
        a: raw.command.a.unwrap_or_else(|| "0+0i".into()),
        t: raw.command.t.unwrap_or(1000.0),
        u: raw.command.u.unwrap_or(100.0),
        epsilon: raw.command.epsilon.unwrap_or(0.05),
        hit_tol: raw.command.hit_tol.unwrap_or(1e-8),
        radius: raw.command.radius.unwrap_or(1e-6),
        sigma: raw.command.sigma.unwrap_or(30.0),
        sigma_bound: raw.command.sigma_bound,
        sigma_left: raw.command.sigma_left,
        sigma_right: raw.command.sigma_right,
        gamma: raw.command.gamma.unwrap_or_else(|| model.default_gamma()),
        t_grid: raw.command.t_grid.unwrap_or_else(default_t_grid),
        seed: raw.command.seed.unwrap_or(0),
    };
    parse_complex(&command.a)?;

    let config = RunConfig {
        model: raw.model,
        command,
        output: OutputConfig {
            dir: raw.output.dir.unwrap_or_else(|| "out".into()),
            prefix: raw.output.prefix.unwrap_or_default(),
            workers: raw.output.workers.unwrap_or(1),
        },
    };
    validate_ranges(&config)?;
    Ok(config)
}

fn validate_ranges(config: &RunConfig) -> Result<(), ConfigError> {
    let c = &config.command;
    let check = |ok: bool, msg: &str| {
        if ok {
            Ok(())
        } else {
            Err(ConfigError::Validation(msg.into()))
        }
    };
    check(c.t > 0.0 && c.t.is_finite(), "t must be positive")?;
    check(c.u >= 0.0 && c.u.is_finite(), "u must be nonnegative")?;
    let windowed = matches!(
        c.name.as_str(),
        "count"
            | "locate"
            | "scan-line"
            | "cluster"
            | "verify-count"
            | "verify-cluster"
            | "verify-critical-zero"
            | "verify-critical"
    );
    check(
        !windowed || c.u > 0.0,
        "u must be positive for windowed commands",
    )?;
    check(c.epsilon > 0.0, "epsilon must be positive")?;
    check(c.hit_tol > 0.0, "hit_tol must be positive")?;
    check(c.radius > 0.0, "radius must be positive")?;
    check(c.gamma > 0.0, "gamma must be positive")?;
    check(
        c.sigma_bound.is_none_or(|b| b > 0.0),
        "sigma_bound must be positive",
    )?;
    check(
        !(c.sigma_left.is_some() ^ c.sigma_right.is_some()),
        "sigma_left and sigma_right come as a pair",
    )?;
    if let (Some(l), Some(r)) = (c.sigma_left, c.sigma_right) {
        check(l < r, "sigma_left must be below sigma_right")?;
    }
    check(!c.t_grid.is_empty(), "t_grid must be non-empty")?;
    check(config.output.workers >= 1, "workers must be >= 1")?;
    Ok(())
}

/// Serialize a config; `parse_config(serialize_config(c)) == c`.
pub fn serialize_config(config: &RunConfig) -> String {
    toml::to_string_pretty(config).expect("config serializes")
}

/// The Psi case label echoed into run manifests.
pub fn psi_case_label(a: Complex64, a1: Complex64) -> &'static str {
    if a != a1 && a1 == Complex64::ZERO {
        "a != a1 = 0"
    } else if a == a1 && a1 != Complex64::ZERO {
        "a = a1 != 0"
    } else {
        "otherwise"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [model]
        preset = "zeta"
        n = 3

        [command]
        name = "count"
        a = "2+0i"
        t = 1000.0
        u = 100.0
    "#;

    #[test]
    fn minimal_document_parses_with_defaults() {
        let config = parse_config(MINIMAL).unwrap();
        assert_eq!(config.command.name, "count");
        assert_eq!(parse_complex(&config.command.a).unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(config.command.epsilon, 0.05);
        assert_eq!(config.command.hit_tol, 1e-8);
        assert_eq!(config.output.workers, 1);
        // Preset default gamma = (p+1)/(2A) + 0.1 with p = 1, A = 1/2.
        assert!((config.command.gamma - 2.1).abs() < 1e-12);
    }

    #[test]
    fn round_trip_is_lossless() {
        let config = parse_config(MINIMAL).unwrap();
        let echoed = serialize_config(&config);
        assert_eq!(parse_config(&echoed).unwrap(), config);
    }

    #[test]
    fn unknown_keys_rejected() {
        let doc = format!("{MINIMAL}\nbogus = 1\n");
        assert!(matches!(parse_config(&doc), Err(ConfigError::Parse(_))));
        let doc = MINIMAL.replace("a = \"2+0i\"", "a = \"2+0i\"\nwhat = 3");
        assert!(matches!(parse_config(&doc), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn inline_spec_with_bad_lambda2_names_exponents() {
        let doc = r#"
            [model]
            coefficients = ["1+0i", "1+0i", "1+0i"]
            exponents = [1.0, 0.9, 3.0]
            lambda = 1.0
            delta = 1.0
            omega = [{ alpha = 0.5, beta = 0.0 }]

            [command]
            name = "count"
        "#;
        let err = parse_config(doc).unwrap_err();
        match err {
            ConfigError::Validation(msg) => assert!(msg.contains("exponents"), "{msg}"),
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn psi_case_labels() {
        assert_eq!(
            psi_case_label(Complex64::ONE, Complex64::ONE),
            "a = a1 != 0"
        );
        assert_eq!(
            psi_case_label(Complex64::new(2.0, 0.0), Complex64::ZERO),
            "a != a1 = 0"
        );
        assert_eq!(
            psi_case_label(Complex64::new(2.0, 0.0), Complex64::ONE),
            "otherwise"
        );
    }

    #[test]
    fn complex_literals_round_trip() {
        let cases = [
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.5, 2.5e-3),
            Complex64::new(0.1 + 0.2, -1.0 / 3.0),
            Complex64::new(0.0, -7.25),
        ];
        for z in cases {
            let text = format_complex(z);
            let back = parse_complex(&text).unwrap();
            assert_eq!(z.re.to_bits(), back.re.to_bits(), "{text}");
            assert_eq!(z.im.to_bits(), back.im.to_bits(), "{text}");
        }
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("2+0i").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-3i").unwrap(), Complex64::new(0.0, -3.0));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), Complex64::new(1e-3, 2e-4));
        assert!(parse_complex("fish").is_err());
    }

    #[test]
    fn model_round_trips_through_inline_config() {
        use crate::model::ApproximationModel;
        let model = ApproximationModel::zeta_preset(4).with_sigma0(2.5);
        let rebuilt = build_model(&model_to_config(&model)).unwrap();
        assert_eq!(rebuilt, model);
        // And the inline section survives a full document round-trip.
        let config = RunConfig {
            model: model_to_config(&model),
            command: parse_config(MINIMAL).unwrap().command,
            output: parse_config(MINIMAL).unwrap().output,
        };
        let reparsed = parse_config(&serialize_config(&config)).unwrap();
        assert_eq!(build_model(&reparsed.model).unwrap(), model);
    }

    #[test]
    fn unknown_command_rejected() {
        let doc = MINIMAL.replace("name = \"count\"", "name = \"explode\"");
        assert!(matches!(parse_config(&doc), Err(ConfigError::Validation(_))));
    }
}
