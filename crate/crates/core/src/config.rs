//! Config file reader.
//!
//! The file is TOML, `version = 1`:
//!
//! ```toml
//! version = 1
//! alpha = 0.85                 # optional, default 0.85
//! log_base = 10.0              # optional, default 10
//! redundancy_epsilon = 1e-9    # optional
//! comment_labels = ["Very good", "Good", "Average"]   # optional, best first
//!
//! [[attributes]]
//! name = "IC"
//! kind = "numeric"             # or "categorical"
//! range = 250                  # numeric only
//! polarity = "higher-better"   # numeric only; or "lower-better"
//!
//! [[attributes]]
//! name = "CC"
//! kind = "categorical"
//! labels = ["Very good", "Good", "Average"]   # best first
//! fixed_grade = 2              # optional, single-class attributes only
//!
//! [[levels]]
//! id = "1"
//! attributes = ["IC", "CC"]
//! alpha = 0.9                  # optional per-level override
//! grade_scale = 3              # optional
//! reference_scores = { i1 = 3.0 }   # optional
//! ```

use indexmap::IndexMap;
use serde::Deserialize;

use crate::error::{EvalError, Result};
use crate::ism::{
    AttributeKind, AttributeSpec, EvaluationConfig, LevelConfig, Polarity, DEFAULT_ALPHA,
    DEFAULT_COMMENT_LABELS, DEFAULT_LOG_BASE, DEFAULT_REDUNDANCY_EPSILON,
};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    version: u32,
    alpha: Option<f64>,
    log_base: Option<f64>,
    redundancy_epsilon: Option<f64>,
    comment_labels: Option<Vec<String>>,
    #[serde(default)]
    attributes: Vec<RawAttribute>,
    #[serde(default)]
    levels: Vec<RawLevel>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Numeric,
    Categorical,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAttribute {
    name: String,
    kind: RawKind,
    range: Option<f64>,
    polarity: Option<Polarity>,
    labels: Option<Vec<String>>,
    fixed_grade: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    id: String,
    attributes: Vec<String>,
    alpha: Option<f64>,
    grade_scale: Option<u32>,
    #[serde(default)]
    reference_scores: IndexMap<String, f64>,
}

/// A parsed config file: the evaluation settings plus the attribute specs
/// used to type the csv columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub config: EvaluationConfig,
    pub attributes: Vec<AttributeSpec>,
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| EvalError::InvalidConfig(e.message().to_string()))?;
    if raw.version != CONFIG_VERSION {
        return Err(EvalError::InvalidConfig(format!(
            "unsupported config version {} (expected {CONFIG_VERSION})",
            raw.version
        )));
    }

    let levels: Vec<LevelConfig> = raw
        .levels
        .into_iter()
        .map(|l| LevelConfig {
            id: l.id,
            attributes: l.attributes,
            alpha: l.alpha,
            grade_scale: l.grade_scale,
            reference_scores: l.reference_scores,
        })
        .collect();

    let mut attributes = Vec::with_capacity(raw.attributes.len());
    for a in raw.attributes {
        let kind = match a.kind {
            RawKind::Numeric => {
                if a.labels.is_some() {
                    return Err(invalid(&a.name, "numeric attributes take no labels"));
                }
                AttributeKind::Numeric {
                    range: a.range.ok_or_else(|| invalid(&a.name, "numeric attribute needs a range"))?,
                    polarity: a.polarity.unwrap_or(Polarity::HigherBetter),
                }
            }
            RawKind::Categorical => {
                if a.range.is_some() || a.polarity.is_some() {
                    return Err(invalid(&a.name, "categorical attributes take labels, not range/polarity"));
                }
                AttributeKind::Categorical {
                    label_order: a.labels.ok_or_else(|| invalid(&a.name, "categorical attribute needs labels"))?,
                }
            }
        };
        let level = levels
            .iter()
            .find(|l| l.attributes.contains(&a.name))
            .map(|l| l.id.clone())
            .unwrap_or_default();
        let spec = AttributeSpec {
            name: a.name,
            kind,
            level,
            fixed_grade: a.fixed_grade,
        };
        spec.validate()?;
        attributes.push(spec);
    }

    let config = EvaluationConfig {
        alpha: raw.alpha.unwrap_or(DEFAULT_ALPHA),
        log_base: raw.log_base.unwrap_or(DEFAULT_LOG_BASE),
        levels,
        comment_labels: raw
            .comment_labels
            .unwrap_or_else(|| DEFAULT_COMMENT_LABELS.iter().map(|s| s.to_string()).collect()),
        redundancy_epsilon: raw.redundancy_epsilon.unwrap_or(DEFAULT_REDUNDANCY_EPSILON),
    };
    Ok(ConfigFile { config, attributes })
}

fn invalid(attribute: &str, reason: &str) -> EvalError {
    EvalError::InvalidSpec {
        attribute: attribute.to_string(),
        reason: reason.to_string(),
    }
}
