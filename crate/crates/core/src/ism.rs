//! Information systems: objects described by typed attributes, plus the
//! evaluation index configuration that groups attributes into levels.

use std::collections::HashSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    HigherBetter,
    LowerBetter,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AttributeKind {
    /// Real-valued in `[0, range]`.
    Numeric { range: f64, polarity: Polarity },
    /// Ordinal labels, best first.
    Categorical { label_order: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttributeSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: AttributeKind,
    pub level: String,
    /// Grade forced onto an attribute that collapses into a single class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_grade: Option<u32>,
}

impl AttributeSpec {
    pub fn numeric(name: impl Into<String>, range: f64, polarity: Polarity) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Numeric { range, polarity },
            level: String::new(),
            fixed_grade: None,
        }
    }

    pub fn categorical<S: Into<String>>(
        name: impl Into<String>,
        label_order: impl IntoIterator<Item = S>,
    ) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Categorical {
                label_order: label_order.into_iter().map(Into::into).collect(),
            },
            level: String::new(),
            fixed_grade: None,
        }
    }

    pub fn in_level(mut self, level: impl Into<String>) -> Self {
        self.level = level.into();
        self
    }

    pub fn with_fixed_grade(mut self, grade: u32) -> Self {
        self.fixed_grade = Some(grade);
        self
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.kind, AttributeKind::Numeric { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: &str| EvalError::InvalidSpec {
            attribute: self.name.clone(),
            reason: reason.to_string(),
        };
        if self.name.is_empty() {
            return Err(invalid("empty name"));
        }
        match &self.kind {
            AttributeKind::Numeric { range, .. } => {
                if !(range.is_finite() && *range > 0.0) {
                    return Err(invalid("range must be a positive finite number"));
                }
            }
            AttributeKind::Categorical { label_order } => {
                if label_order.is_empty() {
                    return Err(invalid("label order is empty"));
                }
                let mut seen = HashSet::new();
                if !label_order.iter().all(|l| seen.insert(l)) {
                    return Err(invalid("label order has duplicates"));
                }
            }
        }
        if self.fixed_grade == Some(0) {
            return Err(invalid("fixed grade must be at least 1"));
        }
        Ok(())
    }
}

/// One cell of an information system.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Numeric(f64),
    Label(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Numeric(v) => Some(*v),
            Value::Label(_) => None,
        }
    }

    pub fn as_label(&self) -> Option<&str> {
        match self {
            Value::Label(l) => Some(l),
            Value::Numeric(_) => None,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Numeric(v) => write!(f, "{v}"),
            Value::Label(l) => f.write_str(l),
        }
    }
}

/// A complete, validated table of objects × attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationSystem {
    objects: Vec<String>,
    attributes: Vec<AttributeSpec>,
    // object-major
    cells: Vec<Vec<Value>>,
}

impl InformationSystem {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<AttributeSpec>,
        cells: Vec<Vec<Value>>,
    ) -> Result<Self> {
        if objects.is_empty() {
            return Err(EvalError::MissingCell("no objects".into()));
        }
        let mut seen = HashSet::new();
        for id in &objects {
            if !seen.insert(id.as_str()) {
                return Err(EvalError::DuplicateObjectId(id.clone()));
            }
        }
        let mut names = HashSet::new();
        for spec in &attributes {
            spec.validate()?;
            if !names.insert(spec.name.as_str()) {
                return Err(EvalError::InvalidSpec {
                    attribute: spec.name.clone(),
                    reason: "declared twice".into(),
                });
            }
        }
        if cells.len() != objects.len() {
            return Err(EvalError::MissingCell(format!(
                "{} rows for {} objects",
                cells.len(),
                objects.len()
            )));
        }
        for (object, row) in objects.iter().zip(&cells) {
            if row.len() != attributes.len() {
                return Err(EvalError::MissingCell(format!("object `{object}`")));
            }
            for (spec, value) in attributes.iter().zip(row) {
                check_cell(object, spec, value)?;
            }
        }
        Ok(InformationSystem {
            objects,
            attributes,
            cells,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[AttributeSpec] {
        &self.attributes
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| EvalError::UnknownAttribute(name.to_string()))
    }

    pub fn attribute(&self, name: &str) -> Result<&AttributeSpec> {
        Ok(&self.attributes[self.attribute_index(name)?])
    }

    pub fn object_index(&self, id: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| EvalError::UnknownObject(id.to_string()))
    }

    pub fn value(&self, object: &str, attribute: &str) -> Result<&Value> {
        let row = self.object_index(object)?;
        let col = self.attribute_index(attribute)?;
        Ok(&self.cells[row][col])
    }

    /// All values of one attribute, in object order.
    pub fn column(&self, attribute: &str) -> Result<Vec<Value>> {
        let col = self.attribute_index(attribute)?;
        Ok(self.cells.iter().map(|row| row[col].clone()).collect())
    }

    /// Drops the named attributes, keeping everything else in place.
    pub fn without_attributes(&self, drop: &[&str]) -> Result<Self> {
        for name in drop {
            self.attribute_index(name)?;
        }
        let keep: Vec<usize> = (0..self.attributes.len())
            .filter(|&i| !drop.contains(&self.attributes[i].name.as_str()))
            .collect();
        Ok(InformationSystem {
            objects: self.objects.clone(),
            attributes: keep.iter().map(|&i| self.attributes[i].clone()).collect(),
            cells: self
                .cells
                .iter()
                .map(|row| keep.iter().map(|&i| row[i].clone()).collect())
                .collect(),
        })
    }

    /// Renders the table back to the csv layout accepted by
    /// [`load_information_system`].
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("id").chain(self.attributes.iter().map(|a| a.name.as_str()));
        writer.write_record(header).expect("in-memory write");
        for (id, row) in self.objects.iter().zip(&self.cells) {
            let fields = std::iter::once(id.clone()).chain(row.iter().map(Value::to_string));
            writer.write_record(fields).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

fn check_cell(object: &str, spec: &AttributeSpec, value: &Value) -> Result<()> {
    match (&spec.kind, value) {
        (AttributeKind::Numeric { range, .. }, Value::Numeric(v)) => {
            if !v.is_finite() || *v < 0.0 || v > range {
                return Err(EvalError::OutOfRange {
                    object: object.to_string(),
                    attribute: spec.name.clone(),
                    value: *v,
                    range: *range,
                });
            }
        }
        (AttributeKind::Categorical { label_order }, Value::Label(l)) => {
            if !label_order.contains(l) {
                return Err(EvalError::UnknownLabel {
                    object: object.to_string(),
                    attribute: spec.name.clone(),
                    label: l.clone(),
                });
            }
        }
        (AttributeKind::Numeric { .. }, Value::Label(l)) => {
            return Err(EvalError::InvalidNumber {
                object: object.to_string(),
                attribute: spec.name.clone(),
                value: l.clone(),
            })
        }
        (AttributeKind::Categorical { .. }, Value::Numeric(v)) => {
            return Err(EvalError::UnknownLabel {
                object: object.to_string(),
                attribute: spec.name.clone(),
                label: v.to_string(),
            })
        }
    }
    Ok(())
}

/// Parses a csv table (`id,<attr1>,<attr2>,...`) against the attribute specs.
///
/// Attribute columns keep the header order. Every spec needs a column and
/// every column needs a spec.
pub fn load_information_system(csv_text: &str, specs: &[AttributeSpec]) -> Result<InformationSystem> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(csv_text.as_bytes());

    let header = reader
        .headers()
        .map_err(|e| EvalError::Csv(e.to_string()))?
        .clone();
    if header.len() < 2 {
        return Err(EvalError::Csv("header needs an id column and at least one attribute".into()));
    }

    let mut attributes = Vec::with_capacity(header.len() - 1);
    for name in header.iter().skip(1) {
        let spec = specs
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| EvalError::UnknownAttribute(name.to_string()))?;
        if attributes.iter().any(|a: &AttributeSpec| a.name == name) {
            return Err(EvalError::InvalidSpec {
                attribute: name.to_string(),
                reason: "column appears twice".into(),
            });
        }
        attributes.push(spec.clone());
    }
    if let Some(missing) = specs.iter().find(|s| !attributes.iter().any(|a| a.name == s.name)) {
        return Err(EvalError::MissingColumn(missing.name.clone()));
    }

    let mut objects = Vec::new();
    let mut cells = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| EvalError::Csv(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let id = record.get(0).unwrap_or_default();
        if id.is_empty() {
            return Err(EvalError::MissingCell(format!("object id in row {}", objects.len() + 1)));
        }
        if record.len() > header.len() {
            return Err(EvalError::Csv(format!("object `{id}` has more fields than the header")));
        }
        let mut row = Vec::with_capacity(attributes.len());
        for (i, spec) in attributes.iter().enumerate() {
            let raw = record.get(i + 1).unwrap_or_default();
            if raw.is_empty() {
                return Err(EvalError::MissingCell(format!(
                    "object `{id}`, attribute `{}`",
                    spec.name
                )));
            }
            row.push(parse_cell(id, spec, raw)?);
        }
        objects.push(id.to_string());
        cells.push(row);
    }

    InformationSystem::new(objects, attributes, cells)
}

fn parse_cell(object: &str, spec: &AttributeSpec, raw: &str) -> Result<Value> {
    match spec.kind {
        AttributeKind::Numeric { .. } => raw
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(Value::Numeric)
            .ok_or_else(|| EvalError::InvalidNumber {
                object: object.to_string(),
                attribute: spec.name.clone(),
                value: raw.to_string(),
            }),
        AttributeKind::Categorical { .. } => Ok(Value::Label(raw.to_string())),
    }
}

/// Options for one level of the evaluation index system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelConfig {
    pub id: String,
    pub attributes: Vec<String>,
    /// Overrides the global alpha for this level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Overrides the grade scale (otherwise the largest class count).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grade_scale: Option<u32>,
    /// Published scores to compare against; divergences become diagnostics.
    #[serde(skip_serializing_if = "IndexMap::is_empty")]
    pub reference_scores: IndexMap<String, f64>,
}

impl LevelConfig {
    pub fn new<S: Into<String>>(id: impl Into<String>, attributes: impl IntoIterator<Item = S>) -> Self {
        LevelConfig {
            id: id.into(),
            attributes: attributes.into_iter().map(Into::into).collect(),
            alpha: None,
            grade_scale: None,
            reference_scores: IndexMap::new(),
        }
    }
}

pub const DEFAULT_ALPHA: f64 = 0.85;
pub const DEFAULT_LOG_BASE: f64 = 10.0;
pub const DEFAULT_REDUNDANCY_EPSILON: f64 = 1e-9;
pub const DEFAULT_COMMENT_LABELS: [&str; 5] = ["Very good", "Good", "Average", "Poor", "Very poor"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationConfig {
    pub alpha: f64,
    pub log_base: f64,
    pub levels: Vec<LevelConfig>,
    /// Best first. Grade `s` takes the first label.
    pub comment_labels: Vec<String>,
    pub redundancy_epsilon: f64,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            alpha: DEFAULT_ALPHA,
            log_base: DEFAULT_LOG_BASE,
            levels: Vec::new(),
            comment_labels: DEFAULT_COMMENT_LABELS.iter().map(|s| s.to_string()).collect(),
            redundancy_epsilon: DEFAULT_REDUNDANCY_EPSILON,
        }
    }
}

impl EvaluationConfig {
    pub fn with_levels(levels: Vec<LevelConfig>) -> Self {
        EvaluationConfig {
            levels,
            ..Default::default()
        }
    }

    pub fn level(&self, id: &str) -> Result<&LevelConfig> {
        self.levels
            .iter()
            .find(|l| l.id == id)
            .ok_or_else(|| EvalError::UnknownLevel(id.to_string()))
    }

    /// Labels for a scale of `s` grades, best first, padded with
    /// `Grade k` when the configured list is too short.
    pub fn labels_for_scale(&self, s: u32) -> Vec<String> {
        (0..s)
            .map(|i| {
                self.comment_labels
                    .get(i as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("Grade {}", s - i))
            })
            .collect()
    }

    fn check_scalars(&self) -> Result<()> {
        let alpha_ok = |a: f64| (0.0..=1.0).contains(&a);
        if !alpha_ok(self.alpha) {
            return Err(EvalError::InvalidConfig(format!("alpha {} not in [0, 1]", self.alpha)));
        }
        if !(self.log_base.is_finite() && self.log_base > 1.0) {
            return Err(EvalError::InvalidConfig(format!("log base {} must exceed 1", self.log_base)));
        }
        if !(self.redundancy_epsilon.is_finite() && self.redundancy_epsilon >= 0.0) {
            return Err(EvalError::InvalidConfig("redundancy epsilon must be non-negative".into()));
        }
        let mut ids = HashSet::new();
        for level in &self.levels {
            if !ids.insert(level.id.as_str()) {
                return Err(EvalError::InvalidConfig(format!("level `{}` declared twice", level.id)));
            }
            if level.attributes.is_empty() {
                return Err(EvalError::InvalidConfig(format!("level `{}` has no attributes", level.id)));
            }
            if let Some(a) = level.alpha.filter(|a| !alpha_ok(*a)) {
                return Err(EvalError::InvalidConfig(format!("level `{}` alpha {a} not in [0, 1]", level.id)));
            }
            if level.grade_scale == Some(0) {
                return Err(EvalError::InvalidConfig(format!("level `{}` grade scale is 0", level.id)));
            }
        }
        Ok(())
    }
}

/// Checks that the configured levels partition the attributes of `is`.
pub fn validate_config(config: &EvaluationConfig, is: &InformationSystem) -> Result<()> {
    config.check_scalars()?;
    let mut claimed = HashSet::new();
    for level in &config.levels {
        for name in &level.attributes {
            is.attribute_index(name)?;
            if !claimed.insert(name.as_str()) {
                return Err(EvalError::OverlappingLevels(name.clone()));
            }
        }
    }
    if let Some(spec) = is.attributes().iter().find(|a| !claimed.contains(a.name.as_str())) {
        return Err(EvalError::UncoveredAttribute(spec.name.clone()));
    }
    Ok(())
}
