//! Ordered information systems: class ordering, comment grades, dominance.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{EvalError, Result};
use crate::ism::{AttributeKind, AttributeSpec, Polarity, Value};
use crate::proximity::Partition;

/// Sorts the blocks of an attribute's α-partition best first.
///
/// Numeric blocks are ranked by the mean of their raw values (descending for
/// higher-better, ascending for lower-better); equal means keep partition
/// order. Categorical blocks are ranked by the position of their label.
pub fn order_classes(p: &Partition, values: &[Value], spec: &AttributeSpec) -> Result<Vec<Vec<usize>>> {
    if values.len() != p.universe_size() {
        return Err(EvalError::UniverseMismatch(p.universe_size(), values.len()));
    }
    let blocks = p.blocks();
    let mut keyed: Vec<(f64, usize)> = Vec::with_capacity(blocks.len());
    match &spec.kind {
        AttributeKind::Numeric { polarity, .. } => {
            for (b, block) in blocks.iter().enumerate() {
                let mut sum = 0.0;
                for &i in block {
                    sum += values[i].as_f64().ok_or_else(|| EvalError::InvalidNumber {
                        object: format!("#{i}"),
                        attribute: spec.name.clone(),
                        value: values[i].to_string(),
                    })?;
                }
                let mean = sum / block.len() as f64;
                let key = match polarity {
                    Polarity::HigherBetter => -mean,
                    Polarity::LowerBetter => mean,
                };
                keyed.push((key, b));
            }
        }
        AttributeKind::Categorical { label_order } => {
            for (b, block) in blocks.iter().enumerate() {
                let label = values[block[0]].as_label();
                if block.iter().any(|&i| values[i].as_label() != label) {
                    return Err(EvalError::AmbiguousCategory(spec.name.clone()));
                }
                let label = label.unwrap_or_default();
                let pos = label_order.iter().position(|l| l == label).ok_or_else(|| EvalError::UnknownLabel {
                    object: format!("#{}", block[0]),
                    attribute: spec.name.clone(),
                    label: label.to_string(),
                })?;
                keyed.push((pos as f64, b));
            }
        }
    }
    // partition order is by smallest member, so the index breaks ties
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, b)| blocks[b].clone()).collect())
}

/// The best-first classes of one attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedClasses {
    pub attribute: String,
    pub classes: Vec<Vec<usize>>,
    pub fixed_grade: Option<u32>,
}

impl RankedClasses {
    pub fn new(attribute: impl Into<String>, classes: Vec<Vec<usize>>) -> Self {
        RankedClasses {
            attribute: attribute.into(),
            classes,
            fixed_grade: None,
        }
    }
}

/// Integer grades and comment labels per object and attribute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradedTable {
    objects: Vec<String>,
    attributes: Vec<String>,
    scale: u32,
    // attribute-major
    grades: Vec<Vec<u32>>,
    labels: Vec<Vec<String>>,
}

/// Top-aligned grading: the best class of every attribute gets `scale`,
/// the next `scale - 1`, and so on. `comment_labels` is best first and
/// must hold at least `scale` labels.
pub fn assign_grades(
    objects: &[String],
    ranked: &[RankedClasses],
    scale: u32,
    comment_labels: &[String],
) -> Result<GradedTable> {
    if comment_labels.len() < scale as usize {
        return Err(EvalError::InvalidConfig(format!(
            "{} comment labels for a scale of {scale}",
            comment_labels.len()
        )));
    }
    let label_of = |g: u32| comment_labels[(scale - g) as usize].clone();
    let n = objects.len();
    let mut grades = Vec::with_capacity(ranked.len());
    let mut labels = Vec::with_capacity(ranked.len());
    for attr in ranked {
        let count = attr.classes.len();
        if count > scale as usize {
            return Err(EvalError::ScaleTooSmall {
                attribute: attr.attribute.clone(),
                classes: count,
                scale,
            });
        }
        let mut column = vec![0u32; n];
        for (rank, class) in attr.classes.iter().enumerate() {
            let grade = match attr.fixed_grade {
                Some(g) if count == 1 && (1..=scale).contains(&g) => g,
                Some(g) => {
                    return Err(EvalError::InvalidSpec {
                        attribute: attr.attribute.clone(),
                        reason: format!("fixed grade {g} needs a single class and a grade within 1..={scale}"),
                    })
                }
                None => scale - rank as u32,
            };
            for &i in class {
                if i >= n {
                    return Err(EvalError::UnknownObject(format!("#{i}")));
                }
                column[i] = grade;
            }
        }
        if let Some(i) = column.iter().position(|&g| g == 0) {
            return Err(EvalError::InvalidPartition(format!(
                "object `{}` has no class for `{}`",
                objects[i], attr.attribute
            )));
        }
        labels.push(column.iter().map(|&g| label_of(g)).collect());
        grades.push(column);
    }
    Ok(GradedTable {
        objects: objects.to_vec(),
        attributes: ranked.iter().map(|r| r.attribute.clone()).collect(),
        scale,
        grades,
        labels,
    })
}

impl GradedTable {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| EvalError::UnknownAttribute(name.to_string()))
    }

    fn object_index(&self, id: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| EvalError::UnknownObject(id.to_string()))
    }

    pub fn grade(&self, object: &str, attribute: &str) -> Result<u32> {
        Ok(self.grades[self.attribute_index(attribute)?][self.object_index(object)?])
    }

    pub fn label(&self, object: &str, attribute: &str) -> Result<&str> {
        Ok(&self.labels[self.attribute_index(attribute)?][self.object_index(object)?])
    }

    /// Grades of one attribute in object order.
    pub fn column(&self, attribute: &str) -> Result<&[u32]> {
        Ok(&self.grades[self.attribute_index(attribute)?])
    }

    /// Rows of `(label, grade)` cells, one row per object.
    pub fn rows(&self) -> impl Iterator<Item = (&str, Vec<(&str, u32)>)> + '_ {
        self.objects.iter().enumerate().map(move |(i, id)| {
            let cells = (0..self.attributes.len())
                .map(|a| (self.labels[a][i].as_str(), self.grades[a][i]))
                .collect();
            (id.as_str(), cells)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dominance {
    /// Equal grades count as "not behind".
    #[default]
    Weak,
    /// Strictly ahead on every attribute.
    Strict,
}

/// Whether `x` is ranked ahead of `y` on every attribute of `subset`.
pub fn dominates(x: &str, y: &str, subset: &[&str], table: &GradedTable, mode: Dominance) -> Result<bool> {
    if subset.is_empty() {
        return Err(EvalError::InvalidConfig("dominance needs a non-empty attribute subset".into()));
    }
    let (xi, yi) = (table.object_index(x)?, table.object_index(y)?);
    for name in subset {
        let column = &table.grades[table.attribute_index(name)?];
        let ahead = match column[xi].cmp(&column[yi]) {
            Ordering::Greater => true,
            Ordering::Equal => mode == Dominance::Weak,
            Ordering::Less => false,
        };
        if !ahead {
            return Ok(false);
        }
    }
    Ok(true)
}
