//! Partition entropy, drop-one attribute significance and weighting
//! coefficients.

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{EvalError, Result};
use crate::proximity::Partition;
use crate::roughset::joint_partition_or_whole;

/// `−Σ p log p` over block probabilities `|X_i| / n`.
pub fn partition_entropy(p: &Partition, log_base: f64) -> f64 {
    let n = p.universe_size() as f64;
    let ln_base = log_base.ln();
    p.blocks()
        .iter()
        .map(|block| {
            let prob = block.len() as f64 / n;
            -prob * prob.ln() / ln_base
        })
        .sum::<f64>()
        .max(0.0)
}

fn meet_without(parts_by_attr: &IndexMap<String, Partition>, skip: Option<&str>) -> Result<Partition> {
    let n = parts_by_attr.values().next().map_or(0, Partition::universe_size);
    joint_partition_or_whole(
        n,
        parts_by_attr
            .iter()
            .filter(|(name, _)| Some(name.as_str()) != skip)
            .map(|(_, p)| p),
    )
}

/// `|H(A) − H(A − {attribute})|`, where `A` is every attribute in the map.
pub fn significance(parts_by_attr: &IndexMap<String, Partition>, attribute: &str, log_base: f64) -> Result<f64> {
    if !parts_by_attr.contains_key(attribute) {
        return Err(EvalError::UnknownAttribute(attribute.to_string()));
    }
    let full = partition_entropy(&meet_without(parts_by_attr, None)?, log_base);
    let dropped = partition_entropy(&meet_without(parts_by_attr, Some(attribute))?, log_base);
    Ok((full - dropped).abs())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Weights {
    pub weights: IndexMap<String, f64>,
    pub redundant: Vec<String>,
}

/// Normalises significances over the attributes whose significance exceeds
/// `eps`; the rest are redundant.
pub fn weighting_coefficients(sgf: &IndexMap<String, f64>, eps: f64) -> Result<Weights> {
    let retained: Vec<(&String, f64)> = sgf.iter().filter(|(_, &s)| s > eps).map(|(a, &s)| (a, s)).collect();
    if retained.is_empty() {
        return Err(EvalError::AllRedundant);
    }
    let total: f64 = retained.iter().map(|(_, s)| s).sum();
    Ok(Weights {
        weights: retained.into_iter().map(|(a, s)| (a.clone(), s / total)).collect(),
        redundant: sgf.iter().filter(|(_, &s)| s <= eps).map(|(a, _)| a.clone()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightReport {
    /// Entropy of the meet over every attribute.
    pub h_full: f64,
    /// Entropy with each attribute left out.
    pub h_drop: IndexMap<String, f64>,
    pub sgf: IndexMap<String, f64>,
    pub redundant: Vec<String>,
    pub weights: IndexMap<String, f64>,
    /// The meets behind `h_full` and `h_drop`.
    #[serde(skip)]
    pub joint: Partition,
    #[serde(skip)]
    pub joint_drop: IndexMap<String, Partition>,
}

pub fn weight_report(parts_by_attr: &IndexMap<String, Partition>, log_base: f64, eps: f64) -> Result<WeightReport> {
    let joint = meet_without(parts_by_attr, None)?;
    let h_full = partition_entropy(&joint, log_base);
    let mut joint_drop = IndexMap::new();
    let mut h_drop = IndexMap::new();
    let mut sgf = IndexMap::new();
    for name in parts_by_attr.keys() {
        let meet = meet_without(parts_by_attr, Some(name))?;
        let h = partition_entropy(&meet, log_base);
        h_drop.insert(name.clone(), h);
        sgf.insert(name.clone(), (h_full - h).abs());
        joint_drop.insert(name.clone(), meet);
    }
    let Weights { weights, redundant } = weighting_coefficients(&sgf, eps)?;
    Ok(WeightReport {
        h_full,
        h_drop,
        sgf,
        redundant,
        weights,
        joint,
        joint_drop,
    })
}
