//! Lower/upper approximations and the almost-indiscernibility partition of
//! an attribute subset.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{EvalError, Result};
use crate::proximity::Partition;

/// Objects by input position.
pub type ObjectSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproximationPair {
    pub lower: ObjectSet,
    pub upper: ObjectSet,
    /// `lower == upper`; otherwise the target is rough.
    pub discernible: bool,
}

fn check_members(p: &Partition, x: &ObjectSet) -> Result<()> {
    match x.iter().find(|&&i| i >= p.universe_size()) {
        Some(i) => Err(EvalError::UnknownObject(format!("#{i}"))),
        None => Ok(()),
    }
}

/// Union of the blocks that lie entirely inside `x`.
pub fn lower_approximation(p: &Partition, x: &ObjectSet) -> Result<ObjectSet> {
    check_members(p, x)?;
    Ok(p.blocks()
        .iter()
        .filter(|block| block.iter().all(|i| x.contains(i)))
        .flatten()
        .copied()
        .collect())
}

/// Union of the blocks that meet `x`.
pub fn upper_approximation(p: &Partition, x: &ObjectSet) -> Result<ObjectSet> {
    check_members(p, x)?;
    Ok(p.blocks()
        .iter()
        .filter(|block| block.iter().any(|i| x.contains(i)))
        .flatten()
        .copied()
        .collect())
}

pub fn approximate(p: &Partition, x: &ObjectSet) -> Result<ApproximationPair> {
    let lower = lower_approximation(p, x)?;
    let upper = upper_approximation(p, x)?;
    let discernible = lower == upper;
    Ok(ApproximationPair {
        lower,
        upper,
        discernible,
    })
}

/// Meet of the given partitions: two objects share a block iff they share
/// one in every input.
pub fn joint_partition<'a, I>(parts: I) -> Result<Partition>
where
    I: IntoIterator<Item = &'a Partition>,
{
    let mut parts = parts.into_iter();
    let first = parts.next().ok_or(EvalError::NoPartitions)?;
    let n = first.universe_size();
    let mut keys: Vec<Vec<usize>> = first.block_labels().into_iter().map(|b| vec![b]).collect();
    for p in parts {
        if p.universe_size() != n {
            return Err(EvalError::UniverseMismatch(n, p.universe_size()));
        }
        for (key, b) in keys.iter_mut().zip(p.block_labels()) {
            key.push(b);
        }
    }
    Ok(Partition::from_keys(&keys))
}

/// Like [`joint_partition`], but the meet of nothing is the one-block
/// partition of `n` objects.
pub fn joint_partition_or_whole<'a, I>(n: usize, parts: I) -> Result<Partition>
where
    I: IntoIterator<Item = &'a Partition>,
{
    match joint_partition(parts) {
        Err(EvalError::NoPartitions) => Ok(Partition::whole(n)),
        other => other,
    }
}

/// Resolves object ids to positions.
pub fn object_set(objects: &[String], ids: &[&str]) -> Result<ObjectSet> {
    let index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    ids.iter()
        .map(|id| index.get(id).copied().ok_or_else(|| EvalError::UnknownObject(id.to_string())))
        .collect()
}
