#![allow(dead_code)]

//! Shared fixtures and brute-force oracles. The oracles only use plain
//! vectors and never call into the crate's algorithms.

pub mod props;

use std::path::PathBuf;

use rough_eval::config::{parse_config, ConfigFile};
use rough_eval::{load_information_system, EvaluationConfig, InformationSystem, Partition};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn institutions() -> (InformationSystem, EvaluationConfig) {
    let ConfigFile { config, attributes } = parse_config(&read_fixture("institutions.toml")).unwrap();
    let is = load_information_system(&read_fixture("institutions.csv"), &attributes).unwrap();
    (is, config)
}

/// Published proximity table for one attribute, row-major.
pub fn reference_matrix(attr: &str) -> Vec<Vec<f64>> {
    read_fixture(&format!("reference_proximity/{attr}.csv"))
        .lines()
        .skip(1)
        .map(|line| line.split(',').skip(1).map(|v| v.parse().unwrap()).collect())
        .collect()
}

/// Object positions for `i<k>` ids (1-based names).
pub fn ids(names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| n.trim_start_matches('i').parse::<usize>().unwrap() - 1).collect()
}

/// A partition written with `i<k>` ids, e.g. `&[&["i1", "i3"], &["i2"]]`.
pub fn named_partition(n: usize, blocks: &[&[&str]]) -> Partition {
    Partition::from_blocks(n, blocks.iter().map(|b| ids(b)).collect()).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// ---------------------------------------------------------------------------
// oracles

/// `same[i][j]` for a labelling.
pub fn same_block(labels: &[usize]) -> Vec<Vec<bool>> {
    labels
        .iter()
        .map(|a| labels.iter().map(|b| a == b).collect())
        .collect()
}

/// Relation matrix back to labels (label = smallest related index).
pub fn relation_labels(rel: &[Vec<bool>]) -> Vec<usize> {
    rel.iter()
        .map(|row| row.iter().position(|&r| r).unwrap())
        .collect()
}

/// α-cut closed under chains by repeated composition until nothing changes.
pub fn oracle_alpha_closure(m: &[Vec<f64>], alpha: f64) -> Vec<usize> {
    let n = m.len();
    let mut rel: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || m[i][j] >= alpha).collect())
        .collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !rel[i][j] && (0..n).any(|k| rel[i][k] && rel[k][j]) {
                    rel[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    relation_labels(&rel)
}

/// Objects related iff every labelling agrees.
pub fn oracle_meet(n: usize, labellings: &[Vec<usize>]) -> Vec<usize> {
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| labellings.iter().all(|l| l[i] == l[j])).collect())
        .collect();
    relation_labels(&rel)
}

/// Per-object check: the class of `i` lies inside `x`.
pub fn oracle_lower(labels: &[usize], x: &[bool]) -> Vec<bool> {
    (0..labels.len())
        .map(|i| (0..labels.len()).filter(|&j| labels[j] == labels[i]).all(|j| x[j]))
        .collect()
}

/// Per-object check: the class of `i` meets `x`.
pub fn oracle_upper(labels: &[usize], x: &[bool]) -> Vec<bool> {
    (0..labels.len())
        .map(|i| (0..labels.len()).filter(|&j| labels[j] == labels[i]).any(|j| x[j]))
        .collect()
}

pub fn oracle_entropy(labels: &[usize], base: f64) -> f64 {
    let n = labels.len() as f64;
    let mut distinct: Vec<usize> = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut h = 0.0;
    for d in distinct {
        let p = labels.iter().filter(|&&l| l == d).count() as f64 / n;
        h -= p * p.log(base);
    }
    h
}

/// A column of a small random information system.
#[derive(Debug, Clone)]
pub enum OracleColumn {
    /// Values in `[0, range]`; `higher` is the polarity.
    Numeric { values: Vec<f64>, range: f64, higher: bool },
    /// Label positions, 0 = best.
    Categorical { ranks: Vec<usize> },
}

/// Straight-line evaluation of one level: proximity, closure, class order by
/// mean (or label rank), top-aligned grades, drop-one entropy significance,
/// normalised weights and weighted grade sums. `None` when every attribute
/// is redundant.
pub fn oracle_scores(columns: &[OracleColumn], alpha: f64, base: f64, eps: f64) -> Option<Vec<f64>> {
    let n = match &columns[0] {
        OracleColumn::Numeric { values, .. } => values.len(),
        OracleColumn::Categorical { ranks } => ranks.len(),
    };
    let mut labellings = Vec::new();
    let mut class_orders: Vec<Vec<usize>> = Vec::new(); // per attribute: best-first list of labels
    for col in columns {
        let m: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match col {
                        OracleColumn::Numeric { values, range, .. } => 1.0 - (values[i] - values[j]).abs() / range,
                        OracleColumn::Categorical { ranks } => (ranks[i] == ranks[j]) as u8 as f64,
                    })
                    .collect()
            })
            .collect();
        let labels = oracle_alpha_closure(&m, alpha);
        let mut classes: Vec<usize> = labels.clone();
        classes.sort_unstable();
        classes.dedup();
        // classes are identified by their smallest member
        let key = |c: usize| -> f64 {
            let members: Vec<usize> = (0..n).filter(|&i| labels[i] == c).collect();
            match col {
                OracleColumn::Numeric { values, higher, .. } => {
                    let mean = members.iter().map(|&i| values[i]).sum::<f64>() / members.len() as f64;
                    if *higher {
                        -mean
                    } else {
                        mean
                    }
                }
                OracleColumn::Categorical { ranks } => ranks[members[0]] as f64,
            }
        };
        classes.sort_by(|&a, &b| key(a).partial_cmp(&key(b)).unwrap().then(a.cmp(&b)));
        class_orders.push(classes);
        labellings.push(labels);
    }
    let s = class_orders.iter().map(Vec::len).max().unwrap();
    let grades: Vec<Vec<f64>> = labellings
        .iter()
        .zip(&class_orders)
        .map(|(labels, order)| {
            labels
                .iter()
                .map(|l| (s - order.iter().position(|c| c == l).unwrap()) as f64)
                .collect()
        })
        .collect();
    let h_full = oracle_entropy(&oracle_meet(n, &labellings), base);
    let sgf: Vec<f64> = (0..columns.len())
        .map(|skip| {
            let rest: Vec<Vec<usize>> = labellings
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, l)| l.clone())
                .collect();
            let h = if rest.is_empty() { 0.0 } else { oracle_entropy(&oracle_meet(n, &rest), base) };
            (h_full - h).abs()
        })
        .collect();
    let total: f64 = sgf.iter().filter(|&&s| s > eps).sum();
    if total == 0.0 {
        return None;
    }
    Some(
        (0..n)
            .map(|r| {
                sgf.iter()
                    .enumerate()
                    .filter(|(_, &s)| s > eps)
                    .map(|(k, &s)| s / total * grades[k][r])
                    .sum()
            })
            .collect(),
    )
}
