//! Fuzzy proximity relations and their α-cut equivalence partitions.

use crate::error::{EvalError, Result};
use crate::ism::{AttributeKind, AttributeSpec, Value};

/// A reflexive, symmetric fuzzy relation on `n` objects, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl ProximityMatrix {
    /// Row-major entries; checked for reflexivity, symmetry and range.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(EvalError::InvalidMatrix(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        let m = ProximityMatrix { n, entries };
        for i in 0..n {
            if m.get(i, i) != 1.0 {
                return Err(EvalError::InvalidMatrix(format!("entry ({i},{i}) is not 1")));
            }
            for j in 0..n {
                let v = m.get(i, j);
                if !(0.0..=1.0).contains(&v) {
                    return Err(EvalError::InvalidMatrix(format!("entry ({i},{j}) = {v} outside [0, 1]")));
                }
                if v != m.get(j, i) {
                    return Err(EvalError::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Csv dump with a header of object ids and entries at three decimals,
    /// written the way published proximity tables are (`.604`, `1.000`).
    pub fn to_csv(&self, ids: &[String]) -> String {
        let mut out = String::from("id");
        for id in ids {
            out.push(',');
            out.push_str(id);
        }
        out.push('\n');
        for (i, id) in ids.iter().enumerate().take(self.n) {
            out.push_str(id);
            for &v in self.row(i) {
                out.push(',');
                out.push_str(&render_3dp(v));
            }
            out.push('\n');
        }
        out
    }
}

/// Rounds half away from zero to three decimals.
pub fn round_3dp(v: f64) -> f64 {
    (v * 1000.0).round() / 1000.0
}

pub fn render_3dp(v: f64) -> String {
    let s = format!("{:.3}", round_3dp(v));
    match s.strip_prefix("0.") {
        Some(rest) => format!(".{rest}"),
        None => s,
    }
}

/// Similarity degree between two attribute values.
pub trait ProximityKernel {
    fn degree(&self, a: &Value, b: &Value) -> Result<f64>;
}

/// `1 − |a − b| / range` for numeric values within `[0, range]`.
#[derive(Debug, Clone, Copy)]
pub struct RangeKernel {
    pub range: f64,
}

impl ProximityKernel for RangeKernel {
    fn degree(&self, a: &Value, b: &Value) -> Result<f64> {
        let (x, y) = match (a.as_f64(), b.as_f64()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(EvalError::InvalidMatrix("range kernel needs numeric values".into())),
        };
        Ok(1.0 - (x - y).abs() / self.range)
    }
}

/// 1 for identical labels, 0 otherwise.
#[derive(Debug, Clone, Copy)]
pub struct ExactMatchKernel;

impl ProximityKernel for ExactMatchKernel {
    fn degree(&self, a: &Value, b: &Value) -> Result<f64> {
        Ok(if a == b { 1.0 } else { 0.0 })
    }
}

pub fn build_with_kernel<K: ProximityKernel + ?Sized>(values: &[Value], kernel: &K) -> Result<ProximityMatrix> {
    let n = values.len();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let d = kernel.degree(&values[i], &values[j])?;
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    ProximityMatrix::new(n, entries)
}

/// Proximity matrix of one attribute: the range kernel for numeric
/// attributes, exact match for categorical ones.
pub fn build_proximity(values: &[Value], spec: &AttributeSpec) -> Result<ProximityMatrix> {
    match &spec.kind {
        AttributeKind::Numeric { range, .. } => {
            for (i, v) in values.iter().enumerate() {
                match v.as_f64() {
                    Some(x) if x.is_finite() && (0.0..=*range).contains(&x) => {}
                    Some(x) => {
                        return Err(EvalError::OutOfRange {
                            object: format!("#{i}"),
                            attribute: spec.name.clone(),
                            value: x,
                            range: *range,
                        })
                    }
                    None => {
                        return Err(EvalError::InvalidNumber {
                            object: format!("#{i}"),
                            attribute: spec.name.clone(),
                            value: v.to_string(),
                        })
                    }
                }
            }
            build_with_kernel(values, &RangeKernel { range: *range })
        }
        AttributeKind::Categorical { .. } => build_with_kernel(values, &ExactMatchKernel),
    }
}

/// An equivalence partition of objects `0..n`.
///
/// Always canonical: members ascending, blocks ordered by their smallest
/// member. Two partitions are equal iff they group objects identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds the partition in which objects with equal keys share a block.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: &[K]) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            let b = *index.entry(k).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i);
        }
        Partition { n: keys.len(), blocks }
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(EvalError::InvalidPartition("empty block".into()));
            }
            for &i in block {
                if i >= n {
                    return Err(EvalError::InvalidPartition(format!("object {i} outside universe of {n}")));
                }
                if owner[i] != usize::MAX {
                    return Err(EvalError::InvalidPartition(format!("object {i} in two blocks")));
                }
                owner[i] = b;
            }
        }
        if let Some(i) = owner.iter().position(|&b| b == usize::MAX) {
            return Err(EvalError::InvalidPartition(format!("object {i} not covered")));
        }
        Ok(Partition::from_keys(&owner))
    }

    /// One block holding everything.
    pub fn whole(n: usize) -> Self {
        Partition::from_keys(&vec![0u8; n])
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        Partition::from_keys(&(0..n).collect::<Vec<_>>())
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every object.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                labels[i] = b;
            }
        }
        labels
    }

    /// True when every block of `self` sits inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.n != coarser.n {
            return false;
        }
        let outer = coarser.block_labels();
        self.blocks
            .iter()
            .all(|block| block.iter().all(|&i| outer[i] == outer[block[0]]))
    }

    pub fn to_ids(&self, ids: &[String]) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|block| block.iter().map(|&i| ids[i].clone()).collect())
            .collect()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Classes of the α-identical relation: objects joined by a chain of pairs
/// whose degree is at least `alpha`.
pub fn alpha_partition(m: &ProximityMatrix, alpha: f64) -> Partition {
    let n = m.size();
    let mut sets = DisjointSets::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, j) >= alpha {
                sets.union(i, j);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| sets.find(i)).collect();
    Partition::from_keys(&roots)
}
