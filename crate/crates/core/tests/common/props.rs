//! Randomised properties, runnable with any case count.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use rough_eval::entropy::{partition_entropy, weighting_coefficients};
use rough_eval::pipeline::{performance_scores, rank_scores, run_level};
use rough_eval::ordering::{assign_grades, RankedClasses};
use rough_eval::roughset::{joint_partition, lower_approximation, upper_approximation, ObjectSet};
use rough_eval::{
    alpha_partition, AttributeSpec, EvalError, EvaluationConfig, InformationSystem, LevelConfig, Partition, Polarity,
    ProximityMatrix, Value,
};

use super::{oracle_alpha_closure, oracle_lower, oracle_meet, oracle_scores, oracle_upper, same_block, OracleColumn};

pub const MAX_N: usize = 8;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

/// Degrees drawn half from a coarse grid (so ties with α happen) and half
/// uniformly.
fn degree() -> impl Strategy<Value = f64> {
    prop_oneof![(0u32..=20).prop_map(|k| k as f64 / 20.0), 0.0..=1.0f64]
}

/// A random proximity matrix as plain rows.
pub fn matrix_rows() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1..=MAX_N).prop_flat_map(|n| {
        vec(degree(), n * n).prop_map(move |raw| {
            let mut m = vec![vec![1.0; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    m[i][j] = raw[i * n + j];
                    m[j][i] = raw[i * n + j];
                }
            }
            m
        })
    })
}

pub fn to_matrix(rows: &[Vec<f64>]) -> ProximityMatrix {
    ProximityMatrix::new(rows.len(), rows.concat()).unwrap()
}

fn labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
    vec(0..n.max(1), n)
}

fn partitions(count: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1..=MAX_N).prop_flat_map(move |n| (Just(n), vec(labels(n), count)))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

fn set_from(flags: &[bool]) -> ObjectSet {
    flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect()
}

pub fn alpha_refinement(cases: u32) -> Result<(), String> {
    check(cases, (matrix_rows(), 0.0..=1.0f64, 0.0..=1.0f64), |(rows, a, b)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let m = to_matrix(&rows);
        let fine = alpha_partition(&m, hi);
        let coarse = alpha_partition(&m, lo);
        ensure(fine.refines(&coarse), format!("α={hi} does not refine α={lo}"))
    })
}

pub fn approximation_bounds_and_duality(cases: u32) -> Result<(), String> {
    let strategy = (1..=MAX_N).prop_flat_map(|n| (labels(n), vec(any::<bool>(), n)));
    check(cases, strategy, |(keys, flags)| {
        let p = Partition::from_keys(&keys);
        let n = keys.len();
        let x = set_from(&flags);
        let universe: ObjectSet = (0..n).collect();
        let complement: ObjectSet = universe.difference(&x).copied().collect();
        let lower = lower_approximation(&p, &x).unwrap();
        let upper = upper_approximation(&p, &x).unwrap();
        ensure(lower.is_subset(&x) && x.is_subset(&upper), "lower ⊆ X ⊆ upper violated")?;
        let upper_c = upper_approximation(&p, &complement).unwrap();
        let dual: ObjectSet = universe.difference(&upper_c).copied().collect();
        ensure(lower == dual, "lower(X) ≠ U − upper(U − X)")?;
        ensure(lower_approximation(&p, &universe).unwrap() == universe, "lower(U) ≠ U")?;
        ensure(upper_approximation(&p, &BTreeSet::new()).unwrap().is_empty(), "upper(∅) ≠ ∅")
    })
}

pub fn meet_laws(cases: u32) -> Result<(), String> {
    check(cases, partitions(3), |(_, ls)| {
        let [a, b, c] = [&ls[0], &ls[1], &ls[2]].map(|l| Partition::from_keys(l));
        let ab = joint_partition([&a, &b]).unwrap();
        let ba = joint_partition([&b, &a]).unwrap();
        ensure(ab == ba, "meet not commutative")?;
        let left = joint_partition([&ab, &c]).unwrap();
        let bc = joint_partition([&b, &c]).unwrap();
        let right = joint_partition([&a, &bc]).unwrap();
        ensure(left == right, "meet not associative")?;
        ensure(joint_partition([&a, &a]).unwrap() == a, "meet not idempotent")?;
        ensure(ab.refines(&a) && ab.refines(&b), "meet does not refine its inputs")
    })
}

pub fn entropy_bounds_and_monotonicity(cases: u32) -> Result<(), String> {
    check(cases, partitions(2), |(n, ls)| {
        let p = Partition::from_keys(&ls[0]);
        let h = partition_entropy(&p, 10.0);
        let max = (n as f64).log10();
        ensure(h >= 0.0 && h <= max + 1e-12, format!("H={h} outside [0, {max}]"))?;
        ensure((h == 0.0) == (p.block_count() == 1), "H = 0 iff one block")?;
        if p.block_count() == n {
            ensure((h - max).abs() < 1e-12, "discrete partition must reach log n")?;
        }
        let q = joint_partition([&p, &Partition::from_keys(&ls[1])]).unwrap();
        ensure(partition_entropy(&q, 10.0) >= h - 1e-12, "refinement lowered entropy")
    })
}

fn sgf_values() -> impl Strategy<Value = Vec<f64>> {
    vec(prop_oneof![Just(0.0), 0.01..1.0f64], 1..=6)
}

pub fn weights_normalised_and_scale_invariant(cases: u32) -> Result<(), String> {
    let strategy = (sgf_values(), 0.01..100.0f64, 2usize..=MAX_N).prop_flat_map(|(sgf, c, n)| {
        let k = sgf.len();
        (Just(sgf), Just(c), vec(vec(1u32..=4, n), k))
    });
    check(cases, strategy, |(sgf, c, grade_cols)| {
        let map: IndexMap<String, f64> = sgf.iter().enumerate().map(|(i, &s)| (format!("a{i}"), s)).collect();
        let scaled: IndexMap<String, f64> = map.iter().map(|(a, &s)| (a.clone(), s * c)).collect();
        let (w, ws) = match (weighting_coefficients(&map, 1e-9), weighting_coefficients(&scaled, 1e-9)) {
            (Err(EvalError::AllRedundant), Err(EvalError::AllRedundant)) => return Ok(()),
            (Ok(w), Ok(ws)) => (w, ws),
            other => return Err(TestCaseError::fail(format!("scaling changed the outcome: {other:?}"))),
        };
        let total: f64 = w.weights.values().sum();
        ensure((total - 1.0).abs() < 1e-12, format!("weights sum to {total}"))?;
        ensure(w.weights.values().all(|&x| x > 0.0), "non-positive weight")?;
        ensure(w.redundant == ws.redundant, "redundant set changed under scaling")?;
        for (a, x) in &w.weights {
            ensure((x - ws.weights[a.as_str()]).abs() < 1e-12, "weight changed under scaling")?;
        }

        let n = grade_cols[0].len();
        let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let ranked: Vec<RankedClasses> = grade_cols
            .iter()
            .enumerate()
            .map(|(k, col)| {
                // one class per distinct grade value, best first
                let mut distinct: Vec<u32> = col.clone();
                distinct.sort_unstable_by(|a, b| b.cmp(a));
                distinct.dedup();
                let classes = distinct
                    .iter()
                    .map(|g| (0..n).filter(|&i| col[i] == *g).collect())
                    .collect();
                RankedClasses::new(format!("a{k}"), classes)
            })
            .collect();
        let table = assign_grades(&objects, &ranked, 4, &rough_eval::EvaluationConfig::default().labels_for_scale(4))
            .unwrap();
        let r1 = rank_scores(&performance_scores(&table, &w.weights).unwrap());
        let r2 = rank_scores(&performance_scores(&table, &ws.weights).unwrap());
        let groups = |r: &[rough_eval::pipeline::RankEntry]| -> Vec<(String, usize)> {
            let mut g: Vec<(String, usize)> = r.iter().map(|e| (e.object.clone(), e.tie_group)).collect();
            g.sort();
            g
        };
        ensure(groups(&r1) == groups(&r2), "ranking changed under SGF scaling")
    })
}

pub fn alpha_partition_matches_oracle(cases: u32) -> Result<(), String> {
    check(cases, (matrix_rows(), degree()), |(rows, alpha)| {
        let p = alpha_partition(&to_matrix(&rows), alpha);
        let expected = same_block(&oracle_alpha_closure(&rows, alpha));
        ensure(same_block(&p.block_labels()) == expected, "closure differs from the fixed-point oracle")
    })
}

pub fn approximations_match_oracle(cases: u32) -> Result<(), String> {
    let strategy = (1..=MAX_N).prop_flat_map(|n| (labels(n), vec(any::<bool>(), n)));
    check(cases, strategy, |(keys, flags)| {
        let p = Partition::from_keys(&keys);
        let x = set_from(&flags);
        ensure(
            lower_approximation(&p, &x).unwrap() == set_from(&oracle_lower(&keys, &flags)),
            "lower approximation differs from oracle",
        )?;
        ensure(
            upper_approximation(&p, &x).unwrap() == set_from(&oracle_upper(&keys, &flags)),
            "upper approximation differs from oracle",
        )
    })
}

pub fn joint_partition_matches_oracle(cases: u32) -> Result<(), String> {
    let strategy = (1..=MAX_N).prop_flat_map(|n| (Just(n), vec(labels(n), 1..=4)));
    check(cases, strategy, |(n, ls)| {
        let parts: Vec<Partition> = ls.iter().map(|l| Partition::from_keys(l)).collect();
        let meet = joint_partition(&parts).unwrap();
        ensure(
            same_block(&meet.block_labels()) == same_block(&oracle_meet(n, &ls)),
            "meet differs from pairwise oracle",
        )
    })
}

fn oracle_column(n: usize) -> impl Strategy<Value = OracleColumn> {
    prop_oneof![
        (vec(0u8..=10, n), any::<bool>()).prop_map(|(v, higher)| OracleColumn::Numeric {
            values: v.into_iter().map(f64::from).collect(),
            range: 10.0,
            higher,
        }),
        vec(0usize..3, n).prop_map(|ranks| OracleColumn::Categorical { ranks }),
    ]
}

pub fn random_level() -> impl Strategy<Value = (Vec<OracleColumn>, f64)> {
    (2usize..=6).prop_flat_map(|n| (vec(oracle_column(n), 1..=4), prop_oneof![Just(0.7), Just(0.8), Just(0.9), Just(1.0)]))
}

const LABELS: [&str; 3] = ["high", "mid", "low"];

/// The same random level as an information system + single-level config.
pub fn level_system(columns: &[OracleColumn], alpha: f64) -> (InformationSystem, EvaluationConfig) {
    let n = match &columns[0] {
        OracleColumn::Numeric { values, .. } => values.len(),
        OracleColumn::Categorical { ranks } => ranks.len(),
    };
    let specs: Vec<AttributeSpec> = columns
        .iter()
        .enumerate()
        .map(|(k, c)| match c {
            OracleColumn::Numeric { range, higher, .. } => AttributeSpec::numeric(
                format!("a{k}"),
                *range,
                if *higher { Polarity::HigherBetter } else { Polarity::LowerBetter },
            ),
            OracleColumn::Categorical { .. } => AttributeSpec::categorical(format!("a{k}"), LABELS),
        })
        .collect();
    let cells: Vec<Vec<Value>> = (0..n)
        .map(|r| {
            columns
                .iter()
                .map(|c| match c {
                    OracleColumn::Numeric { values, .. } => Value::Numeric(values[r]),
                    OracleColumn::Categorical { ranks } => Value::Label(LABELS[ranks[r]].to_string()),
                })
                .collect()
        })
        .collect();
    let objects = (0..n).map(|i| format!("o{i}")).collect();
    let is = InformationSystem::new(objects, specs.clone(), cells).unwrap();
    let mut config = EvaluationConfig::with_levels(vec![LevelConfig::new("L", specs.iter().map(|s| s.name.clone()))]);
    config.alpha = alpha;
    (is, config)
}

pub fn scores_match_oracle(cases: u32) -> Result<(), String> {
    check(cases, random_level(), |(columns, alpha)| {
        let (is, config) = level_system(&columns, alpha);
        let expected = oracle_scores(&columns, alpha, config.log_base, config.redundancy_epsilon);
        match (run_level(&is, &config, "L"), expected) {
            (Err(EvalError::AllRedundant), None) => Ok(()),
            (Ok(result), Some(expected)) => {
                for (got, want) in result.scores.values().zip(&expected) {
                    ensure((got - want).abs() < 1e-9, format!("W = {got}, oracle {want}"))?;
                }
                Ok(())
            }
            (got, want) => Err(TestCaseError::fail(format!(
                "pipeline {:?} vs oracle {want:?}",
                got.map(|r| r.scores)
            ))),
        }
    })
}

/// Every property behind the randomized acceptance criterion.
pub fn all() -> Vec<(&'static str, fn(u32) -> Result<(), String>)> {
    vec![
        ("partition refinement monotone in alpha", alpha_refinement),
        ("lower ⊆ X ⊆ upper and complement duality", approximation_bounds_and_duality),
        ("meet associative, commutative, idempotent", meet_laws),
        ("entropy bounds and refinement monotonicity", entropy_bounds_and_monotonicity),
        ("weight normalisation and SGF scale invariance of rankings", weights_normalised_and_scale_invariant),
        ("alpha_partition = fixed-point oracle", alpha_partition_matches_oracle),
        ("approximations = brute-force oracle", approximations_match_oracle),
        ("joint_partition = pairwise oracle", joint_partition_matches_oracle),
        ("end-to-end W_r = straight-line oracle", scores_match_oracle),
    ]
}
