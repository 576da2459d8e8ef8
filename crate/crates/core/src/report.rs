//! Report rendering: versioned JSON, a csv score table and plain text.

use std::fmt::Write as _;

use serde_json::{json, Map, Value as Json};

use crate::pipeline::{rank_within_level, EvaluationReport, LevelResult};
use crate::proximity::{round_3dp, Partition};

pub const REPORT_SCHEMA: &str = "rough-eval/report@1";

fn ids_of(p: &Partition, objects: &[String]) -> Json {
    json!(p.to_ids(objects))
}

fn with_rounded(v: f64) -> Json {
    json!({ "value": v, "rounded": round_3dp(v) })
}

pub fn level_json(level: &LevelResult, objects: &[String]) -> Json {
    let wr = &level.weight_report;
    let partitions: Map<String, Json> = level
        .partitions
        .iter()
        .map(|(a, p)| (a.clone(), ids_of(p, objects)))
        .collect();
    let classes: Map<String, Json> = level
        .classes
        .iter()
        .map(|(a, blocks)| {
            let named: Vec<Vec<&str>> = blocks
                .iter()
                .map(|b| b.iter().map(|&i| objects[i].as_str()).collect())
                .collect();
            (a.clone(), json!(named))
        })
        .collect();
    let grades: Map<String, Json> = level
        .graded
        .rows()
        .map(|(object, cells)| {
            let row: Map<String, Json> = level
                .graded
                .attributes()
                .iter()
                .zip(cells)
                .map(|(a, (label, grade))| (a.clone(), json!({ "label": label, "grade": grade })))
                .collect();
            (object.to_string(), Json::Object(row))
        })
        .collect();
    let h_drop: Map<String, Json> = wr.h_drop.iter().map(|(a, &h)| (a.clone(), with_rounded(h))).collect();
    let ranking: Vec<Json> = rank_within_level(level)
        .into_iter()
        .map(|e| json!({ "object": e.object, "score": e.score, "tie_group": e.tie_group }))
        .collect();

    json!({
        "level": level.level,
        "alpha": level.alpha,
        "grade_scale": level.graded.scale(),
        "partitions": partitions,
        "classes": classes,
        "grades": grades,
        "joint_partition": ids_of(&wr.joint, objects),
        "entropy": { "full": with_rounded(wr.h_full), "drop_one": h_drop },
        "sgf": wr.sgf,
        "redundant": wr.redundant,
        "weights": wr.weights,
        "scores": level.scores,
        "ranking": ranking,
        "diagnostics": level.diagnostics,
    })
}

pub fn report_json(report: &EvaluationReport) -> Json {
    let levels: Vec<Json> = report.levels.iter().map(|l| level_json(l, &report.objects)).collect();
    let table: Vec<Json> = report
        .score_table()
        .into_iter()
        .map(|(object, scores)| {
            let by_level: Map<String, Json> = report
                .levels
                .iter()
                .zip(scores)
                .map(|(l, s)| (l.level.clone(), json!(s)))
                .collect();
            json!({ "object": object, "scores": by_level })
        })
        .collect();
    json!({
        "schema": REPORT_SCHEMA,
        "meta": { "tool": "rough-eval", "version": env!("CARGO_PKG_VERSION") },
        "config": {
            "alpha": report.alpha,
            "log_base": report.log_base,
            "redundancy_epsilon": report.redundancy_epsilon,
        },
        "levels": levels,
        "score_table": table,
    })
}

/// `id,<level ids...>` with one row per object.
pub fn score_table_csv(report: &EvaluationReport) -> String {
    let mut out = String::from("id");
    for l in &report.levels {
        out.push(',');
        out.push_str(&l.level);
    }
    out.push('\n');
    for (object, scores) in report.score_table() {
        out.push_str(&object);
        for s in scores {
            let _ = write!(out, ",{s}");
        }
        out.push('\n');
    }
    out
}

fn blocks_text(p: &Partition, objects: &[String]) -> String {
    let blocks: Vec<String> = p
        .to_ids(objects)
        .into_iter()
        .map(|b| format!("{{{}}}", b.join(",")))
        .collect();
    format!("{{{}}}", blocks.join(", "))
}

pub fn partition_text(p: &Partition, objects: &[String]) -> String {
    blocks_text(p, objects)
}

/// Ordered information system in label (grade) cells.
pub fn graded_table_text(level: &LevelResult) -> String {
    let table = &level.graded;
    let mut header = vec!["object".to_string()];
    header.extend(table.attributes().iter().cloned());
    let mut rows = vec![header];
    for (object, cells) in table.rows() {
        let mut row = vec![object.to_string()];
        row.extend(cells.into_iter().map(|(label, grade)| format!("{label} ({grade})")));
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().zip(&widths).map(|(cell, &w)| format!("{cell:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn entropy_text(level: &LevelResult, objects: &[String]) -> String {
    let wr = &level.weight_report;
    let mut out = String::new();
    let _ = writeln!(out, "level {} (alpha {})", level.level, level.alpha);
    let _ = writeln!(out, "U/R_A = {}", blocks_text(&wr.joint, objects));
    let _ = writeln!(out, "H(A) = {:.3}", wr.h_full);
    for (a, h) in &wr.h_drop {
        let _ = writeln!(
            out,
            "H(A-{{{a}}}) = {:.3}  SGF = {:.3}  U/R = {}",
            h,
            wr.sgf[a.as_str()],
            blocks_text(&wr.joint_drop[a.as_str()], objects)
        );
    }
    let _ = writeln!(out, "redundant: {}", wr.redundant.join(", "));
    let weights: Vec<String> = wr.weights.iter().map(|(a, w)| format!("{a}={w:.3}")).collect();
    let _ = writeln!(out, "weights: {}", weights.join(", "));
    out
}

pub fn level_text(level: &LevelResult, objects: &[String]) -> String {
    let mut out = entropy_text(level, objects);
    out.push('\n');
    out.push_str(&graded_table_text(level));
    out.push('\n');
    for e in rank_within_level(level) {
        let _ = writeln!(out, "{:>3}  {:<10} {:.3}", e.tie_group, e.object, e.score);
    }
    for d in &level.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    out
}

pub fn report_text(report: &EvaluationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "alpha {}  log base {}", report.alpha, report.log_base);
    for level in &report.levels {
        out.push('\n');
        out.push_str(&level_text(level, &report.objects));
    }
    out
}
