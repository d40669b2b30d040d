//! Machine-readable output: CSV and JSON renderings of tables, matrices,
//! characters and filtration reports.
//!
//! Row and column order is always the group's fixed total order; JSON maps
//! are keyed by reduced words, and serde_json keeps keys sorted, so repeated
//! runs are byte-identical.

use serde_json::{json, Map, Value};

use crate::charlat::TruncatedCharacter;
use crate::klcore::{IntPolynomial, KLTable};
use crate::rootsys::Weight;
use crate::shapovalov::{JantzenReport, SignatureCharacter};
use crate::signedkl::SignedKLTable;
use crate::weyl::WeylGroup;

pub const SCHEMA_VERSION: &str = "1";

/// Header object recording the configuration a dump belongs to.
pub fn dump_header(
    type_label: &str,
    painting: &str,
    lambda: &Weight,
    order: &[String],
) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "type": type_label,
        "painting": painting,
        "lambda": weight_value(lambda),
        "order": order,
    })
}

fn weight_value(w: &Weight) -> Value {
    Value::Array(
        w.coords()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

/// Integer matrix as JSON rows keyed by reduced words.
pub fn matrix_to_json(order: &[String], m: &[Vec<i64>]) -> Value {
    let mut rows = Map::new();
    for (i, row) in m.iter().enumerate() {
        let mut cols = Map::new();
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                cols.insert(order[j].clone(), json!(v));
            }
        }
        rows.insert(order[i].clone(), Value::Object(cols));
    }
    Value::Object(rows)
}

/// Integer matrix as CSV with word-labeled rows and columns; header comment
/// lines carry the configuration.
pub fn matrix_to_csv(
    comment_lines: &[String],
    order: &[String],
    m: &[Vec<i64>],
) -> String {
    let mut out = String::new();
    for line in comment_lines {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!(",{}\n", order.join(",")));
    for (i, row) in m.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{},{}\n", order[i], cells.join(",")));
    }
    out
}

/// Polynomial table keyed by reduced-word pairs.
pub fn kl_table_to_json(table: &KLTable) -> Value {
    let g = table.group();
    let order = g.word_strings();
    let mut rows = Map::new();
    for x in 0..g.order() {
        let mut cols = Map::new();
        for y in 0..g.order() {
            let p = table.polynomial(x, y);
            if !p.is_zero() {
                cols.insert(order[y].clone(), json!(p.to_string()));
            }
        }
        rows.insert(order[x].clone(), Value::Object(cols));
    }
    Value::Object(rows)
}

pub fn kl_table_to_csv(comment_lines: &[String], table: &KLTable) -> String {
    let g = table.group();
    let order = g.word_strings();
    let mut out = String::new();
    for line in comment_lines {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!(",{}\n", order.join(",")));
    for x in 0..g.order() {
        let cells: Vec<String> = (0..g.order())
            .map(|y| table.polynomial(x, y).to_string())
            .collect();
        out.push_str(&format!("{},{}\n", order[x], cells.join(",")));
    }
    out
}

pub fn signed_table_to_json(st: &SignedKLTable) -> Value {
    let g = st.group();
    let order = g.word_strings();
    let mut rows = Map::new();
    for x in 0..g.order() {
        let mut cols = Map::new();
        for y in 0..g.order() {
            let p = st.entry(x, y);
            if !p.is_zero() {
                cols.insert(order[y].clone(), json!(p.to_string()));
            }
        }
        rows.insert(order[x].clone(), Value::Object(cols));
    }
    Value::Object(rows)
}

pub fn signed_table_to_csv(comment_lines: &[String], st: &SignedKLTable) -> String {
    let g = st.group();
    let order = g.word_strings();
    let mut out = String::new();
    for line in comment_lines {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!(",{}\n", order.join(",")));
    for x in 0..g.order() {
        let cells: Vec<String> = (0..g.order())
            .map(|y| st.entry(x, y).to_string())
            .collect();
        out.push_str(&format!("{},{}\n", order[x], cells.join(",")));
    }
    out
}

/// Character as an array of (weight coordinates, multiplicity) pairs.
pub fn character_to_json(ch: &TruncatedCharacter) -> Value {
    Value::Array(
        ch.coeffs
            .iter()
            .map(|(w, &m)| json!([weight_value(w), m]))
            .collect(),
    )
}

pub fn signature_character_to_json(ch: &SignatureCharacter) -> Value {
    Value::Array(
        ch.coeffs
            .iter()
            .map(|(w, &m)| json!([weight_value(w), m]))
            .collect(),
    )
}

/// Per weight space the (order, sign) list; per level the truncated
/// signature character.
pub fn jantzen_report_to_json(group: &WeylGroup, report: &JantzenReport) -> Value {
    let spaces: Vec<Value> = report
        .spaces
        .iter()
        .map(|s| {
            json!({
                "nu": s.nu,
                "weight": weight_value(&s.weight),
                "entries": s.entries.iter().map(|&(k, sign)| {
                    json!({"order": k, "sign": sign as i64})
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut levels = Vec::new();
    for j in 0..=report.max_order() {
        let ch = crate::shapovalov::signature_character_limit(report, j);
        levels.push(json!({
            "level": j,
            "signature_character": signature_character_to_json(&ch),
        }));
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "x": group.element(report.x).word_string(),
        "depth": report.depth,
        "spaces": spaces,
        "levels": levels,
    })
}

/// One polynomial rendered for reports.
pub fn poly_string(p: &IntPolynomial) -> String {
    p.to_string()
}
