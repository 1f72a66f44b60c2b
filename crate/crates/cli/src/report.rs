//! JSON report documents. Keys come out sorted because `serde_json` maps
//! are ordered; rationals are strings such as `"-3/2"`.

use extform::bounds::{BoundReport, CoverOutcome, CoverStatus};
use extform::constructions::{Failure, VerifyReport};
use extform::{RatMatrix, Rational};
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

/// The full document; `seed` is recorded when a seeded search ran.
pub fn document(command: &str, inputs: Value, results: Value, seed: Option<u64>) -> String {
    let doc = json!({
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "results": results,
        "provenance": {
            "tool": "extform",
            "version": env!("CARGO_PKG_VERSION"),
            "seed": seed,
        },
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn failure(f: &Failure) -> Value {
    match f {
        Failure::MissingVertex { index, point } => json!({
            "kind": "missing vertex",
            "vertex": index,
            "point": vector(point),
        }),
        Failure::FacetViolated { row, value, bound, lift } => json!({
            "kind": "inequality violated",
            "row": row,
            "value": rational(value),
            "bound": rational(bound),
            "lift": vector(lift),
        }),
        Failure::EquationViolated { row, value, rhs, lift } => json!({
            "kind": "equation violated",
            "row": row,
            "value": rational(value),
            "rhs": rational(rhs),
            "lift": vector(lift),
        }),
        Failure::Unbounded { row, point, ray } => json!({
            "kind": "unbounded",
            "row": row,
            "point": vector(point),
            "ray": vector(ray),
        }),
    }
}

pub fn verify(r: &VerifyReport) -> Value {
    json!({
        "name": r.name,
        "size": r.size,
        "passed": r.passed(),
        "vertices_checked": r.vertices_checked,
        "inequalities_checked": r.inequalities_checked,
        "equations_checked": r.equations_checked,
        "failures": r.failures.iter().map(failure).collect::<Vec<_>>(),
    })
}

fn cover(c: &CoverOutcome) -> Value {
    let (status, nodes) = match c {
        CoverOutcome::Found(c) if c.status == CoverStatus::Exact => ("exact", None),
        CoverOutcome::Found(_) => ("greedy", None),
        CoverOutcome::ExceedsBudget { nodes, .. } => ("exceeds budget", Some(*nodes)),
    };
    let rects: Vec<Value> = c
        .cover()
        .rectangles
        .iter()
        .map(|r| json!({ "rows": r.rows, "cols": r.cols }))
        .collect();
    json!({
        "status": status,
        "size": c.cover().len(),
        "nodes": nodes,
        "rectangles": rects,
    })
}

pub fn bounds(r: &BoundReport) -> Value {
    json!({
        "lower": r.lower,
        "lower_sources": r.lower_sources,
        "upper": r.upper,
        "upper_sources": r.upper_sources,
        "pinned": r.pinned(),
        "rank": r.rank,
        "faces": r.faces,
        "log_faces": r.log_faces,
        "rectangle_cover": cover(&r.cover),
        "fooling_set": {
            "size": r.fooling.len(),
            "exact": r.fooling.exact,
            "entries": r.fooling.entries,
        },
        "inequalities": r.inequalities,
        "points": r.points,
        "known_extensions": r.known.iter().map(|k| json!({
            "name": k.name,
            "size": k.size,
            "verified": k.verified,
        })).collect::<Vec<_>>(),
    })
}
