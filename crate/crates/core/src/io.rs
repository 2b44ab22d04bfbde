//! Exact, bit-reproducible file formats: node-set JSON with rationals as
//! canonical "p/q" strings, blueprint annexes, and JSON report rendering.

use crate::conjecture::{LineUsageReport, SetReport};
use crate::gc::LatticeTag;
use crate::geom::{rat_from_str, rat_to_string, GeomError, Line, Point};
use crate::lattices::LatticeBlueprint;
use crate::nodeset::{NodeSet, NodeSetError};
use crate::reduction::{ReductionChain, StepKind};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad document structure: {0}")]
    Structure(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    NodeSet(#[from] NodeSetError),
}

fn structure(msg: impl Into<String>) -> IoError {
    IoError::Structure(msg.into())
}

pub fn point_to_json(p: &Point) -> Value {
    json!([rat_to_string(&p.x), rat_to_string(&p.y)])
}

pub fn line_to_json(l: &Line) -> Value {
    let (a, b, c) = l.coeff_triple();
    json!([a, b, c])
}

fn point_from_json(v: &Value) -> Result<Point, IoError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| structure("node must be a [x, y] pair"))?;
    let x = rat_from_str(pair[0].as_str().ok_or_else(|| structure("x not a string"))?)?;
    let y = rat_from_str(pair[1].as_str().ok_or_else(|| structure("y not a string"))?)?;
    Ok(Point::new(x, y))
}

fn line_from_json(v: &Value) -> Result<Line, IoError> {
    let triple = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| structure("line must be an [a, b, c] triple"))?;
    let mut coeffs = Vec::new();
    for c in triple {
        let s = c.as_str().ok_or_else(|| structure("coefficient not a string"))?;
        coeffs.push(
            BigInt::from_str(s).map_err(|_| structure(format!("bad integer {s:?}")))?,
        );
    }
    Ok(Line::from_bigints(
        coeffs[0].clone(),
        coeffs[1].clone(),
        coeffs[2].clone(),
    )?)
}

/// Document for a node set, optionally with annotated lines.
pub fn node_set_to_json(set: &NodeSet, lines: &[Line]) -> Value {
    let mut doc = Map::new();
    doc.insert("degree".into(), json!(set.degree()));
    doc.insert(
        "nodes".into(),
        Value::Array(set.nodes().iter().map(point_to_json).collect()),
    );
    if !lines.is_empty() {
        doc.insert(
            "lines".into(),
            Value::Array(lines.iter().map(line_to_json).collect()),
        );
    }
    Value::Object(doc)
}

/// Parses a node-set document; validates cardinality and distinctness.
pub fn node_set_from_json(doc: &Value) -> Result<(NodeSet, Vec<Line>), IoError> {
    let degree = doc
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| structure("missing integer field \"degree\""))? as usize;
    let nodes_v = doc
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| structure("missing array field \"nodes\""))?;
    let mut nodes = Vec::with_capacity(nodes_v.len());
    for v in nodes_v {
        nodes.push(point_from_json(v)?);
    }
    let set = NodeSet::new(degree, nodes)?;
    let mut lines = Vec::new();
    if let Some(ls) = doc.get("lines") {
        for v in ls
            .as_array()
            .ok_or_else(|| structure("\"lines\" must be an array"))?
        {
            lines.push(line_from_json(v)?);
        }
    }
    Ok((set, lines))
}

pub fn node_set_to_string(set: &NodeSet, lines: &[Line]) -> String {
    serde_json::to_string_pretty(&node_set_to_json(set, lines)).expect("valid JSON tree")
}

pub fn node_set_from_str(s: &str) -> Result<(NodeSet, Vec<Line>), IoError> {
    let doc: Value = serde_json::from_str(s)?;
    node_set_from_json(&doc)
}

/// Blueprint annex listing the construction data of a generated lattice.
pub fn blueprint_to_json(bp: &LatticeBlueprint) -> Value {
    json!({
        "family": bp.family.name(),
        "construction_lines": bp.construction_lines.iter().map(line_to_json).collect::<Vec<_>>(),
        "free_nodes": bp.free_nodes.iter().map(point_to_json).collect::<Vec<_>>(),
        "outside_nodes": bp.outside_nodes.iter().map(point_to_json).collect::<Vec<_>>(),
        "o_lines": bp.o_lines.iter().map(line_to_json).collect::<Vec<_>>(),
        "special_nodes": bp.special_nodes.iter().map(point_to_json).collect::<Vec<_>>(),
        "distinguished_line": bp.distinguished_line.as_ref().map(line_to_json),
        "modification_count": bp.modification_count,
    })
}

fn family_from_name(name: &str) -> Result<crate::lattices::FamilyTag, IoError> {
    use crate::lattices::FamilyTag::*;
    Ok(match name {
        "chung-yao" => ChungYao,
        "carnicer-gasca" => CarnicerGasca,
        "principal" => Principal,
        "gpl" => GeneralizedPrincipal,
        "n-max" => NMax,
        "n-minus-1-max" => NMinus1Max,
        "y-star" => YStar,
        "x-star" => XStar,
        _ => match name.strip_prefix("modified-") {
            Some(rest) => Modified(Box::new(family_from_name(rest)?)),
            None => return Err(structure(format!("unknown family {name:?}"))),
        },
    })
}

fn points_field(doc: &Value, key: &str) -> Result<Vec<Point>, IoError> {
    doc.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| structure(format!("missing array field {key:?}")))?
        .iter()
        .map(point_from_json)
        .collect()
}

fn lines_field(doc: &Value, key: &str) -> Result<Vec<Line>, IoError> {
    doc.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| structure(format!("missing array field {key:?}")))?
        .iter()
        .map(line_from_json)
        .collect()
}

/// Parses a blueprint annex written by [`blueprint_to_json`].
pub fn blueprint_from_json(doc: &Value) -> Result<LatticeBlueprint, IoError> {
    let family = family_from_name(
        doc.get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| structure("missing string field \"family\""))?,
    )?;
    let distinguished_line = match doc.get("distinguished_line") {
        None | Some(Value::Null) => None,
        Some(v) => Some(line_from_json(v)?),
    };
    Ok(LatticeBlueprint {
        family,
        construction_lines: lines_field(doc, "construction_lines")?,
        free_nodes: points_field(doc, "free_nodes")?,
        outside_nodes: points_field(doc, "outside_nodes")?,
        o_lines: lines_field(doc, "o_lines")?,
        special_nodes: points_field(doc, "special_nodes")?,
        distinguished_line,
        modification_count: doc
            .get("modification_count")
            .and_then(Value::as_u64)
            .unwrap_or(0) as usize,
    })
}

fn chain_to_json(chain: &ReductionChain) -> Value {
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .map(|s| {
            let (kind, lines) = match &s.kind {
                StepKind::DisjointMax(l) => ("disjoint-max", vec![line_to_json(l)]),
                StepKind::AdjacentPair(a, b) => {
                    ("adjacent-pair", vec![line_to_json(a), line_to_json(b)])
                }
            };
            json!({
                "kind": kind,
                "lines": lines,
                "removed_nodes": s.removed_nodes,
            })
        })
        .collect();
    json!({
        "steps": steps,
        "proper": chain.proper,
        "final_degree": chain.final_set.degree(),
        "final_line_count": chain.final_line_count(),
    })
}

pub fn line_report_to_json(r: &LineUsageReport) -> Value {
    json!({
        "line": line_to_json(&r.line),
        "node_count": r.node_count,
        "sigma": r.sigma,
        "users": r.users.iter().collect::<Vec<_>>(),
        "usage_size": r.usage_size,
        "recovered_s": r.recovered_s,
        "proper_chain": r.proper_chain.as_ref().map(chain_to_json),
        "per_maximal_counts": r.per_maximal_counts.iter()
            .map(|(l, c)| json!({"line": line_to_json(l), "count": c}))
            .collect::<Vec<_>>(),
        "clauses": {
            "usage": r.clause_usage,
            "nonempty": r.clause_nonempty,
            "per_maximal": r.clause_per_maximal,
        },
        "pass": r.passes(),
    })
}

fn tag_name(tag: &LatticeTag) -> &'static str {
    match tag {
        LatticeTag::GeneralizedPrincipal => "generalized-principal",
        LatticeTag::NMinus1Max => "n-minus-1-maximal",
        LatticeTag::NMax => "n-maximal",
        LatticeTag::CarnicerGasca => "carnicer-gasca",
        LatticeTag::ChungYao => "chung-yao",
        LatticeTag::Unclassified => "unclassified",
    }
}

pub fn set_report_to_json(r: &SetReport) -> Value {
    json!({
        "degree": r.degree,
        "node_count": r.node_count,
        "mu": r.mu,
        "classification": tag_name(&r.classification.tag),
        "lines": r.lines.iter().map(line_report_to_json).collect::<Vec<_>>(),
        "all_pass": r.all_pass,
    })
}

/// Human-readable one-line-per-line summary of a set report.
pub fn set_report_to_text(r: &SetReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "degree {} set, {} nodes, mu = {}, class = {}\n",
        r.degree,
        r.node_count,
        r.mu,
        tag_name(&r.classification.tag)
    ));
    for lr in &r.lines {
        out.push_str(&format!(
            "  line {}: k = {}, sigma = {}, |X_l| = {}{}, {}\n",
            lr.line,
            lr.node_count,
            lr.sigma,
            lr.usage_size,
            lr.recovered_s
                .map(|s| format!(" = C({s},2)"))
                .unwrap_or_default(),
            if lr.passes() { "pass" } else { "FAIL" }
        ));
    }
    out.push_str(if r.all_pass {
        "verdict: all clauses pass\n"
    } else {
        "verdict: FINDINGS PRESENT\n"
    });
    out
}

pub fn line_report_to_text(r: &LineUsageReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "line {}: k = {}, sigma = {}, |X_l| = {}{}\n",
        r.line,
        r.node_count,
        r.sigma,
        r.usage_size,
        r.recovered_s
            .map(|s| format!(" = C({s},2)"))
            .unwrap_or_default(),
    ));
    match &r.proper_chain {
        Some(chain) => out.push_str(&format!(
            "  proper chain: {} step(s), final degree {}\n",
            chain.steps.len(),
            chain.final_set.degree()
        )),
        None => out.push_str("  no proper reduction chain\n"),
    }
    for (l, c) in &r.per_maximal_counts {
        out.push_str(&format!("  maximal {l}: {c} user(s)\n"));
    }
    out.push_str(&format!(
        "  clauses: usage {} / nonempty {} / per-maximal {} -> {}\n",
        r.clause_usage,
        r.clause_nonempty,
        r.clause_per_maximal,
        if r.passes() { "pass" } else { "FAIL" }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    #[test]
    fn node_set_round_trip_bit_exact() {
        let set = NodeSet::new(
            1,
            vec![
                Point::new(rat(1, 3), rat(-7, 2)),
                Point::from_ints(0, 0),
                Point::new(rat(22, 7), rat(5, 1)),
            ],
        )
        .unwrap();
        let lines = vec![Line::new(3, -1, 2).unwrap()];
        let text = node_set_to_string(&set, &lines);
        let (back, back_lines) = node_set_from_str(&text).unwrap();
        assert_eq!(set, back);
        assert_eq!(lines, back_lines);
        // serialization is canonical: a second trip produces identical bytes
        assert_eq!(text, node_set_to_string(&back, &back_lines));
    }

    #[test]
    fn blueprint_round_trip() {
        let (_, _, bp) = crate::lattices::fixtures::y_star_fixture();
        let doc = blueprint_to_json(&bp);
        let back = blueprint_from_json(&doc).unwrap();
        assert_eq!(back.family, bp.family);
        assert_eq!(back.construction_lines, bp.construction_lines);
        assert_eq!(back.free_nodes, bp.free_nodes);
        assert_eq!(back.outside_nodes, bp.outside_nodes);
        assert_eq!(back.o_lines, bp.o_lines);
        assert_eq!(back.special_nodes, bp.special_nodes);
        assert_eq!(back.distinguished_line, bp.distinguished_line);
        assert_eq!(back.modification_count, bp.modification_count);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(node_set_from_str("{").is_err());
        assert!(node_set_from_str("{\"nodes\": []}").is_err());
        assert!(node_set_from_str("{\"degree\": 1, \"nodes\": [[\"0\", \"0\"]]}").is_err());
        let dup = r#"{"degree": 1, "nodes": [["0","0"],["0","0"],["1","0"]]}"#;
        assert!(node_set_from_str(dup).is_err());
    }
}
