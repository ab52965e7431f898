//! `sumtree-v1` JSON and Graphviz DOT encodings.
//!
//! JSON output is canonical: keys in the order `format, n, root, parent,
//! coloring`, no whitespace, the root's parent written as `-1`.

use serde::Serialize;
use serde_json::{Map, Value};

use super::{Coloring, RootedTree};
use crate::error::{Error, Result};

pub const FORMAT_TAG: &str = "sumtree-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Serialize)]
struct Wire<'a> {
    format: &'static str,
    n: usize,
    root: usize,
    parent: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coloring: Option<&'a [u64]>,
}

/// Encodes a tree and optional coloring. JSON output has no trailing newline.
pub fn serialize(
    tree: &RootedTree,
    coloring: Option<&Coloring>,
    format: Format,
) -> Result<Vec<u8>> {
    if let Some(c) = coloring {
        if c.len() != tree.len() {
            return Err(Error::input(format!(
                "coloring has {} entries but the tree has {} vertices",
                c.len(),
                tree.len()
            )));
        }
    }
    Ok(match format {
        Format::Json => {
            let wire = Wire {
                format: FORMAT_TAG,
                n: tree.len(),
                root: tree.root(),
                parent: tree
                    .parents()
                    .iter()
                    .map(|p| p.map_or(-1, |p| p as i64))
                    .collect(),
                coloring: coloring.map(Coloring::colors),
            };
            serde_json::to_vec(&wire).expect("plain struct serializes")
        }
        Format::Dot => to_dot(tree, coloring).into_bytes(),
    })
}

fn to_dot(tree: &RootedTree, coloring: Option<&Coloring>) -> String {
    let mut out = String::from("graph sumtree {\n");
    for v in 0..tree.len() {
        match coloring {
            Some(c) => out.push_str(&format!("  {v} [label=\"v{v}\\nc={}\"];\n", c.get(v))),
            None => out.push_str(&format!("  {v} [label=\"v{v}\"];\n")),
        }
    }
    for (p, v) in tree.edges() {
        out.push_str(&format!("  {p} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Decodes either encoding; the first non-blank byte decides which.
pub fn parse(bytes: &[u8]) -> Result<(RootedTree, Option<Coloring>)> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::parse("input", e.to_string()))?;
    match text.trim_start().chars().next() {
        Some('{') => parse_json(text),
        Some('g') => parse_dot(text),
        _ => Err(Error::parse(
            "input",
            "expected a sumtree-v1 JSON object or a DOT graph",
        )),
    }
}

fn parse_json(text: &str) -> Result<(RootedTree, Option<Coloring>)> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::parse("input", e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("input", "top level is not an object"))?;
    if let Some(key) = obj
        .keys()
        .find(|k| !matches!(k.as_str(), "format" | "n" | "root" | "parent" | "coloring"))
    {
        return Err(Error::parse(key.as_str(), "unknown field"));
    }

    match obj.get("format") {
        Some(Value::String(s)) if s == FORMAT_TAG => {}
        Some(other) => {
            return Err(Error::parse(
                "format",
                format!("expected \"{FORMAT_TAG}\", got {other}"),
            ))
        }
        None => return Err(Error::parse("format", "missing")),
    }
    let n = uint_field(obj, "n")?;
    if n == 0 {
        return Err(Error::parse("n", "must be positive"));
    }
    let n = n as usize;
    let root = uint_field(obj, "root")? as usize;
    if root >= n {
        return Err(Error::parse("root", format!("{root} is outside 0..{n}")));
    }

    let parent_raw = int_array(obj, "parent", n)?;
    let mut parent = Vec::with_capacity(n);
    for (v, &p) in parent_raw.iter().enumerate() {
        parent.push(match p {
            -1 => None,
            p if p >= 0 && (p as u64) < n as u64 => Some(p as usize),
            p => {
                return Err(Error::parse(
                    "parent",
                    format!("entry {v} is {p}, not -1 or a vertex id"),
                ))
            }
        });
    }
    if parent[root].is_some() {
        return Err(Error::parse(
            "parent",
            format!("root {root} must have parent -1"),
        ));
    }
    let tree =
        RootedTree::from_parents(parent).map_err(|e| Error::parse("parent", e.to_string()))?;

    let coloring = match obj.get("coloring") {
        None => None,
        Some(_) => {
            let raw = int_array(obj, "coloring", n)?;
            let colors = raw
                .iter()
                .enumerate()
                .map(|(v, &c)| {
                    if c >= 1 {
                        Ok(c as u64)
                    } else {
                        Err(Error::parse(
                            "coloring",
                            format!("entry {v} is {c}; colors start at 1"),
                        ))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Some(Coloring(colors))
        }
    };
    Ok((tree, coloring))
}

fn uint_field(obj: &Map<String, Value>, key: &str) -> Result<u64> {
    obj.get(key)
        .ok_or_else(|| Error::parse(key, "missing"))?
        .as_u64()
        .ok_or_else(|| Error::parse(key, "expected a nonnegative integer"))
}

fn int_array(obj: &Map<String, Value>, key: &str, n: usize) -> Result<Vec<i64>> {
    let arr = obj
        .get(key)
        .ok_or_else(|| Error::parse(key, "missing"))?
        .as_array()
        .ok_or_else(|| Error::parse(key, "expected an array"))?;
    if arr.len() != n {
        return Err(Error::parse(
            key,
            format!("has {} entries, expected n = {n}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(v, x)| {
            x.as_i64()
                .ok_or_else(|| Error::parse(key, format!("entry {v} is not an integer")))
        })
        .collect()
}

/// Reads back the DOT produced by [`serialize`]. Edges are `parent -- child`.
fn parse_dot(text: &str) -> Result<(RootedTree, Option<Coloring>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some(l) if l.starts_with("graph") && l.ends_with('{') => {}
        _ => return Err(Error::parse("graph", "expected `graph <name> {`")),
    }
    let mut labels: Vec<Option<u64>> = Vec::new();
    let mut edges = Vec::new();
    let mut closed = false;
    for line in lines {
        if line == "}" {
            closed = true;
            break;
        }
        let body = line
            .strip_suffix(';')
            .ok_or_else(|| Error::parse("statement", format!("missing `;` in `{line}`")))?;
        if let Some((a, b)) = body.split_once("--") {
            let p = dot_id(a.trim(), "edge")?;
            let v = dot_id(b.trim(), "edge")?;
            edges.push((p, v));
        } else if let Some((id, rest)) = body.split_once('[') {
            let v = dot_id(id.trim(), "node")?;
            if v != labels.len() {
                return Err(Error::parse("node", format!("node {v} out of order")));
            }
            let label = rest
                .trim()
                .strip_prefix("label=\"")
                .and_then(|r| r.strip_suffix("\"]"))
                .ok_or_else(|| {
                    Error::parse("label", format!("malformed attribute list on node {v}"))
                })?;
            let color = match label.split_once("\\nc=") {
                Some((_, c)) => {
                    Some(c.parse::<u64>().ok().filter(|&c| c >= 1).ok_or_else(|| {
                        Error::parse("label", format!("bad color `{c}` on node {v}"))
                    })?)
                }
                None => None,
            };
            labels.push(color);
        } else {
            return Err(Error::parse("statement", format!("unrecognized `{line}`")));
        }
    }
    if !closed {
        return Err(Error::parse("graph", "missing closing `}`"));
    }
    let n = labels.len();
    if n == 0 {
        return Err(Error::parse("node", "graph has no nodes"));
    }
    let mut parent = vec![None; n];
    for (p, v) in edges {
        if p >= n || v >= n {
            return Err(Error::parse(
                "edge",
                format!("{p} -- {v} names an undeclared node"),
            ));
        }
        if parent[v].replace(p).is_some() {
            return Err(Error::parse("edge", format!("vertex {v} has two parents")));
        }
    }
    let tree = RootedTree::from_parents(parent).map_err(|e| Error::parse("edge", e.to_string()))?;
    let coloring = if labels.iter().all(Option::is_some) {
        Some(Coloring(labels.into_iter().flatten().collect()))
    } else if labels.iter().all(Option::is_none) {
        None
    } else {
        return Err(Error::parse(
            "label",
            "colors given on some nodes but not all",
        ));
    };
    Ok((tree, coloring))
}

fn dot_id(s: &str, field: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(field, format!("`{s}` is not a vertex id")))
}
