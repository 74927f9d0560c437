use std::fmt::Write;

use serde_json::{json, Value as Json};

use super::{Location, ResolutionTree};

pub const SCHEMA_VERSION: u32 = 1;

fn location_label(l: &Location) -> String {
    match l {
        Location::Root => "root".into(),
        Location::Chart1Origin => "chart 1 origin".into(),
        Location::Chart2Origin => "chart 2 origin".into(),
        Location::OnExceptional { minpoly } => format!("E: {minpoly} = 0"),
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering, one vertex per node, labelled
/// `X(d;a,b) (p,q) e=.. ν=..` for blow-up centres.
pub fn tree_to_dot(t: &ResolutionTree) -> String {
    let mut s = String::from("digraph resolution {\n  node [shape=box, fontname=\"monospace\"];\n");
    for n in &t.nodes {
        let mut label = n.ambient.to_string();
        match &n.blowup {
            Some(b) => {
                let _ = write!(
                    label,
                    " ({},{}) e={} ν={}",
                    b.weights.0, b.weights.1, b.e, b.nu
                );
            }
            None => label.push_str(" leaf"),
        }
        if n.weight > 1 {
            let _ = write!(label, " ×{}", n.weight);
        }
        let _ = write!(label, "\\n{}", escape(&location_label(&n.location)));
        let style = if n.blowup.is_none() {
            ", style=rounded"
        } else {
            ""
        };
        let _ = writeln!(s, "  n{} [label=\"{}\"{}];", n.id, label, style);
    }
    for n in &t.nodes {
        for c in &n.children {
            let _ = writeln!(s, "  n{} -> n{};", n.id, c);
        }
    }
    s.push_str("}\n");
    s
}

pub fn tree_to_json(t: &ResolutionTree) -> Json {
    let nodes: Vec<Json> = t
        .nodes
        .iter()
        .map(|n| {
            json!({
                "id": n.id,
                "parent": n.parent,
                "children": n.children,
                "ambient": n.ambient.to_string(),
                "location": n.location,
                "weight": n.weight,
                "germ": n.germ.as_ref().map(|g| g.to_string()),
                "blowup": n.blowup,
            })
        })
        .collect();
    let leaves: Vec<Json> = t
        .leaves
        .iter()
        .map(|l| json!({ "node": l.node, "ambient": l.ambient.to_string(), "orbit_count": l.orbit_count }))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "mode": t.mode,
        "root_ambient": t.root_ambient.to_string(),
        "roots": t.roots,
        "nodes": nodes,
        "leaves": leaves,
    })
}
