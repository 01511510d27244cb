//! Graphviz DOT rendering of both network kinds.
//!
//! Output is byte-stable: nodes are grouped by longest-path level into
//! `rank=same` blocks and everything is emitted in sorted order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::aoa::{AoaDag, ArcKind};
use crate::graph::{AonDag, NodeKind};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Event network: circles named by event id, activities as solid edges
/// labelled `code(duration)`, dummies as dashed edges.
pub fn render_aoa_dot(aoa: &AoaDag) -> String {
    let levels = event_levels(aoa);
    let mut out = String::new();
    out.push_str("digraph aoa {\n  rankdir=LR;\n  node [shape=circle];\n");
    for ids in levels.values() {
        let members: Vec<String> = ids.iter().map(|id| format!("{id};")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", members.join(" "));
    }
    for arc in &aoa.arcs {
        let _ = match arc.kind {
            ArcKind::Real => writeln!(
                out,
                "  {} -> {} [label={}];",
                arc.tail,
                arc.head,
                quote(&format!("{}({})", arc.label, arc.duration))
            ),
            ArcKind::Dummy => {
                writeln!(out, "  {} -> {} [label={}, style=dashed];", arc.tail, arc.head, quote(arc.label.as_str()))
            }
        };
    }
    out.push_str("}\n");
    out
}

/// Longest-path level of every event from the source, grouped.
pub fn event_levels(aoa: &AoaDag) -> BTreeMap<u32, Vec<u32>> {
    let mut level: HashMap<u32, u32> = aoa.events.iter().map(|e| (e.id, 0)).collect();
    // Event ids are topological, so one pass in id order settles every level.
    let mut arcs: Vec<(u32, u32)> = aoa.arcs.iter().map(|a| (a.tail, a.head)).collect();
    arcs.sort();
    let mut ids: Vec<u32> = aoa.events.iter().map(|e| e.id).collect();
    ids.sort();
    for id in ids {
        let here = level[&id];
        for &(_, h) in arcs.iter().filter(|(t, _)| *t == id) {
            let entry = level.entry(h).or_default();
            *entry = (*entry).max(here + 1);
        }
    }
    let mut grouped: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (id, l) in level {
        grouped.entry(l).or_default().push(id);
    }
    for ids in grouped.values_mut() {
        ids.sort();
    }
    grouped
}

/// Node network: activities as boxes (dummies dashed), one rank per level.
pub fn render_aon_dot(g: &AonDag) -> String {
    let levels = g.topological_levels();
    let mut out = String::new();
    out.push_str("digraph aon {\n  rankdir=LR;\n  node [shape=box];\n");
    for (level, members) in levels.groups() {
        let names: Vec<String> = members.iter().map(|m| format!("{};", quote(m.as_str()))).collect();
        let _ = writeln!(out, "  {{ rank=same; /* level {level} */ {} }}", names.join(" "));
    }
    let mut nodes: Vec<_> = g.nodes().iter().collect();
    nodes.sort_by(|a, b| a.id.cmp(&b.id));
    for node in nodes {
        let label = match node.kind {
            NodeKind::Dummy => format!("{} [style=dashed];", quote(node.id.as_str())),
            _ => format!("{} [label={}];", quote(node.id.as_str()), quote(&format!("{}({})", node.id, node.duration))),
        };
        let _ = writeln!(out, "  {label}");
    }
    for (t, h) in g.arcs() {
        let _ = writeln!(out, "  {} -> {};", quote(t.as_str()), quote(h.as_str()));
    }
    out.push_str("}\n");
    out
}
