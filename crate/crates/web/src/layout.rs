//! Layered SVG drawing of an event network.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use aoaforge::dot::event_levels;
use aoaforge::{AoaDag, ArcKind};

const COLUMN: f64 = 120.0;
const ROW: f64 = 80.0;
const MARGIN: f64 = 40.0;
const RADIUS: f64 = 14.0;

/// Event centres: one column per level, events stacked by id.
pub fn positions(aoa: &AoaDag) -> HashMap<u32, (f64, f64)> {
    let levels = event_levels(aoa);
    let tallest = levels.values().map(Vec::len).max().unwrap_or(1) as f64;
    let mut out = HashMap::new();
    for (&level, ids) in &levels {
        let offset = (tallest - ids.len() as f64) * ROW / 2.0;
        for (i, &id) in ids.iter().enumerate() {
            out.insert(id, (MARGIN + level as f64 * COLUMN, MARGIN + offset + i as f64 * ROW));
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG text. Arcs in `critical` get the `critical` class, dummies the
/// `dummy` class; parallel arcs between the same events are bent apart.
pub fn render_svg(aoa: &AoaDag, critical: &BTreeSet<String>) -> String {
    let pos = positions(aoa);
    let width = pos.values().map(|p| p.0).fold(0.0, f64::max) + MARGIN;
    let height = pos.values().map(|p| p.1).fold(0.0, f64::max) + MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    );
    svg.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" orient="auto">"#,
        r#"<path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#,
        "\n"
    ));

    let mut arcs: Vec<_> = aoa.arcs.iter().collect();
    arcs.sort_by(|a, b| a.label.cmp(&b.label));
    let mut bundles: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for a in &arcs {
        *bundles.entry((a.tail, a.head)).or_default() += 1;
    }
    let mut seen: HashMap<(u32, u32), usize> = HashMap::new();
    for a in arcs {
        let (Some(&(x1, y1)), Some(&(x2, y2))) = (pos.get(&a.tail), pos.get(&a.head)) else {
            continue;
        };
        let count = bundles[&(a.tail, a.head)];
        let k = seen.entry((a.tail, a.head)).or_default();
        let bend = (*k as f64 - (count as f64 - 1.0) / 2.0) * 30.0;
        *k += 1;

        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1.0);
        let (ux, uy) = (dx / len, dy / len);
        let (sx, sy) = (x1 + ux * RADIUS, y1 + uy * RADIUS);
        let (ex, ey) = (x2 - ux * RADIUS, y2 - uy * RADIUS);
        let (cx, cy) = ((sx + ex) / 2.0 - uy * bend, (sy + ey) / 2.0 + ux * bend);
        let (lx, ly) = ((sx + 2.0 * cx + ex) / 4.0, (sy + 2.0 * cy + ey) / 4.0 - 4.0);

        let mut class = String::from("arc");
        if a.kind == ArcKind::Dummy {
            class.push_str(" dummy");
        }
        if critical.contains(a.label.as_str()) {
            class.push_str(" critical");
        }
        let text = match a.kind {
            ArcKind::Dummy => a.label.to_string(),
            ArcKind::Real => format!("{}({})", a.label, a.duration),
        };
        let _ = writeln!(
            svg,
            r#"<g class="{class}"><path d="M{sx:.1},{sy:.1} Q{cx:.1},{cy:.1} {ex:.1},{ey:.1}" marker-end="url(#arrow)"/><text x="{lx:.1}" y="{ly:.1}">{}</text></g>"#,
            escape(&text)
        );
    }

    let mut events: Vec<_> = aoa.events.iter().collect();
    events.sort_by_key(|e| e.id);
    for e in events {
        if let Some(&(x, y)) = pos.get(&e.id) {
            let _ = writeln!(
                svg,
                r#"<g class="event"><circle cx="{x:.1}" cy="{y:.1}" r="{RADIUS}"/><text x="{x:.1}" y="{:.1}">{}</text></g>"#,
                y + 4.0,
                e.id
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}
