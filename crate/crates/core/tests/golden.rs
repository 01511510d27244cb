//! Bundled sample tables: the twelve-activity table with durations, the
//! fourteen-activity precedence table and the single-Z table.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use aoaforge::*;
use common::*;

fn id(s: &str) -> ActivityId {
    ActivityId::new(s).unwrap()
}

fn ids(list: &[&str]) -> Vec<ActivityId> {
    list.iter().map(|s| id(s)).collect()
}

fn twelve() -> AonDag {
    build_aon(&parse_schedule_table(samples::TWELVE_ACTIVITIES).unwrap(), AugmentPolicy::Strict).unwrap()
}

fn fourteen() -> AonDag {
    build_aon(&parse_schedule_table(samples::FIVE_DUMMIES).unwrap(), AugmentPolicy::Strict).unwrap()
}

fn conversion(text: &str) -> Conversion {
    convert_text(text, &ConvertOptions::default()).unwrap()
}

// ---- core graph ----------------------------------------------------------

#[test]
fn twelve_activity_table_validates() {
    assert_eq!(twelve().validate(), Ok(()));
}

#[test]
fn twelve_activity_levels() {
    let groups = twelve().topological_levels().groups();
    let expected: Vec<(u32, Vec<ActivityId>)> = vec![
        (1, ids(&["α"])),
        (2, ids(&["A", "B", "D"])),
        (3, ids(&["G", "H"])),
        (4, ids(&["C", "E", "I"])),
        (5, ids(&["F", "J"])),
        (6, ids(&["ω"])),
    ];
    assert_eq!(groups, expected);
}

#[test]
fn levels_agree_with_relaxation_oracle_and_ignore_transitive_arc() {
    let mut g = twelve();
    let oracle = relaxed_levels(&nodes_of(&g), &arcs_of(&g));
    let before = g.topological_levels();
    for (code, level) in &oracle {
        assert_eq!(before.level(code), Some(*level), "{code}");
    }
    g.add_arc("α", "G").unwrap();
    assert_eq!(g.topological_levels(), before);
    assert_eq!(relaxed_levels(&nodes_of(&g), &arcs_of(&g)), oracle);
}

#[test]
fn closure_contains_long_paths() {
    let g = twelve();
    let closure = g.transitive_closure();
    assert!(closure.contains("D", "F"));
    assert!(closure.contains("B", "F"));
    let oracle = bfs_closure(&nodes_of(&g), &arcs_of(&g));
    let ours: BTreeSet<Pair> = closure.pairs().into_iter().map(|(u, v)| (u.to_string(), v.to_string())).collect();
    assert_eq!(ours, oracle);
}

#[test]
fn neighbor_queries() {
    let g = twelve();
    assert_eq!(g.neighbors("D", Direction::Out).unwrap(), vec![&id("G"), &id("H")]);
    assert!(g.neighbors("α", Direction::In).unwrap().is_empty());
    let g = fourteen();
    assert_eq!(g.neighbors("J", Direction::In).unwrap(), vec![&id("C"), &id("F"), &id("G")]);
}

// ---- schedule io ---------------------------------------------------------

#[test]
fn fourteen_activity_table_builds_exactly() {
    let t = parse_schedule_table(samples::FIVE_DUMMIES).unwrap();
    let g = build_aon(&t, AugmentPolicy::Auto).unwrap();
    assert_eq!(g.node_count(), 14);
    let expected: BTreeSet<(ActivityId, ActivityId)> =
        t.rows().iter().flat_map(|r| r.predecessors.iter().map(move |p| (p.clone(), r.code.clone()))).collect();
    assert_eq!(g.arc_set(), expected);
    assert_eq!(g.arc_count(), t.predecessor_entry_count());
}

#[test]
fn table_round_trip_is_canonical() {
    let t = parse_schedule_table(samples::TWELVE_ACTIVITIES).unwrap();
    let emitted = emit_table(&t);
    assert!(emitted.starts_with("code,duration,predecessors\nα,0,-\nA,2,α\n"));
    assert!(emitted.contains("\nJ,3,C\n"));
    assert!(emitted.ends_with("ω,0,E;J;F\n"));
    assert_eq!(parse_schedule_table(&emitted).unwrap(), t);
}

// ---- line graph ----------------------------------------------------------

#[test]
fn fourteen_activity_bars_match_brute_force() {
    let g = fourteen();
    let expected = pairs(&[("B", "C"), ("B", "D"), ("D", "H"), ("C", "J"), ("F", "J"), ("G", "J"), ("G", "K")]);
    assert_eq!(brute_force_bars(&nodes_of(&g), &arcs_of(&g)), expected);
    let ours: BTreeSet<Pair> = z_bars(&g).into_iter().map(|(b, c)| (b.to_string(), c.to_string())).collect();
    assert_eq!(ours, expected);

    let quads: BTreeSet<_> = find_z_configurations(&g)
        .into_iter()
        .map(|z| (z.a.to_string(), z.b.to_string(), z.c.to_string(), z.d.to_string()))
        .collect();
    assert_eq!(quads, brute_force_z(&nodes_of(&g), &arcs_of(&g)));
}

#[test]
fn twelve_activity_bars_and_triangles() {
    let g = twelve();
    let expected = pairs(&[("B", "H"), ("D", "H"), ("D", "G"), ("B", "E"), ("C", "F")]);
    assert_eq!(brute_force_bars(&nodes_of(&g), &arcs_of(&g)), expected);
    let ours: BTreeSet<Pair> = z_bars(&g).into_iter().map(|(b, c)| (b.to_string(), c.to_string())).collect();
    assert_eq!(ours, expected);
    assert!(!is_line_graph(&g));
    assert!(brute_force_triangles(&nodes_of(&g), &arcs_of(&g)).is_empty());
    assert!(find_delta_configurations(&g).is_empty());
}

#[test]
fn single_z_is_not_a_line_graph() {
    let g = build_aon(&parse_schedule_table(samples::SINGLE_Z).unwrap(), AugmentPolicy::Auto).unwrap();
    assert!(!is_line_graph(&g));
    assert_eq!(z_bars(&g), vec![(id("b"), id("c"))]);
}

// ---- network construction --------------------------------------------------

#[test]
fn fourteen_activity_dummies_and_groups() {
    let conv = conversion(samples::FIVE_DUMMIES);
    let got: Vec<(String, Vec<Pair>, Grouping)> = conv
        .dummies()
        .iter()
        .map(|d| {
            let bars = d.replaced_bars.iter().map(|(t, h)| (t.to_string(), h.to_string())).collect();
            (d.id.to_string(), bars, d.grouping)
        })
        .collect();
    let expected = vec![
        ("f_1".to_owned(), vec![pair("B", "C"), pair("B", "D")], Grouping::TailGroup),
        ("f_2".to_owned(), vec![pair("D", "H")], Grouping::Singleton),
        ("f_3".to_owned(), vec![pair("C", "J"), pair("F", "J")], Grouping::HeadGroup),
        ("f_4".to_owned(), vec![pair("G", "J")], Grouping::Singleton),
        ("f_5".to_owned(), vec![pair("G", "K")], Grouping::Singleton),
    ];
    assert_eq!(got, expected);
    assert_eq!(conv.elimination.iterations, 1);
}

/// Blocks of the fourteen-activity table after its five dummies are in.
fn expected_bipartites() -> BTreeSet<CompleteBipartite> {
    let b = |x: &[&str], y: &[&str]| CompleteBipartite::new(ids(x), ids(y));
    BTreeSet::from([
        b(&["α"], &["A", "B"]),
        b(&["B"], &["f_1", "E"]),
        b(&["A", "f_1"], &["C", "D"]),
        b(&["D"], &["F", "G", "f_2"]),
        b(&["E", "f_2"], &["H"]),
        b(&["C", "F"], &["I", "f_3"]),
        b(&["G"], &["f_4", "f_5"]),
        b(&["f_3", "f_4"], &["J"]),
        b(&["f_5", "H"], &["K"]),
        b(&["J", "K"], &["L"]),
        b(&["I", "L"], &["ω"]),
    ])
}

#[test]
fn fourteen_activity_partition() {
    let conv = conversion(samples::FIVE_DUMMIES);
    let got: BTreeSet<CompleteBipartite> = conv.partition.parts.iter().cloned().collect();
    assert_eq!(conv.partition.len(), 11);
    assert_eq!(got, expected_bipartites());
    assert!(conv.partition.defects(&conv.elimination.graph).is_empty());
    assert_eq!(conv.partition.parts[0], CompleteBipartite::new(ids(&["α"]), ids(&["A", "B"])));
}

#[test]
fn fourteen_activity_network_counts() {
    let conv = conversion(samples::FIVE_DUMMIES);
    assert_eq!(conv.aoa.event_count(), 13);
    assert_eq!(conv.aoa.arcs.len(), 19);
    assert_eq!(conv.aoa.real_arc_count(), 14);
    assert_eq!(conv.aoa.dummy_arc_count(), 5);
    let s = conv.stats;
    assert_eq!((s.event_count, s.real_arc_count, s.dummy_arc_count, s.bipartite_count), (13, 14, 5, 11));
    assert_eq!(s.z_bar_count, 7);
    assert!(conv.aoa.invariant_violations().is_empty());
    assert!(find_delta_configurations(&conv.elimination.graph).is_empty());
}

#[test]
fn fourteen_activity_equivalence_and_round_trip() {
    let conv = conversion(samples::FIVE_DUMMIES);
    let report = verify_equivalence(&conv.aon, &conv.aoa).unwrap();
    assert!(report.ok, "{report:?}");
    assert!(line_graph_roundtrip_check(&conv.elimination.graph, &conv.aoa));

    let labels: Vec<String> = nodes_of(&conv.aon);
    let oracle_aon = bfs_closure(&labels, &arcs_of(&conv.aon));
    assert_eq!(aoa_precedence(&conv.aoa, &labels), oracle_aon);
}

#[test]
fn deleting_a_dummy_loses_its_precedences() {
    let conv = conversion(samples::FIVE_DUMMIES);
    let mut broken = conv.aoa.clone();
    broken.arcs.retain(|a| a.label != "f_3");
    let report = verify_equivalence(&conv.aon, &broken).unwrap();
    assert!(!report.ok);
    assert!(report.missing.contains(&(id("C"), id("J"))));
    assert!(report.missing.contains(&(id("F"), id("J"))));
    assert!(report.spurious.is_empty());

    // Same answer from the oracle on the perturbed network.
    let labels = nodes_of(&conv.aon);
    let oracle_aon = bfs_closure(&labels, &arcs_of(&conv.aon));
    let represented = aoa_precedence(&broken, &labels);
    let missing: BTreeSet<Pair> = oracle_aon.difference(&represented).cloned().collect();
    let ours: BTreeSet<Pair> = report.missing.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect();
    assert_eq!(ours, missing);
}

#[test]
fn redirected_dummy_breaks_round_trip() {
    let conv = conversion(samples::FIVE_DUMMIES);
    let mut broken = conv.aoa.clone();
    let sink = broken.sink().unwrap();
    broken.arcs.iter_mut().find(|a| a.label == "f_1").unwrap().head = sink;
    assert!(!line_graph_roundtrip_check(&conv.elimination.graph, &broken));
}

#[test]
fn twelve_activity_conversion() {
    let conv = conversion(samples::TWELVE_ACTIVITIES);
    assert_eq!(conv.stats.dummy_arc_count, 5);
    assert!(conv.dummies().iter().all(|d| d.grouping == Grouping::Singleton));
    let replaced: BTreeSet<Pair> = conv
        .dummies()
        .iter()
        .flat_map(|d| d.replaced_bars.iter().map(|(t, h)| (t.to_string(), h.to_string())))
        .collect();
    assert_eq!(replaced, pairs(&[("B", "H"), ("D", "H"), ("D", "G"), ("B", "E"), ("C", "F")]));
    assert!(verify_equivalence(&conv.aon, &conv.aoa).unwrap().ok);
}

#[test]
fn twelve_activity_critical_path() {
    let conv = conversion(samples::TWELVE_ACTIVITIES);
    let durations: BTreeMap<String, u64> = conv.aon.nodes().iter().map(|n| (n.id.to_string(), n.duration)).collect();
    let (best, paths) = exhaustive_longest_path(&durations, &arcs_of(&conv.aon));
    assert_eq!(best, 14);
    let path: Vec<String> = ["α", "D", "H", "I", "F", "ω"].iter().map(|s| s.to_string()).collect();
    assert_eq!(paths, vec![path.clone()]);

    let cpm = schedule(&conv.aoa).unwrap();
    assert_eq!(cpm.makespan, 14);
    assert_eq!(aon_longest_path(&conv.aon), 14);
    let critical: Vec<String> = cpm.critical_activities(&conv.aoa).iter().map(|l| l.to_string()).collect();
    assert_eq!(critical, path);
    for label in &path {
        assert_eq!(cpm.total_float[label.as_str()], 0);
    }
    assert!(cpm.total_float["B"] > 0);
}

#[test]
fn single_z_network_shape() {
    let conv = conversion(samples::SINGLE_Z);
    assert_eq!(conv.stats.dummy_arc_count, 1);
    let project = conv.aoa.without_markers();
    assert_eq!(project.event_count(), 4);
    assert_eq!(project.arcs.len(), 5);
    let labels: Vec<&str> = project.arcs.iter().map(|a| a.label.as_str()).collect();
    assert_eq!(labels, ["a", "b", "c", "d", "f_1"]);
    // With the α and ω arcs kept, the source and sink events are extra.
    assert_eq!(conv.aoa.event_count(), 6);
    assert_eq!(conv.aoa.arcs.len(), 7);
}

#[test]
fn single_activity_table() {
    let conv = conversion("code,duration,predecessors\nA,4,-\n");
    assert_eq!(conv.stats.dummy_arc_count, 0);
    assert_eq!(conv.aoa.event_count(), 4);
    assert_eq!(conv.aoa.arcs.len(), 3);
}

#[test]
fn isolated_activities_make_one_fan() {
    let table = generate_random_table(5, 0.0, 11).unwrap();
    let conv = convert(&table, &ConvertOptions::default()).unwrap();
    assert_eq!(conv.stats.dummy_arc_count, 0);
    // α fans out to all five and all five fan into ω.
    assert_eq!(conv.stats.bipartite_count, 2);
}

// ---- rendering -----------------------------------------------------------

#[test]
fn fourteen_activity_dot_has_five_dashed_edges() {
    let conv = conversion(samples::FIVE_DUMMIES);
    let dot = render_aoa_dot(&conv.aoa);
    assert_eq!(dot.matches("style=dashed").count(), 5);
    assert_eq!(dot.matches(" -> ").count(), 19);
    assert_eq!(dot, render_aoa_dot(&conversion(samples::FIVE_DUMMIES).aoa));
}

#[test]
fn chain_dot_has_four_circles_and_three_solid_edges() {
    let conv = conversion("code,duration,predecessors\nα,0,-\nA,2,α\nω,0,A\n");
    let dot = render_aoa_dot(&conv.aoa);
    assert!(dot.contains("node [shape=circle]"));
    assert_eq!(dot.matches("rank=same").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 3);
    assert!(!dot.contains("dashed"));
}

#[test]
fn aon_dot_ranks_follow_levels() {
    let dot = render_aon_dot(&twelve());
    let ranks: Vec<&str> = dot.lines().filter(|l| l.contains("rank=same")).collect();
    assert_eq!(ranks.len(), 6);
    assert_eq!(ranks[1], "  { rank=same; /* level 2 */ \"A\"; \"B\"; \"D\"; }");
    assert_eq!(ranks[3], "  { rank=same; /* level 4 */ \"C\"; \"E\"; \"I\"; }");
    assert!(dot.contains("node [shape=box]"));
}
