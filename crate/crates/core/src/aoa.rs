//! Activity-on-arc (PERT) network construction.
//!
//! The pipeline is: remove every Z configuration from the activity-on-node
//! dag by rerouting its bars through dummy activities, split the arcs of the
//! resulting line digraph into complete bipartites, and turn each bipartite
//! into one event. Every conversion is certified by comparing precedence in
//! both networks.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AonDag, NodeKind, ValidationReport};
use crate::id::ActivityId;
use crate::line_graph::{bar_indices, line_graph_of_arcs, partition_bipartites, predecessor_sets, BipartitePartition};
use crate::schedule::{build_aon, parse_schedule_table, AugmentPolicy, ScheduleTable, TableError};

/// How the bars replaced by one dummy were grouped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grouping {
    /// Bars share one tail; their heads have identical predecessor sets.
    TailGroup,
    /// Bars share one head; their tails have identical successor sets.
    HeadGroup,
    Singleton,
    /// Inserted by the one-shot construction used when iteration stalls.
    CanonicalFallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DummyRecord {
    pub id: ActivityId,
    pub replaced_bars: Vec<(ActivityId, ActivityId)>,
    pub grouping: Grouping,
}

/// Result of [`eliminate_z`].
#[derive(Debug, Clone)]
pub struct Elimination {
    /// Z-free graph containing the original nodes plus the dummies.
    pub graph: AonDag,
    pub dummies: Vec<DummyRecord>,
    /// Bars of the input graph.
    pub initial_bar_count: usize,
    pub iterations: usize,
    pub fallback_used: bool,
}

/// Removes every Z configuration by rerouting bars through dummy nodes.
///
/// Each round computes the bar set of the current graph and groups it:
/// bars into a common head whose tails have identical successor sets form a
/// head group; of the rest, bars out of a common tail whose heads have
/// identical predecessor sets form a tail group; anything left is a
/// singleton. Groups are materialized in order of the lowest level of their
/// heads, ties broken by their smallest bar. A group with tails `T` and heads
/// `H` becomes `T → f → H`, which is exactly the replaced bar set because one
/// side always has a single member, so precedence never changes.
///
/// Rounds repeat until no bar is left. After `node_count` rounds the
/// remaining work is done in one step by routing every arc `(u, v)` with
/// `out(u) ≥ 2` and `in(v) ≥ 2` through its own dummy, after which every
/// pair of nodes sharing a successor has that successor as its only one.
pub fn eliminate_z(g: &AonDag) -> Result<Elimination, ValidationReport> {
    g.validate()?;
    let mut cur = g.clone();
    let cap = g.node_count();
    let mut dummies = Vec::new();
    let mut namer = DummyNamer::new();
    let initial_bar_count = bar_indices(g).len();
    let mut iterations = 0;
    let mut fallback_used = false;

    loop {
        let bars = bar_indices(&cur);
        if bars.is_empty() {
            break;
        }
        iterations += 1;
        if iterations > cap {
            fallback_used = true;
            for arc in fallback_arcs(&cur) {
                let record = materialize(&mut cur, &[arc], Grouping::CanonicalFallback, &mut namer);
                dummies.push(record);
            }
            debug_assert!(bar_indices(&cur).is_empty());
            break;
        }
        for (grouping, group) in plan_groups(&cur, &bars) {
            let record = materialize(&mut cur, &group, grouping, &mut namer);
            dummies.push(record);
        }
    }

    Ok(Elimination { graph: cur, dummies, initial_bar_count, iterations, fallback_used })
}

struct DummyNamer {
    next: usize,
}

impl DummyNamer {
    fn new() -> Self {
        DummyNamer { next: 1 }
    }

    fn fresh(&mut self, g: &AonDag) -> ActivityId {
        loop {
            let code = format!("f_{}", self.next);
            self.next += 1;
            if !g.contains(&code) {
                return ActivityId::new(code).expect("dummy names are valid codes");
            }
        }
    }
}

fn plan_groups(g: &AonDag, bars: &[(usize, usize)]) -> Vec<(Grouping, Vec<(usize, usize)>)> {
    let n = g.node_count();
    let succ: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            s.extend(g.succ_idx(v).iter().copied());
            s
        })
        .collect();
    let pred = predecessor_sets(g);

    let mut groups: Vec<(Grouping, Vec<(usize, usize)>)> = Vec::new();
    let mut taken: HashSet<(usize, usize)> = HashSet::new();

    let mut by_head: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(t, h) in bars {
        by_head.entry(h).or_default().push(t);
    }
    for (&head, tails) in &by_head {
        for class in classes_by(tails, |&t| &succ[t]) {
            if class.len() >= 2 {
                let group: Vec<_> = class.iter().map(|&t| (t, head)).collect();
                taken.extend(group.iter().copied());
                groups.push((Grouping::HeadGroup, group));
            }
        }
    }

    let mut by_tail: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(t, h) in bars {
        if !taken.contains(&(t, h)) {
            by_tail.entry(t).or_default().push(h);
        }
    }
    for (&tail, heads) in &by_tail {
        for class in classes_by(heads, |&h| &pred[h]) {
            let grouping = if class.len() >= 2 { Grouping::TailGroup } else { Grouping::Singleton };
            groups.push((grouping, class.iter().map(|&h| (tail, h)).collect()));
        }
    }

    let order = g.topological_order().expect("graph stays acyclic");
    let level = g.level_vector(&order);
    let code = |i: usize| &g.node(i).id;
    let key = |group: &[(usize, usize)]| {
        let lowest = group.iter().map(|&(_, h)| level[h]).min().unwrap_or(0);
        let first = group.iter().map(|&(t, h)| (code(t), code(h))).min().expect("groups are non-empty");
        (lowest, first)
    };
    groups.sort_by(|a, b| key(&a.1).cmp(&key(&b.1)));
    groups
}

/// Splits `members` into classes with equal `key`, preserving order.
fn classes_by<'a>(members: &[usize], key: impl Fn(&usize) -> &'a FixedBitSet) -> Vec<Vec<usize>> {
    let mut classes: Vec<(&FixedBitSet, Vec<usize>)> = Vec::new();
    for m in members {
        let k = key(m);
        match classes.iter_mut().find(|(ck, _)| *ck == k) {
            Some((_, list)) => list.push(*m),
            None => classes.push((k, vec![*m])),
        }
    }
    classes.into_iter().map(|(_, list)| list).collect()
}

fn fallback_arcs(g: &AonDag) -> Vec<(usize, usize)> {
    let distinct = |list: &[usize]| list.iter().collect::<BTreeSet<_>>().len();
    let mut arcs: Vec<(usize, usize)> = (0..g.node_count())
        .filter(|&u| distinct(g.succ_idx(u)) >= 2)
        .flat_map(|u| g.succ_idx(u).iter().map(move |&v| (u, v)))
        .filter(|&(_, v)| distinct(g.pred_idx(v)) >= 2)
        .collect();
    arcs.sort_by(|a, b| {
        let name = |(t, h): (usize, usize)| (&g.node(t).id, &g.node(h).id);
        name(*a).cmp(&name(*b))
    });
    arcs.dedup();
    arcs
}

fn materialize(g: &mut AonDag, bars: &[(usize, usize)], grouping: Grouping, namer: &mut DummyNamer) -> DummyRecord {
    let id = namer.fresh(g);
    let f = g.add_node(id.clone(), NodeKind::Dummy, 0).expect("fresh dummy name");
    let tails: BTreeSet<usize> = bars.iter().map(|&(t, _)| t).collect();
    let heads: BTreeSet<usize> = bars.iter().map(|&(_, h)| h).collect();
    for &(t, h) in bars {
        g.remove_arc_idx(t, h);
    }
    for &t in &tails {
        g.add_arc_idx(t, f);
    }
    for &h in &heads {
        g.add_arc_idx(f, h);
    }
    let mut replaced_bars: Vec<_> = bars.iter().map(|&(t, h)| (g.node(t).id.clone(), g.node(h).id.clone())).collect();
    replaced_bars.sort();
    DummyRecord { id, replaced_bars, grouping }
}

/// Where an event comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "origin", rename_all = "lowercase")]
pub enum EventOrigin {
    Source,
    Sink,
    /// 1-based position in the bipartite partition.
    Bipartite {
        part: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AoaEvent {
    pub id: u32,
    #[serde(flatten)]
    pub origin: EventOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Real,
    Dummy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AoaArc {
    pub label: ActivityId,
    pub tail: u32,
    pub head: u32,
    pub kind: ArcKind,
    pub duration: u64,
}

/// Event-node network whose arcs are activities. Events are numbered from 1
/// in topological order; arcs are sorted by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AoaDag {
    pub events: Vec<AoaEvent>,
    pub arcs: Vec<AoaArc>,
}

impl AoaDag {
    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn arc(&self, label: &str) -> Option<&AoaArc> {
        self.arcs.iter().find(|a| a.label == *label)
    }

    pub fn real_arc_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.kind == ArcKind::Real).count()
    }

    pub fn dummy_arc_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.kind == ArcKind::Dummy).count()
    }

    pub fn source(&self) -> Option<u32> {
        self.events.iter().find(|e| e.origin == EventOrigin::Source).map(|e| e.id)
    }

    pub fn sink(&self) -> Option<u32> {
        self.events.iter().find(|e| e.origin == EventOrigin::Sink).map(|e| e.id)
    }

    fn slot_of(&self) -> HashMap<u32, usize> {
        self.events.iter().enumerate().map(|(i, e)| (e.id, i)).collect()
    }

    /// Event ids reachable from each event (including itself), by position.
    fn reachability(&self) -> Vec<FixedBitSet> {
        let e = self.events.len();
        let slot = self.slot_of();
        let mut out_adj = vec![Vec::new(); e];
        for a in &self.arcs {
            if let (Some(&t), Some(&h)) = (slot.get(&a.tail), slot.get(&a.head)) {
                out_adj[t].push(h);
            }
        }
        (0..e)
            .map(|start| {
                let mut seen = FixedBitSet::with_capacity(e);
                seen.insert(start);
                let mut queue = VecDeque::from([start]);
                while let Some(v) = queue.pop_front() {
                    for &w in &out_adj[v] {
                        if !seen.put(w) {
                            queue.push_back(w);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Structural problems: dangling event references, self-loops, cycles,
    /// events without incoming/outgoing arcs, repeated labels.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let slot = self.slot_of();
        let mut labels = HashSet::new();
        let mut has_in = vec![false; self.events.len()];
        let mut has_out = vec![false; self.events.len()];
        for a in &self.arcs {
            if !labels.insert(&a.label) {
                out.push(format!("label {} appears more than once", a.label));
            }
            if a.tail == a.head {
                out.push(format!("arc {} is a loop on event {}", a.label, a.tail));
            }
            match (slot.get(&a.tail), slot.get(&a.head)) {
                (Some(&t), Some(&h)) => {
                    has_out[t] = true;
                    has_in[h] = true;
                }
                _ => out.push(format!("arc {} references an unknown event", a.label)),
            }
        }
        for (i, e) in self.events.iter().enumerate() {
            if e.origin != EventOrigin::Source && !has_in[i] {
                out.push(format!("event {} has no incoming arc", e.id));
            }
            if e.origin != EventOrigin::Sink && !has_out[i] {
                out.push(format!("event {} has no outgoing arc", e.id));
            }
        }
        let reach = self.reachability();
        for a in &self.arcs {
            if let (Some(&t), Some(&h)) = (slot.get(&a.tail), slot.get(&a.head)) {
                if t != h && reach[h].contains(t) {
                    out.push(format!("arc {} lies on a cycle", a.label));
                    break;
                }
            }
        }
        out
    }

    /// Line digraph of this network: one node per arc label, an arc `u → v`
    /// whenever `u` ends at the event where `v` starts.
    pub fn line_graph(&self) -> AonDag {
        line_graph_of_arcs(self.arcs.iter().map(|a| {
            let kind = match a.kind {
                ArcKind::Real => NodeKind::Real,
                ArcKind::Dummy => NodeKind::Dummy,
            };
            (a.label.clone(), kind, a.tail as usize, a.head as usize)
        }))
    }

    /// The network without the α and ω arcs and the events left without any
    /// arc, renumbered from 1 in the original order.
    pub fn without_markers(&self) -> AoaDag {
        let arcs: Vec<AoaArc> =
            self.arcs.iter().filter(|a| !(a.label.is_source() || a.label.is_sink())).cloned().collect();
        let used: BTreeSet<u32> = arcs.iter().flat_map(|a| [a.tail, a.head]).collect();
        let renumber: HashMap<u32, u32> = self
            .events
            .iter()
            .filter(|e| used.contains(&e.id))
            .enumerate()
            .map(|(i, e)| (e.id, i as u32 + 1))
            .collect();
        let events = self
            .events
            .iter()
            .filter_map(|e| renumber.get(&e.id).map(|&id| AoaEvent { id, origin: e.origin }))
            .collect();
        let arcs = arcs.into_iter().map(|a| AoaArc { tail: renumber[&a.tail], head: renumber[&a.head], ..a }).collect();
        AoaDag { events, arcs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal invariant violated while {stage}: {detail}")]
pub struct InternalError {
    pub stage: &'static str,
    pub detail: String,
}

impl InternalError {
    fn new(stage: &'static str, detail: impl Into<String>) -> Self {
        InternalError { stage, detail: detail.into() }
    }
}

/// Builds the event network of a Z-free dag from its bipartite partition.
///
/// Activity `v` runs from the event whose bipartite lists `v` among its
/// heads (the source event for α) to the event whose bipartite lists `v`
/// among its tails (the sink event for ω).
pub fn build_aoa(g: &AonDag, partition: &BipartitePartition) -> Result<AoaDag, InternalError> {
    let stage = "building the event network";
    let k = partition.parts.len();
    let (source_slot, sink_slot) = (0usize, k + 1);
    let mut starts_at: HashMap<&ActivityId, usize> = HashMap::new();
    let mut ends_at: HashMap<&ActivityId, usize> = HashMap::new();
    for (i, part) in partition.parts.iter().enumerate() {
        for h in &part.heads {
            if starts_at.insert(h, i + 1).is_some() {
                return Err(InternalError::new(stage, format!("{h} heads two bipartites")));
            }
        }
        for t in &part.tails {
            if ends_at.insert(t, i + 1).is_some() {
                return Err(InternalError::new(stage, format!("{t} tails two bipartites")));
            }
        }
    }

    let mut slot_arcs: Vec<(ActivityId, ArcKind, u64, usize, usize)> = Vec::with_capacity(g.node_count());
    for node in g.nodes() {
        let tail = match starts_at.get(&node.id) {
            Some(&s) => s,
            None if node.kind == NodeKind::SourceMarker => source_slot,
            None => return Err(InternalError::new(stage, format!("{} starts at no event", node.id))),
        };
        let head = match ends_at.get(&node.id) {
            Some(&s) => s,
            None if node.kind == NodeKind::SinkMarker => sink_slot,
            None => return Err(InternalError::new(stage, format!("{} ends at no event", node.id))),
        };
        let kind = if node.kind.is_dummy() { ArcKind::Dummy } else { ArcKind::Real };
        slot_arcs.push((node.id.clone(), kind, node.duration, tail, head));
    }

    // Number the events in topological order, lowest slot first.
    let slots = k + 2;
    let mut out_adj = vec![Vec::new(); slots];
    let mut indeg = vec![0usize; slots];
    for &(_, _, _, t, h) in &slot_arcs {
        out_adj[t].push(h);
        indeg[h] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..slots).filter(|&s| indeg[s] == 0).map(Reverse).collect();
    let mut id_of = vec![0u32; slots];
    let mut next = 1u32;
    while let Some(Reverse(s)) = ready.pop() {
        id_of[s] = next;
        next += 1;
        for &h in &out_adj[s] {
            indeg[h] -= 1;
            if indeg[h] == 0 {
                ready.push(Reverse(h));
            }
        }
    }
    if next as usize != slots + 1 {
        return Err(InternalError::new(stage, "event graph has a cycle"));
    }

    let mut events: Vec<AoaEvent> = (0..slots)
        .map(|s| AoaEvent {
            id: id_of[s],
            origin: match s {
                0 => EventOrigin::Source,
                s if s == sink_slot => EventOrigin::Sink,
                s => EventOrigin::Bipartite { part: s },
            },
        })
        .collect();
    events.sort_by_key(|e| e.id);

    let mut arcs: Vec<AoaArc> = slot_arcs
        .into_iter()
        .map(|(label, kind, duration, t, h)| AoaArc { label, tail: id_of[t], head: id_of[h], kind, duration })
        .collect();
    arcs.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(AoaDag { events, arcs })
}

/// Outcome of comparing precedence in an activity-on-node dag with an
/// activity-on-arc network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub ok: bool,
    /// `u ≺ v` in the node network but not represented by the arc network.
    pub missing: Vec<(ActivityId, ActivityId)>,
    /// Represented by the arc network but not a precedence.
    pub spurious: Vec<(ActivityId, ActivityId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("activity {0} has no arc in the event network")]
pub struct MissingActivity(pub ActivityId);

/// Compares precedence between all pairs of non-dummy activities.
///
/// `u ≺ v` holds in the arc network when the end event of `u` reaches the
/// start event of `v`, through any arcs, or is the same event.
pub fn verify_equivalence(aon: &AonDag, aoa: &AoaDag) -> Result<EquivalenceReport, MissingActivity> {
    let slot = aoa.slot_of();
    let by_label: HashMap<&ActivityId, &AoaArc> = aoa.arcs.iter().map(|a| (&a.label, a)).collect();
    let activities: Vec<&ActivityId> = {
        let mut v: Vec<_> = aon.nodes().iter().filter(|n| !n.kind.is_dummy()).map(|n| &n.id).collect();
        v.sort();
        v
    };
    let mut ends = Vec::with_capacity(activities.len());
    for &a in &activities {
        let arc = by_label.get(a).ok_or_else(|| MissingActivity(a.clone()))?;
        match (slot.get(&arc.tail), slot.get(&arc.head)) {
            (Some(&t), Some(&h)) => ends.push((t, h)),
            _ => return Err(MissingActivity(a.clone())),
        }
    }

    let reach = aoa.reachability();
    let closure = aon.transitive_closure();
    let mut missing = Vec::new();
    let mut spurious = Vec::new();
    for (i, &u) in activities.iter().enumerate() {
        let head_u = ends[i].1;
        for (j, &v) in activities.iter().enumerate() {
            if i == j {
                continue;
            }
            let in_aoa = reach[head_u].contains(ends[j].0);
            let in_aon = closure.contains(u.as_str(), v.as_str());
            match (in_aon, in_aoa) {
                (true, false) => missing.push((u.clone(), v.clone())),
                (false, true) => spurious.push((u.clone(), v.clone())),
                _ => {}
            }
        }
    }
    Ok(EquivalenceReport { ok: missing.is_empty() && spurious.is_empty(), missing, spurious })
}

/// True iff the line digraph of `aoa` is exactly `g` (same codes, same arcs).
pub fn line_graph_roundtrip_check(g: &AonDag, aoa: &AoaDag) -> bool {
    let back = aoa.line_graph();
    let codes = |x: &AonDag| x.nodes().iter().map(|n| n.id.clone()).collect::<BTreeSet<_>>();
    codes(&back) == codes(g) && back.arc_count() == g.arc_count() && back.arc_set() == g.arc_set()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NetworkStats {
    pub event_count: usize,
    /// Activities including α and ω.
    pub real_arc_count: usize,
    pub dummy_arc_count: usize,
    pub bipartite_count: usize,
    /// Distinct bars in the input graph.
    pub z_bar_count: usize,
    pub iterations: usize,
    pub fallback_used: bool,
}

impl fmt::Display for NetworkStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "events {}, real arcs {}, dummy arcs {}, bipartites {}, z bars {}, iterations {}{}",
            self.event_count,
            self.real_arc_count,
            self.dummy_arc_count,
            self.bipartite_count,
            self.z_bar_count,
            self.iterations,
            if self.fallback_used { " (fallback)" } else { "" }
        )
    }
}

#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Re-point the α arc at the sink event before certification.
    DetachSource,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ConvertOptions {
    pub policy: AugmentPolicy,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("{0}")]
    Table(#[from] TableError),
    #[error("invalid precedence graph: {0}")]
    Invalid(#[from] ValidationReport),
    #[error(transparent)]
    Internal(#[from] InternalError),
}

impl ConvertError {
    /// 1 for bad input, 2 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            ConvertError::Table(_) | ConvertError::Invalid(_) => 1,
            ConvertError::Internal(_) => 2,
        }
    }
}

/// Everything produced by one conversion.
#[derive(Debug, Clone)]
pub struct Conversion {
    /// The activity-on-node dag of the table, after α/ω augmentation.
    pub aon: AonDag,
    pub elimination: Elimination,
    pub partition: BipartitePartition,
    pub aoa: AoaDag,
    pub stats: NetworkStats,
}

impl Conversion {
    pub fn dummies(&self) -> &[DummyRecord] {
        &self.elimination.dummies
    }
}

/// Table to certified activity-on-arc network.
pub fn convert(table: &ScheduleTable, options: &ConvertOptions) -> Result<Conversion, ConvertError> {
    let aon = build_aon(table, options.policy)?;
    convert_aon(aon, options)
}

/// Parses CSV text and converts it.
pub fn convert_text(text: &str, options: &ConvertOptions) -> Result<Conversion, ConvertError> {
    convert(&parse_schedule_table(text)?, options)
}

/// Converts an already built activity-on-node dag.
pub fn convert_aon(aon: AonDag, options: &ConvertOptions) -> Result<Conversion, ConvertError> {
    let elimination = eliminate_z(&aon)?;
    let partition =
        partition_bipartites(&elimination.graph).map_err(|e| InternalError::new("partitioning arcs", e.to_string()))?;
    let mut aoa = build_aoa(&elimination.graph, &partition)?;

    if let Some(Fault::DetachSource) = options.fault {
        let sink = aoa.sink();
        if let (Some(sink), Some(arc)) = (sink, aoa.arcs.iter_mut().find(|a| a.label.is_source())) {
            arc.head = sink;
        }
    }

    let stage = "certifying the network";
    let report = verify_equivalence(&aon, &aoa).map_err(|e| InternalError::new(stage, e.to_string()))?;
    if !report.ok {
        let first = report.missing.first().or(report.spurious.first());
        let detail = match first {
            Some((u, v)) => format!(
                "precedence mismatch ({} missing, {} spurious), first ({u},{v})",
                report.missing.len(),
                report.spurious.len()
            ),
            None => "precedence mismatch".to_owned(),
        };
        return Err(InternalError::new(stage, detail).into());
    }
    if !line_graph_roundtrip_check(&elimination.graph, &aoa) {
        return Err(InternalError::new(stage, "line digraph of the network differs from the input").into());
    }

    let stats = NetworkStats {
        event_count: aoa.event_count(),
        real_arc_count: aoa.real_arc_count(),
        dummy_arc_count: aoa.dummy_arc_count(),
        bipartite_count: partition.len(),
        z_bar_count: elimination.initial_bar_count,
        iterations: elimination.iterations,
        fallback_used: elimination.fallback_used,
    };
    Ok(Conversion { aon, elimination, partition, aoa, stats })
}
