//! Line digraphs and their recognition.
//!
//! A dag is the line digraph of some dag exactly when it has no Z
//! configuration, i.e. any two nodes sharing a successor share all of their
//! successors. In that case its arcs split into complete bipartites
//! `(X_i, Y_i)` with pairwise disjoint X-sets and Y-sets; each bipartite is
//! one event of the activity-on-arc network.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{AonDag, NodeKind};
use crate::id::ActivityId;

/// Arcs `(a,c)`, `(b,c)`, `(b,d)` present and `(a,d)` absent. The arc
/// `(b,c)` is the bar.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ZConfiguration {
    pub a: ActivityId,
    pub b: ActivityId,
    pub c: ActivityId,
    pub d: ActivityId,
}

impl ZConfiguration {
    pub fn bar(&self) -> (ActivityId, ActivityId) {
        (self.b.clone(), self.c.clone())
    }
}

impl std::fmt::Display for ZConfiguration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z(a={}, b={}, c={}, d={}) with bar ({},{})", self.a, self.b, self.c, self.d, self.b, self.c)
    }
}

/// Transitive triangle `(a,b)`, `(b,c)`, `(a,c)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DeltaConfiguration {
    pub a: ActivityId,
    pub b: ActivityId,
    pub c: ActivityId,
}

/// A set of arcs forming all of `tails × heads`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CompleteBipartite {
    /// X: the activities ending at this event, sorted.
    pub tails: Vec<ActivityId>,
    /// Y: the activities starting at this event, sorted.
    pub heads: Vec<ActivityId>,
}

impl CompleteBipartite {
    pub fn new(tails: impl IntoIterator<Item = ActivityId>, heads: impl IntoIterator<Item = ActivityId>) -> Self {
        let mut tails: Vec<_> = tails.into_iter().collect();
        let mut heads: Vec<_> = heads.into_iter().collect();
        tails.sort();
        tails.dedup();
        heads.sort();
        heads.dedup();
        CompleteBipartite { tails, heads }
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len() * self.heads.len()
    }
}

impl std::fmt::Display for CompleteBipartite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[ActivityId]| v.iter().map(ActivityId::as_str).collect::<Vec<_>>().join(",");
        write!(f, "({{{}}}, {{{}}})", join(&self.tails), join(&self.heads))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartitePartition {
    pub parts: Vec<CompleteBipartite>,
}

/// A way in which a [`BipartitePartition`] fails to describe a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionDefect {
    /// Arc of the graph in no part.
    Uncovered(ActivityId, ActivityId),
    /// Arc of the graph in more than one part.
    CoveredTwice(ActivityId, ActivityId),
    /// Pair of some part's `tails × heads` that is not an arc.
    NotAnArc(ActivityId, ActivityId),
    EmptyPart(usize),
    SharedTail(ActivityId),
    SharedHead(ActivityId),
}

impl BipartitePartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Every way this partition fails to be a complete-bipartite partition of
    /// `g`'s arcs; empty when it is one.
    pub fn defects(&self, g: &AonDag) -> Vec<PartitionDefect> {
        let arcs = g.arc_set();
        let mut out = Vec::new();
        let mut covered: BTreeMap<(ActivityId, ActivityId), usize> = BTreeMap::new();
        let mut tails_seen = BTreeSet::new();
        let mut heads_seen = BTreeSet::new();
        for (i, part) in self.parts.iter().enumerate() {
            if part.tails.is_empty() || part.heads.is_empty() {
                out.push(PartitionDefect::EmptyPart(i));
            }
            for t in &part.tails {
                if !tails_seen.insert(t.clone()) {
                    out.push(PartitionDefect::SharedTail(t.clone()));
                }
            }
            for h in &part.heads {
                if !heads_seen.insert(h.clone()) {
                    out.push(PartitionDefect::SharedHead(h.clone()));
                }
            }
            for t in &part.tails {
                for h in &part.heads {
                    let pair = (t.clone(), h.clone());
                    if !arcs.contains(&pair) {
                        out.push(PartitionDefect::NotAnArc(t.clone(), h.clone()));
                    }
                    *covered.entry(pair).or_default() += 1;
                }
            }
        }
        for (t, h) in arcs {
            match covered.get(&(t.clone(), h.clone())) {
                None => out.push(PartitionDefect::Uncovered(t, h)),
                Some(&k) if k > 1 => out.push(PartitionDefect::CoveredTwice(t, h)),
                _ => {}
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not a line digraph: {witness}")]
pub struct NotLineGraph {
    pub witness: ZConfiguration,
}

/// Line digraph of `g`: one node per arc, named `tail→head`, and an arc
/// `u → v` whenever the head of `u` is the tail of `v`.
pub fn line_graph(g: &AonDag) -> AonDag {
    let arcs: Vec<(ActivityId, usize, usize)> = g
        .arcs()
        .into_iter()
        .map(|(t, h)| {
            let name = ActivityId::new(format!("{t}→{h}")).expect("arc names are valid codes");
            let ti = g.index_of(t.as_str()).expect("arc tail exists");
            let hi = g.index_of(h.as_str()).expect("arc head exists");
            (name, ti, hi)
        })
        .collect();
    line_graph_of_arcs(arcs.into_iter().map(|(name, t, h)| (name, NodeKind::Real, t, h)))
}

/// Line digraph of an arbitrary labelled arc list. Arc endpoints are opaque
/// keys; labels become node codes and must be unique.
pub(crate) fn line_graph_of_arcs(arcs: impl IntoIterator<Item = (ActivityId, NodeKind, usize, usize)>) -> AonDag {
    let arcs: Vec<_> = arcs.into_iter().collect();
    let mut out = AonDag::new();
    let mut leaving: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, (label, kind, tail, _)) in arcs.iter().enumerate() {
        out.add_node(label.clone(), *kind, 0).expect("arc labels are unique");
        leaving.entry(*tail).or_default().push(i);
    }
    for (i, (_, _, _, head)) in arcs.iter().enumerate() {
        if let Some(next) = leaving.get(head) {
            for &j in next {
                out.add_arc_idx(i, j);
            }
        }
    }
    out
}

fn successor_sets(g: &AonDag) -> Vec<FixedBitSet> {
    let n = g.node_count();
    (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            s.extend(g.succ_idx(v).iter().copied());
            s
        })
        .collect()
}

pub(crate) fn predecessor_sets(g: &AonDag) -> Vec<FixedBitSet> {
    let n = g.node_count();
    (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            s.extend(g.pred_idx(v).iter().copied());
            s
        })
        .collect()
}

/// Bars as index pairs, sorted and deduplicated. `(b,c)` is a bar iff some
/// other predecessor `a` of `c` misses one of `b`'s successors.
pub(crate) fn bar_indices(g: &AonDag) -> Vec<(usize, usize)> {
    let succ = successor_sets(g);
    let mut bars = Vec::new();
    for b in 0..g.node_count() {
        let mut heads: Vec<usize> = g.succ_idx(b).to_vec();
        heads.sort_unstable();
        heads.dedup();
        for c in heads {
            let is_bar = g.pred_idx(c).iter().any(|&a| a != b && !succ[b].is_subset(&succ[a]));
            if is_bar {
                bars.push((b, c));
            }
        }
    }
    bars
}

/// Every Z configuration of `g`, sorted by `(a, b, c, d)`.
///
/// The list can be large on dense graphs; [`z_bars`] is the deduplicated
/// view that elimination works from.
pub fn find_z_configurations(g: &AonDag) -> Vec<ZConfiguration> {
    let succ = successor_sets(g);
    let mut out = Vec::new();
    for (b, c) in bar_indices(g) {
        for &a in g.pred_idx(c) {
            if a == b {
                continue;
            }
            for d in succ[b].difference(&succ[a]) {
                out.push(ZConfiguration {
                    a: g.node(a).id.clone(),
                    b: g.node(b).id.clone(),
                    c: g.node(c).id.clone(),
                    d: g.node(d).id.clone(),
                });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Distinct bar arcs `(b, c)` of `g`, sorted.
pub fn z_bars(g: &AonDag) -> Vec<(ActivityId, ActivityId)> {
    let mut bars: Vec<_> =
        bar_indices(g).into_iter().map(|(b, c)| (g.node(b).id.clone(), g.node(c).id.clone())).collect();
    bars.sort();
    bars
}

/// First Z configuration in `(a, b, c, d)` order, if any.
pub fn z_witness(g: &AonDag) -> Option<ZConfiguration> {
    let succ = successor_sets(g);
    bar_indices(g)
        .into_iter()
        .flat_map(|(b, c)| {
            let succ = &succ;
            g.pred_idx(c)
                .iter()
                .filter(move |&&a| a != b)
                .flat_map(move |&a| succ[b].difference(&succ[a]).map(move |d| (a, b, c, d)))
        })
        .map(|(a, b, c, d)| ZConfiguration {
            a: g.node(a).id.clone(),
            b: g.node(b).id.clone(),
            c: g.node(c).id.clone(),
            d: g.node(d).id.clone(),
        })
        .min()
}

/// Every transitive triangle of `g`, sorted.
pub fn find_delta_configurations(g: &AonDag) -> Vec<DeltaConfiguration> {
    let succ = successor_sets(g);
    let mut out = Vec::new();
    for a in 0..g.node_count() {
        for b in succ[a].ones() {
            for c in succ[b].ones() {
                if succ[a].contains(c) {
                    out.push(DeltaConfiguration {
                        a: g.node(a).id.clone(),
                        b: g.node(b).id.clone(),
                        c: g.node(c).id.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// True iff `g` has no Z configuration.
pub fn is_line_graph(g: &AonDag) -> bool {
    bar_indices(g).is_empty()
}

/// Splits the arcs of a Z-free dag into complete bipartites.
///
/// Arcs sharing a tail or a head fall into the same part. Parts are ordered
/// by the smallest level among their tails, then by their sorted tail list.
pub fn partition_bipartites(g: &AonDag) -> Result<BipartitePartition, NotLineGraph> {
    if let Some(witness) = z_witness(g) {
        return Err(NotLineGraph { witness });
    }
    let classes = arc_classes(g);
    let order = g.topological_order().expect("partition_bipartites requires an acyclic graph");
    let level = g.level_vector(&order);

    let mut keyed: Vec<(u32, CompleteBipartite)> = classes
        .into_iter()
        .map(|(tails, heads)| {
            let min_level = tails.iter().map(|&t| level[t]).min().unwrap_or(0);
            let part = CompleteBipartite::new(
                tails.into_iter().map(|t| g.node(t).id.clone()),
                heads.into_iter().map(|h| g.node(h).id.clone()),
            );
            (min_level, part)
        })
        .collect();
    keyed.sort();
    Ok(BipartitePartition { parts: keyed.into_iter().map(|(_, p)| p).collect() })
}

/// Connected components of the "shares a tail or a head" relation on arcs,
/// as `(tails, heads)` index sets. Node `v`'s out-slot is `2v`, in-slot
/// `2v + 1`; every arc joins its tail's out-slot to its head's in-slot.
fn arc_classes(g: &AonDag) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in 0..n {
        for &h in g.succ_idx(t) {
            let (a, b) = (find(&mut parent, 2 * t), find(&mut parent, 2 * h + 1));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut classes: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for t in 0..n {
        for &h in g.succ_idx(t) {
            let root = find(&mut parent, 2 * t);
            let entry = classes.entry(root).or_default();
            entry.0.insert(t);
            entry.1.insert(h);
        }
    }
    classes.into_values().collect()
}
