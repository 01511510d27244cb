//! Activity-on-node precedence dag and the queries every other module
//! builds on: validation, longest-path levels, reachability, adjacency.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::ActivityId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Real,
    /// α
    SourceMarker,
    /// ω
    SinkMarker,
    /// Inserted by Z elimination; zero duration.
    Dummy,
}

impl NodeKind {
    pub fn is_dummy(self) -> bool {
        self == NodeKind::Dummy
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: ActivityId,
    pub kind: NodeKind,
    pub duration: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown activity {0}")]
    UnknownNode(String),
    #[error("activity {0} already exists")]
    DuplicateNode(ActivityId),
}

/// One problem found by [`AonDag::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfArc(ActivityId),
    DuplicateArc(ActivityId, ActivityId),
    /// Witness cycle, first node repeated at the end.
    Cycle(Vec<ActivityId>),
    MissingSource,
    MissingSink,
    MultipleSources(Vec<ActivityId>),
    MultipleSinks(Vec<ActivityId>),
    SourceHasPredecessor(ActivityId),
    SinkHasSuccessor(ActivityId),
    NoPredecessor(ActivityId),
    NoSuccessor(ActivityId),
    UnknownActivity(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfArc(v) => write!(f, "self-arc on {v}"),
            Violation::DuplicateArc(u, v) => write!(f, "duplicate arc ({u},{v})"),
            Violation::Cycle(path) => {
                let names: Vec<&str> = path.iter().map(ActivityId::as_str).collect();
                write!(f, "cycle ({})", names.join(","))
            }
            Violation::MissingSource => write!(f, "no start activity α"),
            Violation::MissingSink => write!(f, "no end activity ω"),
            Violation::MultipleSources(v) => write!(f, "more than one start activity: {}", join(v)),
            Violation::MultipleSinks(v) => write!(f, "more than one end activity: {}", join(v)),
            Violation::SourceHasPredecessor(p) => write!(f, "start activity α has predecessor {p}"),
            Violation::SinkHasSuccessor(s) => write!(f, "end activity ω has successor {s}"),
            Violation::NoPredecessor(v) => write!(f, "{v} has no predecessor"),
            Violation::NoSuccessor(v) => write!(f, "{v} has no successor"),
            Violation::UnknownActivity(code) => write!(f, "unknown activity {code}"),
        }
    }
}

fn join(ids: &[ActivityId]) -> String {
    ids.iter().map(ActivityId::as_str).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn cycle(&self) -> Option<&[ActivityId]> {
        self.violations.iter().find_map(|v| match v {
            Violation::Cycle(c) => Some(c.as_slice()),
            _ => None,
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Node-per-activity precedence graph.
///
/// Arcs are stored as adjacency lists; the constructor does not reject
/// self-arcs or duplicates so that [`AonDag::validate`] can report them.
#[derive(Debug, Clone, Default)]
pub struct AonDag {
    nodes: Vec<Node>,
    index: HashMap<ActivityId, usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl AonDag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: ActivityId, kind: NodeKind, duration: u64) -> Result<usize, GraphError> {
        if self.index.contains_key(&id) {
            return Err(GraphError::DuplicateNode(id));
        }
        let idx = self.nodes.len();
        self.index.insert(id.clone(), idx);
        self.nodes.push(Node { id, kind, duration });
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        Ok(idx)
    }

    pub fn add_arc(&mut self, tail: &str, head: &str) -> Result<(), GraphError> {
        let t = self.require(tail)?;
        let h = self.require(head)?;
        self.add_arc_idx(t, h);
        Ok(())
    }

    pub(crate) fn add_arc_idx(&mut self, tail: usize, head: usize) {
        self.succ[tail].push(head);
        self.pred[head].push(tail);
    }

    pub(crate) fn remove_arc_idx(&mut self, tail: usize, head: usize) -> bool {
        let before = self.succ[tail].len();
        self.succ[tail].retain(|&h| h != head);
        self.pred[head].retain(|&t| t != tail);
        before != self.succ[tail].len()
    }

    /// Removes every arc `tail → head`; returns whether one existed.
    pub fn remove_arc(&mut self, tail: &str, head: &str) -> Result<bool, GraphError> {
        let t = self.require(tail)?;
        let h = self.require(head)?;
        Ok(self.remove_arc_idx(t, h))
    }

    fn require(&self, code: &str) -> Result<usize, GraphError> {
        self.index.get(code).copied().ok_or_else(|| GraphError::UnknownNode(code.to_owned()))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> &Node {
        &self.nodes[idx]
    }

    pub fn index_of(&self, code: &str) -> Option<usize> {
        self.index.get(code).copied()
    }

    pub fn contains(&self, code: &str) -> bool {
        self.index.contains_key(code)
    }

    pub fn get(&self, code: &str) -> Option<&Node> {
        self.index_of(code).map(|i| &self.nodes[i])
    }

    pub fn has_arc(&self, tail: &str, head: &str) -> bool {
        match (self.index_of(tail), self.index_of(head)) {
            (Some(t), Some(h)) => self.succ[t].contains(&h),
            _ => false,
        }
    }

    pub(crate) fn succ_idx(&self, idx: usize) -> &[usize] {
        &self.succ[idx]
    }

    pub(crate) fn pred_idx(&self, idx: usize) -> &[usize] {
        &self.pred[idx]
    }

    /// All arcs as `(tail, head)` code pairs, lexicographically sorted.
    pub fn arcs(&self) -> Vec<(ActivityId, ActivityId)> {
        let mut out: Vec<_> = self
            .succ
            .iter()
            .enumerate()
            .flat_map(|(t, hs)| hs.iter().map(move |&h| (t, h)))
            .map(|(t, h)| (self.nodes[t].id.clone(), self.nodes[h].id.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn arc_set(&self) -> BTreeSet<(ActivityId, ActivityId)> {
        self.arcs().into_iter().collect()
    }

    /// Adjacent codes in the given direction, sorted.
    pub fn neighbors(&self, code: &str, direction: Direction) -> Result<Vec<&ActivityId>, GraphError> {
        let v = self.require(code)?;
        let adj = match direction {
            Direction::In => &self.pred[v],
            Direction::Out => &self.succ[v],
        };
        let mut out: Vec<&ActivityId> = adj.iter().map(|&i| &self.nodes[i].id).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn source(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.kind == NodeKind::SourceMarker)
    }

    pub fn sink(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.kind == NodeKind::SinkMarker)
    }

    /// Node indices sorted by code; `rank[i]` is the position of node `i`.
    pub(crate) fn code_rank(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| self.nodes[a].id.cmp(&self.nodes[b].id));
        let mut rank = vec![0; order.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        rank
    }

    /// Kahn's algorithm, ties broken by code. `None` if the graph has a cycle.
    pub(crate) fn topological_order(&self) -> Option<Vec<usize>> {
        let rank = self.code_rank();
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<(usize, usize)>> =
            indeg.iter().enumerate().filter(|(_, &d)| d == 0).map(|(i, _)| Reverse((rank[i], i))).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(Reverse((_, v))) = ready.pop() {
            order.push(v);
            for &s in &self.succ[v] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    ready.push(Reverse((rank[s], s)));
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Checks acyclicity, arc hygiene, unique α/ω and that every node other
    /// than α (ω) has a predecessor (successor).
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        let rank = self.code_rank();
        let mut by_code: Vec<usize> = (0..self.nodes.len()).collect();
        by_code.sort_by_key(|&i| rank[i]);

        for &t in &by_code {
            let mut seen = BTreeSet::new();
            let mut heads: Vec<usize> = self.succ[t].clone();
            heads.sort_by_key(|&h| rank[h]);
            for h in heads {
                if h == t {
                    if seen.insert(h) {
                        violations.push(Violation::SelfArc(self.nodes[t].id.clone()));
                    }
                } else if !seen.insert(h) {
                    violations.push(Violation::DuplicateArc(self.nodes[t].id.clone(), self.nodes[h].id.clone()));
                }
            }
        }

        if let Some(cycle) = self.find_cycle(&by_code, &rank) {
            violations.push(Violation::Cycle(cycle));
        }

        let sources: Vec<usize> =
            by_code.iter().copied().filter(|&i| self.nodes[i].kind == NodeKind::SourceMarker).collect();
        let sinks: Vec<usize> =
            by_code.iter().copied().filter(|&i| self.nodes[i].kind == NodeKind::SinkMarker).collect();
        match sources.len() {
            0 => violations.push(Violation::MissingSource),
            1 => {}
            _ => {
                violations.push(Violation::MultipleSources(sources.iter().map(|&i| self.nodes[i].id.clone()).collect()))
            }
        }
        match sinks.len() {
            0 => violations.push(Violation::MissingSink),
            1 => {}
            _ => violations.push(Violation::MultipleSinks(sinks.iter().map(|&i| self.nodes[i].id.clone()).collect())),
        }

        for &i in &by_code {
            let node = &self.nodes[i];
            match node.kind {
                NodeKind::SourceMarker => {
                    if let Some(p) = self.first_by_rank(&self.pred[i], &rank) {
                        violations.push(Violation::SourceHasPredecessor(self.nodes[p].id.clone()));
                    }
                }
                _ if self.pred[i].is_empty() => {
                    violations.push(Violation::NoPredecessor(node.id.clone()));
                }
                _ => {}
            }
            match node.kind {
                NodeKind::SinkMarker => {
                    if let Some(s) = self.first_by_rank(&self.succ[i], &rank) {
                        violations.push(Violation::SinkHasSuccessor(self.nodes[s].id.clone()));
                    }
                }
                _ if self.succ[i].is_empty() => {
                    violations.push(Violation::NoSuccessor(node.id.clone()));
                }
                _ => {}
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    fn first_by_rank(&self, list: &[usize], rank: &[usize]) -> Option<usize> {
        list.iter().copied().min_by_key(|&i| rank[i])
    }

    /// Iterative DFS; returns the first back-edge cycle found when roots and
    /// successors are visited in code order.
    fn find_cycle(&self, by_code: &[usize], rank: &[usize]) -> Option<Vec<ActivityId>> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let n = self.nodes.len();
        let sorted_succ: Vec<Vec<usize>> = self
            .succ
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort_by_key(|&h| rank[h]);
                s.dedup();
                s
            })
            .collect();
        let mut color = vec![WHITE; n];
        for &root in by_code {
            if color[root] != WHITE {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = GREY;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&w) = sorted_succ[v].get(*next) {
                    *next += 1;
                    match color[w] {
                        WHITE => {
                            color[w] = GREY;
                            stack.push((w, 0));
                        }
                        GREY => {
                            let start = stack.iter().position(|&(u, _)| u == w).unwrap_or(0);
                            let mut cycle: Vec<ActivityId> =
                                stack[start..].iter().map(|&(u, _)| self.nodes[u].id.clone()).collect();
                            cycle.push(self.nodes[w].id.clone());
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    color[v] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Longest-path levels: sources at 1, every other node one past its
    /// deepest predecessor. Requires an acyclic graph.
    pub fn topological_levels(&self) -> LevelAssignment {
        let order = self.topological_order().expect("topological_levels requires an acyclic graph");
        let level = self.level_vector(&order);
        LevelAssignment { levels: self.nodes.iter().zip(level).map(|(n, l)| (n.id.clone(), l)).collect() }
    }

    pub(crate) fn level_vector(&self, order: &[usize]) -> Vec<u32> {
        let mut level = vec![1u32; self.nodes.len()];
        for &v in order {
            for &s in &self.succ[v] {
                level[s] = level[s].max(level[v] + 1);
            }
        }
        level
    }

    /// Reachability by paths of length ≥ 1. Requires an acyclic graph.
    pub fn transitive_closure(&self) -> PrecedenceRelation {
        let order = self.topological_order().expect("transitive_closure requires an acyclic graph");
        let after = self.reach_sets(&order);
        PrecedenceRelation::from_parts(self.nodes.iter().map(|n| n.id.clone()).collect(), after)
    }

    pub(crate) fn reach_sets(&self, order: &[usize]) -> Vec<FixedBitSet> {
        let n = self.nodes.len();
        let mut after = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut acc = FixedBitSet::with_capacity(n);
            for &s in &self.succ[v] {
                acc.insert(s);
                acc.union_with(&after[s]);
            }
            after[v] = acc;
        }
        after
    }
}

/// Longest-path level of every activity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelAssignment {
    pub levels: BTreeMap<ActivityId, u32>,
}

impl LevelAssignment {
    pub fn level(&self, code: &str) -> Option<u32> {
        self.levels.get(code).copied()
    }

    /// `(level, members)` pairs in ascending level order, members sorted.
    pub fn groups(&self) -> Vec<(u32, Vec<ActivityId>)> {
        let mut by_level: BTreeMap<u32, Vec<ActivityId>> = BTreeMap::new();
        for (id, &l) in &self.levels {
            by_level.entry(l).or_default().push(id.clone());
        }
        by_level.into_iter().collect()
    }

    pub fn depth(&self) -> u32 {
        self.levels.values().copied().max().unwrap_or(0)
    }
}

/// Transitively closed, irreflexive precedence relation `u ≺ v`.
#[derive(Debug, Clone)]
pub struct PrecedenceRelation {
    ids: Vec<ActivityId>,
    index: HashMap<ActivityId, usize>,
    after: Vec<FixedBitSet>,
}

impl PrecedenceRelation {
    fn from_parts(ids: Vec<ActivityId>, after: Vec<FixedBitSet>) -> Self {
        let index = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();
        PrecedenceRelation { ids, index, after }
    }

    pub fn contains(&self, before: &str, after: &str) -> bool {
        match (self.index.get(before), self.index.get(after)) {
            (Some(&u), Some(&v)) => self.after[u].contains(v),
            _ => false,
        }
    }

    pub fn len(&self) -> usize {
        self.after.iter().map(|s| s.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn activities(&self) -> &[ActivityId] {
        &self.ids
    }

    /// Every `v` with `code ≺ v`, sorted.
    pub fn successors_of(&self, code: &str) -> Vec<&ActivityId> {
        let mut out: Vec<&ActivityId> = match self.index.get(code) {
            Some(&u) => self.after[u].ones().map(|v| &self.ids[v]).collect(),
            None => Vec::new(),
        };
        out.sort();
        out
    }

    pub fn pairs(&self) -> BTreeSet<(ActivityId, ActivityId)> {
        self.after
            .iter()
            .enumerate()
            .flat_map(|(u, set)| set.ones().map(move |v| (u, v)))
            .map(|(u, v)| (self.ids[u].clone(), self.ids[v].clone()))
            .collect()
    }

    /// Pairs whose both ends satisfy `keep`.
    pub fn restricted(&self, keep: impl Fn(&ActivityId) -> bool) -> BTreeSet<(ActivityId, ActivityId)> {
        self.pairs().into_iter().filter(|(u, v)| keep(u) && keep(v)).collect()
    }

    /// Closes the relation again (a no-op on any relation produced by
    /// [`AonDag::transitive_closure`]).
    pub fn closed(&self) -> PrecedenceRelation {
        let n = self.ids.len();
        let mut after = self.after.clone();
        // Warshall over bitsets.
        for k in 0..n {
            let via = after[k].clone();
            for row in after.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        PrecedenceRelation::from_parts(self.ids.clone(), after)
    }
}

impl PartialEq for PrecedenceRelation {
    fn eq(&self, other: &Self) -> bool {
        self.pairs() == other.pairs()
    }
}

impl Eq for PrecedenceRelation {}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> ActivityId {
        ActivityId::new(s).unwrap()
    }

    fn build(nodes: &[&str], arcs: &[(&str, &str)]) -> AonDag {
        let mut g = AonDag::new();
        for &n in nodes {
            let kind = match n {
                "α" => NodeKind::SourceMarker,
                "ω" => NodeKind::SinkMarker,
                _ => NodeKind::Real,
            };
            g.add_node(id(n), kind, 0).unwrap();
        }
        for &(t, h) in arcs {
            g.add_arc(t, h).unwrap();
        }
        g
    }

    #[test]
    fn smallest_chain_is_valid() {
        let g = build(&["α", "A", "ω"], &[("α", "A"), ("A", "ω")]);
        assert_eq!(g.validate(), Ok(()));
        let levels = g.topological_levels();
        assert_eq!(levels.level("α"), Some(1));
        assert_eq!(levels.level("A"), Some(2));
        assert_eq!(levels.level("ω"), Some(3));
    }

    #[test]
    fn two_cycle_is_reported_with_witness() {
        let g = build(&["α", "A", "B", "ω"], &[("α", "A"), ("A", "B"), ("B", "A"), ("B", "ω")]);
        let report = g.validate().unwrap_err();
        assert_eq!(report.cycle(), Some(&[id("A"), id("B"), id("A")][..]));
        assert!(report.to_string().contains("cycle (A,B,A)"));
    }

    #[test]
    fn self_and_duplicate_arcs_are_reported() {
        let g = build(&["α", "A", "ω"], &[("α", "A"), ("α", "A"), ("A", "A"), ("A", "ω")]);
        let report = g.validate().unwrap_err();
        assert!(report.violations.contains(&Violation::DuplicateArc(id("α"), id("A"))));
        assert!(report.violations.contains(&Violation::SelfArc(id("A"))));
    }

    #[test]
    fn markers_are_required() {
        let g = build(&["A", "B"], &[("A", "B")]);
        let report = g.validate().unwrap_err();
        assert!(report.violations.contains(&Violation::MissingSource));
        assert!(report.violations.contains(&Violation::MissingSink));
        assert!(report.violations.contains(&Violation::NoPredecessor(id("A"))));
        assert!(report.violations.contains(&Violation::NoSuccessor(id("B"))));
    }

    #[test]
    fn closure_of_single_arc() {
        let g = build(&["α", "ω"], &[("α", "ω")]);
        let pairs = g.transitive_closure().pairs();
        assert_eq!(pairs, BTreeSet::from([(id("α"), id("ω"))]));
    }

    #[test]
    fn closure_follows_paths() {
        let g = build(&["α", "A", "B", "ω"], &[("α", "A"), ("A", "B"), ("B", "ω")]);
        let c = g.transitive_closure();
        assert!(c.contains("α", "B"));
        assert!(c.contains("A", "ω"));
        assert!(!c.contains("B", "A"));
        assert_eq!(c.len(), 6);
        assert_eq!(c.closed(), c);
    }

    #[test]
    fn neighbors_are_sorted_and_checked() {
        let g = build(&["α", "B", "A", "ω"], &[("α", "B"), ("α", "A"), ("A", "ω"), ("B", "ω")]);
        let out: Vec<&str> = g.neighbors("α", Direction::Out).unwrap().into_iter().map(ActivityId::as_str).collect();
        assert_eq!(out, ["A", "B"]);
        assert!(g.neighbors("α", Direction::In).unwrap().is_empty());
        assert_eq!(g.neighbors("Q", Direction::In), Err(GraphError::UnknownNode("Q".into())));
    }
}
