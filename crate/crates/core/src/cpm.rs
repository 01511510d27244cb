//! Critical path method on the event network, plus a node-weighted longest
//! path on the activity-on-node dag to cross-check it.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aoa::{AoaArc, AoaDag, ArcKind};
use crate::graph::AonDag;
use crate::id::ActivityId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CpmError {
    #[error("event network has a cycle")]
    Cyclic,
    #[error("event network has no source or sink event")]
    MissingTerminal,
    #[error("arc {0} references an unknown event")]
    UnknownEvent(ActivityId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpmResult {
    pub early: BTreeMap<u32, u64>,
    pub late: BTreeMap<u32, u64>,
    pub total_float: BTreeMap<ActivityId, u64>,
    pub makespan: u64,
    /// Lexicographically least source-to-sink path of zero-float arcs,
    /// dummies included.
    pub critical: Vec<ActivityId>,
}

impl CpmResult {
    /// The critical path with dummy arcs left out.
    pub fn critical_activities(&self, aoa: &AoaDag) -> Vec<ActivityId> {
        self.critical.iter().filter(|l| aoa.arc(l.as_str()).is_some_and(|a| a.kind == ArcKind::Real)).cloned().collect()
    }
}

/// Forward and backward pass over the event network.
pub fn schedule(aoa: &AoaDag) -> Result<CpmResult, CpmError> {
    let source = aoa.source().ok_or(CpmError::MissingTerminal)?;
    let sink = aoa.sink().ok_or(CpmError::MissingTerminal)?;
    let ids: Vec<u32> = aoa.events.iter().map(|e| e.id).collect();
    let slot: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let n = ids.len();

    let mut outgoing: Vec<Vec<&AoaArc>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for a in &aoa.arcs {
        let (t, h) = match (slot.get(&a.tail), slot.get(&a.head)) {
            (Some(&t), Some(&h)) => (t, h),
            _ => return Err(CpmError::UnknownEvent(a.label.clone())),
        };
        outgoing[t].push(a);
        indeg[h] += 1;
    }
    for arcs in &mut outgoing {
        arcs.sort_by(|a, b| a.label.cmp(&b.label));
    }

    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for a in &outgoing[v] {
            let h = slot[&a.head];
            indeg[h] -= 1;
            if indeg[h] == 0 {
                stack.push(h);
            }
        }
    }
    if order.len() != n {
        return Err(CpmError::Cyclic);
    }

    let mut early = vec![0u64; n];
    for &v in &order {
        for a in &outgoing[v] {
            let h = slot[&a.head];
            early[h] = early[h].max(early[v] + a.duration);
        }
    }
    let makespan = early[slot[&sink]];
    let mut late = vec![makespan; n];
    for &v in order.iter().rev() {
        for a in &outgoing[v] {
            late[v] = late[v].min(late[slot[&a.head]].saturating_sub(a.duration));
        }
    }

    let mut total_float = BTreeMap::new();
    for a in &aoa.arcs {
        let float = late[slot[&a.head]].saturating_sub(early[slot[&a.tail]] + a.duration);
        total_float.insert(a.label.clone(), float);
    }

    // From a zero-slack event there is always a zero-float arc onwards, so
    // taking the least label at each step yields the least path.
    let mut critical = Vec::new();
    let mut at = slot[&source];
    while ids[at] != sink {
        let next = outgoing[at]
            .iter()
            .find(|a| total_float[&a.label] == 0)
            .expect("a zero-float arc leaves every critical event");
        critical.push(next.label.clone());
        at = slot[&next.head];
    }

    let to_map = |times: &[u64]| ids.iter().copied().zip(times.iter().copied()).collect();
    Ok(CpmResult { early: to_map(&early), late: to_map(&late), total_float, makespan, critical })
}

/// Largest total node duration over all paths of `g`.
pub fn aon_longest_path(g: &AonDag) -> u64 {
    let order = g.topological_order().expect("aon_longest_path requires an acyclic graph");
    let mut finish = vec![0u64; g.node_count()];
    for &v in &order {
        let start = g.pred_idx(v).iter().map(|&p| finish[p]).max().unwrap_or(0);
        finish[v] = start + g.node(v).duration;
    }
    finish.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aoa::{convert, ConvertOptions};
    use crate::schedule::{build_aon, parse_schedule_table, AugmentPolicy};

    #[test]
    fn chain_makespan() {
        let t = parse_schedule_table("code,duration,predecessors\nα,0,-\nA,2,α\nω,0,A\n").unwrap();
        let conv = convert(&t, &ConvertOptions::default()).unwrap();
        let cpm = schedule(&conv.aoa).unwrap();
        assert_eq!(cpm.makespan, 2);
        assert_eq!(cpm.early[&1], 0);
        assert_eq!(cpm.late[&4], 2);
        let names: Vec<&str> = cpm.critical.iter().map(ActivityId::as_str).collect();
        assert_eq!(names, ["α", "A", "ω"]);
    }

    #[test]
    fn zero_durations_have_no_float() {
        let t = parse_schedule_table("code,predecessors\na,-\nb,-\nc,a;b\nd,b\n").unwrap();
        let conv = convert(&t, &ConvertOptions::default()).unwrap();
        let cpm = schedule(&conv.aoa).unwrap();
        assert_eq!(cpm.makespan, 0);
        assert!(cpm.total_float.values().all(|&f| f == 0));
    }

    #[test]
    fn single_activity_longest_path() {
        let t = parse_schedule_table("code,duration,predecessors\nA,7,-\n").unwrap();
        let g = build_aon(&t, AugmentPolicy::Auto).unwrap();
        assert_eq!(aon_longest_path(&g), 7);
    }
}
