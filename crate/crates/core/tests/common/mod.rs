//! Brute-force oracles. Each works on plain `(tail, head)` string pairs and
//! shares no code path with the library algorithms it checks.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use aoaforge::{AoaDag, AonDag};

pub type Pair = (String, String);

pub fn arcs_of(g: &AonDag) -> Vec<Pair> {
    g.arcs().into_iter().map(|(t, h)| (t.to_string(), h.to_string())).collect()
}

pub fn nodes_of(g: &AonDag) -> Vec<String> {
    let mut v: Vec<String> = g.nodes().iter().map(|n| n.id.to_string()).collect();
    v.sort();
    v
}

fn adjacency(arcs: &[Pair]) -> BTreeMap<&str, Vec<&str>> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (t, h) in arcs {
        adj.entry(t.as_str()).or_default().push(h.as_str());
    }
    adj
}

/// Pairs `(u, v)` joined by a path of length ≥ 1, by BFS from every node.
pub fn bfs_closure(nodes: &[String], arcs: &[Pair]) -> BTreeSet<Pair> {
    let adj = adjacency(arcs);
    let mut out = BTreeSet::new();
    for start in nodes {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<&str> = VecDeque::from([start.as_str()]);
        while let Some(v) = queue.pop_front() {
            for &w in adj.get(v).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        for w in seen {
            out.insert((start.clone(), w.to_owned()));
        }
    }
    out
}

/// Every quadruple `(a,b,c,d)` with `a≠b`, `c≠d`, arcs `ac`, `bc`, `bd` and
/// no arc `ad`, by scanning all 4-tuples.
pub fn brute_force_z(nodes: &[String], arcs: &[Pair]) -> BTreeSet<(String, String, String, String)> {
    let set: BTreeSet<(&str, &str)> = arcs.iter().map(|(t, h)| (t.as_str(), h.as_str())).collect();
    let has = |x: &str, y: &str| set.contains(&(x, y));
    let mut out = BTreeSet::new();
    for a in nodes {
        for b in nodes {
            if a == b {
                continue;
            }
            for c in nodes {
                if !(has(a, c) && has(b, c)) {
                    continue;
                }
                for d in nodes {
                    if c != d && has(b, d) && !has(a, d) {
                        out.insert((a.clone(), b.clone(), c.clone(), d.clone()));
                    }
                }
            }
        }
    }
    out
}

pub fn brute_force_bars(nodes: &[String], arcs: &[Pair]) -> BTreeSet<Pair> {
    brute_force_z(nodes, arcs).into_iter().map(|(_, b, c, _)| (b, c)).collect()
}

/// Every transitive triangle, by scanning all triples.
pub fn brute_force_triangles(nodes: &[String], arcs: &[Pair]) -> BTreeSet<(String, String, String)> {
    let set: BTreeSet<(&str, &str)> = arcs.iter().map(|(t, h)| (t.as_str(), h.as_str())).collect();
    let mut out = BTreeSet::new();
    for a in nodes {
        for b in nodes {
            for c in nodes {
                if set.contains(&(a, b)) && set.contains(&(b, c)) && set.contains(&(a, c)) {
                    out.insert((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    out
}

/// Longest-path levels by repeated relaxation until nothing changes.
pub fn relaxed_levels(nodes: &[String], arcs: &[Pair]) -> BTreeMap<String, u32> {
    let mut level: BTreeMap<String, u32> = nodes.iter().map(|n| (n.clone(), 1)).collect();
    loop {
        let mut changed = false;
        for (t, h) in arcs {
            let want = level[t] + 1;
            if level[h] < want {
                level.insert(h.clone(), want);
                changed = true;
            }
        }
        if !changed {
            return level;
        }
    }
}

/// Largest node-duration sum over all maximal paths, by enumerating them.
/// Returns the best value and every path achieving it.
pub fn exhaustive_longest_path(durations: &BTreeMap<String, u64>, arcs: &[Pair]) -> (u64, Vec<Vec<String>>) {
    let adj = adjacency(arcs);
    let heads: BTreeSet<&str> = arcs.iter().map(|(_, h)| h.as_str()).collect();
    let mut best = 0;
    let mut best_paths = Vec::new();
    let mut stack: Vec<(Vec<&str>, u64)> =
        durations.keys().filter(|n| !heads.contains(n.as_str())).map(|n| (vec![n.as_str()], durations[n])).collect();
    while let Some((path, len)) = stack.pop() {
        let last = *path.last().unwrap();
        let next = adj.get(last).map(Vec::as_slice).unwrap_or(&[]);
        if next.is_empty() {
            let owned: Vec<String> = path.iter().map(|s| s.to_string()).collect();
            if len > best {
                best = len;
                best_paths = vec![owned];
            } else if len == best {
                best_paths.push(owned);
            }
            continue;
        }
        for &w in next {
            let mut p = path.clone();
            p.push(w);
            stack.push((p, len + durations[w]));
        }
    }
    best_paths.sort();
    (best, best_paths)
}

/// Precedence represented by an event network: `u ≺ v` iff the end event of
/// `u` equals or reaches the start event of `v`. Only `labels` are compared.
pub fn aoa_precedence(aoa: &AoaDag, labels: &[String]) -> BTreeSet<Pair> {
    let mut out_adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for a in &aoa.arcs {
        out_adj.entry(a.tail).or_default().push(a.head);
    }
    let reach = |from: u32| {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(e) = queue.pop_front() {
            for &n in out_adj.get(&e).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen
    };
    let arc = |l: &str| aoa.arcs.iter().find(|a| a.label == l).expect("label present");
    let mut out = BTreeSet::new();
    for u in labels {
        let reached = reach(arc(u).head);
        for v in labels {
            if u != v && reached.contains(&arc(v).tail) {
                out.insert((u.clone(), v.clone()));
            }
        }
    }
    out
}

pub fn pair(a: &str, b: &str) -> Pair {
    (a.to_owned(), b.to_owned())
}

pub fn pairs(list: &[(&str, &str)]) -> BTreeSet<Pair> {
    list.iter().map(|&(a, b)| pair(a, b)).collect()
}
