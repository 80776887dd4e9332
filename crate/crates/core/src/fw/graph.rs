//! The finger graph and the cycle-sign criteria for S-triviality.

use std::collections::BTreeMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::system::{EyeIndex, FwSystem};

/// One vertex per eye and one weighted edge per finger, red end to green end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerGraph {
    pub vertices: Vec<EyeIndex>,
    pub edges: Vec<(EyeIndex, EyeIndex, i64)>,
}

impl FingerGraph {
    fn dense(&self) -> (usize, Vec<(usize, usize, i64)>) {
        let pos: BTreeMap<EyeIndex, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self.edges.iter().map(|&(a, b, w)| (pos[&a], pos[&b], w)).collect();
        (self.vertices.len(), edges)
    }
}

pub fn finger_graph(s: &FwSystem) -> FingerGraph {
    let mut vertices = s.eyes();
    vertices.extend(s.fingers.iter().flat_map(|f| [f.red, f.green]));
    vertices.sort();
    vertices.dedup();
    let edges = s.fingers.iter().map(|f| (f.red, f.green, f.shift)).collect();
    FingerGraph { vertices, edges }
}

/// True if the edge set, all of whose endpoints lie in `0..n`, has a directed
/// cycle of negative total weight. Exact Bellman–Ford from a virtual source.
fn has_negative_cycle(n: usize, edges: &[(usize, usize, i64)]) -> bool {
    let mut dist = vec![0i64; n];
    for _ in 0..=n {
        let mut changed = false;
        for &(a, b, w) in edges {
            if dist[a] + w < dist[b] {
                dist[b] = dist[a] + w;
                changed = true;
            }
        }
        if !changed {
            return false;
        }
    }
    true
}

/// For each weakly connected component (listed by smallest vertex), whether
/// it contains a positive and whether it contains a negative directed cycle.
pub fn cycle_signs(n: usize, edges: &[(usize, usize, i64)]) -> Vec<(bool, bool)> {
    let mut g: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    let mut weak = UnionFind::new(n);
    for &(a, b, _) in edges {
        g.add_edge(nodes[a], nodes[b], ());
        weak.union(a, b);
    }
    let mut scc_of = vec![0usize; n];
    let sccs = tarjan_scc(&g);
    for (c, members) in sccs.iter().enumerate() {
        for v in members {
            scc_of[v.index()] = c;
        }
    }
    let mut per_component: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
    for v in 0..n {
        per_component.entry(weak.find(v)).or_default();
    }
    for (c, members) in sccs.iter().enumerate() {
        let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, v)| (v.index(), i)).collect();
        let inner: Vec<(usize, usize, i64)> = edges
            .iter()
            .filter(|&&(a, b, _)| scc_of[a] == c && scc_of[b] == c)
            .map(|&(a, b, w)| (local[&a], local[&b], w))
            .collect();
        if inner.is_empty() {
            continue;
        }
        let negated: Vec<_> = inner.iter().map(|&(a, b, w)| (a, b, -w)).collect();
        let neg = has_negative_cycle(members.len(), &inner);
        let pos = has_negative_cycle(members.len(), &negated);
        let entry = per_component.get_mut(&weak.find(members[0].index())).unwrap();
        entry.0 |= pos;
        entry.1 |= neg;
    }
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        roots.entry(weak.find(v)).or_insert(v);
    }
    let mut ordered: Vec<(usize, usize)> = roots.into_iter().map(|(root, first)| (first, root)).collect();
    ordered.sort();
    ordered.into_iter().map(|(_, root)| per_component[&root]).collect()
}

/// No weakly connected component of the finger graph carries both a positive
/// and a negative directed cycle.
pub fn s_trivial_by_graph(s: &FwSystem) -> bool {
    let (n, edges) = finger_graph(s).dense();
    cycle_signs(n, &edges).iter().all(|&(pos, neg)| !(pos && neg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Up,
    Down,
    None,
}

/// Whether the eyes can be placed around the circle, with a choice of lift for
/// each, so that every lifted finger ends no lower (up) or no higher (down)
/// than it starts.
///
/// Such a placement exists exactly when every directed cycle of fingers has
/// nonnegative total shift, and strictly positive total shift once it visits
/// two distinct eyes. Scaling shifts by `|V| + 1` and charging one unit per
/// edge between distinct eyes turns this into a negative-cycle test.
pub fn is_monotone(s: &FwSystem) -> Monotonicity {
    let (n, edges) = finger_graph(s).dense();
    let scale = n as i64 + 1;
    let weighted = |sign: i64| -> Vec<(usize, usize, i64)> {
        edges.iter().map(|&(a, b, w)| (a, b, sign * w * scale - i64::from(a != b))).collect()
    };
    if !has_negative_cycle(n, &weighted(1)) {
        Monotonicity::Up
    } else if !has_negative_cycle(n, &weighted(-1)) {
        Monotonicity::Down
    } else {
        Monotonicity::None
    }
}
