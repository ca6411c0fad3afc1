use std::collections::BTreeMap;

use super::Layout;
use crate::graph::{Graph, GroupTag, InstanceMeta, LabeledInstance};

/// The 4-partite graph: four copies `A, B, C, D` of `V(G)` with
/// `(u_X, v_Y)` an edge iff `(u, v)` is an edge of `G` and `X != Y`.
#[derive(Debug, Clone)]
pub struct FourPartite {
    pub instance: LabeledInstance,
    pub layout: Layout,
}

const GROUPS: [GroupTag; 4] = [GroupTag::A, GroupTag::B, GroupTag::C, GroupTag::D];

pub fn four_partite(g: &Graph) -> FourPartite {
    let n = g.n();
    let layout = Layout::new(n);
    let mut edges = Vec::with_capacity(12 * g.m());
    for (u, v) in g.edges() {
        for (i, x) in GROUPS.iter().enumerate() {
            for (j, y) in GROUPS.iter().enumerate() {
                if i != j {
                    edges.push((layout.group(*x).start + u, layout.group(*y).start + v));
                }
            }
        }
    }
    let graph = Graph::from_edges_dedup(4 * n, edges);
    let groups: BTreeMap<GroupTag, Vec<usize>> =
        GROUPS.iter().map(|&t| (t, layout.group(t).collect())).collect();
    let mut instance = LabeledInstance::new(graph, groups);
    instance.meta = InstanceMeta {
        source_n: Some(n),
        demand: None,
    };
    FourPartite { instance, layout }
}

impl FourPartite {
    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn graph(&self) -> &Graph {
        &self.instance.graph
    }

    /// Original vertex of a copy.
    pub fn original(&self, id: usize) -> usize {
        id % self.n()
    }

    pub fn group_of(&self, id: usize) -> Option<GroupTag> {
        GROUPS.iter().copied().find(|&t| self.layout.group(t).contains(&id))
    }

    /// Neighbours of `x` inside `group` (e.g. `B_a` for `x = a`, `group = B`).
    pub fn neighbors_in(&self, x: usize, group: GroupTag) -> Vec<usize> {
        let r = self.layout.group(group);
        self.graph()
            .neighbors(x)
            .iter()
            .copied()
            .filter(|v| r.contains(v))
            .collect()
    }

    /// Non-neighbours of `x` inside `group` (e.g. `B̄_a`).
    pub fn non_neighbors_in(&self, x: usize, group: GroupTag) -> Vec<usize> {
        self.layout
            .group(group)
            .filter(|&v| !self.graph().has_edge(x, v))
            .collect()
    }

    /// Whether `x` is adjacent to the copy of original `v` in `group`.
    pub fn adjacent_to_copy(&self, x: usize, group: GroupTag, v: usize) -> bool {
        self.graph().has_edge(x, self.layout.group(group).start + v)
    }
}
