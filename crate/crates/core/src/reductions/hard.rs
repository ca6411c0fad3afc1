//! The hard instances `H` (all-pairs) and `J` (Steiner).

use std::collections::BTreeMap;

use super::{build_isolating_gadget, four_partite, FourPartite, Layout, PRIME_GROUP_FACTOR};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, GroupTag, InstanceMeta, LabeledInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardKind {
    Apvc,
    Steiner,
}

impl HardKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HardKind::Apvc => "apvc",
            HardKind::Steiner => "steiner",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Thresholds {
    /// `(a, d, threshold)` for every `a in A`, `d in D` (ids of `H`).
    PerPair(Vec<(usize, usize, usize)>),
    /// One threshold for the minimum over all terminal pairs.
    Uniform { value: usize, terminals: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardInstance {
    pub instance: LabeledInstance,
    pub kind: HardKind,
    pub thresholds: Thresholds,
}

impl HardInstance {
    pub fn graph(&self) -> &Graph {
        &self.instance.graph
    }

    pub fn source_n(&self) -> usize {
        self.instance.meta.source_n.unwrap_or(0)
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.source_n())
    }

    /// Threshold for `(a, d)` in an all-pairs instance.
    pub fn pair_threshold(&self, a: usize, d: usize) -> Option<usize> {
        match &self.thresholds {
            Thresholds::PerPair(list) => {
                let n = self.source_n();
                let idx = a * n + (d - 3 * n);
                list.get(idx).filter(|t| t.0 == a && t.1 == d).map(|t| t.2)
            }
            Thresholds::Uniform { .. } => None,
        }
    }
}

/// `4n + |N(a) ∩ N̄(d)| + |N̄(a) ∩ N(d)| + 1` for original vertices `a, d`,
/// where `N̄(v) = V \ N(v)` contains `v` itself.
pub fn apvc_threshold(g: &Graph, a: usize, d: usize) -> usize {
    let n = g.n();
    let a_not_d = g.neighbors(a).iter().filter(|&&x| !g.has_edge(d, x)).count();
    let d_not_a = g.neighbors(d).iter().filter(|&&x| !g.has_edge(a, x)).count();
    4 * n + a_not_d + d_not_a + 1
}

/// `|A| + |D| + |B̄_d| + |B_a| + |B_d ∩ B̄_a| + |C_d| + |C̄_a| + |C_a ∩ C̄_d|`,
/// the amount the gadget and both filters add on top of `kappa(Ĥ_ad)`.
pub fn h_chain_offset(fp: &FourPartite, a: usize, d: usize) -> usize {
    let n = fp.n();
    let b_a = fp.neighbors_in(a, GroupTag::B);
    let b_d = fp.neighbors_in(d, GroupTag::B);
    let c_a = fp.neighbors_in(a, GroupTag::C);
    let c_d = fp.neighbors_in(d, GroupTag::C);
    let nb_d = fp.non_neighbors_in(d, GroupTag::B);
    let nc_a = fp.non_neighbors_in(a, GroupTag::C);
    let b_d_not_a = b_d.iter().filter(|b| !b_a.contains(b)).count();
    let c_a_not_d = c_a.iter().filter(|c| !c_d.contains(c)).count();
    n + n + nb_d.len() + b_a.len() + b_d_not_a + c_d.len() + nc_a.len() + c_a_not_d
}

/// Edges of `H` inside `A ∪ B ∪ C ∪ D ∪ B' ∪ C'`, i.e. the union over all
/// `(a, d)` of both filters and `G_4p[B ∪ C]`, written in closed form.
fn h_core_edges(fp: &FourPartite) -> Vec<(usize, usize)> {
    let l = fp.layout;
    let n = fp.n();
    let g4 = fp.graph();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (a, d) = (l.a(i), l.d(i));
            // B side
            edges.push((a, l.b(j)));
            if !g4.has_edge(d, l.b(j)) {
                edges.push((l.b(j), d));
            }
            if g4.has_edge(a, l.b(j)) {
                edges.push((a, l.b_prime(j)));
            }
            edges.push((l.b_prime(j), d));
            // C side
            if !g4.has_edge(a, l.c(j)) {
                edges.push((a, l.c(j)));
            }
            edges.push((l.c(j), d));
            edges.push((a, l.c_prime(j)));
            if g4.has_edge(d, l.c(j)) {
                edges.push((l.c_prime(j), d));
            }
        }
        edges.push((l.b(i), l.b_prime(i)));
        edges.push((l.c_prime(i), l.c(i)));
    }
    for (x, y) in g4.edges() {
        let in_bc = |v: usize| l.group(GroupTag::B).contains(&v) || l.group(GroupTag::C).contains(&v);
        if in_bc(x) && in_bc(y) {
            edges.push((x, y));
        }
    }
    edges
}

fn h_groups(l: Layout) -> BTreeMap<GroupTag, Vec<usize>> {
    [
        GroupTag::A,
        GroupTag::B,
        GroupTag::C,
        GroupTag::D,
        GroupTag::BPrime,
        GroupTag::CPrime,
        GroupTag::A1,
        GroupTag::A2,
        GroupTag::D1,
        GroupTag::D2,
    ]
    .into_iter()
    .map(|t| (t, l.group(t).collect()))
    .collect()
}

fn h_graph(fp: &FourPartite) -> Graph {
    let l = fp.layout;
    let core = Graph::from_edges_dedup(l.filter_size(), h_core_edges(fp));
    let a: Vec<usize> = l.group(GroupTag::A).collect();
    let d: Vec<usize> = l.group(GroupTag::D).collect();
    let q = build_isolating_gadget(l.filter_size(), &a, &d).expect("A and D are disjoint and nonempty");
    core.union(&q.graph)
}

/// The all-pairs hard instance `H` on `10n` vertices, with per-pair
/// thresholds.
pub fn build_h(g: &Graph) -> Result<HardInstance> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidQuery("hard instance needs n >= 1".into()));
    }
    let fp = four_partite(g);
    let l = fp.layout;
    let graph = h_graph(&fp);
    debug_assert_eq!(graph.n(), l.h_size());
    let mut thresholds = Vec::with_capacity(n * n);
    for a in 0..n {
        for d in 0..n {
            thresholds.push((l.a(a), l.d(d), apvc_threshold(g, a, d)));
        }
    }
    let mut instance = LabeledInstance::new(graph, h_groups(l));
    instance.meta = InstanceMeta {
        source_n: Some(n),
        demand: None,
    };
    Ok(HardInstance {
        instance,
        kind: HardKind::Apvc,
        thresholds: Thresholds::PerPair(thresholds),
    })
}

/// `Ĥ_ad` on the `4n` ids of the 4-partite graph: `a-b` for
/// `b in B_a ∩ B_d`, the `G_4p` edges between `B_a ∩ B_d` and `C_a ∩ C_d`,
/// and `c-d` for `c in C_a ∩ C_d`.
pub fn build_h_hat(fp: &FourPartite, a: usize, d: usize) -> Result<Graph> {
    if fp.group_of(a) != Some(GroupTag::A) || fp.group_of(d) != Some(GroupTag::D) {
        return Err(Error::InvalidQuery(format!("({a}, {d}) is not an A x D pair")));
    }
    let g4 = fp.graph();
    let bs: Vec<usize> = fp
        .neighbors_in(a, GroupTag::B)
        .into_iter()
        .filter(|&b| g4.has_edge(d, b))
        .collect();
    let cs: Vec<usize> = fp
        .neighbors_in(a, GroupTag::C)
        .into_iter()
        .filter(|&c| g4.has_edge(d, c))
        .collect();
    let mut edges = Vec::new();
    for &b in &bs {
        edges.push((a, b));
        for &c in &cs {
            if g4.has_edge(b, c) {
                edges.push((b, c));
            }
        }
    }
    for &c in &cs {
        edges.push((c, d));
    }
    Ok(Graph::from_edges_dedup(fp.layout.four_partite_size(), edges))
}

/// `(a, d)` pairs of `H` whose originals are adjacent in `G`.
pub fn adjacent_query_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let l = Layout::new(g.n());
    let mut out = Vec::with_capacity(2 * g.m());
    for a in 0..g.n() {
        for &d in g.neighbors(a) {
            out.push((l.a(a), l.d(d)));
        }
    }
    out
}

/// The Steiner hard instance `J` on `32n` vertices: `H` plus `Z`, `W`
/// (copies of `V(G)`), `A'`, `D'` (`10n` each) and the edges
/// `E_Z, E_W, E_A', E_D', E_AD`. Terminals are `A ∪ D`, threshold `5n + 1`.
pub fn build_j(g: &Graph, demand: &EdgeSet) -> Result<HardInstance> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidQuery("hard instance needs n >= 1".into()));
    }
    demand.check_subset_of(g)?;
    let fp = four_partite(g);
    let l = fp.layout;
    let h = h_graph(&fp);

    let mut edges = h.edges();
    for v in 0..n {
        for u in 0..n {
            // E_Z / E_W: adjacency in G decides; (v, v) is a non-edge
            let target = if g.has_edge(v, u) { l.z(u) } else { l.w(u) };
            edges.push((l.a(v), target));
            edges.push((l.d(v), target));
            if !demand.contains(v, u) {
                edges.push((l.a(v), l.d(u)));
            }
        }
        for i in 0..PRIME_GROUP_FACTOR * n {
            edges.push((l.a(v), l.a_prime(i)));
            edges.push((l.d(v), l.d_prime(i)));
        }
    }
    let graph = Graph::from_edges_dedup(l.j_size(), edges);

    let mut groups = h_groups(l);
    for t in [GroupTag::Z, GroupTag::W, GroupTag::APrime, GroupTag::DPrime] {
        groups.insert(t, l.group(t).collect());
    }
    let mut instance = LabeledInstance::new(graph, groups);
    instance.meta = InstanceMeta {
        source_n: Some(n),
        demand: Some(demand.clone()),
    };
    let terminals: Vec<usize> = l.group(GroupTag::A).chain(l.group(GroupTag::D)).collect();
    Ok(HardInstance {
        instance,
        kind: HardKind::Steiner,
        thresholds: Thresholds::Uniform {
            value: 5 * n + 1,
            terminals,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::vertex_connectivity_value;
    use crate::graph::named::*;
    use crate::reductions::{attach_gadget, build_filter_b, build_filter_c};

    #[test]
    fn single_vertex_instance() {
        let h = build_h(&Graph::empty(1)).unwrap();
        assert_eq!(h.graph().n(), 10);
        h.instance.validate().unwrap();
        let l = h.layout();
        assert!(vertex_connectivity_value(h.graph(), l.a(0), l.d(0)).is_ok());
        assert!(adjacent_query_pairs(&Graph::empty(1)).is_empty());
        assert!(build_h(&Graph::empty(0)).is_err());
    }

    #[test]
    fn k4_threshold_is_19() {
        let g = complete(4);
        assert_eq!(apvc_threshold(&g, 0, 1), 19);
        let h = build_h(&g).unwrap();
        let l = h.layout();
        assert_eq!(h.pair_threshold(l.a(0), l.d(1)), Some(19));
        assert!(vertex_connectivity_value(h.graph(), l.a(0), l.d(1)).unwrap() >= 19);
    }

    #[test]
    fn threshold_edgeless_and_symmetric() {
        let g = Graph::empty(5);
        assert_eq!(apvc_threshold(&g, 1, 3), 21);
        let g = crate::graph::gen_gnp(8, 0.5, 1);
        for a in 0..8 {
            for d in 0..8 {
                assert_eq!(apvc_threshold(&g, a, d), apvc_threshold(&g, d, a));
            }
        }
    }

    #[test]
    fn closed_form_equals_literal_union() {
        for seed in 0..6 {
            let g = crate::graph::gen_gnp(4, 0.5, seed);
            let fp = four_partite(&g);
            let l = fp.layout;
            let mut union = Graph::empty(l.filter_size());
            let bc_edges: Vec<(usize, usize)> = fp
                .graph()
                .edges()
                .into_iter()
                .filter(|&(x, y)| {
                    let in_bc = |v: usize| (l.n..3 * l.n).contains(&v);
                    in_bc(x) && in_bc(y)
                })
                .collect();
            let bc = Graph::from_edges_dedup(l.filter_size(), bc_edges);
            for i in 0..l.n {
                for j in 0..l.n {
                    let (a, d) = (l.a(i), l.d(j));
                    union = union
                        .union(&build_filter_b(&fp, a, d).unwrap().graph)
                        .union(&build_filter_c(&fp, a, d).unwrap().graph)
                        .union(&bc);
                }
            }
            let a: Vec<usize> = l.group(GroupTag::A).collect();
            let d: Vec<usize> = l.group(GroupTag::D).collect();
            let literal = attach_gadget(&union, &a, &d).unwrap();
            assert_eq!(&literal, build_h(&g).unwrap().graph(), "seed {seed}");
        }
    }

    #[test]
    fn sizes() {
        for n in 1..6 {
            let g = crate::graph::gen_gnp(n, 0.5, n as u64);
            let h = build_h(&g).unwrap();
            assert_eq!(h.graph().n(), 10 * n);
            h.instance.validate().unwrap();
            let j = build_j(&g, &g.edge_set()).unwrap();
            assert_eq!(j.graph().n(), 32 * n);
            assert_eq!(j.instance.group(GroupTag::APrime).len(), 10 * n);
            assert_eq!(j.instance.group(GroupTag::DPrime).len(), 10 * n);
            j.instance.validate().unwrap();
        }
    }

    #[test]
    fn j_rejects_foreign_demand() {
        let g = path(3);
        let demand = EdgeSet::new(3, [(0, 2)]).unwrap();
        assert_eq!(build_j(&g, &demand).unwrap_err(), Error::DemandNotInGraph(0, 2));
    }

    #[test]
    fn j_edges_to_own_w_copy() {
        let g = path(3);
        let j = build_j(&g, &EdgeSet::default()).unwrap();
        let l = j.layout();
        assert!(j.graph().has_edge(l.a(1), l.w(1)));
        assert!(j.graph().has_edge(l.a(1), l.z(0)));
        assert!(!j.graph().has_edge(l.a(1), l.w(0)));
        assert!(j.graph().has_edge(l.a(0), l.d(0)));
    }

    #[test]
    fn h_hat_witness_path() {
        let g = complete(4);
        let fp = four_partite(&g);
        let (a, d) = (fp.layout.a(0), fp.layout.d(1));
        let hh = build_h_hat(&fp, a, d).unwrap();
        assert!(vertex_connectivity_value(&hh, a, d).unwrap() >= 1);
        let g = cycle(5);
        let fp = four_partite(&g);
        let (a, d) = (fp.layout.a(0), fp.layout.d(1));
        assert_eq!(vertex_connectivity_value(&build_h_hat(&fp, a, d).unwrap(), a, d).unwrap(), 0);
    }
}
