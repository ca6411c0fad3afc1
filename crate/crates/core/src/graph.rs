//! Simple undirected graphs on dense integer ids, labelled instances and
//! seeded instance generators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_vertex, Error, Result};

/// Simple undirected unweighted graph. Vertices are `0..n`.
///
/// Neighbour lists are kept sorted, which makes adjacency tests a binary
/// search and gives every traversal a deterministic order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, out-of-range
    /// endpoints and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::InvalidQuery(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidQuery(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    /// Like [`Graph::from_edges`] but merges duplicate edges, which is what a
    /// graph union needs. Panics on self-loops or bad ids: callers are
    /// constructions whose output is known to be in range.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n={n}");
            assert_ne!(u, v, "self-loop at {u}");
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice_m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Graph { adj, m: twice_m / 2 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Non-neighbours of `v`: `V \ N(v)`, which contains `v` itself.
    pub fn non_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| !self.has_edge(v, u)).collect()
    }

    /// Canonical `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet(self.edges())
    }

    /// Checks the structural invariants: no self-loops, no parallel edges,
    /// symmetric sorted adjacency and a consistent edge count.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut degree_sum = 0;
        for (v, list) in self.adj.iter().enumerate() {
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Inconsistent(format!(
                    "adjacency of {v} not strictly sorted"
                )));
            }
            for &u in list {
                if u >= n {
                    return Err(Error::VertexOutOfRange { vertex: u, n });
                }
                if u == v {
                    return Err(Error::Inconsistent(format!("self-loop at {v}")));
                }
                if !self.has_edge(u, v) {
                    return Err(Error::Inconsistent(format!("asymmetric edge {v}->{u}")));
                }
            }
        }
        if degree_sum != 2 * self.m {
            return Err(Error::Inconsistent(format!(
                "m={} but degree sum is {degree_sum}",
                self.m
            )));
        }
        Ok(())
    }

    /// Union on a shared id space; the result has `max(n1, n2)` vertices.
    pub fn union(&self, other: &Graph) -> Graph {
        let n = self.n().max(other.n());
        Graph::from_edges_dedup(n, self.edges().into_iter().chain(other.edges()))
    }

    /// Same vertex ids, every edge touching `removed` deleted. For
    /// connectivity between the surviving vertices this is the same as
    /// deleting the vertices.
    pub fn isolate_vertices(&self, removed: &[usize]) -> Graph {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        Graph::from_edges_dedup(
            self.n(),
            self.edges()
                .into_iter()
                .filter(|&(u, v)| !gone[u] && !gone[v]),
        )
    }

    /// Copy of the graph with the listed edges removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let cut: std::collections::HashSet<(usize, usize)> =
            removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        Graph::from_edges_dedup(
            self.n(),
            self.edges().into_iter().filter(|e| !cut.contains(e)),
        )
    }

    /// BFS reachability from `s` to `t` avoiding the blocked vertices.
    pub fn connected_avoiding(&self, s: usize, t: usize, blocked: &[bool]) -> bool {
        if s == t {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = std::collections::VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if seen[w] || blocked.get(w).copied().unwrap_or(false) {
                    continue;
                }
                if w == t {
                    return true;
                }
                seen[w] = true;
                queue.push_back(w);
            }
        }
        false
    }
}

/// Canonical list of unordered vertex pairs (`u < v`, sorted, no repeats).
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct EdgeSet(Vec<(usize, usize)>);

impl EdgeSet {
    /// Canonicalises and deduplicates; rejects self-pairs and ids `>= n`.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v) in pairs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::InvalidQuery(format!("self-pair ({u}, {u})")));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(EdgeSet(out))
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Every pair must be an edge of `g`.
    pub fn check_subset_of(&self, g: &Graph) -> Result<()> {
        match self.0.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
            Some(&(u, v)) => Err(Error::DemandNotInGraph(u, v)),
            None => Ok(()),
        }
    }
}

/// Names of the vertex groups used by the reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupTag {
    A,
    B,
    BPrime,
    C,
    CPrime,
    D,
    A1,
    A2,
    D1,
    D2,
    X,
    X1,
    X2,
    Y,
    Y1,
    Y2,
    Z,
    W,
    APrime,
    DPrime,
    Plain,
}

impl GroupTag {
    pub const ALL: [GroupTag; 21] = [
        GroupTag::A,
        GroupTag::B,
        GroupTag::BPrime,
        GroupTag::C,
        GroupTag::CPrime,
        GroupTag::D,
        GroupTag::A1,
        GroupTag::A2,
        GroupTag::D1,
        GroupTag::D2,
        GroupTag::X,
        GroupTag::X1,
        GroupTag::X2,
        GroupTag::Y,
        GroupTag::Y1,
        GroupTag::Y2,
        GroupTag::Z,
        GroupTag::W,
        GroupTag::APrime,
        GroupTag::DPrime,
        GroupTag::Plain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupTag::A => "A",
            GroupTag::B => "B",
            GroupTag::BPrime => "B'",
            GroupTag::C => "C",
            GroupTag::CPrime => "C'",
            GroupTag::D => "D",
            GroupTag::A1 => "A1",
            GroupTag::A2 => "A2",
            GroupTag::D1 => "D1",
            GroupTag::D2 => "D2",
            GroupTag::X => "X",
            GroupTag::X1 => "X1",
            GroupTag::X2 => "X2",
            GroupTag::Y => "Y",
            GroupTag::Y1 => "Y1",
            GroupTag::Y2 => "Y2",
            GroupTag::Z => "Z",
            GroupTag::W => "W",
            GroupTag::APrime => "A'",
            GroupTag::DPrime => "D'",
            GroupTag::Plain => "plain",
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        GroupTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown group tag {s:?}"))
    }
}

/// Construction parameters carried alongside a labelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InstanceMeta {
    /// Vertex count of the graph the instance was built from.
    pub source_n: Option<usize>,
    /// Demand edges of the source graph, when the construction has them.
    pub demand: Option<EdgeSet>,
}

/// A graph plus a partition of its vertices into named groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledInstance {
    pub graph: Graph,
    pub groups: BTreeMap<GroupTag, Vec<usize>>,
    pub meta: InstanceMeta,
}

impl LabeledInstance {
    pub fn new(graph: Graph, groups: BTreeMap<GroupTag, Vec<usize>>) -> Self {
        LabeledInstance {
            graph,
            groups,
            meta: InstanceMeta::default(),
        }
    }

    pub fn group(&self, tag: GroupTag) -> &[usize] {
        self.groups.get(&tag).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Groups must be pairwise disjoint, sorted, and cover every vertex.
    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        let n = self.graph.n();
        let mut owner: Vec<Option<GroupTag>> = vec![None; n];
        for (&tag, members) in &self.groups {
            if members.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Inconsistent(format!("group {tag} not sorted")));
            }
            for &v in members {
                check_vertex(v, n)?;
                if let Some(prev) = owner[v] {
                    return Err(Error::Inconsistent(format!(
                        "vertex {v} in both {prev} and {tag}"
                    )));
                }
                owner[v] = Some(tag);
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(Error::Inconsistent(format!("vertex {v} has no group")));
        }
        Ok(())
    }
}

/// Erdős–Rényi `G(n, p)`, deterministic in `seed`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} not in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_dedup(n, edges)
}

/// `G(n, base_p)`, optionally with a uniformly chosen 4-set completed to a
/// clique.
pub fn gen_planted_4clique(n: usize, base_p: f64, plant: bool, seed: u64) -> Graph {
    assert!(n >= 4, "planted 4-clique needs n >= 4");
    let base = gen_gnp(n, base_p, seed);
    if !plant {
        return base;
    }
    // separate stream so the base graph is the same with or without planting
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let chosen = sample(&mut rng, n, 4).into_vec();
    let mut edges = base.edges();
    for (i, &u) in chosen.iter().enumerate() {
        for &v in &chosen[i + 1..] {
            edges.push((u, v));
        }
    }
    Graph::from_edges_dedup(n, edges)
}

/// Appends `extra` isolated vertices; original ids are unchanged.
pub fn pad_with_isolated_vertices(g: &Graph, extra: usize) -> Graph {
    let mut adj = g.adj.clone();
    adj.resize(g.n() + extra, Vec::new());
    Graph { adj, m: g.m }
}

/// Standard small graphs used throughout the tests and docs.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
        Graph::from_edges_dedup(n, edges)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges_dedup(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges_dedup(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges_dedup(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn non_neighbors_contain_self() {
        let g = complete(4);
        assert_eq!(g.non_neighbors(2), vec![2]);
        let g = Graph::empty(3);
        assert_eq!(g.non_neighbors(1), vec![0, 1, 2]);
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(gen_gnp(5, 0.0, 7).m(), 0);
        assert_eq!(gen_gnp(5, 1.0, 7), complete(5));
        assert_eq!(gen_gnp(12, 0.4, 99), gen_gnp(12, 0.4, 99));
    }

    #[test]
    fn gnp_mean_edge_count() {
        // expectation p * C(20, 2) = 0.3 * 190 = 57
        let total: usize = (0..1000).map(|s| gen_gnp(20, 0.3, s).m()).sum();
        let mean = total as f64 / 1000.0;
        assert!((mean - 57.0).abs() < 3.0, "mean edge count {mean}");
    }

    #[test]
    fn planted_is_base_plus_clique() {
        let base = gen_planted_4clique(10, 0.2, false, 5);
        let planted = gen_planted_4clique(10, 0.2, true, 5);
        assert_eq!(base, gen_gnp(10, 0.2, 5));
        for (u, v) in base.edges() {
            assert!(planted.has_edge(u, v));
        }
        planted.validate().unwrap();
    }

    #[test]
    fn padding() {
        let p3 = path(3);
        assert_eq!(pad_with_isolated_vertices(&p3, 0), p3);
        let padded = pad_with_isolated_vertices(&p3, 2);
        assert_eq!((padded.n(), padded.m()), (5, 2));
        assert_eq!(padded.degree(3), 0);
        assert_eq!(padded.degree(4), 0);
        padded.validate().unwrap();
    }

    #[test]
    fn union_and_isolation() {
        let a = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let b = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        let u = a.union(&b);
        assert_eq!(u.n(), 5);
        assert_eq!(u.edges(), vec![(0, 1), (3, 4)]);
        let iso = complete(4).isolate_vertices(&[0]);
        assert_eq!(iso.degree(0), 0);
        assert_eq!(iso.m(), 3);
    }

    #[test]
    fn edge_set_canonical() {
        let e = EdgeSet::new(4, [(2, 1), (1, 2), (0, 3)]).unwrap();
        assert_eq!(e.pairs(), &[(0, 3), (1, 2)]);
        assert!(e.contains(2, 1));
        assert!(EdgeSet::new(4, [(1, 1)]).is_err());
        assert!(EdgeSet::new(4, [(1, 4)]).is_err());
    }

    #[test]
    fn group_tags_round_trip() {
        for t in GroupTag::ALL {
            assert_eq!(t.as_str().parse::<GroupTag>().unwrap(), t);
        }
    }

    #[test]
    fn labeled_validation() {
        let mut groups = BTreeMap::new();
        groups.insert(GroupTag::A, vec![0]);
        groups.insert(GroupTag::B, vec![1, 2]);
        let inst = LabeledInstance::new(path(3), groups.clone());
        inst.validate().unwrap();
        groups.insert(GroupTag::C, vec![2]);
        assert!(LabeledInstance::new(path(3), groups).validate().is_err());
    }
}
