//! Unit-capacity max flow and the Menger primitives built on it.
//!
//! Vertex connectivity uses the mixed-cut formulation: a cut may contain
//! non-endpoint vertices and edges. The network splits every vertex `v` into
//! `v_in = 2v` and `v_out = 2v + 1` joined by an internal arc, and every
//! undirected edge `{u, v}` becomes the two arcs `u_out -> v_in` and
//! `v_out -> u_in`, each of capacity 1. Endpoints (and, for element
//! connectivity, all terminals) get internal capacity `n`, which no minimum
//! cut can afford since `deg(s) <= n - 1`.

use std::collections::VecDeque;

use crate::error::{check_vertex, Error, Result};
use crate::graph::{EdgeSet, Graph};

/// What an arc of a split network stands for in the source graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcOrigin {
    /// Internal `v_in -> v_out` arc.
    Vertex(usize),
    /// Edge arc `u_out -> v_in` of the undirected edge `{u, v}`.
    Edge(usize, usize),
    /// Residual partner of a forward arc.
    Reverse,
    /// Arc added by hand through [`FlowNetwork::add_arc`].
    Other,
}

/// Directed network with paired residual arcs: arc `a` and `a ^ 1` are
/// partners, forward arcs have even ids.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    head: Vec<usize>,
    residual: Vec<u32>,
    capacity: Vec<u32>,
    origin: Vec<ArcOrigin>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes, "terminal out of range");
        FlowNetwork {
            head: Vec::new(),
            residual: Vec::new(),
            capacity: Vec::new(),
            origin: Vec::new(),
            out: vec![Vec::new(); nodes],
            source,
            sink,
        }
    }

    /// Adds `from -> to` with the given capacity and its zero-capacity
    /// partner. Returns the forward arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) -> usize {
        self.add_arc_with_origin(from, to, cap, ArcOrigin::Other)
    }

    fn add_arc_with_origin(&mut self, from: usize, to: usize, cap: u32, origin: ArcOrigin) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.residual.push(cap);
        self.capacity.push(cap);
        self.origin.push(origin);
        self.out[from].push(id);

        self.head.push(from);
        self.residual.push(0);
        self.capacity.push(0);
        self.origin.push(ArcOrigin::Reverse);
        self.out[to].push(id + 1);
        id
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    /// Forward arc ids in insertion order.
    pub fn forward_arcs(&self) -> impl Iterator<Item = usize> {
        (0..self.head.len()).step_by(2)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn head(&self, arc: usize) -> usize {
        self.head[arc]
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.head[arc ^ 1]
    }

    pub fn capacity(&self, arc: usize) -> u32 {
        self.capacity[arc]
    }

    pub fn origin(&self, arc: usize) -> ArcOrigin {
        self.origin[arc]
    }

    /// Flow currently on a forward arc.
    pub fn flow(&self, arc: usize) -> u32 {
        self.capacity[arc] - self.residual[arc]
    }

    /// Clears any flow.
    pub fn reset(&mut self) {
        self.residual.copy_from_slice(&self.capacity);
    }

    fn bfs_levels(&self, level: &mut [usize]) -> bool {
        level.fill(usize::MAX);
        level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.head[a];
                if self.residual[a] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level[self.sink] != usize::MAX
    }

    /// One augmenting path in the level graph, pushing at most `limit`.
    fn augment(&mut self, level: &mut [usize], next: &mut [usize], limit: u32, path: &mut Vec<usize>) -> u32 {
        path.clear();
        let mut u = self.source;
        loop {
            if u == self.sink {
                let pushed = path
                    .iter()
                    .map(|&a| self.residual[a])
                    .min()
                    .unwrap_or(0)
                    .min(limit);
                for &a in path.iter() {
                    self.residual[a] -= pushed;
                    self.residual[a ^ 1] += pushed;
                }
                return pushed;
            }
            let arcs = &self.out[u];
            while next[u] < arcs.len() {
                let a = arcs[next[u]];
                if self.residual[a] > 0 && level[self.head[a]] == level[u] + 1 {
                    break;
                }
                next[u] += 1;
            }
            if next[u] == arcs.len() {
                if u == self.source {
                    return 0;
                }
                // dead end: drop it from the level graph and retreat
                level[u] = usize::MAX;
                let a = path.pop().expect("non-source node has an incoming path arc");
                u = self.tail(a);
                next[u] += 1;
            } else {
                let a = arcs[next[u]];
                path.push(a);
                u = self.head[a];
            }
        }
    }

    /// Blocking-flow max flow that stops once `limit` units are routed.
    /// Adds to any flow already present; returns the units added.
    pub fn augment_up_to(&mut self, limit: u32) -> u32 {
        if self.source == self.sink {
            return 0;
        }
        let nodes = self.node_count();
        let mut level = vec![0; nodes];
        let mut next = vec![0; nodes];
        let mut path = Vec::new();
        let mut value = 0;
        while value < limit && self.bfs_levels(&mut level) {
            next.fill(0);
            while value < limit {
                let pushed = self.augment(&mut level, &mut next, limit - value, &mut path);
                if pushed == 0 {
                    break;
                }
                value += pushed;
            }
        }
        value
    }

    /// Nodes reachable from the source in the residual network.
    pub fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.head[a];
                if self.residual[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Forward arcs leaving the residual-reachable side. After a maximum
    /// flow these are saturated and form a minimum cut.
    pub fn min_cut(&self) -> Vec<usize> {
        let reach = self.residual_reachable();
        self.forward_arcs()
            .filter(|&a| self.capacity[a] > 0 && reach[self.tail(a)] && !reach[self.head[a]])
            .collect()
    }

    /// Splits the current flow into unit source-sink paths (as node
    /// sequences). Flow cycles are ignored. Assumes integral flow.
    pub fn decompose_paths(&self) -> Vec<Vec<usize>> {
        let mut remaining: Vec<u32> = (0..self.head.len())
            .map(|a| if a % 2 == 0 { self.flow(a) } else { 0 })
            .collect();
        let mut paths = Vec::new();
        loop {
            let mut visited = vec![false; self.node_count()];
            let mut stack = vec![(self.source, 0usize)];
            let mut arcs: Vec<usize> = Vec::new();
            visited[self.source] = true;
            let mut found = false;
            while let Some(&(u, _)) = stack.last() {
                if u == self.sink {
                    found = true;
                    break;
                }
                let top = stack.len() - 1;
                let mut advanced = false;
                while stack[top].1 < self.out[u].len() {
                    let a = self.out[u][stack[top].1];
                    stack[top].1 += 1;
                    let v = self.head[a];
                    if remaining[a] > 0 && !visited[v] {
                        visited[v] = true;
                        arcs.push(a);
                        stack.push((v, 0));
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    stack.pop();
                    arcs.pop();
                }
            }
            if !found {
                break;
            }
            for &a in &arcs {
                remaining[a] -= 1;
            }
            paths.push(stack.iter().map(|&(u, _)| u).collect());
        }
        paths
    }
}

/// Result of [`max_flow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u32,
    pub min_cut: Vec<usize>,
}

/// Maximum source-sink flow with a minimum cut read off the residual graph.
pub fn max_flow(net: &mut FlowNetwork) -> MaxFlow {
    net.reset();
    let value = net.augment_up_to(u32::MAX);
    MaxFlow {
        value,
        min_cut: net.min_cut(),
    }
}

#[inline]
pub(crate) fn in_node(v: usize) -> usize {
    2 * v
}

#[inline]
pub(crate) fn out_node(v: usize) -> usize {
    2 * v + 1
}

/// Vertex-split network from `s_in` to `t_out`; vertices for which
/// `unbounded` holds get internal capacity `n`, all others 1.
fn build_split_network(g: &Graph, s: usize, t: usize, unbounded: impl Fn(usize) -> bool) -> FlowNetwork {
    let n = g.n();
    let big = n as u32;
    let mut net = FlowNetwork::new(2 * n, in_node(s), out_node(t));
    for v in 0..n {
        let cap = if v == s || v == t || unbounded(v) { big } else { 1 };
        net.add_arc_with_origin(in_node(v), out_node(v), cap, ArcOrigin::Vertex(v));
    }
    for (u, v) in g.edges() {
        net.add_arc_with_origin(out_node(u), in_node(v), 1, ArcOrigin::Edge(u, v));
        net.add_arc_with_origin(out_node(v), in_node(u), 1, ArcOrigin::Edge(u, v));
    }
    net
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    check_vertex(u, g.n())?;
    check_vertex(v, g.n())?;
    if u == v {
        return Err(Error::InvalidQuery(format!("connectivity query with u = v = {u}")));
    }
    Ok(())
}

/// Vertex-split network for `kappa_G(s, t)`.
pub fn build_vc_network(g: &Graph, s: usize, t: usize) -> Result<FlowNetwork> {
    check_pair(g, s, t)?;
    Ok(build_split_network(g, s, t, |_| false))
}

/// A mixed vertex/edge cut separating a queried pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub cut_vertices: Vec<usize>,
    pub cut_edges: EdgeSet,
    pub value: usize,
}

impl CutCertificate {
    fn from_cut(g: &Graph, net: &FlowNetwork, cut: &[usize]) -> Self {
        let mut cut_vertices = Vec::new();
        let mut edges = Vec::new();
        for &a in cut {
            match net.origin(a) {
                ArcOrigin::Vertex(v) => cut_vertices.push(v),
                ArcOrigin::Edge(u, v) => edges.push((u, v)),
                other => unreachable!("arc origin {other:?} in a split-network cut"),
            }
        }
        cut_vertices.sort_unstable();
        let cut_edges = EdgeSet::new(g.n(), edges).expect("cut edges come from the graph");
        let value = cut_vertices.len() + cut_edges.len();
        CutCertificate {
            cut_vertices,
            cut_edges,
            value,
        }
    }

    /// True when deleting the certificate from `g` disconnects `u` and `v`.
    pub fn separates(&self, g: &Graph, u: usize, v: usize) -> bool {
        let h = g.without_edges(self.cut_edges.pairs());
        let mut blocked = vec![false; g.n()];
        for &c in &self.cut_vertices {
            if c == u || c == v {
                return false;
            }
            blocked[c] = true;
        }
        !h.connected_avoiding(u, v, &blocked)
    }
}

/// `kappa_G(u, v)` together with a minimum mixed cut.
pub fn vertex_connectivity(g: &Graph, u: usize, v: usize) -> Result<(usize, CutCertificate)> {
    let mut net = build_vc_network(g, u, v)?;
    let flow = max_flow(&mut net);
    let cert = CutCertificate::from_cut(g, &net, &flow.min_cut);
    debug_assert_eq!(cert.value, flow.value as usize);
    Ok((flow.value as usize, cert))
}

/// `kappa_G(u, v)` without building a certificate.
pub fn vertex_connectivity_value(g: &Graph, u: usize, v: usize) -> Result<usize> {
    capped_vertex_connectivity(g, u, v, usize::MAX)
}

/// A maximum family of internally vertex-disjoint `u`-`v` paths.
pub fn vertex_disjoint_paths(g: &Graph, u: usize, v: usize) -> Result<Vec<Vec<usize>>> {
    let mut net = build_vc_network(g, u, v)?;
    net.augment_up_to(u32::MAX);
    Ok(net
        .decompose_paths()
        .into_iter()
        .map(|nodes| {
            let mut verts: Vec<usize> = nodes.into_iter().map(|x| x / 2).collect();
            verts.dedup();
            verts
        })
        .collect())
}

/// `min{kappa_G(u, v), cap}`; augmentation stops after `cap` units.
pub fn capped_vertex_connectivity(g: &Graph, u: usize, v: usize, cap: usize) -> Result<usize> {
    if cap == 0 {
        return Err(Error::InvalidQuery("cap must be at least 1".into()));
    }
    let mut net = build_vc_network(g, u, v)?;
    let limit = u32::try_from(cap).unwrap_or(u32::MAX);
    Ok(net.augment_up_to(limit) as usize)
}

/// Element connectivity `kappa'_{G,U}(u, v)`: only edges and non-terminal
/// vertices may be cut.
pub fn element_connectivity(g: &Graph, terminals: &[usize], u: usize, v: usize) -> Result<usize> {
    check_pair(g, u, v)?;
    let mut is_terminal = vec![false; g.n()];
    for &w in terminals {
        check_vertex(w, g.n())?;
        is_terminal[w] = true;
    }
    for w in [u, v] {
        if !is_terminal[w] {
            return Err(Error::NotTerminal(w));
        }
    }
    let mut net = build_split_network(g, u, v, |w| is_terminal[w]);
    Ok(net.augment_up_to(u32::MAX) as usize)
}

/// Outcome of a capped element-connectivity query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CappedElementFlow {
    /// `min{kappa'_{G,U}(u, v), cap}`.
    pub value: usize,
    /// The flow routes at most one unit through each terminal other than
    /// `u` and `v`, so it is also a feasible flow of the vertex network and
    /// proves `kappa_G(u, v) >= value`.
    pub vertex_feasible: bool,
}

/// Capped element connectivity for a terminal mask. Endpoint validity is the
/// caller's responsibility.
pub(crate) fn capped_element_flow(g: &Graph, is_terminal: &[bool], u: usize, v: usize, cap: usize) -> CappedElementFlow {
    debug_assert!(u != v && is_terminal[u] && is_terminal[v]);
    let mut net = build_split_network(g, u, v, |w| is_terminal[w]);
    let limit = u32::try_from(cap).unwrap_or(u32::MAX);
    let value = net.augment_up_to(limit) as usize;
    // internal arcs are the first n forward arcs, arc id 2w for vertex w
    let vertex_feasible = (0..g.n())
        .filter(|&w| is_terminal[w] && w != u && w != v)
        .all(|w| net.flow(2 * w) <= 1);
    CappedElementFlow {
        value,
        vertex_feasible,
    }
}
