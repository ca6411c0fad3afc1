//! Exhaustive ground truth for small instances. Nothing here shares code
//! with the flow solvers.

use crate::error::{check_vertex, Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{EdgeSet, Graph};

/// Brute-force limits for [`brute_mixed_cut`].
pub const MAX_BRUTE_N: usize = 8;
pub const MAX_BRUTE_M: usize = 14;

/// Some 4-clique of `g` as a sorted witness, found by scanning each edge
/// and pairs of its common neighbours.
pub fn brute_4clique(g: &Graph) -> Option<[usize; 4]> {
    for (u, v) in g.edges() {
        if let Some((x, y)) = common_adjacent_pair(g, u, v) {
            let mut w = [u, v, x, y];
            w.sort_unstable();
            debug_assert!(is_clique(g, &w));
            return Some(w);
        }
    }
    None
}

/// Same question answered by enumerating every 4-subset in lexicographic
/// order, used to cross-check [`brute_4clique`].
pub fn brute_4clique_by_subsets(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for b in (a + 1)..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in (b + 1)..n {
                if !(g.has_edge(a, c) && g.has_edge(b, c)) {
                    continue;
                }
                for d in (c + 1)..n {
                    if g.has_edge(a, d) && g.has_edge(b, d) && g.has_edge(c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// Two adjacent vertices both adjacent to `u` and `v`.
fn common_adjacent_pair(g: &Graph, u: usize, v: usize) -> Option<(usize, usize)> {
    let common: Vec<usize> = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&w| w != v && g.has_edge(v, w))
        .collect();
    for (i, &x) in common.iter().enumerate() {
        for &y in &common[i + 1..] {
            if g.has_edge(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Whether the edge `{u, v}` lies in some 4-clique.
pub fn edge_in_4clique(g: &Graph, u: usize, v: usize) -> bool {
    g.has_edge(u, v) && common_adjacent_pair(g, u, v).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeUniversal {
    pub holds: bool,
    /// First demand edge (in canonical order) outside every 4-clique.
    pub first_failure: Option<(usize, usize)>,
}

/// Does every demand edge extend to a 4-clique?
pub fn brute_edge_universal(g: &Graph, demand: &EdgeSet) -> Result<EdgeUniversal> {
    demand.check_subset_of(g)?;
    let first_failure = demand
        .pairs()
        .iter()
        .copied()
        .find(|&(u, v)| !edge_in_4clique(g, u, v));
    Ok(EdgeUniversal {
        holds: first_failure.is_none(),
        first_failure,
    })
}

/// Minimum number of removable elements whose deletion disconnects `u`
/// from `v`. Removable elements are all edges plus every vertex other than
/// `u`, `v` (vertex mode, `terminals = None`) or every non-terminal vertex
/// (element mode). Subsets are tried by increasing size.
pub fn brute_mixed_cut(g: &Graph, u: usize, v: usize, terminals: Option<&[usize]>) -> Result<usize> {
    let n = g.n();
    if n > MAX_BRUTE_N || g.m() > MAX_BRUTE_M {
        return Err(Error::SizeGuard { n, m: g.m() });
    }
    check_vertex(u, n)?;
    check_vertex(v, n)?;
    if u == v {
        return Err(Error::InvalidQuery("brute cut with u = v".into()));
    }
    let mut protected = vec![false; n];
    protected[u] = true;
    protected[v] = true;
    if let Some(ts) = terminals {
        for &t in ts {
            check_vertex(t, n)?;
            protected[t] = true;
        }
        for w in [u, v] {
            if !ts.contains(&w) {
                return Err(Error::NotTerminal(w));
            }
        }
    }
    let vertices: Vec<usize> = (0..n).filter(|&w| !protected[w]).collect();
    let edges = g.edges();
    let elements = vertices.len() + edges.len();

    for size in 0..=elements {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut vmask = 0u32;
            let mut emask = 0u32;
            for &i in &combo {
                if i < vertices.len() {
                    vmask |= 1 << vertices[i];
                } else {
                    emask |= 1 << (i - vertices.len());
                }
            }
            if !reachable(n, &edges, u, v, vmask, emask) {
                return Ok(size);
            }
            if !next_combination(&mut combo, elements) {
                break;
            }
        }
    }
    unreachable!("removing every edge always disconnects")
}

fn reachable(n: usize, edges: &[(usize, usize)], s: usize, t: usize, vmask: u32, emask: u32) -> bool {
    let mut seen = 1u32 << s;
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if emask & (1 << i) != 0 || (vmask >> a) & 1 == 1 || (vmask >> b) & 1 == 1 {
                continue;
            }
            let (sa, sb) = ((seen >> a) & 1 == 1, (seen >> b) & 1 == 1);
            if sa != sb {
                seen |= (1 << a) | (1 << b);
                changed = true;
            }
        }
    }
    debug_assert!(n <= 32);
    (seen >> t) & 1 == 1
}

/// Advances a sorted index combination over `0..len`; false when exhausted.
fn next_combination(combo: &mut [usize], len: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < len - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum source-sink cut capacity over all node bipartitions.
pub fn brute_min_cut_network(net: &FlowNetwork) -> u32 {
    let nodes = net.node_count();
    assert!(nodes <= 16, "brute min cut limited to 16 nodes");
    let (s, t) = (net.source(), net.sink());
    let mut best = u32::MAX;
    for side in 0u32..(1 << nodes) {
        if (side >> s) & 1 == 0 || (side >> t) & 1 == 1 {
            continue;
        }
        let cut = net
            .forward_arcs()
            .filter(|&a| (side >> net.tail(a)) & 1 == 1 && (side >> net.head(a)) & 1 == 0)
            .map(|a| net.capacity(a))
            .sum();
        best = best.min(cut);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn cliques() {
        assert_eq!(brute_4clique(&complete(4)), Some([0, 1, 2, 3]));
        assert_eq!(brute_4clique(&cycle(5)), None);
        assert_eq!(brute_4clique_by_subsets(&complete(5)), Some([0, 1, 2, 3]));
    }

    #[test]
    fn edge_universal() {
        let k4 = complete(4);
        assert!(brute_edge_universal(&k4, &EdgeSet::default()).unwrap().holds);
        assert!(brute_edge_universal(&k4, &k4.edge_set()).unwrap().holds);
        let c5 = cycle(5);
        let r = brute_edge_universal(&c5, &EdgeSet::new(5, [(1, 2)]).unwrap()).unwrap();
        assert_eq!(r.first_failure, Some((1, 2)));
        assert!(brute_edge_universal(&c5, &EdgeSet::new(5, [(0, 2)]).unwrap()).is_err());
    }

    #[test]
    fn mixed_cuts() {
        assert_eq!(brute_mixed_cut(&path(3), 0, 2, None).unwrap(), 1);
        assert_eq!(brute_mixed_cut(&complete(4), 0, 1, None).unwrap(), 3);
        assert_eq!(brute_mixed_cut(&path(3), 0, 2, Some(&[0, 1, 2])).unwrap(), 1);
        assert_eq!(brute_mixed_cut(&cycle(4), 0, 2, None).unwrap(), 2);
        assert!(matches!(
            brute_mixed_cut(&complete(9), 0, 1, None),
            Err(Error::SizeGuard { .. })
        ));
        assert!(matches!(
            brute_mixed_cut(&complete(6), 0, 1, None),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn combinations_enumerate_binomial() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
