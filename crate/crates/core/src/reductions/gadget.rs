use std::collections::BTreeMap;

use crate::error::{check_vertex, Error, Result};
use crate::graph::{Graph, GroupTag, LabeledInstance};

/// Source-sink isolating gadget `Q(X, Y)` over a host id space of size
/// `host_n`. Fresh copies are appended in the order `X1, X2, Y1, Y2`.
///
/// Edges: matching `X-X1`, complete `X1-Y`, matching `Y-Y1`, complete
/// `Y1-X`, complete `X-X2`, complete `Y-Y2`. For any non-adjacent
/// `x in X, y in Y` of a host `R`, attaching `Q` adds exactly `|X| + |Y|`
/// to the connectivity of `R` with `(X ∪ Y) \ {x, y}` removed.
pub fn build_isolating_gadget(host_n: usize, x: &[usize], y: &[usize]) -> Result<LabeledInstance> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidQuery("gadget sides must be nonempty".into()));
    }
    let mut side = vec![0u8; host_n];
    for (mark, set) in [(1u8, x), (2u8, y)] {
        for &v in set {
            check_vertex(v, host_n)?;
            if side[v] != 0 {
                return Err(Error::InvalidQuery(format!(
                    "vertex {v} repeated or shared by both gadget sides"
                )));
            }
            side[v] = mark;
        }
    }
    let (nx, ny) = (x.len(), y.len());
    let x1 = host_n;
    let x2 = x1 + nx;
    let y1 = x2 + nx;
    let y2 = y1 + ny;
    let total = y2 + ny;

    let mut edges = Vec::new();
    for (i, &xv) in x.iter().enumerate() {
        edges.push((xv, x1 + i));
        for j in 0..nx {
            edges.push((xv, x2 + j));
        }
        for j in 0..ny {
            edges.push((xv, y1 + j));
        }
    }
    for (i, &yv) in y.iter().enumerate() {
        edges.push((yv, y1 + i));
        for j in 0..ny {
            edges.push((yv, y2 + j));
        }
        for j in 0..nx {
            edges.push((yv, x1 + j));
        }
    }
    let graph = Graph::from_edges_dedup(total, edges);

    let sorted = |s: &[usize]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v
    };
    let mut groups = BTreeMap::new();
    groups.insert(GroupTag::X, sorted(x));
    groups.insert(GroupTag::Y, sorted(y));
    groups.insert(GroupTag::X1, (x1..x2).collect());
    groups.insert(GroupTag::X2, (x2..y1).collect());
    groups.insert(GroupTag::Y1, (y1..y2).collect());
    groups.insert(GroupTag::Y2, (y2..total).collect());
    groups.insert(GroupTag::Plain, (0..host_n).filter(|&v| side[v] == 0).collect());
    Ok(LabeledInstance::new(graph, groups))
}

/// `R ∪ Q(X, Y)`, with the gadget's fresh vertices appended after `V(R)`.
pub fn attach_gadget(r: &Graph, x: &[usize], y: &[usize]) -> Result<Graph> {
    let q = build_isolating_gadget(r.n(), x, y)?;
    Ok(r.union(&q.graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::vertex_connectivity_value;

    #[test]
    fn singleton_sides() {
        let q = build_isolating_gadget(2, &[0], &[1]).unwrap();
        q.validate().unwrap();
        assert_eq!(q.graph.n(), 6);
        assert_eq!(q.graph.m(), 6);
        assert_eq!(vertex_connectivity_value(&q.graph, 0, 1).unwrap(), 2);
    }

    #[test]
    fn connectivity_is_side_sum() {
        for (nx, ny) in [(1, 3), (2, 2), (4, 1), (3, 5)] {
            let x: Vec<usize> = (0..nx).collect();
            let y: Vec<usize> = (nx..nx + ny).collect();
            let q = build_isolating_gadget(nx + ny, &x, &y).unwrap();
            let core: usize = [GroupTag::X, GroupTag::X1, GroupTag::X2, GroupTag::Y, GroupTag::Y1, GroupTag::Y2]
                .iter()
                .map(|&t| q.group(t).len())
                .sum();
            assert_eq!(core, 3 * (nx + ny));
            for &a in &x {
                for &b in &y {
                    assert_eq!(vertex_connectivity_value(&q.graph, a, b).unwrap(), nx + ny);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_sides() {
        assert!(build_isolating_gadget(3, &[0, 1], &[1]).is_err());
        assert!(build_isolating_gadget(3, &[], &[1]).is_err());
        assert!(build_isolating_gadget(3, &[0], &[3]).is_err());
    }

    #[test]
    fn edgeless_host() {
        let r = Graph::empty(6);
        let g = attach_gadget(&r, &[0, 1], &[2, 3, 4]).unwrap();
        assert_eq!(vertex_connectivity_value(&g, 1, 4).unwrap(), 5);
    }
}
