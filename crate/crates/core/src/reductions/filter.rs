//! Set-intersection filters `P^B_ad` and `P^C_ad`, on the `6n` id space of
//! `A, B, C, D, B', C'`.

use std::collections::BTreeMap;

use super::FourPartite;
use crate::error::{Error, Result};
use crate::graph::{Graph, GroupTag, LabeledInstance};

fn check_endpoints(fp: &FourPartite, a: usize, d: usize) -> Result<()> {
    if fp.group_of(a) != Some(GroupTag::A) {
        return Err(Error::InvalidQuery(format!("{a} is not an A vertex")));
    }
    if fp.group_of(d) != Some(GroupTag::D) {
        return Err(Error::InvalidQuery(format!("{d} is not a D vertex")));
    }
    Ok(())
}

fn labelled(fp: &FourPartite, edges: Vec<(usize, usize)>, a: usize, d: usize, side: GroupTag, copy: GroupTag) -> LabeledInstance {
    let l = fp.layout;
    let graph = Graph::from_edges_dedup(l.filter_size(), edges);
    let side_ids: Vec<usize> = l.group(side).collect();
    let copy_ids: Vec<usize> = l.group(copy).collect();
    let mut used = vec![false; l.filter_size()];
    for &v in side_ids.iter().chain(&copy_ids).chain([&a, &d]) {
        used[v] = true;
    }
    let mut groups = BTreeMap::new();
    groups.insert(GroupTag::A, vec![a]);
    groups.insert(GroupTag::D, vec![d]);
    groups.insert(side, side_ids);
    groups.insert(copy, copy_ids);
    groups.insert(GroupTag::Plain, (0..l.filter_size()).filter(|&v| !used[v]).collect());
    let mut inst = LabeledInstance::new(graph, groups);
    inst.meta.source_n = Some(fp.n());
    inst
}

/// `P^B_ad`: `a-b` for all `b in B`, `b-d` for `b` not adjacent to `d`,
/// `a-b'` for `b` adjacent to `a`, `b'-d` for all `b'`, and the matching
/// `b-b'`.
pub fn build_filter_b(fp: &FourPartite, a: usize, d: usize) -> Result<LabeledInstance> {
    check_endpoints(fp, a, d)?;
    let l = fp.layout;
    let mut edges = Vec::new();
    for v in 0..fp.n() {
        let (b, bp) = (l.b(v), l.b_prime(v));
        edges.push((a, b));
        if !fp.graph().has_edge(d, b) {
            edges.push((b, d));
        }
        if fp.graph().has_edge(a, b) {
            edges.push((a, bp));
        }
        edges.push((bp, d));
        edges.push((b, bp));
    }
    Ok(labelled(fp, edges, a, d, GroupTag::B, GroupTag::BPrime))
}

/// `P^C_ad`, the mirror of [`build_filter_b`]: `a-c` for `c` not adjacent
/// to `a`, `c-d` for all `c`, `a-c'` for all `c'`, `c'-d` for `c` adjacent
/// to `d`, and the matching `c'-c`.
pub fn build_filter_c(fp: &FourPartite, a: usize, d: usize) -> Result<LabeledInstance> {
    check_endpoints(fp, a, d)?;
    let l = fp.layout;
    let mut edges = Vec::new();
    for v in 0..fp.n() {
        let (c, cp) = (l.c(v), l.c_prime(v));
        if !fp.graph().has_edge(a, c) {
            edges.push((a, c));
        }
        edges.push((c, d));
        edges.push((a, cp));
        if fp.graph().has_edge(d, c) {
            edges.push((cp, d));
        }
        edges.push((cp, c));
    }
    Ok(labelled(fp, edges, a, d, GroupTag::C, GroupTag::CPrime))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::vertex_connectivity_value;
    use crate::graph::named::complete;
    use crate::reductions::four_partite;

    #[test]
    fn filter_b_on_single_edge() {
        let fp = four_partite(&complete(2));
        let (a, d) = (fp.layout.a(0), fp.layout.d(1));
        let p = build_filter_b(&fp, a, d).unwrap();
        p.validate().unwrap();
        let used = p.graph.n() - p.group(GroupTag::Plain).len();
        assert_eq!(used, 2 * 2 + 2);
        // B̄_d = {v_B} (v = 1 itself) and B_a = {v_B}
        assert_eq!(fp.non_neighbors_in(d, GroupTag::B), vec![fp.layout.b(1)]);
        assert_eq!(fp.neighbors_in(a, GroupTag::B), vec![fp.layout.b(1)]);
        // no host: |B̄_d| + |B_a| + |B_d ∩ B̄_a| = 1 + 1 + 1
        assert_eq!(vertex_connectivity_value(&p.graph, a, d).unwrap(), 3);
    }

    #[test]
    fn filter_c_on_single_edge() {
        let fp = four_partite(&complete(2));
        let (a, d) = (fp.layout.a(0), fp.layout.d(1));
        let p = build_filter_c(&fp, a, d).unwrap();
        p.validate().unwrap();
        // |C_d| + |C̄_a| + |C_a ∩ C̄_d| = 1 + 1 + 1
        assert_eq!(vertex_connectivity_value(&p.graph, a, d).unwrap(), 3);
    }

    #[test]
    fn wrong_groups_rejected() {
        let fp = four_partite(&complete(3));
        assert!(build_filter_b(&fp, fp.layout.b(0), fp.layout.d(1)).is_err());
        assert!(build_filter_c(&fp, fp.layout.a(0), fp.layout.c(1)).is_err());
    }
}
