//! Graph constructions that turn 4-clique questions into vertex
//! connectivity questions, and the pipelines that answer them through a
//! connectivity solver.
//!
//! All constructions for an `n`-vertex source graph share one id space,
//! see [`Layout`]. The 4-partite graph occupies the first `4n` ids, the
//! all-pairs instance `H` the first `10n` and the Steiner instance `J` all
//! `32n`.

mod filter;
mod four_partite;
mod gadget;
mod hard;
mod pipeline;

pub use filter::{build_filter_b, build_filter_c};
pub use four_partite::{four_partite, FourPartite};
pub use gadget::{attach_gadget, build_isolating_gadget};
pub use hard::{
    adjacent_query_pairs, apvc_threshold, build_h, build_h_hat, build_j, h_chain_offset, HardInstance, HardKind,
    Thresholds,
};
pub use pipeline::{solve_4clique_via_apvc, solve_edge_universal_via_steiner};

use crate::graph::GroupTag;

/// Vertex ids of every group for a source graph with `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
}

/// Size of the `A'` and `D'` groups of `J`, as a multiple of `n`.
pub const PRIME_GROUP_FACTOR: usize = 10;

impl Layout {
    pub fn new(n: usize) -> Self {
        Layout { n }
    }

    pub fn a(&self, v: usize) -> usize {
        v
    }
    pub fn b(&self, v: usize) -> usize {
        self.n + v
    }
    pub fn c(&self, v: usize) -> usize {
        2 * self.n + v
    }
    pub fn d(&self, v: usize) -> usize {
        3 * self.n + v
    }
    pub fn b_prime(&self, v: usize) -> usize {
        4 * self.n + v
    }
    pub fn c_prime(&self, v: usize) -> usize {
        5 * self.n + v
    }
    pub fn z(&self, v: usize) -> usize {
        10 * self.n + v
    }
    pub fn w(&self, v: usize) -> usize {
        11 * self.n + v
    }
    pub fn a_prime(&self, i: usize) -> usize {
        12 * self.n + i
    }
    pub fn d_prime(&self, i: usize) -> usize {
        (12 + PRIME_GROUP_FACTOR) * self.n + i
    }

    /// Number of ids used by the 4-partite graph.
    pub fn four_partite_size(&self) -> usize {
        4 * self.n
    }
    /// Ids of `A, B, C, D, B', C'`: the universe of the filters.
    pub fn filter_size(&self) -> usize {
        6 * self.n
    }
    pub fn h_size(&self) -> usize {
        10 * self.n
    }
    pub fn j_size(&self) -> usize {
        (12 + 2 * PRIME_GROUP_FACTOR) * self.n
    }

    /// Ids of a group of `H` or `J`.
    pub fn group(&self, tag: GroupTag) -> std::ops::Range<usize> {
        let n = self.n;
        let block = |i: usize| i * n..(i + 1) * n;
        match tag {
            GroupTag::A => block(0),
            GroupTag::B => block(1),
            GroupTag::C => block(2),
            GroupTag::D => block(3),
            GroupTag::BPrime => block(4),
            GroupTag::CPrime => block(5),
            GroupTag::A1 => block(6),
            GroupTag::A2 => block(7),
            GroupTag::D1 => block(8),
            GroupTag::D2 => block(9),
            GroupTag::Z => block(10),
            GroupTag::W => block(11),
            GroupTag::APrime => self.a_prime(0)..self.a_prime(PRIME_GROUP_FACTOR * n),
            GroupTag::DPrime => self.d_prime(0)..self.d_prime(PRIME_GROUP_FACTOR * n),
            _ => 0..0,
        }
    }

    /// Group and group-relative index of an id below `j_size`.
    pub fn locate(&self, id: usize) -> Option<(GroupTag, usize)> {
        const ORDER: [GroupTag; 14] = [
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
            GroupTag::Z,
            GroupTag::W,
            GroupTag::APrime,
            GroupTag::DPrime,
        ];
        ORDER.iter().find_map(|&tag| {
            let r = self.group(tag);
            r.contains(&id).then(|| (tag, id - r.start))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_blocks_tile_the_id_space() {
        let l = Layout::new(3);
        assert_eq!(l.h_size(), 30);
        assert_eq!(l.j_size(), 96);
        let mut covered = vec![0; l.j_size()];
        for tag in GroupTag::ALL {
            for id in l.group(tag) {
                covered[id] += 1;
            }
        }
        assert!(covered.iter().all(|&c| c == 1));
        assert_eq!(l.locate(l.d(2)), Some((GroupTag::D, 2)));
        assert_eq!(l.locate(l.d_prime(29)), Some((GroupTag::DPrime, 29)));
        assert_eq!(l.locate(96), None);
    }
}
