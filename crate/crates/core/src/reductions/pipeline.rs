use super::{adjacent_query_pairs, build_h, build_j, Thresholds};
use crate::error::Result;
use crate::graph::{EdgeSet, Graph};
use crate::solvers::{ApvcSolver, SteinerSolver};

/// Decides whether `g` has a 4-clique by computing connectivity in `H` for
/// every `(a, d)` with `a, d` adjacent in `g` and comparing against the
/// per-pair threshold.
pub fn solve_4clique_via_apvc(g: &Graph, solver: &dyn ApvcSolver) -> Result<bool> {
    if g.m() == 0 {
        return Ok(false);
    }
    let h = build_h(g)?;
    let pairs = adjacent_query_pairs(g);
    let values = solver.pairs(h.graph(), &pairs)?;
    Ok(pairs.iter().zip(values).any(|(&(a, d), kappa)| {
        let t = h.pair_threshold(a, d).expect("threshold for every A x D pair");
        kappa >= t
    }))
}

/// Decides whether every demand edge lies in a 4-clique: the answer is yes
/// iff the Steiner connectivity of `A ∪ D` in `J` reaches `5n + 1`.
pub fn solve_edge_universal_via_steiner(g: &Graph, demand: &EdgeSet, solver: &dyn SteinerSolver) -> Result<bool> {
    let j = build_j(g, demand)?;
    let Thresholds::Uniform { value, terminals } = &j.thresholds else {
        unreachable!("Steiner instance has a uniform threshold")
    };
    Ok(solver.steiner(j.graph(), terminals)? >= *value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::solvers::{PairSweep, PairwiseSteiner};

    #[test]
    fn k4_and_c5() {
        assert!(solve_4clique_via_apvc(&complete(4), &PairSweep).unwrap());
        assert!(!solve_4clique_via_apvc(&cycle(5), &PairSweep).unwrap());
        assert!(!solve_4clique_via_apvc(&Graph::empty(3), &PairSweep).unwrap());
    }

    #[test]
    fn steiner_small() {
        let k4 = complete(4);
        assert!(solve_edge_universal_via_steiner(&k4, &k4.edge_set(), &PairwiseSteiner).unwrap());
        assert!(solve_edge_universal_via_steiner(&path(3), &EdgeSet::default(), &PairwiseSteiner).unwrap());
        let p = path(3);
        assert!(!solve_edge_universal_via_steiner(&p, &p.edge_set(), &PairwiseSteiner).unwrap());
    }
}
