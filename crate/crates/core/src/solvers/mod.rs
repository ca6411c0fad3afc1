//! The vertex connectivity problems: pairwise, single-source, all-pairs,
//! global and Steiner, plus the degree-split and sampling algorithms.

mod matrix;
mod sampling;
mod split;

pub use matrix::ConnectivityMatrix;
pub use sampling::{
    capped_apvc_sampled, capped_apvc_sampled_with, SampleFamily, DEFAULT_SAMPLING_CONSTANT, SampledApvc, SamplerConfig,
    SamplerStats,
};
pub use split::{fast_apvc, fast_apvc_with, fast_ssvc, fast_ssvc_with, DegreeSplit, FastConfig, ThresholdMode};

use crate::error::{check_vertex, Error, Result};
use crate::flow::vertex_connectivity_value;
use crate::graph::Graph;
use crate::par;

/// One max flow per unordered pair.
pub fn apvc_naive(g: &Graph) -> ConnectivityMatrix {
    let pairs = par::all_pairs(g.n());
    let values = par::map(&pairs, |&(u, v)| {
        vertex_connectivity_value(g, u, v).expect("distinct in-range pair")
    });
    let mut out = ConnectivityMatrix::new(g.n(), None);
    for (&(u, v), k) in pairs.iter().zip(values) {
        out.set(u, v, k);
    }
    out
}

/// `kappa_G(s, v)` for every `v`; the entry for `s` itself is `None`.
pub fn ssvc(g: &Graph, s: usize) -> Result<Vec<Option<usize>>> {
    check_vertex(s, g.n())?;
    let targets: Vec<usize> = (0..g.n()).filter(|&v| v != s).collect();
    let values = par::map(&targets, |&v| {
        vertex_connectivity_value(g, s, v).expect("distinct in-range pair")
    });
    let mut row = vec![None; g.n()];
    for (&v, k) in targets.iter().zip(values) {
        row[v] = Some(k);
    }
    Ok(row)
}

/// Minimum of `kappa_G(u, v)` over all pairs, by sweeping every pair.
pub fn global_vc(g: &Graph) -> Result<usize> {
    if g.n() < 2 {
        return Err(Error::InvalidQuery("global connectivity needs n >= 2".into()));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    steiner_vc(g, &all)
}

/// Minimum of `kappa_G(u, v)` over pairs of distinct terminals.
pub fn steiner_vc(g: &Graph, terminals: &[usize]) -> Result<usize> {
    let mut ts = terminals.to_vec();
    ts.sort_unstable();
    ts.dedup();
    for &t in &ts {
        check_vertex(t, g.n())?;
    }
    if ts.len() < 2 {
        return Err(Error::InvalidQuery("Steiner connectivity needs at least 2 terminals".into()));
    }
    let pairs: Vec<(usize, usize)> = par::all_pairs(ts.len())
        .into_iter()
        .map(|(i, j)| (ts[i], ts[j]))
        .collect();
    let values = par::map(&pairs, |&(u, v)| {
        vertex_connectivity_value(g, u, v).expect("distinct in-range pair")
    });
    Ok(values.into_iter().min().expect("at least one pair"))
}

/// All-pairs connectivity assembled from one single-source run per vertex.
/// The two orientations of every pair are computed independently and must
/// agree.
pub fn apvc_via_ssvc(g: &Graph) -> Result<ConnectivityMatrix> {
    let rows = (0..g.n())
        .map(|s| ssvc(g, s))
        .collect::<Result<Vec<_>>>()?;
    ConnectivityMatrix::from_rows(rows, None)
}

/// A black-box all-pairs solver, as consumed by the reductions.
pub trait ApvcSolver: Sync {
    fn name(&self) -> &'static str;

    fn apvc(&self, g: &Graph) -> Result<ConnectivityMatrix>;

    /// Connectivity of selected pairs. The default computes the whole matrix.
    fn pairs(&self, g: &Graph, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
        let m = self.apvc(g)?;
        pairs
            .iter()
            .map(|&(u, v)| {
                m.get(u, v)
                    .ok_or_else(|| Error::InvalidQuery(format!("pair ({u}, {v}) has no entry")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NaiveApvc;

impl ApvcSolver for NaiveApvc {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn apvc(&self, g: &Graph) -> Result<ConnectivityMatrix> {
        Ok(apvc_naive(g))
    }
}

#[derive(Debug, Clone, Default)]
pub struct FastApvc(pub FastConfig);

impl ApvcSolver for FastApvc {
    fn name(&self) -> &'static str {
        "fast"
    }

    fn apvc(&self, g: &Graph) -> Result<ConnectivityMatrix> {
        Ok(fast_apvc_with(g, &self.0))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SsvcApvc;

impl ApvcSolver for SsvcApvc {
    fn name(&self) -> &'static str {
        "via-ssvc"
    }

    fn apvc(&self, g: &Graph) -> Result<ConnectivityMatrix> {
        apvc_via_ssvc(g)
    }
}

/// Answers only the requested pairs, one max flow each.
#[derive(Debug, Clone, Copy, Default)]
pub struct PairSweep;

impl ApvcSolver for PairSweep {
    fn name(&self) -> &'static str {
        "pair-sweep"
    }

    fn apvc(&self, g: &Graph) -> Result<ConnectivityMatrix> {
        Ok(apvc_naive(g))
    }

    fn pairs(&self, g: &Graph, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
        par::map(pairs, |&(u, v)| vertex_connectivity_value(g, u, v))
            .into_iter()
            .collect()
    }
}

/// A black-box Steiner connectivity solver.
pub trait SteinerSolver: Sync {
    fn name(&self) -> &'static str;

    fn steiner(&self, g: &Graph, terminals: &[usize]) -> Result<usize>;
}

/// Direct sweep over terminal pairs.
#[derive(Debug, Clone, Copy, Default)]
pub struct PairwiseSteiner;

impl SteinerSolver for PairwiseSteiner {
    fn name(&self) -> &'static str {
        "pairwise"
    }

    fn steiner(&self, g: &Graph, terminals: &[usize]) -> Result<usize> {
        steiner_vc(g, terminals)
    }
}

/// Steiner connectivity read off an all-pairs solver's terminal pairs.
#[derive(Debug, Clone, Copy, Default)]
pub struct ViaApvc<S>(pub S);

impl<S: ApvcSolver> SteinerSolver for ViaApvc<S> {
    fn name(&self) -> &'static str {
        self.0.name()
    }

    fn steiner(&self, g: &Graph, terminals: &[usize]) -> Result<usize> {
        let mut ts = terminals.to_vec();
        ts.sort_unstable();
        ts.dedup();
        if ts.len() < 2 {
            return Err(Error::InvalidQuery("Steiner connectivity needs at least 2 terminals".into()));
        }
        let pairs: Vec<(usize, usize)> = par::all_pairs(ts.len())
            .into_iter()
            .map(|(i, j)| (ts[i], ts[j]))
            .collect();
        Ok(self.0.pairs(g, &pairs)?.into_iter().min().expect("at least one pair"))
    }
}
