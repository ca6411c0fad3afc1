//! Degree-split all-pairs and single-source solvers.
//!
//! A pair with an endpoint of degree at most `k` has connectivity at most
//! `k`, so the capped sampler answers it exactly. Only pairs of two
//! high-degree vertices (there are at most `2m/k` such vertices) need a full
//! max flow.

use super::sampling::{evaluate_family, SampleFamily, DEFAULT_SAMPLING_CONSTANT};
use super::{ssvc, ConnectivityMatrix};
use crate::error::{check_vertex, Result};
use crate::flow::{capped_vertex_connectivity, vertex_connectivity_value};
use crate::graph::Graph;
use crate::par;

/// How the default degree threshold is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdMode {
    /// `ceil(m^{2/5})` for all-pairs, `ceil(m^{1/3})` for single-source.
    #[default]
    Default,
    /// `ceil(m^{1/2})` for both, the balance point when element-connectivity
    /// Gomory-Hu trees are assumed near-linear.
    Gh,
}

impl ThresholdMode {
    pub fn apvc_threshold(self, m: usize) -> usize {
        match self {
            ThresholdMode::Default => ceil_pow(m, 0.4),
            ThresholdMode::Gh => ceil_pow(m, 0.5),
        }
    }

    pub fn ssvc_threshold(self, m: usize) -> usize {
        match self {
            ThresholdMode::Default => ceil_pow(m, 1.0 / 3.0),
            ThresholdMode::Gh => ceil_pow(m, 0.5),
        }
    }
}

fn ceil_pow(m: usize, e: f64) -> usize {
    let x = (m as f64).powf(e);
    // guard against 8^(1/3) = 2.0000000000000004
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSplit {
    pub k: usize,
    /// `deg(v) > k`.
    pub high: Vec<usize>,
    /// `deg(v) <= k`.
    pub low: Vec<usize>,
}

impl DegreeSplit {
    pub fn new(g: &Graph, k: usize) -> Self {
        let (high, low) = (0..g.n()).partition(|&v| g.degree(v) > k);
        DegreeSplit { k, high, low }
    }

    pub fn is_high(&self, g: &Graph, v: usize) -> bool {
        g.degree(v) > self.k
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FastConfig {
    /// Degree threshold; `None` picks it from `mode`.
    pub k: Option<usize>,
    pub mode: ThresholdMode,
    pub c: f64,
    pub seed: u64,
}

impl Default for FastConfig {
    fn default() -> Self {
        FastConfig {
            k: None,
            mode: ThresholdMode::Default,
            c: DEFAULT_SAMPLING_CONSTANT,
            seed: 0,
        }
    }
}

/// Exact all-pairs connectivity via the degree split.
pub fn fast_apvc(g: &Graph, k: Option<usize>) -> ConnectivityMatrix {
    fast_apvc_with(g, &FastConfig { k, ..FastConfig::default() })
}

pub fn fast_apvc_with(g: &Graph, config: &FastConfig) -> ConnectivityMatrix {
    let n = g.n();
    let k = config.k.unwrap_or_else(|| config.mode.apvc_threshold(g.m()));
    let split = DegreeSplit::new(g, k);
    let mut out = ConnectivityMatrix::new(n, None);

    let (high_pairs, low_pairs): (Vec<_>, Vec<_>) = par::all_pairs(n)
        .into_iter()
        .partition(|&(u, v)| split.is_high(g, u) && split.is_high(g, v));

    let high_values = par::map(&high_pairs, |&(u, v)| {
        vertex_connectivity_value(g, u, v).expect("distinct in-range pair")
    });
    for (&(u, v), x) in high_pairs.iter().zip(high_values) {
        out.set(u, v, x);
    }

    if low_pairs.is_empty() {
        return out;
    }
    if k == 0 {
        // every low vertex is isolated
        for (u, v) in low_pairs {
            out.set(u, v, 0);
        }
        return out;
    }
    let family = SampleFamily::draw(n, k, config.c, config.seed);
    let table = evaluate_family(g, &family, |u, v| !(split.is_high(g, u) && split.is_high(g, v)));
    resolve(g, k, &low_pairs, |u, v| table[u * n + v], |u, v, x| out.set(u, v, x));
    out
}

/// Fills the requested pairs from certified estimates, running a capped max
/// flow for the rest.
fn resolve<E, S>(g: &Graph, k: usize, pairs: &[(usize, usize)], estimate: E, mut store: S)
where
    E: Fn(usize, usize) -> super::sampling::PairEstimate,
    S: FnMut(usize, usize, usize),
{
    let mut pending = Vec::new();
    for &(u, v) in pairs {
        let est = estimate(u, v);
        match est.value {
            Some(x) if est.exact => store(u, v, x),
            _ => pending.push((u, v)),
        }
    }
    let direct = par::map(&pending, |&(u, v)| {
        capped_vertex_connectivity(g, u, v, k).expect("distinct in-range pair")
    });
    for (&(u, v), x) in pending.iter().zip(direct) {
        store(u, v, x);
    }
}

/// Exact single-source connectivity via the degree split.
pub fn fast_ssvc(g: &Graph, s: usize, k: Option<usize>) -> Result<Vec<Option<usize>>> {
    fast_ssvc_with(g, s, &FastConfig { k, ..FastConfig::default() })
}

pub fn fast_ssvc_with(g: &Graph, s: usize, config: &FastConfig) -> Result<Vec<Option<usize>>> {
    check_vertex(s, g.n())?;
    let n = g.n();
    let k = config.k.unwrap_or_else(|| config.mode.ssvc_threshold(g.m()));
    let split = DegreeSplit::new(g, k);
    if k == 0 {
        // only isolated vertices are low; high pairs are all the rest
        return ssvc(g, s).map(|mut row| {
            for (v, slot) in row.iter_mut().enumerate() {
                if v != s && !(split.is_high(g, s) && split.is_high(g, v)) {
                    *slot = Some(0);
                }
            }
            row
        });
    }
    let mut row = vec![None; n];
    let (high, low): (Vec<usize>, Vec<usize>) = (0..n)
        .filter(|&v| v != s)
        .partition(|&v| split.is_high(g, s) && split.is_high(g, v));

    let high_values = par::map(&high, |&v| vertex_connectivity_value(g, s, v).expect("valid pair"));
    for (&v, x) in high.iter().zip(high_values) {
        row[v] = Some(x);
    }
    if !low.is_empty() {
        let family = SampleFamily::draw_single_source(n, s, k, config.c, config.seed);
        let table = evaluate_family(g, &family, |u, v| {
            let other = if u == s { v } else { u };
            !(split.is_high(g, s) && split.is_high(g, other))
        });
        let pairs: Vec<(usize, usize)> = low.iter().map(|&v| (s.min(v), s.max(v))).collect();
        resolve(g, k, &pairs, |u, v| table[u * n + v], |u, v, x| {
            let other = if u == s { v } else { u };
            row[other] = Some(x);
        });
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, named::*};
    use crate::solvers::apvc_naive;

    #[test]
    fn thresholds() {
        assert_eq!(ThresholdMode::Default.apvc_threshold(32), 4);
        assert_eq!(ThresholdMode::Default.apvc_threshold(33), 5);
        assert_eq!(ThresholdMode::Default.ssvc_threshold(8), 2);
        assert_eq!(ThresholdMode::Default.ssvc_threshold(27), 3);
        assert_eq!(ThresholdMode::Gh.apvc_threshold(16), 4);
        assert_eq!(ThresholdMode::Gh.ssvc_threshold(17), 5);
        assert_eq!(ThresholdMode::Default.apvc_threshold(0), 0);
    }

    #[test]
    fn split_sizes() {
        let g = gen_gnp(30, 0.2, 9);
        for k in 1..8 {
            let s = DegreeSplit::new(&g, k);
            assert_eq!(s.high.len() + s.low.len(), 30);
            assert!(s.high.len() * k <= 2 * g.m());
        }
    }

    #[test]
    fn fast_apvc_extremes() {
        let g = gen_gnp(14, 0.35, 21);
        let naive = apvc_naive(&g);
        assert_eq!(fast_apvc(&g, Some(0)), naive);
        assert_eq!(fast_apvc(&g, Some(14)), naive);
        assert_eq!(fast_apvc(&g, None), naive);
    }

    #[test]
    fn fast_ssvc_examples() {
        let s = star(5);
        for k in [0, 1, 2, 5] {
            let row = fast_ssvc(&s, 0, Some(k)).unwrap();
            assert!(row.iter().skip(1).all(|&x| x == Some(1)));
        }
        let g = Graph::from_edges(4, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(fast_ssvc(&g, 0, None).unwrap(), vec![None, Some(0), Some(0), Some(0)]);
        let g = gen_gnp(15, 0.4, 2);
        for s in [0, 7] {
            let truth = ssvc(&g, s).unwrap();
            for k in [Some(0), None, Some(3), Some(15)] {
                assert_eq!(fast_ssvc(&g, s, k).unwrap(), truth);
            }
        }
    }
}
