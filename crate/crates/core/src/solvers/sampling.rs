//! Capped all-pairs connectivity by terminal sampling.
//!
//! Each sample set `U_i` keeps every vertex independently with probability
//! `1/k`. For terminals `u, v` in a common set, capped element connectivity
//! `min{kappa'_{G,U_i}(u, v), k}` never undershoots `min{kappa_G(u, v), k}`,
//! and equals it whenever `U_i` misses some minimum `u`-`v` cut. Taking the
//! minimum over the sets that contain both endpoints recovers the capped
//! value with high probability.
//!
//! Each set is served by direct capped max-flow queries, one per pair.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ConnectivityMatrix;
use crate::error::{Error, Result};
use crate::flow::{capped_element_flow, capped_vertex_connectivity};
use crate::graph::Graph;
use crate::par;

/// Sampling constant `c` in `t = ceil(c * k^2 * ln n)`.
pub const DEFAULT_SAMPLING_CONSTANT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub c: f64,
    /// Resolve every pair the samples did not pin down with a direct capped
    /// max flow, making the output exact.
    pub fallback: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            c: DEFAULT_SAMPLING_CONSTANT,
            fallback: true,
        }
    }
}

/// The random terminal sets `U_1 .. U_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleFamily {
    pub k: usize,
    pub t: usize,
    pub c: f64,
    pub seed: u64,
    /// Vertex added to every set (single-source variant).
    pub forced: Option<usize>,
    pub sets: Vec<Vec<usize>>,
    /// Draws thrown away for exceeding [`SampleFamily::size_bound`].
    pub redraws: usize,
}

impl SampleFamily {
    /// `t = ceil(c k^2 ln n)` sets for the all-pairs sampler.
    pub fn draw(n: usize, k: usize, c: f64, seed: u64) -> Self {
        let t = set_count(c * (k * k) as f64, n);
        Self::draw_sets(n, k, t, c, seed, None)
    }

    /// `t = ceil(c k ln n)` sets, each forced to contain `source`. Every set
    /// already holds one endpoint of each `(source, v)` pair, so only the
    /// other endpoint has to be hit.
    pub fn draw_single_source(n: usize, source: usize, k: usize, c: f64, seed: u64) -> Self {
        let t = set_count(c * k as f64, n);
        Self::draw_sets(n, k, t, c, seed, Some(source))
    }

    /// Sets larger than `4 (n/k) ln n` are redrawn.
    pub fn size_bound(n: usize, k: usize) -> f64 {
        4.0 * (n as f64 / k as f64) * (n.max(2) as f64).ln()
    }

    fn draw_sets(n: usize, k: usize, t: usize, c: f64, seed: u64, forced: Option<usize>) -> Self {
        assert!(k >= 1, "sampling needs k >= 1");
        let p = 1.0 / k as f64;
        let bound = Self::size_bound(n, k);
        let mut redraws = 0;
        let sets = (0..t)
            .map(|i| {
                // one stream per set index: contents do not depend on the
                // order or thread in which sets are drawn
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                loop {
                    let mut set: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
                    if set.len() as f64 > bound {
                        redraws += 1;
                        continue;
                    }
                    if let Some(s) = forced {
                        if let Err(pos) = set.binary_search(&s) {
                            set.insert(pos, s);
                        }
                    }
                    break set;
                }
            })
            .collect();
        SampleFamily {
            k,
            t,
            c,
            seed,
            forced,
            sets,
            redraws,
        }
    }
}

fn set_count(factor: f64, n: usize) -> usize {
    let ln = (n.max(2) as f64).ln();
    ((factor * ln).ceil() as usize).max(1)
}

/// Per-pair outcome of evaluating a family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct PairEstimate {
    /// Minimum capped element connectivity over sets holding both ends.
    pub value: Option<usize>,
    /// Some set's flow was also vertex-feasible, so `value` is exact.
    pub exact: bool,
}

/// Runs the capped element-connectivity queries of every set restricted to
/// pairs accepted by `wanted`. Returns a dense `n * n` table (upper
/// triangle used, `u < v`).
pub(crate) fn evaluate_family<F>(g: &Graph, family: &SampleFamily, wanted: F) -> Vec<PairEstimate>
where
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    let n = g.n();
    let k = family.k;
    let per_set = par::map(&family.sets, |set| {
        let mut mask = vec![false; n];
        for &v in set {
            mask[v] = true;
        }
        let mut found = Vec::new();
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                let keep = match family.forced {
                    Some(s) => (u == s || v == s) && wanted(u, v),
                    None => wanted(u, v),
                };
                if keep {
                    let f = capped_element_flow(g, &mask, u, v, k);
                    found.push((u, v, f.value, f.vertex_feasible));
                }
            }
        }
        found
    });
    let mut table = vec![PairEstimate::default(); n * n];
    for (u, v, value, feasible) in per_set.into_iter().flatten() {
        let slot = &mut table[u * n + v];
        slot.value = Some(slot.value.map_or(value, |x| x.min(value)));
        slot.exact |= feasible;
    }
    table
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SamplerStats {
    pub sets: usize,
    pub redraws: usize,
    /// Pairs contained in at least one set.
    pub co_sampled: usize,
    /// Pairs whose sampled value was certified exact.
    pub certified: usize,
    /// Pairs answered by a direct capped max flow.
    pub fallbacks: usize,
}

#[derive(Debug, Clone)]
pub struct SampledApvc {
    pub matrix: ConnectivityMatrix,
    pub family: SampleFamily,
    pub stats: SamplerStats,
}

/// Capped all-pairs connectivity `min{kappa, k}` with the default sampling
/// constant. With `fallback` the result is exact; without it every entry is
/// at least the true capped value and equal with high probability.
pub fn capped_apvc_sampled(g: &Graph, k: usize, seed: u64, fallback: bool) -> Result<ConnectivityMatrix> {
    let config = SamplerConfig {
        fallback,
        ..SamplerConfig::default()
    };
    Ok(capped_apvc_sampled_with(g, k, seed, &config)?.matrix)
}

pub fn capped_apvc_sampled_with(g: &Graph, k: usize, seed: u64, config: &SamplerConfig) -> Result<SampledApvc> {
    if k == 0 {
        return Err(Error::InvalidQuery("cap k must be at least 1".into()));
    }
    let n = g.n();
    let family = SampleFamily::draw(n, k, config.c, seed);
    let table = evaluate_family(g, &family, |_, _| true);
    let mut stats = SamplerStats {
        sets: family.t,
        redraws: family.redraws,
        ..SamplerStats::default()
    };

    let mut unresolved = Vec::new();
    let mut matrix = ConnectivityMatrix::new(n, Some(k));
    for (u, v) in par::all_pairs(n) {
        let est = table[u * n + v];
        stats.co_sampled += usize::from(est.value.is_some());
        stats.certified += usize::from(est.exact);
        if config.fallback && !est.exact {
            unresolved.push((u, v));
        } else {
            // a pair never sampled together is only known to be <= k
            matrix.set(u, v, est.value.unwrap_or(k));
        }
    }
    stats.fallbacks = unresolved.len();
    let direct = par::map(&unresolved, |&(u, v)| {
        capped_vertex_connectivity(g, u, v, k).expect("distinct in-range pair")
    });
    for (&(u, v), x) in unresolved.iter().zip(direct) {
        matrix.set(u, v, x);
    }
    Ok(SampledApvc {
        matrix,
        family,
        stats,
    })
}
