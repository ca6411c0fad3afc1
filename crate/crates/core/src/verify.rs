//! Randomised property suites that cross-check solvers, constructions and
//! oracles against each other. Each case is driven by its own seed, so a
//! failure can be replayed from the report alone.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flow::{capped_vertex_connectivity, element_connectivity, vertex_connectivity, vertex_connectivity_value};
use crate::format::emit_graph;
use crate::graph::{gen_gnp, gen_planted_4clique, EdgeSet, Graph, GroupTag};
use crate::oracles::{brute_4clique, brute_edge_universal, brute_mixed_cut, edge_in_4clique, MAX_BRUTE_M};
use crate::par;
use crate::reductions::{
    attach_gadget, build_filter_b, build_filter_c, build_h, build_h_hat, build_j, four_partite, h_chain_offset,
    solve_4clique_via_apvc, solve_edge_universal_via_steiner, FourPartite, Layout,
};
use crate::solvers::{
    apvc_naive, capped_apvc_sampled_with, fast_apvc_with, fast_ssvc_with, ssvc, FastConfig, PairSweep,
    PairwiseSteiner, SamplerConfig, ThresholdMode,
};

/// Largest tolerated per-pair miss rate of the sampler without fallback.
pub const SAMPLER_MISS_RATE_LIMIT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Flow,
    Gadget,
    Filter,
    HChain,
    PipelineApvc,
    PipelineSteiner,
    Sampler,
    Fast,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Flow,
        Suite::Gadget,
        Suite::Filter,
        Suite::HChain,
        Suite::PipelineApvc,
        Suite::PipelineSteiner,
        Suite::Sampler,
        Suite::Fast,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Flow => "flow",
            Suite::Gadget => "gadget",
            Suite::Filter => "filter",
            Suite::HChain => "h-chain",
            Suite::PipelineApvc => "pipeline-apvc",
            Suite::PipelineSteiner => "pipeline-steiner",
            Suite::Sampler => "sampler",
            Suite::Fast => "fast",
        }
    }

    /// Largest source-graph size used when none is given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Flow => 7,
            Suite::Gadget => 12,
            Suite::Filter => 5,
            Suite::HChain => 8,
            Suite::PipelineApvc => 12,
            Suite::PipelineSteiner => 8,
            Suite::Sampler => 30,
            Suite::Fast => 16,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyParams {
    pub seeds: usize,
    pub base_seed: u64,
    pub max_n: Option<usize>,
    /// Sampler suite: resolve uncertified pairs (exact mode) or not.
    pub fallback: bool,
    pub c: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            seeds: 50,
            base_seed: 0,
            max_n: None,
            fallback: true,
            c: crate::solvers::SamplerConfig::default().c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub detail: String,
    /// The offending source graph as an edge-list document.
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    /// Suite-specific counters, e.g. pair trials and misses of the sampler.
    pub metrics: Vec<(&'static str, f64)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn metric(&self, key: &str) -> Option<f64> {
        self.metrics.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
    }
}

/// Outcome of one seeded case.
#[derive(Debug, Default)]
struct Case {
    checks: usize,
    failures: Vec<String>,
    instance: String,
    trials: usize,
    misses: usize,
}

impl Case {
    fn new(g: &Graph) -> Self {
        Case {
            instance: emit_graph(g),
            ..Case::default()
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }
}

pub fn run(suite: Suite, params: &VerifyParams) -> VerifyReport {
    let max_n = params.max_n.unwrap_or_else(|| suite.default_max_n());
    let seeds: Vec<u64> = (0..params.seeds as u64).map(|i| params.base_seed.wrapping_add(i)).collect();
    let cases = par::map(&seeds, |&seed| match suite {
        Suite::Flow => flow_case(seed, max_n),
        Suite::Gadget => gadget_case(seed, max_n),
        Suite::Filter => filter_case(seed, max_n),
        Suite::HChain => h_chain_case(seed, max_n),
        Suite::PipelineApvc => pipeline_apvc_case(seed, max_n),
        Suite::PipelineSteiner => pipeline_steiner_case(seed, max_n),
        Suite::Sampler => sampler_case(seed, max_n, params),
        Suite::Fast => fast_case(seed, max_n),
    });

    let mut report = VerifyReport {
        suite,
        cases: cases.len(),
        checks: 0,
        failures: Vec::new(),
        metrics: Vec::new(),
    };
    let (mut trials, mut misses) = (0, 0);
    for (seed, case) in seeds.iter().zip(cases) {
        report.checks += case.checks;
        trials += case.trials;
        misses += case.misses;
        for detail in case.failures {
            report.failures.push(Failure {
                seed: *seed,
                detail,
                instance: case.instance.clone(),
            });
        }
    }
    if suite == Suite::Sampler {
        let rate = if trials == 0 { 0.0 } else { misses as f64 / trials as f64 };
        report.metrics = vec![("pair_trials", trials as f64), ("misses", misses as f64), ("miss_rate", rate)];
        if !params.fallback {
            report.checks += 1;
            if rate >= SAMPLER_MISS_RATE_LIMIT {
                report.failures.push(Failure {
                    seed: params.base_seed,
                    detail: format!("miss rate {rate:.4} over {trials} pair trials exceeds {SAMPLER_MISS_RATE_LIMIT}"),
                    instance: String::new(),
                });
            }
        }
    }
    report
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe_f00d)
}

fn random_graph(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, p_lo: f64, p_hi: f64) -> Graph {
    let n = rng.gen_range(min_n..=max_n.max(min_n));
    let p = rng.gen_range(p_lo..=p_hi);
    gen_gnp(n, p, rng.gen())
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[usize], p: f64) -> Vec<usize> {
    pool.iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

/// Mixed-cut connectivity against the brute-force oracle, in vertex and in
/// element mode.
fn flow_case(seed: u64, max_n: usize) -> Case {
    let mut rng = rng_for(seed);
    let mut g = random_graph(&mut rng, 2, max_n.min(crate::oracles::MAX_BRUTE_N), 0.1, 0.9);
    if g.m() > MAX_BRUTE_M {
        let mut edges = g.edges();
        edges.shuffle(&mut rng);
        edges.truncate(MAX_BRUTE_M);
        g = Graph::from_edges_dedup(g.n(), edges);
    }
    let mut case = Case::new(&g);
    let n = g.n();
    let u = rng.gen_range(0..n);
    let v = (u + rng.gen_range(1..n)) % n;

    let (kappa, cert) = vertex_connectivity(&g, u, v).expect("valid pair");
    let brute = brute_mixed_cut(&g, u, v, None).expect("within size guard");
    case.check(kappa == brute, || format!("kappa({u},{v}) flow {kappa} brute {brute}"));
    case.check(cert.value == kappa && cert.separates(&g, u, v), || {
        format!("cut certificate for ({u},{v}) invalid: {cert:?}")
    });

    let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
    let mut terminals = random_subset(&mut rng, &others, 0.5);
    terminals.extend([u, v]);
    terminals.sort_unstable();
    let elem = element_connectivity(&g, &terminals, u, v).expect("valid terminals");
    let brute = brute_mixed_cut(&g, u, v, Some(&terminals)).expect("within size guard");
    case.check(elem == brute, || format!("element({u},{v}; {terminals:?}) flow {elem} brute {brute}"));
    case.check(elem >= kappa, || format!("element {elem} below vertex {kappa}"));
    case
}

/// `kappa_{R ∪ Q}(x, y) = kappa_{R_xy}(x, y) + |X| + |Y|`.
fn gadget_case(seed: u64, max_n: usize) -> Case {
    let mut rng = rng_for(seed);
    let g = random_graph(&mut rng, 2, max_n, 0.1, 0.8);
    let n = g.n();
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let nx = rng.gen_range(1..n);
    let ny = rng.gen_range(1..=n - nx);
    let mut xs = ids[..nx].to_vec();
    let mut ys = ids[nx..nx + ny].to_vec();
    let (x, y) = (xs[0], ys[0]);
    xs.sort_unstable();
    ys.sort_unstable();
    // the identity is only claimed for non-adjacent x, y
    let r = g.without_edges(&[(x, y)]);
    let mut case = Case::new(&r);

    let lhs = vertex_connectivity_value(&attach_gadget(&r, &xs, &ys).expect("disjoint sides"), x, y).expect("valid");
    let removed: Vec<usize> = xs.iter().chain(&ys).copied().filter(|&v| v != x && v != y).collect();
    let rhs = vertex_connectivity_value(&r.isolate_vertices(&removed), x, y).expect("valid") + nx + ny;
    case.check(lhs == rhs, || format!("X={xs:?} Y={ys:?} x={x} y={y}: lhs {lhs} rhs {rhs}"));
    case
}

/// Random host on the filter id space: any vertex except the filter's own
/// copies, plus a few fresh vertices. It always contains `{a} ∪ side ∪ {d}`.
fn random_host(rng: &mut ChaCha8Rng, fp: &FourPartite, copies: GroupTag) -> Graph {
    let l = fp.layout;
    let extra = rng.gen_range(0..=3);
    let total = l.filter_size() + extra;
    let forbidden = l.group(copies);
    let allowed: Vec<usize> = (0..total).filter(|v| !forbidden.contains(v)).collect();
    let p = rng.gen_range(0.05..=0.5);
    let mut edges = Vec::new();
    for (i, &u) in allowed.iter().enumerate() {
        for &v in &allowed[i + 1..] {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_dedup(total, edges)
}

fn filter_case(seed: u64, max_n: usize) -> Case {
    let mut rng = rng_for(seed);
    let g = random_graph(&mut rng, 1, max_n, 0.2, 0.9);
    let mut case = Case::new(&g);
    let fp = four_partite(&g);
    let l = fp.layout;
    let n = g.n();
    let a = l.a(rng.gen_range(0..n));
    let d = l.d(rng.gen_range(0..n));

    for side in [GroupTag::B, GroupTag::C] {
        let (copies, filter) = match side {
            GroupTag::B => (GroupTag::BPrime, build_filter_b(&fp, a, d)),
            _ => (GroupTag::CPrime, build_filter_c(&fp, a, d)),
        };
        let p = filter.expect("a in A, d in D").graph;
        let host = random_host(&mut rng, &fp, copies);
        let lhs = vertex_connectivity_value(&host.union(&p), a, d).expect("valid");

        let (offset, keep) = filter_offset(&fp, a, d, side);
        let removed: Vec<usize> = l.group(side).filter(|v| !keep.contains(v)).chain(l.group(copies)).collect();
        let rhs_graph = host.union(&p).isolate_vertices(&removed);
        let rhs = vertex_connectivity_value(&rhs_graph, a, d).expect("valid") + offset;
        case.check(lhs == rhs, || format!("filter {side} a={a} d={d}: lhs {lhs} rhs {rhs}"));

        // without a host the filter alone carries exactly the offset
        let bare = vertex_connectivity_value(&p.isolate_vertices(&keep), a, d).expect("valid");
        case.check(bare == offset, || format!("filter {side} a={a} d={d}: bare {bare} offset {offset}"));
    }
    case
}

/// Additive offset of a filter and the surviving middle set
/// (`B_a ∩ B_d` or `C_a ∩ C_d`).
fn filter_offset(fp: &FourPartite, a: usize, d: usize, side: GroupTag) -> (usize, Vec<usize>) {
    let na = fp.neighbors_in(a, side);
    let nd = fp.neighbors_in(d, side);
    let both: Vec<usize> = na.iter().copied().filter(|x| nd.contains(x)).collect();
    let offset = match side {
        // |B̄_d| + |B_a| + |B_d ∩ B̄_a|
        GroupTag::B => fp.non_neighbors_in(d, side).len() + na.len() + nd.iter().filter(|x| !na.contains(x)).count(),
        // |C_d| + |C̄_a| + |C_a ∩ C̄_d|
        _ => nd.len() + fp.non_neighbors_in(a, side).len() + na.iter().filter(|x| !nd.contains(x)).count(),
    };
    (offset, both)
}

/// The composed identity for every `(a, d)`, the threshold lower bound, and
/// the witness equivalence for adjacent pairs.
fn h_chain_case(seed: u64, max_n: usize) -> Case {
    let mut rng = rng_for(seed);
    let g = random_graph(&mut rng, 1, max_n, 0.2, 0.9);
    let mut case = Case::new(&g);
    let h = build_h(&g).expect("n >= 1");
    let fp = four_partite(&g);
    let l = fp.layout;
    let n = g.n();
    case.check(h.graph().n() == 10 * n, || format!("|V(H)| = {}", h.graph().n()));
    for u in 0..n {
        for w in 0..n {
            let (a, d) = (l.a(u), l.d(w));
            let kh = vertex_connectivity_value(h.graph(), a, d).expect("valid");
            let hat = vertex_connectivity_value(&build_h_hat(&fp, a, d).expect("A x D"), a, d).expect("valid");
            let offset = h_chain_offset(&fp, a, d);
            case.check(kh == hat + offset, || {
                format!("({u},{w}): kappa_H {kh} != kappa_hat {hat} + offset {offset}")
            });
            let t = h.pair_threshold(a, d).expect("threshold present");
            case.check(kh + 1 >= t, || format!("({u},{w}): kappa_H {kh} below lower bound {}", t - 1));
            if g.has_edge(u, w) {
                let witness = edge_in_4clique(&g, u, w);
                case.check((hat >= 1) == witness, || {
                    format!("({u},{w}): kappa_hat {hat} but edge-in-4-clique {witness}")
                });
                case.check((kh >= t) == witness, || format!("({u},{w}): kappa_H {kh} threshold {t} witness {witness}"));
            }
        }
    }
    case
}

fn pipeline_apvc_case(seed: u64, max_n: usize) -> Case {
    let mut rng = rng_for(seed);
    let g = if seed % 4 == 3 {
        let n = rng.gen_range(4..=max_n.max(4));
        gen_planted_4clique(n, rng.gen_range(0.1..=0.5), true, rng.gen())
    } else {
        random_graph(&mut rng, 1, max_n, 0.1, 0.9)
    };
    let mut case = Case::new(&g);
    let got = solve_4clique_via_apvc(&g, &PairSweep).expect("valid graph");
    let want = brute_4clique(&g).is_some();
    case.check(got == want, || format!("pipeline {got}, brute {want}"));
    case
}

fn pipeline_steiner_case(seed: u64, max_n: usize) -> Case {
    let mut rng = rng_for(seed);
    let g = random_graph(&mut rng, 1, max_n, 0.2, 0.9);
    let demand = match seed % 4 {
        0 => EdgeSet::default(),
        1 => g.edge_set(),
        _ => {
            let edges = g.edges();
            let p = rng.gen_range(0.1..=0.6);
            EdgeSet::new(g.n(), edges.into_iter().filter(|_| rng.gen_bool(p))).expect("edges of g")
        }
    };
    let mut case = Case::new(&g);
    case.instance.push_str(&format!("\n%demand {:?}", demand.pairs()));
    let n = g.n();

    let got = solve_edge_universal_via_steiner(&g, &demand, &PairwiseSteiner).expect("demand in g");
    let want = brute_edge_universal(&g, &demand).expect("demand in g").holds;
    case.check(got == want, || format!("pipeline {got}, brute {want}"));

    let j = build_j(&g, &demand).expect("demand in g");
    let l = Layout::new(n);
    case.check(j.graph().n() == 32 * n, || format!("|V(J)| = {}", j.graph().n()));
    let cap = 10 * n;
    let terminals: Vec<usize> = l.group(GroupTag::A).chain(l.group(GroupTag::D)).collect();
    let pairs = par::all_pairs(terminals.len());
    let values = par::map(&pairs, |&(i, k)| {
        capped_vertex_connectivity(j.graph(), terminals[i], terminals[k], cap).expect("valid")
    });
    for (&(i, k), kappa) in pairs.iter().zip(values) {
        let (x, y) = (terminals[i], terminals[k]);
        let (ox, oy) = (x % n, y % n);
        let x_is_a = x < n;
        let y_is_a = y < n;
        if x_is_a == y_is_a {
            case.check(kappa >= 10 * n, || format!("same-side ({x},{y}): kappa {kappa} < 10n"));
        } else if !demand.contains(ox, oy) {
            case.check(kappa > 5 * n, || format!("non-demand ({x},{y}): kappa {kappa} < 5n+1"));
        } else if !edge_in_4clique(&g, ox, oy) {
            case.check(kappa == 5 * n, || format!("refuted demand ({x},{y}): kappa {kappa} != 5n"));
        } else {
            case.check(kappa > 5 * n, || format!("witnessed demand ({x},{y}): kappa {kappa} < 5n+1"));
        }
    }
    case
}

fn sampler_case(seed: u64, max_n: usize, params: &VerifyParams) -> Case {
    let mut rng = rng_for(seed);
    let config = SamplerConfig {
        c: params.c,
        fallback: params.fallback,
    };
    let (g, k) = if params.fallback {
        (random_graph(&mut rng, 2, max_n, 0.05, 0.6), rng.gen_range(1..=5))
    } else {
        // fixed scale for the miss-rate measurement
        (gen_gnp(max_n.max(2), rng.gen_range(0.1..=0.4), rng.gen()), 3)
    };
    let mut case = Case::new(&g);
    let exact = apvc_naive(&g).capped(k);
    let sampled = capped_apvc_sampled_with(&g, k, rng.gen(), &config).expect("k >= 1").matrix;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let (want, got) = (exact.get(u, v).unwrap(), sampled.get(u, v).unwrap());
            case.trials += 1;
            if got != want {
                case.misses += 1;
            }
            if params.fallback {
                case.check(got == want, || format!("k={k} ({u},{v}): sampled {got}, exact {want}"));
            } else {
                case.check(got >= want, || format!("k={k} ({u},{v}): sampled {got} below {want}"));
            }
        }
    }
    case
}

/// Degree-split solvers against the naive ones for `k in {0, default, n}`
/// in both threshold modes.
fn fast_case(seed: u64, max_n: usize) -> Case {
    let mut rng = rng_for(seed);
    let g = random_graph(&mut rng, 2, max_n, 0.05, 0.7);
    let mut case = Case::new(&g);
    let n = g.n();
    let naive = apvc_naive(&g);
    let s = rng.gen_range(0..n);
    let single = ssvc(&g, s).expect("valid source");
    for mode in [ThresholdMode::Default, ThresholdMode::Gh] {
        for k in [Some(0), None, Some(n)] {
            let config = FastConfig {
                k,
                mode,
                seed: rng.gen(),
                ..FastConfig::default()
            };
            case.check(fast_apvc_with(&g, &config) == naive, || format!("fast_apvc {mode:?} k={k:?}"));
            case.check(fast_ssvc_with(&g, s, &config).expect("valid source") == single, || {
                format!("fast_ssvc {mode:?} k={k:?} s={s}")
            });
        }
    }
    case
}
