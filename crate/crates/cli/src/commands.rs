use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde_json::{json, Value};

use vconn::flow::{capped_vertex_connectivity, vertex_connectivity_value};
use vconn::format::{emit_graph, emit_hard, emit_labeled, parse_demand, parse_graph};
use vconn::graph::{gen_gnp, gen_planted_4clique, Graph};
use vconn::reductions::{build_h, build_j, four_partite, HardInstance, Thresholds};
use vconn::solvers::{
    apvc_naive, capped_apvc_sampled_with, fast_apvc_with, fast_ssvc_with, global_vc, ssvc, steiner_vc,
    ConnectivityMatrix, FastConfig, SamplerConfig, ThresholdMode, DEFAULT_SAMPLING_CONSTANT,
};
use vconn::verify::{self, Suite, VerifyParams};

use crate::report::RunReport;
use crate::{Algo, BenchArgs, Cli, Command, Failure, GenArgs, GenKind, Mode, Problem, ReduceArgs, ReduceKind,
    SolverArgs, VcArgs, VerifyArgs};

type Res<T> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Res<()> {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let mut report = RunReport::new(&echo.join(" "), cli.threads);
    match &cli.command {
        Command::Gen(a) => gen(a, &mut report),
        Command::Vc(a) => vc(a, &mut report),
        Command::Reduce(a) => reduce(a, &mut report),
        Command::Verify(a) => verify_cmd(a, &mut report),
        Command::Bench(a) => bench(a, &mut report),
    }
}

/// Uses the given seed or draws one and announces it.
fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn load_graph(path: &Path, report: &mut RunReport) -> Res<Graph> {
    let g = report.time("load", || -> anyhow::Result<Graph> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
    })?;
    report.n = g.n();
    report.m = g.m();
    Ok(g)
}

/// Writes the payload to `out` and the report to stdout, or the payload to
/// stdout and the report to stderr.
fn finish(mut text: String, out: Option<&Path>, report: &mut RunReport) -> Res<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => {
            report.time("write", || fs::write(path, &text)).with_context(|| format!("writing {}", path.display()))?;
            if let Value::Object(map) = &mut report.payload {
                map.insert("path".into(), json!(path.display().to_string()));
            }
            println!("{}", report.to_json());
        }
        None => {
            print!("{text}");
            eprintln!("{}", report.to_json());
        }
    }
    Ok(())
}

fn gen(a: &GenArgs, report: &mut RunReport) -> Res<()> {
    if !(0.0..=1.0).contains(&a.p) {
        return Err(anyhow!("--p must lie in [0, 1], got {}", a.p).into());
    }
    let text = match a.kind {
        GenKind::Gnp | GenKind::Planted4 => {
            let n = a.n.ok_or_else(|| anyhow!("--n is required"))?;
            let seed = resolve_seed(a.seed);
            report.seed = Some(seed);
            let g = if a.kind == GenKind::Gnp {
                report.time("generate", || gen_gnp(n, a.p, seed))
            } else {
                if n < 4 {
                    return Err(anyhow!("planted4 needs --n >= 4").into());
                }
                report.time("generate", || gen_planted_4clique(n, a.p, !a.no_plant, seed))
            };
            report.n = g.n();
            report.m = g.m();
            emit_graph(&g)
        }
        GenKind::Fourpartite => {
            let path = a.graph.as_deref().ok_or_else(|| anyhow!("--graph is required for fourpartite"))?;
            let g = load_graph(path, report)?;
            let fp = report.time("generate", || four_partite(&g));
            report.n = fp.graph().n();
            report.m = fp.graph().m();
            emit_labeled(&fp.instance)
        }
    };
    report.payload = json!({ "vertices": report.n, "edges": report.m });
    finish(text, a.out.as_deref(), report)
}

fn threshold_mode(m: Mode) -> ThresholdMode {
    match m {
        Mode::Default => ThresholdMode::Default,
        Mode::Gh => ThresholdMode::Gh,
    }
}

fn fast_config(s: &SolverArgs, seed: u64) -> FastConfig {
    FastConfig {
        k: s.k,
        mode: threshold_mode(s.mode),
        c: s.c.unwrap_or(DEFAULT_SAMPLING_CONSTANT),
        seed,
    }
}

fn sampler_config(s: &SolverArgs) -> SamplerConfig {
    SamplerConfig {
        c: s.c.unwrap_or(DEFAULT_SAMPLING_CONSTANT),
        fallback: s.fallback,
    }
}

fn record_params(report: &mut RunReport, algo: Algo, s: &SolverArgs) {
    let p = &mut report.params;
    p.algo = Some(format!("{algo:?}").to_lowercase());
    if algo != Algo::Naive {
        p.k = s.k;
        p.c = Some(s.c.unwrap_or(DEFAULT_SAMPLING_CONSTANT));
        p.mode = Some(format!("{:?}", s.mode).to_lowercase());
    }
    if algo == Algo::Sampled {
        p.fallback = Some(s.fallback);
    }
}

fn matrix_json(m: &ConnectivityMatrix) -> Value {
    let entries: Vec<Vec<Option<usize>>> = (0..m.n()).map(|u| m.row(u)).collect();
    json!({ "n": m.n(), "cap": m.cap(), "entries": entries })
}

fn row_tsv(s: usize, row: &[Option<usize>]) -> String {
    let mut out = format!("{}\t{s}\n", row.len());
    for (v, x) in row.iter().enumerate() {
        match x {
            Some(x) => writeln!(out, "{v}\t{x}").unwrap(),
            None => writeln!(out, "{v}\t-").unwrap(),
        }
    }
    out
}

enum Answer {
    Scalar(usize),
    Row(usize, Vec<Option<usize>>),
    Matrix(ConnectivityMatrix),
}

fn vc(a: &VcArgs, report: &mut RunReport) -> Res<()> {
    let g = load_graph(&a.graph, report)?;
    record_params(report, a.algo, &a.solver);
    let seed = (a.algo != Algo::Naive).then(|| resolve_seed(a.solver.seed));
    report.seed = seed;
    let seed = seed.unwrap_or(0);
    let cap = match a.algo {
        Algo::Sampled => Some(a.solver.k.ok_or_else(|| anyhow!("--k is required for --algo sampled"))?),
        _ => None,
    };
    let fast = fast_config(&a.solver, seed);
    let sampled = |g: &Graph| -> Res<ConnectivityMatrix> {
        let k = cap.expect("sampled has a cap");
        Ok(capped_apvc_sampled_with(g, k, seed, &sampler_config(&a.solver))?.matrix)
    };
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Failure::Usage(anyhow!("--{flag} is required")));

    let answer = match a.problem {
        Problem::St => {
            let (s, t) = (need(a.s, "s")?, need(a.t, "t")?);
            Answer::Scalar(report.time("solve", || match cap {
                Some(k) => capped_vertex_connectivity(&g, s, t, k),
                None => vertex_connectivity_value(&g, s, t),
            })?)
        }
        Problem::Global => {
            if g.n() < 2 {
                return Err(anyhow!("global connectivity needs at least 2 vertices").into());
            }
            Answer::Scalar(report.time("solve", || -> Res<usize> {
                Ok(match a.algo {
                    Algo::Naive => global_vc(&g)?,
                    Algo::Fast => fast_apvc_with(&g, &fast).min_entry().expect("n >= 2"),
                    Algo::Sampled => sampled(&g)?.min_entry().expect("n >= 2"),
                })
            })?)
        }
        Problem::Ssvc => {
            let s = need(a.s, "s")?;
            let row = report.time("solve", || -> Res<Vec<Option<usize>>> {
                Ok(match a.algo {
                    Algo::Naive => ssvc(&g, s)?,
                    Algo::Fast => fast_ssvc_with(&g, s, &fast)?,
                    Algo::Sampled => {
                        if s >= g.n() {
                            return Err(vconn::Error::VertexOutOfRange { vertex: s, n: g.n() }.into());
                        }
                        sampled(&g)?.row(s)
                    }
                })
            })?;
            Answer::Row(s, row)
        }
        Problem::Apvc => Answer::Matrix(report.time("solve", || -> Res<ConnectivityMatrix> {
            Ok(match a.algo {
                Algo::Naive => apvc_naive(&g),
                Algo::Fast => fast_apvc_with(&g, &fast),
                Algo::Sampled => sampled(&g)?,
            })
        })?),
        Problem::Steiner => {
            let ts = &a.terminals;
            if ts.len() < 2 {
                return Err(anyhow!("--terminals needs at least two vertices").into());
            }
            Answer::Scalar(report.time("solve", || -> Res<usize> {
                Ok(match a.algo {
                    Algo::Naive => steiner_vc(&g, ts)?,
                    algo => {
                        if let Some(&bad) = ts.iter().find(|&&t| t >= g.n()) {
                            return Err(vconn::Error::VertexOutOfRange { vertex: bad, n: g.n() }.into());
                        }
                        let m = if algo == Algo::Fast { fast_apvc_with(&g, &fast) } else { sampled(&g)? };
                        m.min_over(ts).ok_or_else(|| anyhow!("--terminals needs two distinct vertices"))?
                    }
                })
            })?)
        }
    };

    let text = match answer {
        Answer::Scalar(x) => {
            report.payload = json!({ "value": x });
            x.to_string()
        }
        Answer::Row(s, row) => {
            report.payload = json!({ "source": s, "values": row });
            row_tsv(s, &row)
        }
        Answer::Matrix(m) => {
            report.payload = matrix_json(&m);
            m.to_tsv()
        }
    };
    finish(text, a.out.as_deref(), report)
}

fn threshold_summary(h: &HardInstance) -> Value {
    match &h.thresholds {
        Thresholds::PerPair(list) => {
            let ts = list.iter().map(|t| t.2);
            json!({ "pairs": list.len(), "min": ts.clone().min(), "max": ts.max() })
        }
        Thresholds::Uniform { value, terminals } => json!({ "uniform": value, "terminals": terminals.len() }),
    }
}

fn reduce(a: &ReduceArgs, report: &mut RunReport) -> Res<()> {
    let g = load_graph(&a.graph, report)?;
    let h = match a.kind {
        ReduceKind::Apvc => report.time("build", || build_h(&g))?,
        ReduceKind::Steiner => {
            let path = a.demand.as_deref().ok_or_else(|| anyhow!("--demand is required for steiner"))?;
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let demand = parse_demand(&text, g.n()).with_context(|| format!("parsing {}", path.display()))?;
            report.time("build", || build_j(&g, &demand))?
        }
    };
    report.payload = json!({
        "kind": h.kind.as_str(),
        "source_n": g.n(),
        "vertices": h.graph().n(),
        "edges": h.graph().m(),
        "thresholds": threshold_summary(&h),
    });
    eprintln!(
        "|V| = {}, |E| = {}, thresholds: {}",
        h.graph().n(),
        h.graph().m(),
        threshold_summary(&h)
    );
    let text = report.time("serialise", || emit_hard(&h));
    finish(text, a.out.as_deref(), report)
}

fn verify_cmd(a: &VerifyArgs, report: &mut RunReport) -> Res<()> {
    let suite: Suite = a.suite.parse().map_err(|e: String| anyhow!(e))?;
    let seed = resolve_seed(a.seed);
    report.seed = Some(seed);
    report.params.fallback = Some(a.fallback);
    report.params.c = a.c;
    let params = VerifyParams {
        seeds: a.seeds,
        base_seed: seed,
        max_n: a.n,
        fallback: a.fallback,
        c: a.c.unwrap_or(DEFAULT_SAMPLING_CONSTANT),
    };
    let r = report.time("run", || verify::run(suite, &params));
    let metrics: serde_json::Map<String, Value> = r.metrics.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    report.payload = json!({
        "suite": suite.as_str(),
        "cases": r.cases,
        "checks": r.checks,
        "failures": r.failures.len(),
        "passed": r.passed(),
        "metrics": metrics,
    });
    println!("{}", report.to_json());
    if r.passed() {
        return Ok(());
    }
    for f in r.failures.iter().take(10) {
        eprintln!("seed {}: {}\n{}\n", f.seed, f.detail, f.instance);
    }
    Err(Failure::Check(format!("{suite}: {} of {} checks failed", r.failures.len(), r.checks)))
}

fn bench(a: &BenchArgs, report: &mut RunReport) -> Res<()> {
    if !matches!(a.problem, Problem::Apvc | Problem::Ssvc) {
        bail_usage("bench supports --problem apvc or ssvc")?;
    }
    if a.algos.contains(&Algo::Sampled) {
        bail_usage("bench compares exact solvers only (naive, fast)")?;
    }
    if a.algos.is_empty() || a.sizes.is_empty() || a.reps == 0 {
        bail_usage("bench needs at least one algo, size and rep")?;
    }
    let seed = resolve_seed(a.solver.seed);
    report.seed = Some(seed);
    record_params(report, Algo::Fast, &a.solver);
    report.params.algo = None;

    let mut table = String::from("algo\tn\tm\tms\tratio\n");
    let mut rows = Vec::new();
    for (i, &n) in a.sizes.iter().enumerate() {
        let g = gen_gnp(n, a.p, seed.wrapping_add(i as u64));
        let fast = fast_config(&a.solver, seed);
        let mut reference: Option<String> = None;
        let mut base_ms = None;
        for &algo in &a.algos {
            let mut best = f64::INFINITY;
            let mut output = String::new();
            for _ in 0..a.reps {
                let start = std::time::Instant::now();
                output = match (a.problem, algo) {
                    (Problem::Apvc, Algo::Naive) => apvc_naive(&g).to_tsv(),
                    (Problem::Apvc, _) => fast_apvc_with(&g, &fast).to_tsv(),
                    (_, Algo::Naive) => row_tsv(0, &ssvc(&g, 0)?),
                    (_, _) => row_tsv(0, &fast_ssvc_with(&g, 0, &fast)?),
                };
                best = best.min(start.elapsed().as_secs_f64() * 1e3);
            }
            match &reference {
                None => reference = Some(output),
                Some(r) if *r != output => {
                    return Err(Failure::Check(format!(
                        "{algo:?} output differs from {:?} at n={n} (seed {seed})",
                        a.algos[0]
                    )))
                }
                Some(_) => {}
            }
            let base = *base_ms.get_or_insert(best);
            let name = format!("{algo:?}").to_lowercase();
            writeln!(table, "{name}\t{n}\t{}\t{best:.3}\t{:.3}", g.m(), best / base).unwrap();
            rows.push(json!({ "algo": name, "n": n, "m": g.m(), "ms": best }));
            *report.timings.entry(format!("{name}/{n}")).or_default() += best;
        }
    }
    report.payload = json!({ "rows": rows });
    finish(table, a.out.as_deref(), report)
}

fn bail_usage(msg: &str) -> Res<()> {
    Err(Failure::Usage(anyhow!("{msg}")))
}
