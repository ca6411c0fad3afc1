//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use vconn::graph::named::complete;
use vconn::graph::{gen_gnp, Graph, GroupTag};
use vconn::par::with_threads;
use vconn::reductions::{apvc_threshold, build_h, build_j, Layout, Thresholds};
use vconn::solvers::{capped_apvc_sampled, fast_apvc};
use vconn::verify::{run, Suite, VerifyParams, VerifyReport};

/// Exact criteria allow no disagreement at all.
const EXACT_TOLERANCE: usize = 0;
/// Per-pair miss rate bound for the sampler without fallback.
const MISS_RATE_LIMIT: f64 = 0.01;
const SAMPLER_C: f64 = 4.0;
const BASE_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(suite: Suite, seeds: usize, max_n: usize, fallback: bool) -> VerifyReport {
    run(
        suite,
        &VerifyParams {
            seeds,
            base_seed: BASE_SEED,
            max_n: Some(max_n),
            fallback,
            c: SAMPLER_C,
        },
    )
}

fn exact(r: &VerifyReport, min_cases: usize) -> Outcome {
    let mut detail = format!("{} cases, {} checks, {} failures", r.cases, r.checks, r.failures.len());
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first: seed {} {}", f.seed, f.detail));
    }
    Outcome {
        pass: r.failures.len() <= EXACT_TOLERANCE && r.cases >= min_cases,
        detail,
    }
}

fn menger() -> Outcome {
    exact(&suite(Suite::Flow, 300, 7, true), 300)
}

fn gadget() -> Outcome {
    exact(&suite(Suite::Gadget, 200, 12, true), 200)
}

fn filters() -> Outcome {
    // each case checks both filters on their own random host
    exact(&suite(Suite::Filter, 100, 5, true), 100)
}

fn h_chain() -> Outcome {
    exact(&suite(Suite::HChain, 50, 8, true), 50)
}

fn pipeline_apvc() -> Outcome {
    // every fourth case is a planted instance: 201 random + 67 planted
    exact(&suite(Suite::PipelineApvc, 268, 12, true), 268)
}

fn pipeline_steiner() -> Outcome {
    // seeds 0 mod 4 use an empty demand, 1 mod 4 the whole edge set
    exact(&suite(Suite::PipelineSteiner, 200, 8, true), 200)
}

fn sampler() -> Outcome {
    let with = suite(Suite::Sampler, 100, 30, true);
    let without = suite(Suite::Sampler, 10, 30, false);
    let trials = without.metric("pair_trials").unwrap_or(0.0);
    let rate = without.metric("miss_rate").unwrap_or(1.0);
    let dominance_failures = without.failures.iter().filter(|f| f.detail.contains("below")).count();
    Outcome {
        pass: with.failures.len() <= EXACT_TOLERANCE
            && with.cases >= 100
            && dominance_failures == 0
            && trials >= 500.0
            && rate < MISS_RATE_LIMIT,
        detail: format!(
            "fallback: {} cases, {} entry failures; no fallback: {trials} pair trials, miss rate {rate:.5}, {dominance_failures} underestimates",
            with.cases,
            with.failures.len()
        ),
    }
}

fn fast_exactness() -> Outcome {
    exact(&suite(Suite::Fast, 100, 16, true), 100)
}

fn structural() -> Outcome {
    let mut bad = Vec::new();
    let mut built = 0;
    for n in 1..=8 {
        for seed in 0..4 {
            let g = gen_gnp(n, 0.5, seed);
            let h = build_h(&g).unwrap();
            let j = build_j(&g, &g.edge_set()).unwrap();
            built += 2;
            if h.graph().n() != 10 * n {
                bad.push(format!("|V(H)| = {} for n = {n}", h.graph().n()));
            }
            if j.graph().n() != 32 * n {
                bad.push(format!("|V(J)| = {} for n = {n}", j.graph().n()));
            }
            for tag in [GroupTag::APrime, GroupTag::DPrime] {
                if j.instance.group(tag).len() != 10 * n {
                    bad.push(format!("|{tag}| = {} for n = {n}", j.instance.group(tag).len()));
                }
            }
            if j.thresholds != (Thresholds::Uniform { value: 5 * n + 1, terminals: (0..n).chain(3 * n..4 * n).collect() }) {
                bad.push(format!("J threshold for n = {n}"));
            }
            let l = Layout::new(n);
            for a in 0..n {
                for d in 0..n {
                    // N̄(v) = V \ N(v) contains v itself
                    let a_only = (0..n).filter(|&x| g.has_edge(a, x) && !g.has_edge(d, x)).count();
                    let d_only = (0..n).filter(|&x| !g.has_edge(a, x) && g.has_edge(d, x)).count();
                    let want = 4 * n + a_only + d_only + 1;
                    if apvc_threshold(&g, a, d) != want || h.pair_threshold(l.a(a), l.d(d)) != Some(want) {
                        bad.push(format!("threshold ({a},{d}) for n = {n}"));
                    }
                }
            }
        }
    }
    let k4 = apvc_threshold(&complete(4), 0, 1);
    if k4 != 19 {
        bad.push(format!("K4 threshold {k4}"));
    }
    if apvc_threshold(&Graph::empty(5), 0, 3) != 21 {
        bad.push("edgeless threshold".into());
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{built} instances, K4 threshold {k4}, {} mismatches {:?}", bad.len(), bad.first()),
    }
}

fn vconn(args: &[&str], threads: Option<&str>, env_threads: Option<&str>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vconn"));
    cmd.env_remove("VCONN_THREADS");
    if let Some(t) = threads {
        cmd.args(["--threads", t]);
    }
    if let Some(t) = env_threads {
        cmd.env("VCONN_THREADS", t);
    }
    cmd.args(args).output().expect("run vconn")
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (graph, demand) = (p("g.txt"), p("demand.txt"));

    let jobs: Vec<Vec<String>> = vec![
        vec!["gen", "gnp", "--n", "30", "--p", "0.3", "--seed", "7"],
        vec!["gen", "planted4", "--n", "14", "--p", "0.2", "--seed", "7"],
        vec!["vc", "apvc", &graph, "--algo", "naive"],
        vec!["vc", "apvc", &graph, "--algo", "fast", "--seed", "5"],
        vec!["vc", "apvc", &graph, "--algo", "sampled", "--k", "3", "--seed", "5"],
        vec!["vc", "apvc", &graph, "--algo", "sampled", "--k", "4", "--fallback", "--seed", "5"],
        vec!["vc", "ssvc", &graph, "--s", "2", "--algo", "fast", "--mode", "gh", "--seed", "5"],
        vec!["vc", "steiner", &graph, "--terminals", "0,5,9,11", "--algo", "sampled", "--k", "5", "--seed", "2"],
        vec!["reduce", "steiner", &graph, "--demand", &demand],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();

    // the graph every later job reads
    let out = vconn(&["gen", "gnp", "--n", "30", "--p", "0.3", "--seed", "7", "--out", &graph], None, None);
    assert!(out.status.success());
    // demand: the first two edges of the graph
    let text = std::fs::read_to_string(&graph).unwrap();
    let first: Vec<&str> = text.lines().skip(1).take(2).collect();
    std::fs::write(&demand, format!("30 {}\n{}\n", first.len(), first.join("\n"))).unwrap();

    let settings: [(Option<&str>, Option<&str>); 4] = [(Some("1"), None), (Some("3"), None), (None, Some("2")), (None, None)];
    let mut mismatches = Vec::new();
    for (j, job) in jobs.iter().enumerate() {
        let mut reference: Option<Vec<u8>> = None;
        for (i, &(threads, env)) in settings.iter().chain(settings.iter()).enumerate() {
            let file = p(&format!("job{j}_{i}.out"));
            let mut args: Vec<&str> = job.iter().map(String::as_str).collect();
            args.extend(["--out", &file]);
            let out = vconn(&args, threads, env);
            if !out.status.success() {
                mismatches.push(format!("job {j} failed: {}", String::from_utf8_lossy(&out.stderr)));
                break;
            }
            let bytes = std::fs::read(&file).unwrap();
            match &reference {
                None => reference = Some(bytes),
                Some(r) if *r != bytes => mismatches.push(format!("job {j} differs under setting {i}")),
                Some(_) => {}
            }
        }
    }

    // library level: identical results on 1 and 4 worker threads
    let g = gen_gnp(24, 0.3, 3);
    let one = with_threads(Some(1), || (fast_apvc(&g, None), capped_apvc_sampled(&g, 3, 9, false).unwrap()));
    let four = with_threads(Some(4), || (fast_apvc(&g, None), capped_apvc_sampled(&g, 3, 9, false).unwrap()));
    if one != four {
        mismatches.push("library results depend on thread count".into());
    }
    let params = VerifyParams { seeds: 20, base_seed: BASE_SEED, ..VerifyParams::default() };
    let r1 = with_threads(Some(1), || run(Suite::Sampler, &params));
    let r4 = with_threads(Some(4), || run(Suite::Sampler, &params));
    if r1 != r4 {
        mismatches.push("verify report depends on thread count".into());
    }

    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("{} commands x {} runs; {:?}", jobs.len(), 2 * settings.len(), mismatches.first()),
    }
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("menger correctness", Duration::from_secs(60), menger),
        ("gadget identity", Duration::from_secs(120), gadget),
        ("filter identities", Duration::from_secs(120), filters),
        ("composed H chain", Duration::from_secs(300), h_chain),
        ("APVC pipeline equivalence", Duration::from_secs(600), pipeline_apvc),
        ("Steiner pipeline equivalence", Duration::from_secs(900), pipeline_steiner),
        ("capped sampler", Duration::from_secs(600), sampler),
        ("fast solver exactness", Duration::from_secs(600), fast_exactness),
        ("structural constants", Duration::from_secs(60), structural),
        ("determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let pass = outcome.pass && took <= *budget;
        println!(
            "[{}] criterion {:>2} {name}: {} ({:.1}s of {}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
