//! Edge-list text format and the labelled-instance sidecar.
//!
//! A document is a header line `n m` followed by `m` lines `u v`. Labelled
//! instances append a `%labels` section of `group <tag>: v v v` lines, an
//! optional `%meta` section and, for hard instances, a `%thresholds`
//! section:
//!
//! ```text
//! 3 2
//! 0 1
//! 1 2
//! %labels
//! group A: 0
//! group B: 1 2
//! %meta
//! kind apvc
//! source_n 1
//! %thresholds
//! 0 3 5
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, GroupTag, InstanceMeta, LabeledInstance};
use crate::reductions::{HardInstance, HardKind, Thresholds};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("expected a non-negative integer, got {tok:?}")))
}

fn parse_ints(text: &str, line: usize) -> Result<Vec<usize>> {
    text.split_whitespace().map(|t| parse_usize(t, line)).collect()
}

/// Numbered, non-blank lines of a document, split at `%` section markers.
struct Sections<'a> {
    body: Vec<(usize, &'a str)>,
    named: Vec<(String, usize, Vec<(usize, &'a str)>)>,
}

fn split_sections(text: &str) -> Sections<'_> {
    let mut body = Vec::new();
    let mut named: Vec<(String, usize, Vec<(usize, &str)>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('%') {
            named.push((name.trim().to_string(), i + 1, Vec::new()));
        } else if let Some(last) = named.last_mut() {
            last.2.push((i + 1, line));
        } else {
            body.push((i + 1, line));
        }
    }
    Sections { body, named }
}

fn parse_body(body: &[(usize, &str)]) -> Result<Graph> {
    let Some(&(hline, header)) = body.first() else {
        return Err(perr(1, "missing header line \"n m\""));
    };
    let head = parse_ints(header, hline)?;
    let [n, m] = head[..] else {
        return Err(perr(hline, "header must be \"n m\""));
    };
    let mut adj = vec![Vec::new(); n];
    let mut last_line = hline;
    for &(line, text) in &body[1..] {
        last_line = line;
        let uv = parse_ints(text, line)?;
        let [u, v] = uv[..] else {
            return Err(perr(line, "edge line must be \"u v\""));
        };
        for x in [u, v] {
            if x >= n {
                return Err(perr(line, format!("vertex {x} out of range for n={n}")));
            }
        }
        if u == v {
            return Err(perr(line, format!("self-loop at vertex {u}")));
        }
        if adj[u].contains(&v) {
            return Err(perr(line, format!("duplicate edge ({u}, {v})")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let found = body.len() - 1;
    if found != m {
        return Err(perr(last_line, format!("header declares {m} edges, found {found}")));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges)
}

/// Parses an edge-list document. Anything from the first `%` line on is
/// ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_body(&split_sections(text).body)
}

/// Canonical edge list, edges sorted, no trailing newline.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        write!(out, "\n{u} {v}").unwrap();
    }
    out
}

/// A demand file is an edge-list document over the same vertex set.
pub fn parse_demand(text: &str, n: usize) -> Result<EdgeSet> {
    let d = parse_graph(text)?;
    if d.n() != n {
        return Err(perr(1, format!("demand is over {} vertices, graph has {n}", d.n())));
    }
    EdgeSet::new(n, d.edges())
}

fn emit_labels(out: &mut String, inst: &LabeledInstance) {
    out.push_str("\n%labels");
    for (tag, members) in &inst.groups {
        write!(out, "\ngroup {tag}:").unwrap();
        for v in members {
            write!(out, " {v}").unwrap();
        }
    }
}

fn emit_meta(out: &mut String, kind: Option<HardKind>, meta: &InstanceMeta) {
    if kind.is_none() && meta.source_n.is_none() && meta.demand.is_none() {
        return;
    }
    out.push_str("\n%meta");
    if let Some(k) = kind {
        write!(out, "\nkind {}", k.as_str()).unwrap();
    }
    if let Some(n) = meta.source_n {
        write!(out, "\nsource_n {n}").unwrap();
    }
    if let Some(d) = &meta.demand {
        write!(out, "\ndemand_count {}", d.len()).unwrap();
        for &(u, v) in d.pairs() {
            write!(out, "\ndemand {u} {v}").unwrap();
        }
    }
}

pub fn emit_labeled(inst: &LabeledInstance) -> String {
    let mut out = emit_graph(&inst.graph);
    emit_labels(&mut out, inst);
    emit_meta(&mut out, None, &inst.meta);
    out
}

pub fn emit_hard(h: &HardInstance) -> String {
    let mut out = emit_graph(&h.instance.graph);
    emit_labels(&mut out, &h.instance);
    emit_meta(&mut out, Some(h.kind), &h.instance.meta);
    out.push_str("\n%thresholds");
    match &h.thresholds {
        Thresholds::PerPair(list) => {
            for (a, d, t) in list {
                write!(out, "\n{a} {d} {t}").unwrap();
            }
        }
        Thresholds::Uniform { value, terminals } => {
            write!(out, "\nuniform {value}\nterminals:").unwrap();
            for t in terminals {
                write!(out, " {t}").unwrap();
            }
        }
    }
    out
}

struct Parsed {
    instance: LabeledInstance,
    kind: Option<HardKind>,
    thresholds: Option<Thresholds>,
}

fn parse_all(text: &str) -> Result<Parsed> {
    let sections = split_sections(text);
    let graph = parse_body(&sections.body)?;
    let n = graph.n();
    let mut groups = BTreeMap::new();
    let mut meta = InstanceMeta::default();
    let mut kind = None;
    let mut thresholds = None;
    let mut seen = Vec::new();
    for (name, at, lines) in &sections.named {
        if seen.contains(name) {
            return Err(perr(*at, format!("repeated section %{name}")));
        }
        seen.push(name.clone());
        match name.as_str() {
            "labels" => {
                for &(line, text) in lines {
                    let rest = text
                        .strip_prefix("group ")
                        .ok_or_else(|| perr(line, "expected \"group <tag>: ...\""))?;
                    let (tag, members) = rest
                        .split_once(':')
                        .ok_or_else(|| perr(line, "missing ':' after group tag"))?;
                    let tag: GroupTag = tag.trim().parse().map_err(|e: String| perr(line, e))?;
                    let members = parse_ints(members, line)?;
                    if let Some(&v) = members.iter().find(|&&v| v >= n) {
                        return Err(perr(line, format!("vertex {v} out of range for n={n}")));
                    }
                    if groups.insert(tag, members).is_some() {
                        return Err(perr(line, format!("group {tag} listed twice")));
                    }
                }
            }
            "meta" => {
                let mut demand = Vec::new();
                let mut declared = None;
                for &(line, text) in lines {
                    let (key, val) = text.split_once(' ').unwrap_or((text, ""));
                    match key {
                        "kind" => {
                            kind = Some(match val.trim() {
                                "apvc" => HardKind::Apvc,
                                "steiner" => HardKind::Steiner,
                                other => return Err(perr(line, format!("unknown kind {other:?}"))),
                            })
                        }
                        "source_n" => meta.source_n = Some(parse_usize(val.trim(), line)?),
                        "demand_count" => declared = Some((line, parse_usize(val.trim(), line)?)),
                        "demand" => {
                            let uv = parse_ints(val, line)?;
                            let [u, v] = uv[..] else {
                                return Err(perr(line, "demand line must be \"demand u v\""));
                            };
                            demand.push((u, v));
                        }
                        other => return Err(perr(line, format!("unknown meta key {other:?}"))),
                    }
                }
                if let Some((line, count)) = declared {
                    if count != demand.len() {
                        return Err(perr(line, format!("declared {count} demand edges, found {}", demand.len())));
                    }
                    let src = meta.source_n.unwrap_or(n);
                    meta.demand = Some(EdgeSet::new(src, demand)?);
                } else if !demand.is_empty() {
                    return Err(perr(*at, "demand edges without demand_count"));
                }
            }
            "thresholds" => {
                let uniform = lines.first().is_some_and(|(_, t)| t.starts_with("uniform"));
                if uniform {
                    let [(l1, first), (l2, second)] = lines[..] else {
                        return Err(perr(*at, "uniform thresholds need \"uniform v\" and \"terminals: ...\""));
                    };
                    let value = parse_usize(first.trim_start_matches("uniform").trim(), l1)?;
                    let terms = second
                        .strip_prefix("terminals:")
                        .ok_or_else(|| perr(l2, "expected \"terminals: ...\""))?;
                    thresholds = Some(Thresholds::Uniform {
                        value,
                        terminals: parse_ints(terms, l2)?,
                    });
                } else {
                    let mut list = Vec::with_capacity(lines.len());
                    for &(line, text) in lines {
                        let t = parse_ints(text, line)?;
                        let [a, d, v] = t[..] else {
                            return Err(perr(line, "threshold line must be \"a d threshold\""));
                        };
                        list.push((a, d, v));
                    }
                    thresholds = Some(Thresholds::PerPair(list));
                }
            }
            other => return Err(perr(*at, format!("unknown section %{other}"))),
        }
    }
    let mut instance = LabeledInstance::new(graph, groups);
    instance.meta = meta;
    Ok(Parsed {
        instance,
        kind,
        thresholds,
    })
}

/// Parses a document with a `%labels` section and validates the partition.
pub fn parse_labeled(text: &str) -> Result<LabeledInstance> {
    let p = parse_all(text)?;
    p.instance.validate()?;
    Ok(p.instance)
}

pub fn parse_hard(text: &str) -> Result<HardInstance> {
    let p = parse_all(text)?;
    p.instance.validate()?;
    let kind = p.kind.ok_or_else(|| perr(1, "missing \"kind\" in %meta"))?;
    let thresholds = p.thresholds.ok_or_else(|| perr(1, "missing %thresholds section"))?;
    let consistent = matches!(
        (kind, &thresholds),
        (HardKind::Apvc, Thresholds::PerPair(_)) | (HardKind::Steiner, Thresholds::Uniform { .. })
    );
    if !consistent {
        return Err(perr(1, format!("threshold section does not match kind {}", kind.as_str())));
    }
    Ok(HardInstance {
        instance: p.instance,
        kind,
        thresholds,
    })
}
