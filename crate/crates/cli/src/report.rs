use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub threads: Option<usize>,
    pub parallel: bool,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub n: usize,
    pub m: usize,
    pub payload: Value,
    /// Wall-clock milliseconds per phase.
    pub timings: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    pub params: Params,
}

impl RunReport {
    pub fn new(command: &str, threads: Option<usize>) -> Self {
        RunReport {
            command: command.to_string(),
            n: 0,
            m: 0,
            payload: Value::Null,
            timings: BTreeMap::new(),
            seed: None,
            params: Params {
                threads,
                parallel: vconn::par::is_parallel(),
                ..Params::default()
            },
        }
    }

    /// Runs `f`, recording its wall-clock time under `phase`.
    pub fn time<R>(&mut self, phase: &str, f: impl FnOnce() -> R) -> R {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        *self.timings.entry(phase.to_string()).or_default() += ms;
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
