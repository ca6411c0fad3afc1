use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Symmetric table of pairwise connectivity values. When `cap` is set the
/// entries are `min{kappa, cap}`. The diagonal has no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityMatrix {
    n: usize,
    values: Vec<usize>,
    cap: Option<usize>,
}

impl ConnectivityMatrix {
    pub fn new(n: usize, cap: Option<usize>) -> Self {
        ConnectivityMatrix {
            n,
            values: vec![0; n * n],
            cap,
        }
    }

    /// Builds from independently computed rows, failing if any pair
    /// disagrees with its mirror or a diagonal entry is filled.
    pub fn from_rows(rows: Vec<Vec<Option<usize>>>, cap: Option<usize>) -> Result<Self> {
        let n = rows.len();
        let mut out = ConnectivityMatrix::new(n, cap);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Inconsistent(format!("row {u} has {} entries, expected {n}", row.len())));
            }
            for (v, &x) in row.iter().enumerate() {
                match (u == v, x) {
                    (true, None) => {}
                    (true, Some(_)) => {
                        return Err(Error::Inconsistent(format!("diagonal entry ({u}, {u}) set")))
                    }
                    (false, None) => {
                        return Err(Error::Inconsistent(format!("missing entry ({u}, {v})")))
                    }
                    (false, Some(k)) => {
                        if rows[v][u] != Some(k) {
                            return Err(Error::Inconsistent(format!(
                                "asymmetric entries ({u}, {v}) = {k}, ({v}, {u}) = {:?}",
                                rows[v][u]
                            )));
                        }
                        out.values[u * n + v] = k;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        (u != v && u < self.n && v < self.n).then(|| self.values[u * self.n + v])
    }

    /// Sets both `(u, v)` and `(v, u)`.
    pub fn set(&mut self, u: usize, v: usize, k: usize) {
        assert!(u != v, "diagonal has no value");
        self.values[u * self.n + v] = k;
        self.values[v * self.n + u] = k;
    }

    pub fn row(&self, u: usize) -> Vec<Option<usize>> {
        (0..self.n).map(|v| self.get(u, v)).collect()
    }

    fn off_diagonal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).map(move |v| self.values[u * self.n + v]))
    }

    pub fn min_entry(&self) -> Option<usize> {
        self.off_diagonal().min()
    }

    pub fn max_entry(&self) -> Option<usize> {
        self.off_diagonal().max()
    }

    /// Minimum over pairs of distinct listed vertices.
    pub fn min_over(&self, vertices: &[usize]) -> Option<usize> {
        let mut best = None;
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if let Some(k) = self.get(u, v) {
                    best = Some(best.map_or(k, |b: usize| b.min(k)));
                }
            }
        }
        best
    }

    /// Entrywise `min{entry, k}`.
    pub fn capped(&self, k: usize) -> ConnectivityMatrix {
        ConnectivityMatrix {
            n: self.n,
            values: self.values.iter().map(|&x| x.min(k)).collect(),
            cap: Some(k),
        }
    }

    /// First line `n` (or `n<TAB>cap`), then one tab-separated row per
    /// vertex with `-` on the diagonal.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        match self.cap {
            Some(k) => writeln!(out, "{}\t{}", self.n, k).unwrap(),
            None => writeln!(out, "{}", self.n).unwrap(),
        }
        for u in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|v| self.get(u, v).map_or_else(|| "-".to_string(), |k| k.to_string()))
                .collect();
            writeln!(out, "{}", row.join("\t")).unwrap();
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty matrix document".into(),
        })?;
        let head: Vec<&str> = header.split('\t').collect();
        let num = |s: &str, line: usize| {
            s.trim().parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected integer, got {s:?}"),
            })
        };
        let n = num(head[0], 1)?;
        let cap = match head.get(1) {
            Some(s) => Some(num(s, 1)?),
            None => None,
        };
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines {
            let row = line
                .split('\t')
                .map(|s| if s == "-" { Ok(None) } else { num(s, idx + 1).map(Some) })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse {
                line: rows.len() + 2,
                msg: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        Self::from_rows(rows, cap)
    }
}
