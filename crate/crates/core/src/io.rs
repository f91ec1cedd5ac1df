//! Plain-text instance and solution files.
//!
//! Instance:
//! ```text
//! # seed 7
//! knapsack <n> <t>
//! <size> <value> <multiplicity>    (n lines)
//! ```
//! or `subsetsum <n> <t>` followed by `<size> <multiplicity>` lines. Lines
//! starting with `#` are comments. Solution:
//! ```text
//! value <V> size <S> status <OPT|YES|NO>
//! <item-index> <count>             (one line per used item)
//! ```
//! Item indices refer to the normalized instance.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{validate_and_normalize, KnapsackInstance, RawItem, SolutionVector, SubsetSumInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Knapsack(KnapsackInstance),
    SubsetSum(SubsetSumInstance),
}

impl Instance {
    pub fn as_knapsack(&self) -> &KnapsackInstance {
        match self {
            Instance::Knapsack(k) => k,
            Instance::SubsetSum(s) => s.as_knapsack(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Knapsack(_) => "knapsack",
            Instance::SubsetSum(_) => "subsetsum",
        }
    }
}

/// A parsed instance together with its comment lines (without the `#`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub comments: Vec<String>,
    pub instance: Instance,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(tok: &str, line: usize) -> Result<i64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("expected an unsigned integer, found `{tok}`")));
    }
    tok.parse::<i64>()
        .map_err(|_| parse_err(line, format!("`{tok}` exceeds the 63-bit range")))
}

/// Non-comment, non-blank lines as `(line number, tokens)`.
fn content_lines(text: &str) -> (Vec<String>, Vec<(usize, Vec<&str>)>) {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if let Some(c) = l.strip_prefix('#') {
            comments.push(c.trim().to_string());
        } else if !l.is_empty() {
            lines.push((i + 1, l.split_whitespace().collect()));
        }
    }
    (comments, lines)
}

fn expect_tokens(toks: &[&str], want: usize, line: usize, what: &str) -> Result<()> {
    if toks.len() != want {
        return Err(parse_err(line, format!("{what} needs {want} fields, found {}", toks.len())));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let (comments, lines) = content_lines(text);
    let Some((hline, header)) = lines.first() else {
        return Err(parse_err(1, "missing header line"));
    };
    let (hline, header) = (*hline, header);
    expect_tokens(header, 3, hline, "header")?;
    let kind = header[0];
    let width = match kind {
        "knapsack" => 3,
        "subsetsum" => 2,
        other => return Err(parse_err(hline, format!("unknown instance kind `{other}`"))),
    };
    let n = number(header[1], hline)? as usize;
    let t = number(header[2], hline)?;
    let body = &lines[1..];
    if body.len() != n {
        let line = body.get(n).map_or(text.lines().count().max(1), |(l, _)| *l);
        return Err(parse_err(line, format!("header declares {n} items, found {}", body.len())));
    }
    let mut raw = Vec::with_capacity(n);
    for (line, toks) in body {
        expect_tokens(toks, width, *line, "item line")?;
        let vals = toks.iter().map(|t| number(t, *line)).collect::<Result<Vec<i64>>>()?;
        if vals[0] == 0 {
            return Err(parse_err(*line, "size must be positive"));
        }
        raw.push(match kind {
            "knapsack" => RawItem::new(vals[0], vals[1], vals[2]),
            _ => RawItem::new(vals[0], vals[0], vals[1]),
        });
    }
    let instance = match kind {
        "knapsack" => Instance::Knapsack(validate_and_normalize(&raw, t)?),
        _ => {
            let pairs: Vec<(i64, i64)> = raw.iter().map(|r| (r.size, r.multiplicity)).collect();
            Instance::SubsetSum(SubsetSumInstance::new(&pairs, t)?)
        }
    };
    Ok(InstanceFile { comments, instance })
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        let k = self.instance.as_knapsack();
        writeln!(f, "{} {} {}", self.instance.kind(), k.n(), k.capacity())?;
        for it in k.items() {
            match self.instance {
                Instance::Knapsack(_) => writeln!(f, "{} {} {}", it.size, it.value, it.multiplicity)?,
                Instance::SubsetSum(_) => writeln!(f, "{} {}", it.size, it.multiplicity)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Opt,
    Yes,
    No,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Opt => "OPT",
            Status::Yes => "YES",
            Status::No => "NO",
        })
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "OPT" => Ok(Status::Opt),
            "YES" => Ok(Status::Yes),
            "NO" => Ok(Status::No),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub value: u64,
    pub size: u64,
    pub status: Status,
    /// `(item index, count)` with positive counts, increasing index.
    pub entries: Vec<(usize, u64)>,
}

impl SolutionFile {
    pub fn from_solution(x: &SolutionVector, status: Status) -> Self {
        SolutionFile {
            value: x.total_value as u64,
            size: x.total_size as u64,
            status,
            entries: x
                .counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        }
    }

    pub fn no() -> Self {
        SolutionFile {
            value: 0,
            size: 0,
            status: Status::No,
            entries: Vec::new(),
        }
    }

    /// Dense count vector for an instance with `n` items.
    pub fn counts(&self, n: usize) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; n];
        for &(i, c) in &self.entries {
            let slot = counts.get_mut(i).ok_or(Error::LengthMismatch { expected: n, got: i + 1 })?;
            *slot = slot.checked_add(c).ok_or(Error::Overflow("solution count"))?;
        }
        Ok(counts)
    }
}

impl fmt::Display for SolutionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("value {} size {} status {}\n", self.value, self.size, self.status);
        for (i, c) in &self.entries {
            writeln!(out, "{i} {c}")?;
        }
        f.write_str(&out)
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let (_, lines) = content_lines(text);
    let Some((hline, header)) = lines.first() else {
        return Err(parse_err(1, "missing header line"));
    };
    let hline = *hline;
    expect_tokens(header, 6, hline, "header")?;
    for (pos, key) in [(0, "value"), (2, "size"), (4, "status")] {
        if header[pos] != key {
            return Err(parse_err(hline, format!("expected `{key}`, found `{}`", header[pos])));
        }
    }
    let value = number(header[1], hline)? as u64;
    let size = number(header[3], hline)? as u64;
    let status = header[5].parse::<Status>().map_err(|m| parse_err(hline, m))?;
    let mut entries = Vec::new();
    for (line, toks) in &lines[1..] {
        expect_tokens(toks, 2, *line, "entry line")?;
        entries.push((number(toks[0], *line)? as usize, number(toks[1], *line)? as u64));
    }
    Ok(SolutionFile {
        value,
        size,
        status,
        entries,
    })
}
