//! Flat line-record files.
//!
//! One structure per line as space-separated `key=value` fields with
//! comma-separated index lists, e.g.
//!
//! ```text
//! # ybe-records format=1 catalog=1
//! cycleset n=2 dot=1,0,1,0
//! count=1 exhaustive=true
//! ```

use std::fmt;

use crate::brace::SkewBrace;
use crate::catalog::CATALOG_VERSION;
use crate::cycle_set::CycleSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::solution::Solution;

pub const FORMAT_VERSION: u32 = 1;

pub fn header() -> String {
    format!("# ybe-records format={FORMAT_VERSION} catalog={CATALOG_VERSION}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    Group(FiniteGroup),
    Solution(Solution),
    CycleSet(CycleSet),
    Brace(SkewBrace),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summary {
    Count { count: usize, exhaustive: bool },
    Order { order: usize, s: usize, b: usize, exhaustive: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Header { format: u32, catalog: u32 },
    Record(Record),
    Summary(Summary),
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Record::Group(g) => write!(f, "group n={} table={}", g.order(), join(g.table())),
            Record::Solution(s) => write!(
                f,
                "solution n={} sigma={} tau={}",
                s.size(),
                join(&s.sigma_table()),
                join(&s.tau_table())
            ),
            Record::CycleSet(c) => write!(f, "cycleset n={} dot={}", c.size(), join(c.table())),
            Record::Brace(b) => write!(
                f,
                "brace n={} add={} circ={}",
                b.order(),
                join(b.additive().table()),
                join(b.multiplicative().table())
            ),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Summary::Count { count, exhaustive } => write!(f, "count={count} exhaustive={exhaustive}"),
            Summary::Order { order, s, b, exhaustive } => {
                write!(f, "order={order} s={s} b={b} exhaustive={exhaustive}")
            }
        }
    }
}

struct Fields<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Fields<'a> {
    fn parse(tokens: &[&'a str]) -> Result<Self> {
        let pairs = tokens
            .iter()
            .map(|t| t.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, found `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Fields { pairs })
    }

    fn get(&self, key: &str) -> Result<&'a str> {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
    }

    fn keys_are(&self, keys: &[&str]) -> Result<()> {
        for (k, _) in &self.pairs {
            if !keys.contains(k) {
                return Err(Error::Parse(format!("unexpected field `{k}`")));
            }
        }
        Ok(())
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse().map_err(|_| Error::Parse(format!("bad value `{v}` for `{key}`")))
    }

    fn list(&self, key: &str, len: usize) -> Result<Vec<usize>> {
        let v = self.get(key)?;
        let xs = if v.is_empty() {
            Vec::new()
        } else {
            v.split(',')
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad index `{x}` in `{key}`"))))
                .collect::<Result<Vec<usize>>>()?
        };
        if xs.len() != len {
            return Err(Error::BadShape { len: xs.len(), expected: len });
        }
        Ok(xs)
    }
}

/// Parses and validates one line. Blank lines and `#` comments other than
/// the format header give `None`.
pub fn parse_line(line: &str) -> Result<Option<Entry>> {
    let line = line.trim();
    if line.is_empty() {
        return Ok(None);
    }
    if let Some(rest) = line.strip_prefix('#') {
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        if tokens.first() != Some(&"ybe-records") {
            return Ok(None);
        }
        let f = Fields::parse(&tokens[1..])?;
        return Ok(Some(Entry::Header { format: f.number("format")?, catalog: f.number("catalog")? }));
    }
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let kind = tokens[0];
    if kind.contains('=') {
        let f = Fields::parse(&tokens)?;
        let exhaustive = f.number("exhaustive")?;
        let summary = if f.pairs.iter().any(|(k, _)| *k == "count") {
            f.keys_are(&["count", "exhaustive"])?;
            Summary::Count { count: f.number("count")?, exhaustive }
        } else {
            f.keys_are(&["order", "s", "b", "exhaustive"])?;
            Summary::Order { order: f.number("order")?, s: f.number("s")?, b: f.number("b")?, exhaustive }
        };
        return Ok(Some(Entry::Summary(summary)));
    }
    let f = Fields::parse(&tokens[1..])?;
    let n: usize = f.number("n")?;
    let nn = n.checked_mul(n).ok_or_else(|| Error::Parse(format!("size {n} too large")))?;
    let record = match kind {
        "group" => {
            f.keys_are(&["n", "table"])?;
            Record::Group(FiniteGroup::from_table(n, f.list("table", nn)?)?)
        }
        "solution" => {
            f.keys_are(&["n", "sigma", "tau"])?;
            Record::Solution(Solution::from_tables(n, &f.list("sigma", nn)?, &f.list("tau", nn)?)?)
        }
        "cycleset" => {
            f.keys_are(&["n", "dot"])?;
            Record::CycleSet(CycleSet::new(n, f.list("dot", nn)?)?)
        }
        "brace" => {
            f.keys_are(&["n", "add", "circ"])?;
            Record::Brace(SkewBrace::from_tables(n, f.list("add", nn)?, f.list("circ", nn)?)?)
        }
        other => return Err(Error::Parse(format!("unknown record kind `{other}`"))),
    };
    Ok(Some(Entry::Record(record)))
}

/// Every non-blank entry with its 1-based line number; failures carry the
/// line in [`Error::AtLine`].
pub fn read_entries(text: &str) -> Vec<(usize, Result<Entry>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| match parse_line(line) {
            Ok(None) => None,
            Ok(Some(e)) => Some((i + 1, Ok(e))),
            Err(e) => Some((i + 1, Err(Error::AtLine { line: i + 1, source: Box::new(e) }))),
        })
        .collect()
}

/// All records in `text`, stopping at the first invalid line.
pub fn read_records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (_, entry) in read_entries(text) {
        if let Entry::Record(r) = entry? {
            out.push(r);
        }
    }
    Ok(out)
}
