//! Reference count tables, shipped as a data file, and their verifier.
//!
//! Each line reads `table_id/row_key: c1,c2,...@start`. Rows are recomputed
//! by brute force and, where one exists, by oracle or generating tree, then
//! compared term by term.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::enumeration::counting::{count_sortable_with, count_sorted, tree_rule_for, CountOptions, Method};
use crate::enumeration::sequences::bounded_dyck_f;
use crate::machine::MachineSpec;
use crate::oracles::Oracle;
use crate::paths::dyck_paths_bounded;
use crate::patterns::parse_pattern_list;
use crate::words::{decreasing, Domain};

const DATA: &str = include_str!("../../data/golden.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("row `{table}/{key}`: {reason}")]
    BadRow { table: String, key: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRow {
    pub table: String,
    pub key: String,
    pub start: usize,
    pub counts: Vec<BigUint>,
}

impl GoldenRow {
    /// `(n, count)` pairs up to `max_n`.
    pub fn terms(&self, max_n: usize) -> impl Iterator<Item = (usize, &BigUint)> {
        (self.start..).zip(&self.counts).take_while(move |(n, _)| *n <= max_n)
    }
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>, GoldenError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: &str| GoldenError::Parse { line: i + 1, reason: reason.to_string() };
        let (head, body) = line.split_once(':').ok_or_else(|| err("missing `:`"))?;
        let (table, key) = head.trim().split_once('/').ok_or_else(|| err("missing `/` in row id"))?;
        let (list, start) = body.trim().rsplit_once('@').ok_or_else(|| err("missing `@start`"))?;
        let start = start.trim().parse().map_err(|_| err("bad start index"))?;
        let counts = list
            .split(',')
            .map(|c| c.trim().parse::<BigUint>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("bad count"))?;
        rows.push(GoldenRow { table: table.to_string(), key: key.to_string(), start, counts });
    }
    Ok(rows)
}

/// The embedded tables.
pub fn golden_rows() -> &'static [GoldenRow] {
    static ROWS: OnceLock<Vec<GoldenRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_golden(DATA).expect("embedded golden data parses"))
}

pub fn golden_table_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = golden_rows().iter().map(|r| r.table.as_str()).collect();
    ids.dedup();
    ids
}

pub fn golden_row(table: &str, key: &str) -> Option<&'static GoldenRow> {
    golden_rows().iter().find(|r| r.table == table && r.key == key)
}

#[derive(Debug, Clone, Copy)]
pub struct GoldenOptions {
    /// Largest length recomputed.
    pub max_n: usize,
    pub guard: Option<usize>,
    /// Also recompute by oracle or tree where available.
    pub cross_check: bool,
}

impl Default for GoldenOptions {
    fn default() -> Self {
        GoldenOptions { max_n: 8, guard: None, cross_check: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub n: usize,
    pub method: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub key: String,
    pub start: usize,
    pub checked_up_to: usize,
    pub methods: Vec<String>,
    pub expected: Vec<String>,
    pub computed: BTreeMap<String, Vec<String>>,
    pub pass: bool,
    pub first_divergence: Option<Divergence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub table: String,
    pub max_n: usize,
    pub rows: Vec<RowReport>,
    pub pass: bool,
}

impl GoldenReport {
    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

type Recompute = Box<dyn Fn(usize) -> Result<BigUint, String>>;

fn bad(row: &GoldenRow, reason: impl ToString) -> GoldenError {
    GoldenError::BadRow { table: row.table.clone(), key: row.key.clone(), reason: reason.to_string() }
}

fn spec_for(row: &GoldenRow) -> Result<MachineSpec, GoldenError> {
    let sigma = parse_pattern_list(&row.key).map_err(|e| bad(row, e))?;
    MachineSpec::new(&sigma, Domain::Perm).map_err(|e| bad(row, e))
}

fn sortable_methods(spec: MachineSpec, opts: &GoldenOptions) -> Vec<(String, Recompute)> {
    let guard = opts.guard;
    let mut out: Vec<(String, Recompute)> = Vec::new();
    let mut push = |method: Method| {
        let spec = spec.clone();
        let f: Recompute = Box::new(move |n| {
            let o = CountOptions { guard, strict: true };
            count_sortable_with(&spec, n, method, o).map(|c| c.count).map_err(|e| e.to_string())
        });
        out.push((method.to_string(), f));
    };
    push(Method::Brute);
    if opts.cross_check {
        if Oracle::for_spec(&spec).is_ok() {
            push(Method::Oracle);
        }
        if tree_rule_for(&spec).is_some() {
            push(Method::Tree);
        }
    }
    out
}

fn methods_for(row: &GoldenRow, opts: &GoldenOptions) -> Result<Vec<(String, Recompute)>, GoldenError> {
    match row.table.as_str() {
        "single" | "class_rows" | "unsolved" | "pairs" => Ok(sortable_methods(spec_for(row)?, opts)),
        "decr" => {
            let k: usize = row.key.parse().map_err(|_| bad(row, "key must be the pattern length"))?;
            if k < 2 {
                return Err(bad(row, "pattern length must be at least 2"));
            }
            let spec = MachineSpec::single(&decreasing(k), Domain::Perm).map_err(|e| bad(row, e))?;
            let mut out = sortable_methods(spec, opts);
            if opts.cross_check {
                let dyck: Recompute = Box::new(move |n| Ok(dyck_paths_bounded(n, k - 1).len().into()));
                out.push(("bounded_dyck".into(), dyck));
                let series = bounded_dyck_f(k as u64 - 1, opts.max_n);
                let f: Recompute = Box::new(move |n| {
                    series.get(n).and_then(|c| c.to_biguint()).ok_or_else(|| "series too short".to_string())
                });
                out.push(("series_f".into(), f));
            }
            Ok(out)
        }
        "sorted" => {
            let spec = spec_for(row)?;
            let guard = opts.guard;
            let f: Recompute =
                Box::new(move |n| count_sorted(&spec, n, guard).map(BigUint::from).map_err(|e| e.to_string()));
            Ok(vec![("image_set".into(), f)])
        }
        other => Err(GoldenError::UnknownTable(other.to_string())),
    }
}

/// Recomputes one row up to `opts.max_n`.
pub fn verify_row(row: &GoldenRow, opts: &GoldenOptions) -> Result<RowReport, GoldenError> {
    let methods = methods_for(row, opts)?;
    let mut computed: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut first_divergence = None;
    let mut expected = Vec::new();
    let mut checked_up_to = 0;
    for (n, want) in row.terms(opts.max_n) {
        expected.push(want.to_string());
        checked_up_to = n;
        for (name, f) in &methods {
            let got = match f(n) {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {e}"),
            };
            if first_divergence.is_none() && got != want.to_string() {
                first_divergence =
                    Some(Divergence { n, method: name.clone(), expected: want.to_string(), computed: got.clone() });
            }
            computed.entry(name.clone()).or_default().push(got);
        }
    }
    Ok(RowReport {
        key: row.key.clone(),
        start: row.start,
        checked_up_to,
        methods: methods.iter().map(|(m, _)| m.clone()).collect(),
        expected,
        computed,
        pass: first_divergence.is_none(),
        first_divergence,
    })
}

/// Verifies every row of a table, optionally only the rows accepted by `keep`.
pub fn verify_golden_filtered(
    table: &str,
    opts: &GoldenOptions,
    keep: impl Fn(&GoldenRow) -> bool,
) -> Result<GoldenReport, GoldenError> {
    let rows: Vec<&GoldenRow> = golden_rows().iter().filter(|r| r.table == table).collect();
    if rows.is_empty() {
        return Err(GoldenError::UnknownTable(table.to_string()));
    }
    let reports = rows.into_iter().filter(|r| keep(r)).map(|r| verify_row(r, opts)).collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|r| r.pass);
    Ok(GoldenReport { table: table.to_string(), max_n: opts.max_n, rows: reports, pass })
}

pub fn verify_golden(table: &str, opts: &GoldenOptions) -> Result<GoldenReport, GoldenError> {
    verify_golden_filtered(table, opts, |_| true)
}
