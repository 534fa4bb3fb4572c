//! Dyck, Motzkin and Schröder paths and the generating trees that count
//! them.

pub mod rules;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use crate::patterns::Step;
pub use rules::{rule_catalog, rule_level_counts, RuleCatalogId, SuccessionRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unknown step at byte {0}")]
    BadStep(usize),
    #[error("step {step} is not allowed in a {kind} path")]
    WrongStep { step: Step, kind: PathKind },
    #[error("path goes below the axis at step {0}")]
    BelowAxis(usize),
    #[error("path ends at height {0}, not on the axis")]
    Unbalanced(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PathKind {
    Dyck,
    Motzkin,
    Schroder,
}

impl fmt::Display for PathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathKind::Dyck => "Dyck",
            PathKind::Motzkin => "Motzkin",
            PathKind::Schroder => "Schröder",
        })
    }
}

impl PathKind {
    fn allows(self, s: Step) -> bool {
        match self {
            PathKind::Dyck => matches!(s, Step::U | Step::D),
            PathKind::Motzkin => s != Step::H2,
            PathKind::Schroder => s != Step::H,
        }
    }
}

/// Reads `UUDD`, `U U D D` or `H2 H2 UD` style step words.
pub fn parse_steps(text: &str) -> Result<Vec<Step>, PathError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b' ' | b',' => {}
            b'U' => out.push(Step::U),
            b'D' => out.push(Step::D),
            b'H' if b.get(i + 1) == Some(&b'2') => {
                out.push(Step::H2);
                i += 1;
            }
            b'H' => out.push(Step::H),
            _ => return Err(PathError::BadStep(i)),
        }
        i += 1;
    }
    Ok(out)
}

pub fn format_steps(steps: &[Step]) -> String {
    steps.iter().map(Step::to_string).collect()
}

/// A validated lattice path from the origin back to the axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    kind: PathKind,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(kind: PathKind, steps: Vec<Step>) -> Result<Self, PathError> {
        let mut h = 0i64;
        for (i, &s) in steps.iter().enumerate() {
            if !kind.allows(s) {
                return Err(PathError::WrongStep { step: s, kind });
            }
            h += rise(s);
            if h < 0 {
                return Err(PathError::BelowAxis(i));
            }
        }
        if h != 0 {
            return Err(PathError::Unbalanced(h));
        }
        Ok(LatticePath { kind, steps })
    }

    pub fn parse(kind: PathKind, text: &str) -> Result<Self, PathError> {
        Self::new(kind, parse_steps(text)?)
    }

    pub fn dyck(text: &str) -> Result<Self, PathError> {
        Self::parse(PathKind::Dyck, text)
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    /// Up steps plus double horizontal steps; for Dyck paths the usual
    /// semilength.
    pub fn semilength(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::U | Step::H2)).count()
    }

    pub fn height(&self) -> usize {
        heights(&self.steps).max().unwrap_or(0) as usize
    }

    /// Number of `UD` factors.
    pub fn peaks(&self) -> usize {
        self.steps.windows(2).filter(|p| p == &[Step::U, Step::D]).count()
    }

    /// `(i, j)` pairs of each up step with its matching down step, ordered
    /// by `i`.
    pub fn matching(&self) -> Vec<(usize, usize)> {
        let mut open = Vec::new();
        let mut out = Vec::new();
        for (i, &s) in self.steps.iter().enumerate() {
            match s {
                Step::U => open.push(i),
                Step::D => out.push((open.pop().expect("validated path"), i)),
                _ => {}
            }
        }
        out.sort_unstable();
        out
    }

    /// Splits a path starting with `U` as `U Q1 D Q2`. Returns `None` for
    /// the empty path or one that starts with a flat step.
    pub fn first_return(&self) -> Option<(LatticePath, LatticePath)> {
        if self.steps.first() != Some(&Step::U) {
            return None;
        }
        let mut h = 0i64;
        let j = self
            .steps
            .iter()
            .position(|&s| {
                h += rise(s);
                h == 0
            })
            .expect("validated path returns");
        let q1 = LatticePath { kind: self.kind, steps: self.steps[1..j].to_vec() };
        let q2 = LatticePath { kind: self.kind, steps: self.steps[j + 1..].to_vec() };
        Some((q1, q2))
    }

    /// Mirror image in a vertical line: reverse the word and swap U with D.
    pub fn reverse(&self) -> LatticePath {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|&s| match s {
                Step::U => Step::D,
                Step::D => Step::U,
                flat => flat,
            })
            .collect();
        LatticePath { kind: self.kind, steps }
    }

    pub fn avoids_consecutive(&self, q: &[Step]) -> bool {
        avoids_consecutive(&self.steps, q)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == PathKind::Schroder {
            let parts: Vec<String> = self.steps.iter().map(Step::to_string).collect();
            f.write_str(&parts.join(" "))
        } else {
            f.write_str(&format_steps(&self.steps))
        }
    }
}

impl FromStr for LatticePath {
    type Err = PathError;

    /// Picks the smallest kind that accepts the steps.
    fn from_str(s: &str) -> Result<Self, PathError> {
        let steps = parse_steps(s)?;
        let kind = if steps.contains(&Step::H2) {
            PathKind::Schroder
        } else if steps.contains(&Step::H) {
            PathKind::Motzkin
        } else {
            PathKind::Dyck
        };
        LatticePath::new(kind, steps)
    }
}

fn rise(s: Step) -> i64 {
    match s {
        Step::U => 1,
        Step::D => -1,
        _ => 0,
    }
}

fn heights(steps: &[Step]) -> impl Iterator<Item = i64> + '_ {
    steps.iter().scan(0i64, |h, &s| {
        *h += rise(s);
        Some(*h)
    })
}

/// True when `q` is not a factor of `steps`. The empty factor occurs
/// everywhere.
pub fn avoids_consecutive(steps: &[Step], q: &[Step]) -> bool {
    !q.is_empty() && !steps.windows(q.len()).any(|w| w == q)
}

/// All Dyck paths of semilength `n` with height at most `max_height`, in
/// lexicographic order with `U < D`.
pub fn dyck_paths_bounded(n: usize, max_height: usize) -> Vec<Vec<Step>> {
    fn go(n: usize, cap: usize, ups: usize, h: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if cur.len() == 2 * n {
            out.push(cur.clone());
            return;
        }
        if ups < n && h < cap {
            cur.push(Step::U);
            go(n, cap, ups + 1, h + 1, cur, out);
            cur.pop();
        }
        if h > 0 {
            cur.push(Step::D);
            go(n, cap, ups, h - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_height, 0, 0, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

pub fn dyck_paths(n: usize) -> Vec<Vec<Step>> {
    dyck_paths_bounded(n, n)
}

/// Motzkin paths with `n` steps.
pub fn motzkin_paths(n: usize) -> Vec<Vec<Step>> {
    fn go(left: usize, h: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if left == 0 {
            if h == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for s in [Step::U, Step::D, Step::H] {
            let ok = match s {
                Step::U => h < left,
                Step::D => h > 0,
                _ => true,
            };
            if ok {
                cur.push(s);
                let nh = (h as i64 + rise(s)) as usize;
                go(left - 1, nh, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// Schröder paths of semilength `n` (each `U` and each `H2` counts one),
/// sorted.
pub fn schroder_paths(n: usize) -> Vec<Vec<Step>> {
    // a Dyck path of semilength n-k with k flat steps shuffled in
    let mut out = Vec::new();
    for k in 0..=n {
        for d in dyck_paths(n - k) {
            place_flats(&d, k, &mut out);
        }
    }
    out.sort();
    out
}

/// Inserts `k` flat steps into a Dyck word in every possible way.
fn place_flats(dyck: &[Step], k: usize, out: &mut Vec<Vec<Step>>) {
    fn go(dyck: &[Step], i: usize, k: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if k > 0 {
            cur.push(Step::H2);
            go(dyck, i, k - 1, cur, out);
            cur.pop();
        }
        if i < dyck.len() {
            cur.push(dyck[i]);
            go(dyck, i + 1, k, cur, out);
            cur.pop();
        } else if k == 0 {
            out.push(cur.clone());
        }
    }
    go(dyck, 0, k, &mut Vec::new(), out);
}
