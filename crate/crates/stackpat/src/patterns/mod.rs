//! Pattern kinds and containment.
//!
//! Occurrences are reported as 0-based index tuples, lexicographically
//! ordered. The "leftmost" occurrence anywhere in the crate is the first one
//! in that order.

mod grammar;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::words::{format_letters, is_cayley, standardize};

pub use grammar::{parse_pattern, parse_pattern_list, split_top_level};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{what} {value} out of range (allowed {lo}..={hi})")]
    OutOfRange { what: &'static str, value: usize, lo: usize, hi: usize },
    #[error("pattern body {0} is not a Cayley permutation")]
    BodyNotCayley(String),
    #[error("barred pattern must bar some but not all positions")]
    DegenerateBars,
    #[error("unknown named pattern @{0}")]
    UnknownName(String),
}

/// A row index of a Cayley-mesh region: strictly between two value levels,
/// or exactly on one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Row {
    Gap(usize),
    At(usize),
}

impl Row {
    /// Position on the vertical axis: Gap(0) < At(1) < Gap(1) < At(2) < ...
    pub fn code(self) -> usize {
        match self {
            Row::Gap(j) => 2 * j,
            Row::At(j) => 2 * j - 1,
        }
    }
}

impl Ord for Row {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code().cmp(&other.code())
    }
}

impl PartialOrd for Row {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lattice path steps. `H2` is the Schröder double horizontal step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
    H,
    H2,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::U => "U",
            Step::D => "D",
            Step::H => "H",
            Step::H2 => "H2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Classical(Vec<u32>),
    /// Position adjacencies `s` and value adjacencies `t`, both indexed
    /// `0..=k` with sentinels at either end.
    Bivincular { body: Vec<u32>, s: BTreeSet<usize>, t: BTreeSet<usize> },
    Mesh { body: Vec<u32>, boxes: BTreeSet<(usize, usize)> },
    CayleyMesh { body: Vec<u32>, regions: BTreeSet<(usize, Row)> },
    /// 1-based barred positions.
    Barred { body: Vec<u32>, bars: BTreeSet<usize> },
    PathConsec(Vec<Step>),
}

impl Pattern {
    pub fn classical(body: &[u32]) -> Pattern {
        Pattern::Classical(body.to_vec())
    }

    pub fn body(&self) -> Option<&[u32]> {
        match self {
            Pattern::Classical(b)
            | Pattern::Bivincular { body: b, .. }
            | Pattern::Mesh { body: b, .. }
            | Pattern::CayleyMesh { body: b, .. }
            | Pattern::Barred { body: b, .. } => Some(b),
            Pattern::PathConsec(_) => None,
        }
    }

    pub fn as_classical(&self) -> Option<&[u32]> {
        match self {
            Pattern::Classical(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_word_pattern(&self) -> bool {
        !matches!(self, Pattern::PathConsec(_))
    }

    /// Checks the structural invariants of each kind.
    pub fn validate(&self) -> Result<(), PatternError> {
        let Some(body) = self.body() else { return Ok(()) };
        if !is_cayley(body) {
            return Err(PatternError::BodyNotCayley(format_letters(body)));
        }
        let k = body.len();
        let m = body.iter().copied().max().unwrap_or(0) as usize;
        let check = |what: &'static str, v: usize, lo: usize, hi: usize| {
            if v < lo || v > hi {
                Err(PatternError::OutOfRange { what, value: v, lo, hi })
            } else {
                Ok(())
            }
        };
        match self {
            Pattern::Bivincular { s, t, .. } => {
                s.iter().try_for_each(|&v| check("S member", v, 0, k))?;
                t.iter().try_for_each(|&v| check("T member", v, 0, m))?;
            }
            Pattern::Mesh { boxes, .. } => {
                for &(c, r) in boxes {
                    check("mesh column", c, 0, k)?;
                    check("mesh row", r, 0, m)?;
                }
            }
            Pattern::CayleyMesh { regions, .. } => {
                for &(c, r) in regions {
                    check("cmesh column", c, 0, k)?;
                    match r {
                        Row::Gap(j) => check("gap row", j, 0, m)?,
                        Row::At(j) => check("level row", j, 1, m)?,
                    }
                }
            }
            Pattern::Barred { bars, .. } => {
                if bars.is_empty() || bars.len() >= k {
                    return Err(PatternError::DegenerateBars);
                }
                bars.iter().try_for_each(|&v| check("barred position", v, 1, k))?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Named patterns used throughout: `xi`, `mu`, `f`, `zeta`, `a`, `b`.
    pub fn named(name: &str) -> Option<Pattern> {
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        let full_column = |c: usize, m: usize| {
            let mut r: Vec<(usize, Row)> = (0..=m).map(|j| (c, Row::Gap(j))).collect();
            r.extend((1..=m).map(|j| (c, Row::At(j))));
            r
        };
        Some(match name {
            "xi" => Pattern::Bivincular { body: vec![1, 3, 2], s: set(&[0, 2]), t: BTreeSet::new() },
            "mu" => Pattern::Mesh { body: vec![1, 3, 2], boxes: [(0, 2), (2, 0), (2, 1)].into_iter().collect() },
            "f" => Pattern::Bivincular { body: vec![2, 3, 1], s: set(&[1]), t: set(&[1]) },
            "zeta" => Pattern::CayleyMesh {
                body: vec![3, 2, 4, 1],
                regions: [(1, Row::Gap(4)), (1, Row::At(4))].into_iter().collect(),
            },
            "a" => Pattern::CayleyMesh { body: vec![2, 1, 2], regions: full_column(2, 2).into_iter().collect() },
            "b" => {
                let mut r = full_column(1, 2);
                r.push((0, Row::At(1)));
                Pattern::CayleyMesh { body: vec![2, 1], regions: r.into_iter().collect() }
            }
            _ => return None,
        })
    }

    /// Occurrence test on integer words. Path patterns never occur in words.
    pub fn contains(&self, w: &[u32]) -> bool {
        match self {
            Pattern::Classical(b) => contains_classical(w, b),
            Pattern::PathConsec(_) => false,
            Pattern::Barred { .. } => !self.occurrences(w).is_empty(),
            _ => {
                let mut found = false;
                self.scan(w, &mut |_| {
                    found = true;
                    false
                });
                found
            }
        }
    }

    pub fn avoids(&self, w: &[u32]) -> bool {
        !self.contains(w)
    }

    /// All occurrences, lexicographically ordered.
    ///
    /// For a barred pattern these are the occurrences of the unbarred reduct
    /// that do not extend to the full body.
    pub fn occurrences(&self, w: &[u32]) -> Vec<Vec<usize>> {
        match self {
            Pattern::Barred { body, bars } => barred_failures(w, body, bars),
            Pattern::PathConsec(_) => Vec::new(),
            _ => {
                let mut out = Vec::new();
                self.scan(w, &mut |occ| {
                    out.push(occ.to_vec());
                    true
                });
                out
            }
        }
    }

    pub fn leftmost_occurrence(&self, w: &[u32]) -> Option<Vec<usize>> {
        match self {
            Pattern::Barred { .. } => self.occurrences(w).into_iter().next(),
            _ => {
                let mut first = None;
                self.scan(w, &mut |occ| {
                    first = Some(occ.to_vec());
                    false
                });
                first
            }
        }
    }

    /// Visits occurrences of the non-barred kinds in lexicographic order.
    fn scan(&self, w: &[u32], visit: &mut dyn FnMut(&[usize]) -> bool) {
        match self {
            Pattern::Classical(b) => for_each_classical(w, b, visit),
            Pattern::Bivincular { body, s, t } => for_each_classical(w, body, &mut |occ| {
                if bivincular_ok(w, body, s, t, occ) {
                    visit(occ)
                } else {
                    true
                }
            }),
            Pattern::Mesh { body, boxes } => {
                let shade = Shading::from_mesh(body, boxes);
                for_each_classical(w, body, &mut |occ| if shade.clear(w, body, occ) { visit(occ) } else { true })
            }
            Pattern::CayleyMesh { body, regions } => {
                let shade = Shading::from_regions(body, regions);
                for_each_classical(w, body, &mut |occ| if shade.clear(w, body, occ) { visit(occ) } else { true })
            }
            Pattern::Barred { .. } | Pattern::PathConsec(_) => {}
        }
    }
}

/// Canonical text form, accepted back by [`parse_pattern`].
impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<usize>| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Pattern::Classical(b) => f.write_str(&format_letters(b)),
            Pattern::Bivincular { body, s, t } => {
                write!(f, "bv({};S={{{}}};T={{{}}})", format_letters(body), list(s), list(t))
            }
            Pattern::Mesh { body, boxes } => {
                write!(f, "mesh({}", format_letters(body))?;
                let parts: Vec<String> = boxes.iter().map(|(c, r)| format!("({c},{r})")).collect();
                if !parts.is_empty() {
                    write!(f, ";{}", parts.join(","))?;
                }
                f.write_str(")")
            }
            Pattern::CayleyMesh { body, regions } => {
                write!(f, "cmesh({}", format_letters(body))?;
                let parts: Vec<String> = regions
                    .iter()
                    .map(|(c, r)| match r {
                        Row::Gap(j) => format!("({c},gap:{j})"),
                        Row::At(j) => format!("({c},at:{j})"),
                    })
                    .collect();
                if !parts.is_empty() {
                    write!(f, ";{}", parts.join(","))?;
                }
                f.write_str(")")
            }
            Pattern::Barred { body, bars } => write!(f, "barred({};pos={{{}}})", format_letters(body), list(bars)),
            Pattern::PathConsec(steps) => {
                f.write_str("path(")?;
                for s in steps {
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Backtracking search for subsequences order-isomorphic to `body`,
/// equalities included. `visit` returns false to stop.
fn for_each_classical(w: &[u32], body: &[u32], visit: &mut dyn FnMut(&[usize]) -> bool) {
    search_classical(w, body, false, visit)
}

fn search_classical(w: &[u32], body: &[u32], anchored: bool, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let k = body.len();
    if k > w.len() {
        return;
    }
    let mut idx = vec![0usize; k];
    if k == 0 {
        visit(&idx);
        return;
    }
    fn go(
        w: &[u32],
        body: &[u32],
        idx: &mut Vec<usize>,
        j: usize,
        start: usize,
        anchored: bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let k = body.len();
        let last = if anchored && j == 0 { 0 } else { w.len() - (k - j) };
        for p in start..=last {
            let v = w[p];
            if (0..j).all(|i| body[i].cmp(&body[j]) == w[idx[i]].cmp(&v)) {
                idx[j] = p;
                let cont = if j + 1 == k { visit(idx) } else { go(w, body, idx, j + 1, p + 1, anchored, visit) };
                if !cont {
                    return false;
                }
            }
        }
        true
    }
    go(w, body, &mut idx, 0, 0, anchored, visit);
}

pub fn contains_classical(w: &[u32], body: &[u32]) -> bool {
    let mut found = false;
    for_each_classical(w, body, &mut |_| {
        found = true;
        false
    });
    found
}

/// True when some occurrence of `body` in `w` uses the first letter of `w`.
pub fn contains_classical_anchored(w: &[u32], body: &[u32]) -> bool {
    let mut found = false;
    search_classical(w, body, true, &mut |_| {
        found = true;
        false
    });
    found
}

pub fn avoids_classical(w: &[u32], body: &[u32]) -> bool {
    !contains_classical(w, body)
}

/// True when `w` avoids every pattern in `basis`.
pub fn avoids_all(w: &[u32], basis: &[Pattern]) -> bool {
    basis.iter().all(|p| p.avoids(w))
}

/// Actual letter values matched to each body level 1..=max(body).
fn level_values(w: &[u32], body: &[u32], occ: &[usize]) -> Vec<u32> {
    let m = body.iter().copied().max().unwrap_or(0) as usize;
    let mut lv = vec![0u32; m + 1];
    for (j, &p) in occ.iter().enumerate() {
        lv[body[j] as usize] = w[p];
    }
    lv
}

fn bivincular_ok(w: &[u32], body: &[u32], s: &BTreeSet<usize>, t: &BTreeSet<usize>, occ: &[usize]) -> bool {
    let k = body.len();
    // 1-based positions with sentinels 0 and n+1
    let pos = |i: usize| -> usize {
        if i == 0 {
            0
        } else if i == k + 1 {
            w.len() + 1
        } else {
            occ[i - 1] + 1
        }
    };
    if s.iter().any(|&i| pos(i + 1) != pos(i) + 1) {
        return false;
    }
    if t.is_empty() {
        return true;
    }
    let lv = level_values(w, body, occ);
    let m = lv.len() - 1;
    let top = w.iter().copied().max().unwrap_or(0) + 1;
    let val = |j: usize| -> u32 {
        if j == 0 {
            0
        } else if j == m + 1 {
            top
        } else {
            lv[j]
        }
    };
    t.iter().all(|&j| val(j + 1) == val(j) + 1)
}

/// Shaded cells indexed by column gap and row code.
struct Shading {
    cells: Vec<Vec<bool>>,
}

impl Shading {
    fn new(body: &[u32]) -> Self {
        let m = body.iter().copied().max().unwrap_or(0) as usize;
        Shading { cells: vec![vec![false; 2 * m + 1]; body.len() + 1] }
    }

    fn from_mesh(body: &[u32], boxes: &BTreeSet<(usize, usize)>) -> Self {
        let mut s = Self::new(body);
        for &(c, r) in boxes {
            s.cells[c][Row::Gap(r).code()] = true;
        }
        s
    }

    fn from_regions(body: &[u32], regions: &BTreeSet<(usize, Row)>) -> Self {
        let mut s = Self::new(body);
        for &(c, r) in regions {
            s.cells[c][r.code()] = true;
        }
        s
    }

    /// No letter outside the occurrence sits in a shaded cell.
    fn clear(&self, w: &[u32], body: &[u32], occ: &[usize]) -> bool {
        let lv = level_values(w, body, occ);
        let levels = &lv[1..];
        let mut col = 0;
        for (p, &x) in w.iter().enumerate() {
            if col < occ.len() && occ[col] == p {
                col += 1;
                continue;
            }
            let below = levels.partition_point(|&l| l < x);
            let code = if below < levels.len() && levels[below] == x { 2 * below + 1 } else { 2 * below };
            if self.cells[col][code] {
                return false;
            }
        }
        true
    }
}

/// Reduct occurrences of a barred pattern that fail to extend.
fn barred_failures(w: &[u32], body: &[u32], bars: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let keep: Vec<usize> = (0..body.len()).filter(|i| !bars.contains(&(i + 1))).collect();
    let reduct = standardize(&keep.iter().map(|&i| body[i]).collect::<Vec<_>>());
    let mut extended = BTreeSet::new();
    for_each_classical(w, body, &mut |occ| {
        extended.insert(keep.iter().map(|&i| occ[i]).collect::<Vec<_>>());
        true
    });
    let mut out = Vec::new();
    for_each_classical(w, &reduct, &mut |occ| {
        if !extended.contains(occ) {
            out.push(occ.to_vec());
        }
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u32> {
        s.parse::<crate::words::Word>().unwrap().into_vec()
    }

    #[test]
    fn mu_occurs_in_25341_via_253() {
        let mu = Pattern::named("mu").unwrap();
        let occ = mu.occurrences(&w("25341"));
        assert!(occ.contains(&vec![0, 1, 2]));
        assert!(mu.contains(&w("25341")));
    }

    #[test]
    fn bivincular_254_rejected() {
        let p = Pattern::Bivincular { body: vec![1, 3, 2], s: [2].into(), t: [2].into() };
        let occ = p.occurrences(&w("25341"));
        assert!(!occ.contains(&vec![0, 1, 3]));
    }

    #[test]
    fn identity_avoids_21() {
        assert!(Pattern::classical(&[2, 1]).avoids(&w("12345")));
    }

    #[test]
    fn classical_respects_equalities() {
        assert!(contains_classical(&w("1213"), &[1, 2, 1]));
        assert!(!contains_classical(&w("1234"), &[1, 1]));
        assert!(contains_classical(&w("3132"), &[1, 3, 2]));
    }

    #[test]
    fn xi_is_descent_above_first_letter() {
        let xi = Pattern::named("xi").unwrap();
        assert!(xi.contains(&w("1342")));
        assert!(!xi.contains(&w("2413")));
    }

    #[test]
    fn zeta_shades_repeated_top_value() {
        let zeta = Pattern::named("zeta").unwrap();
        assert!(zeta.contains(&w("3241")));
        assert!(!zeta.contains(&w("34241")));
        assert!(!zeta.contains(&w("35241")));
    }

    #[test]
    fn barred_35241() {
        let p = Pattern::Barred { body: vec![3, 5, 2, 4, 1], bars: [2].into() };
        assert!(p.contains(&w("3241")));
        assert!(p.avoids(&w("35241")));
    }

    #[test]
    fn rows_order_vertically() {
        let mut v = vec![Row::At(2), Row::Gap(0), Row::Gap(1), Row::At(1)];
        v.sort();
        assert_eq!(v, vec![Row::Gap(0), Row::At(1), Row::Gap(1), Row::At(2)]);
    }

    #[test]
    fn named_patterns_validate() {
        for n in ["xi", "mu", "f", "zeta", "a", "b"] {
            Pattern::named(n).unwrap().validate().unwrap();
        }
    }
}
