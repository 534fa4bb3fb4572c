//! Words over the positive integers and the domains built on them.
//!
//! A [`Word`] is the single carrier for permutations, Cayley permutations,
//! restricted growth functions and (modified) ascent sequences. Domain
//! membership is a predicate, never a separate type.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse word from {0:?}")]
    Parse(String),
    #[error("letters must be positive integers")]
    ZeroLetter,
    #[error("expected a permutation, got {0}")]
    NotPermutation(Word),
    #[error("{0} is not a member of domain {1}")]
    NotMember(Word, Domain),
    #[error("operation needs a nonempty word")]
    Empty,
    #[error("position {pos} out of range for length {len}")]
    BadPosition { pos: usize, len: usize },
    #[error("inflation count must be at least 1")]
    ZeroInflation,
    #[error("unknown domain {0:?}")]
    UnknownDomain(String),
}

/// A finite word of positive integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u32>);

impl Word {
    /// Builds a word, rejecting zero letters.
    pub fn new(letters: Vec<u32>) -> Result<Self, WordError> {
        if letters.contains(&0) {
            return Err(WordError::ZeroLetter);
        }
        Ok(Word(letters))
    }

    /// Builds a word without validation. Callers guarantee positivity.
    #[allow(dead_code)]
    pub(crate) fn from_vec(letters: Vec<u32>) -> Self {
        debug_assert!(!letters.contains(&0));
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl Deref for Word {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = WordError;
    fn try_from(v: Vec<u32>) -> Result<Self, WordError> {
        Word::new(v)
    }
}

impl TryFrom<&[u32]> for Word {
    type Error = WordError;
    fn try_from(v: &[u32]) -> Result<Self, WordError> {
        Word::new(v.to_vec())
    }
}

/// Compact digits when every letter is a single digit, spaces otherwise.
pub fn format_letters(w: &[u32]) -> String {
    if w.iter().all(|&x| x <= 9) {
        w.iter().map(|x| x.to_string()).collect()
    } else {
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts space (or comma) separated integers, or a compact digit string.
    fn from_str(s: &str) -> Result<Self, WordError> {
        let t = s.trim();
        if t.is_empty() || t == "ε" || t == "-" {
            return Ok(Word::default());
        }
        let parts: Vec<&str> = t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|p| !p.is_empty())
            .collect();
        let letters: Vec<u32> = if parts.len() == 1 {
            parts[0]
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(|| WordError::Parse(s.to_string())))
                .collect::<Result<_, _>>()?
        } else {
            parts
                .iter()
                .map(|p| p.parse::<u32>().map_err(|_| WordError::Parse(s.to_string())))
                .collect::<Result<_, _>>()?
        };
        Word::new(letters)
    }
}

/// The word families the machines run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Perm,
    Cayley,
    Rgf,
    Asc,
    Modasc,
}

impl Domain {
    pub const ALL: [Domain; 5] = [Domain::Perm, Domain::Cayley, Domain::Rgf, Domain::Asc, Domain::Modasc];

    pub fn name(self) -> &'static str {
        match self {
            Domain::Perm => "perm",
            Domain::Cayley => "cay",
            Domain::Rgf => "rgf",
            Domain::Asc => "asc",
            Domain::Modasc => "modasc",
        }
    }

    /// Default brute-force length guard.
    pub fn default_guard(self) -> usize {
        match self {
            Domain::Perm => 11,
            Domain::Cayley | Domain::Rgf => 8,
            Domain::Asc | Domain::Modasc => 10,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        match s.to_ascii_lowercase().as_str() {
            "perm" | "permutation" | "s" => Ok(Domain::Perm),
            "cay" | "cayley" => Ok(Domain::Cayley),
            "rgf" => Ok(Domain::Rgf),
            "asc" | "ascent" => Ok(Domain::Asc),
            "modasc" => Ok(Domain::Modasc),
            _ => Err(WordError::UnknownDomain(s.to_string())),
        }
    }
}

/// Replaces the i-th smallest distinct letter by i.
pub fn standardize(w: &[u32]) -> Vec<u32> {
    let mut vals: Vec<u32> = w.to_vec();
    vals.sort_unstable();
    vals.dedup();
    w.iter()
        .map(|x| vals.binary_search(x).map(|i| i as u32 + 1).unwrap_or(0))
        .collect()
}

pub fn is_permutation(w: &[u32]) -> bool {
    let n = w.len();
    let mut seen = vec![false; n + 1];
    for &x in w {
        let x = x as usize;
        if x == 0 || x > n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn is_cayley(w: &[u32]) -> bool {
    let m = w.iter().copied().max().unwrap_or(0) as usize;
    if m > w.len() {
        return false;
    }
    let mut seen = vec![false; m + 1];
    for &x in w {
        if x == 0 {
            return false;
        }
        seen[x as usize] = true;
    }
    seen[1..].iter().all(|&b| b)
}

pub fn is_rgf(w: &[u32]) -> bool {
    let mut max = 0;
    for &x in w {
        if x == 0 || x > max + 1 {
            return false;
        }
        max = max.max(x);
    }
    true
}

/// Number of ascents `w_i < w_{i+1}`.
pub fn asc(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] < p[1]).count()
}

pub fn is_ascent_sequence(w: &[u32]) -> bool {
    if w.is_empty() {
        return true;
    }
    if w[0] != 1 {
        return false;
    }
    let mut ascents = 0u32;
    for i in 1..w.len() {
        if w[i] == 0 || w[i] > 2 + ascents {
            return false;
        }
        if w[i - 1] < w[i] {
            ascents += 1;
        }
    }
    true
}

/// Modified ascent sequences: `x_1 = 1`, Cayley, and an entry greater than
/// one is the leftmost copy of its value exactly when it is an ascent top.
pub fn is_modified_ascent(w: &[u32]) -> bool {
    if w.is_empty() {
        return true;
    }
    if w[0] != 1 || !is_cayley(w) {
        return false;
    }
    let mut seen = vec![false; w.len() + 2];
    seen[1] = true;
    for i in 1..w.len() {
        let x = w[i] as usize;
        let leftmost = !seen[x];
        let ascent_top = w[i - 1] < w[i];
        if x > 1 && leftmost != ascent_top {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn is_member(w: &[u32], d: Domain) -> bool {
    match d {
        Domain::Perm => is_permutation(w),
        Domain::Cayley => is_cayley(w),
        Domain::Rgf => is_rgf(w),
        Domain::Asc => is_ascent_sequence(w),
        Domain::Modasc => is_modified_ascent(w),
    }
}

fn ascent_positions(w: &[u32]) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&i| w[i] < w[i + 1]).collect()
}

/// The map from ascent sequences to modified ascent sequences.
///
/// For each ascent, left to right, every earlier entry at least as large as
/// the ascent top is incremented.
pub fn modify(x: &[u32]) -> Result<Vec<u32>, WordError> {
    if !is_ascent_sequence(x) {
        return Err(WordError::NotMember(Word(x.to_vec()), Domain::Asc));
    }
    let mut y = x.to_vec();
    for i in ascent_positions(x) {
        let top = y[i + 1];
        for v in &mut y[..=i] {
            if *v >= top {
                *v += 1;
            }
        }
    }
    Ok(y)
}

/// Inverse of [`modify`]: undo the ascents right to left.
pub fn unmodify(y: &[u32]) -> Result<Vec<u32>, WordError> {
    if !is_modified_ascent(y) {
        return Err(WordError::NotMember(Word(y.to_vec()), Domain::Modasc));
    }
    let mut x = y.to_vec();
    // modify preserves the ascent set, so it can be read off y
    for i in ascent_positions(y).into_iter().rev() {
        let top = x[i + 1];
        for v in &mut x[..=i] {
            if *v > top {
                *v -= 1;
            }
        }
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

/// Left-to-right minima (or maxima) decomposition `p_1 B_1 p_2 B_2 ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtrDecomposition {
    pub pivots: Vec<u32>,
    /// Index of each pivot in the original word.
    pub positions: Vec<usize>,
    pub blocks: Vec<Vec<u32>>,
}

impl LtrDecomposition {
    pub fn reassemble(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (p, b) in self.pivots.iter().zip(&self.blocks) {
            out.push(*p);
            out.extend_from_slice(b);
        }
        out
    }
}

/// Strict records: an entry is a left-to-right minimum if it is smaller than
/// everything before it.
pub fn ltr_decompose(w: &[u32], which: Extremum) -> Result<LtrDecomposition, WordError> {
    if w.is_empty() {
        return Err(WordError::Empty);
    }
    let mut d = LtrDecomposition { pivots: vec![], positions: vec![], blocks: vec![] };
    for (i, &x) in w.iter().enumerate() {
        let record = match (d.pivots.last(), which) {
            (None, _) => true,
            (Some(&p), Extremum::Min) => x < p,
            (Some(&p), Extremum::Max) => x > p,
        };
        if record {
            d.pivots.push(x);
            d.positions.push(i);
            d.blocks.push(Vec::new());
        } else {
            d.blocks.last_mut().expect("pivot exists").push(x);
        }
    }
    Ok(d)
}

/// Values of the left-to-right maxima (strict records).
pub fn ltr_maxima(w: &[u32]) -> Vec<u32> {
    ltr_decompose(w, Extremum::Max).map(|d| d.pivots).unwrap_or_default()
}

pub fn ltr_minima(w: &[u32]) -> Vec<u32> {
    ltr_decompose(w, Extremum::Min).map(|d| d.pivots).unwrap_or_default()
}

fn require_perm(w: &[u32]) -> Result<(), WordError> {
    if is_permutation(w) {
        Ok(())
    } else {
        Err(WordError::NotPermutation(Word(w.to_vec())))
    }
}

/// k-inflation at 1-based position `pos`: the entry becomes an increasing run
/// of `k` consecutive values.
pub fn inflate(w: &[u32], pos: usize, k: usize) -> Result<Vec<u32>, WordError> {
    require_perm(w)?;
    if k == 0 {
        return Err(WordError::ZeroInflation);
    }
    if pos == 0 || pos > w.len() {
        return Err(WordError::BadPosition { pos, len: w.len() });
    }
    let v = w[pos - 1];
    let shift = k as u32 - 1;
    let mut out = Vec::with_capacity(w.len() + k - 1);
    for (i, &x) in w.iter().enumerate() {
        if i == pos - 1 {
            out.extend(v..v + k as u32);
        } else if x > v {
            out.push(x + shift);
        } else {
            out.push(x);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    Direct,
    Skew,
}

/// `x ⊕ y` places y above and to the right of x; `x ⊖ y` places x above.
pub fn combine(x: &[u32], y: &[u32], kind: SumKind) -> Result<Vec<u32>, WordError> {
    require_perm(x)?;
    require_perm(y)?;
    let (nx, ny) = (x.len() as u32, y.len() as u32);
    Ok(match kind {
        SumKind::Direct => x.iter().copied().chain(y.iter().map(|v| v + nx)).collect(),
        SumKind::Skew => x.iter().map(|v| v + ny).chain(y.iter().copied()).collect(),
    })
}

pub fn direct_sum(x: &[u32], y: &[u32]) -> Result<Vec<u32>, WordError> {
    combine(x, y, SumKind::Direct)
}

pub fn skew_sum(x: &[u32], y: &[u32]) -> Result<Vec<u32>, WordError> {
    combine(x, y, SumKind::Skew)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Inverse,
    Reverse,
    Complement,
}

pub fn reverse(w: &[u32]) -> Vec<u32> {
    w.iter().rev().copied().collect()
}

/// `v -> max + 1 - v`, which keeps Cayley permutations Cayley.
pub fn complement(w: &[u32]) -> Vec<u32> {
    let m = w.iter().copied().max().unwrap_or(0);
    w.iter().map(|v| m + 1 - v).collect()
}

pub fn inverse(w: &[u32]) -> Result<Vec<u32>, WordError> {
    require_perm(w)?;
    let mut inv = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        inv[v as usize - 1] = i as u32 + 1;
    }
    Ok(inv)
}

pub fn trivial_bijection(w: &[u32], which: Symmetry) -> Result<Vec<u32>, WordError> {
    match which {
        Symmetry::Inverse => inverse(w),
        Symmetry::Reverse => Ok(reverse(w)),
        Symmetry::Complement => Ok(complement(w)),
    }
}

/// Identity permutation `12...n`.
pub fn identity(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

/// Decreasing permutation `n...21`.
pub fn decreasing(n: usize) -> Vec<u32> {
    (1..=n as u32).rev().collect()
}

pub fn is_weakly_increasing(w: &[u32]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}
