//! Explicit bijections between sortable sets, restricted growth functions
//! and lattice paths.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::oracles::{insert_max_raw, sortable_123};
use crate::paths::{format_steps, Step};
use crate::patterns::contains_classical;
use crate::words::{format_letters, is_permutation, is_rgf, ltr_minima, standardize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("{map}: input {input} is outside the domain: {reason}")]
    Domain { map: &'static str, input: String, reason: &'static str },
    #[error("{map}: the path {path} is not of the required shape")]
    Path { map: &'static str, path: String },
    #[error("labeled path: {0}")]
    Label(&'static str),
}

fn domain_err(map: &'static str, w: &[u32], reason: &'static str) -> BijectionError {
    BijectionError::Domain { map, input: format_letters(w), reason }
}

// Dyck paths and 213-avoiders

/// Labels the down steps 1..n from right to left, gives each up step the
/// label of its matching down step, and reads the up labels.
pub fn dyck_to_av213(steps: &[Step]) -> Result<Vec<u32>, BijectionError> {
    let bad = || BijectionError::Path { map: "dyck_to_av213", path: format_steps(steps) };
    let n = steps.len() / 2;
    let mut next = n as u32;
    let mut labels = vec![0u32; steps.len()];
    // labels of D steps decrease from left to right
    for (i, s) in steps.iter().enumerate() {
        if *s == Step::D {
            labels[i] = next;
            next = next.checked_sub(1).ok_or_else(bad)?;
        }
    }
    let mut open = Vec::new();
    let mut out = vec![0u32; n];
    let mut up_index = 0;
    for (i, s) in steps.iter().enumerate() {
        match s {
            Step::U => {
                open.push(up_index);
                up_index += 1;
            }
            Step::D => out[open.pop().ok_or_else(bad)?] = labels[i],
            _ => return Err(bad()),
        }
    }
    if !open.is_empty() || up_index != n || steps.len() != 2 * n {
        return Err(bad());
    }
    Ok(out)
}

/// Inverse of [`dyck_to_av213`]: down steps fire as soon as the open label
/// on top is the next one due.
pub fn av213_to_dyck(pi: &[u32]) -> Result<Vec<Step>, BijectionError> {
    if !is_permutation(pi) || contains_classical(pi, &[2, 1, 3]) {
        return Err(domain_err("av213_to_dyck", pi, "not a 213-avoiding permutation"));
    }
    let mut due = pi.len() as u32;
    let mut open: Vec<u32> = Vec::new();
    let mut out = Vec::with_capacity(2 * pi.len());
    let flush = |open: &mut Vec<u32>, out: &mut Vec<Step>, due: &mut u32| {
        while open.last() == Some(due) {
            open.pop();
            out.push(Step::D);
            *due -= 1;
        }
    };
    for &x in pi {
        flush(&mut open, &mut out, &mut due);
        open.push(x);
        out.push(Step::U);
    }
    flush(&mut open, &mut out, &mut due);
    Ok(out)
}

// 123-sortable permutations and Schröder paths

/// Maps a 123-sortable permutation of length `n` to a Schröder path of
/// semilength `n - 1`: `r` flat steps for the leading run of consecutive
/// ascents (without its last entry), the Dyck path of the 213-avoider left
/// after stripping maxima, and `s` flat steps for the stripped maxima.
pub fn sort123_to_schroder(pi: &[u32]) -> Result<Vec<Step>, BijectionError> {
    if pi.is_empty() || !is_permutation(pi) || !sortable_123(pi) {
        return Err(domain_err("sort123_to_schroder", pi, "not a 123-sortable permutation"));
    }
    let n = pi.len();
    let mut r = 0;
    while r + 1 < n && pi[r + 1] == pi[r] + 1 {
        r += 1;
    }
    let mut beta = standardize(&pi[r..]);
    let mut s = 0;
    while beta[0] != beta.len() as u32 {
        let m = beta.len() as u32;
        beta.retain(|&x| x != m);
        s += 1;
    }
    let rho = &beta[1..];
    let mut out = vec![Step::H2; r];
    out.extend(av213_to_dyck(rho)?);
    out.extend(std::iter::repeat_n(Step::H2, s));
    Ok(out)
}

/// Inverse of [`sort123_to_schroder`] on paths `H2^r · Dyck · H2^s`.
pub fn schroder_to_sort123(path: &[Step]) -> Result<Vec<u32>, BijectionError> {
    let bad = || BijectionError::Path { map: "schroder_to_sort123", path: format_steps(path) };
    let lead = path.iter().take_while(|&&s| s == Step::H2).count();
    let (r, s, middle) = if lead == path.len() {
        (lead, 0, &path[lead..])
    } else {
        let trail = path.iter().rev().take_while(|&&s| s == Step::H2).count();
        (lead, trail, &path[lead..path.len() - trail])
    };
    if middle.contains(&Step::H2) {
        return Err(bad());
    }
    let rho = dyck_to_av213(middle).map_err(|_| bad())?;
    let mut beta = vec![rho.len() as u32 + 1];
    beta.extend(rho);
    for _ in 0..s {
        beta = insert_max_raw(&beta);
    }
    let a = beta[0];
    let r32 = r as u32;
    let mut out: Vec<u32> = (a..a + r32).collect();
    out.extend(beta.iter().map(|&v| if v < a { v } else { v + r32 }));
    Ok(out)
}

// 132-sortable permutations and RGF(12231)

/// Records for every entry the index of the horizontal strip containing it,
/// the strips being cut by the left-to-right minima.
pub fn eta(pi: &[u32]) -> Vec<u32> {
    let mins = ltr_minima(pi);
    pi.iter()
        .map(|&x| mins.iter().position(|&m| m <= x).expect("first entry is a minimum") as u32 + 1)
        .collect()
}

/// Rebuilds the 132-sortable permutation with a given strip sequence by
/// inserting each entry on the right: a fresh strip gets a new minimum,
/// otherwise the entry goes into its strip's cell in the last block, either
/// as a new strip minimum or right after the cell's last entry.
pub fn eta_inverse(r: &[u32]) -> Result<Vec<u32>, BijectionError> {
    if !is_rgf(r) || contains_classical(r, &[1, 2, 2, 3, 1]) {
        return Err(domain_err("eta_inverse", r, "not a restricted growth function avoiding 12231"));
    }
    let mut pi: Vec<u32> = Vec::with_capacity(r.len());
    let mut min_pos: Vec<usize> = Vec::new();
    for &strip in r {
        let t = min_pos.len();
        let v = if strip as usize == t + 1 {
            min_pos.push(pi.len());
            1
        } else {
            let i = strip as usize - 1;
            let mins: Vec<u32> = min_pos.iter().map(|&p| pi[p]).collect();
            let upper = if i == 0 { u32::MAX } else { mins[i - 1] };
            let in_strip = |x: u32| mins[i] < x && x < upper;
            let last_block = &pi[min_pos[t - 1] + 1..];
            let cell: Vec<u32> = last_block.iter().copied().filter(|&x| in_strip(x)).collect();
            match (cell.last(), last_block.last()) {
                (Some(&gamma), Some(&x)) => {
                    let x_strip = mins.iter().position(|&m| m <= x).expect("strip exists");
                    if x_strip > i {
                        mins[i] + 1
                    } else {
                        gamma + 1
                    }
                }
                _ => mins[i] + 1,
            }
        };
        for y in pi.iter_mut() {
            if *y >= v {
                *y += 1;
            }
        }
        pi.push(v);
    }
    Ok(pi)
}

// RGF(1221) and Dyck paths

/// Generating-tree bijection from RGF(1221) to Dyck paths. Appending the
/// site `j` to `R` inserts a peak into the last descent of the current
/// path: before its first down step when `j = M + 1`, otherwise after its
/// `(j - t + 1)`-th down step.
pub fn rgf1221_to_dyck(r: &[u32]) -> Result<Vec<Step>, BijectionError> {
    if r.is_empty() || !is_rgf(r) {
        return Err(domain_err("rgf1221_to_dyck", r, "not a nonempty restricted growth function"));
    }
    let mut path = vec![Step::U, Step::D];
    let mut max = 1;
    let mut seen = vec![false; r.len() + 2];
    seen[1] = true;
    let mut t = 1;
    for &j in &r[1..] {
        if j < t || j > max + 1 {
            return Err(domain_err("rgf1221_to_dyck", r, "contains 1221"));
        }
        let run = path.iter().rev().take_while(|&&s| s == Step::D).count();
        let start = path.len() - run;
        let at = if j == max + 1 { start } else { start + (j - t + 1) as usize };
        path.splice(at..at, [Step::U, Step::D]);
        if seen[j as usize] {
            t = t.max(j);
        }
        seen[j as usize] = true;
        max = max.max(j);
    }
    Ok(path)
}

/// Number of `UU` factors.
pub fn double_rises(steps: &[Step]) -> usize {
    steps.windows(2).filter(|w| w == &[Step::U, Step::U]).count()
}

// Labeled Motzkin paths and RGF(12323) / RGF(12332)

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MotzkinLabel {
    U,
    D,
    /// Horizontal step starting a new singleton block.
    L0,
    /// Horizontal step joining the block of 1.
    L1,
    /// Horizontal step joining an open block; not allowed on the axis.
    L2,
}

impl fmt::Display for MotzkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MotzkinLabel::U => "U",
            MotzkinLabel::D => "D",
            MotzkinLabel::L0 => "l0",
            MotzkinLabel::L1 => "l1",
            MotzkinLabel::L2 => "l2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMotzkinPath(Vec<MotzkinLabel>);

impl LabeledMotzkinPath {
    pub fn new(steps: Vec<MotzkinLabel>) -> Result<Self, BijectionError> {
        let mut h = 0i64;
        for &s in &steps {
            match s {
                MotzkinLabel::U => h += 1,
                MotzkinLabel::D => {
                    h -= 1;
                    if h < 0 {
                        return Err(BijectionError::Label("down step below the axis"));
                    }
                }
                MotzkinLabel::L2 if h == 0 => return Err(BijectionError::Label("l2 step on the axis")),
                _ => {}
            }
        }
        if h != 0 {
            return Err(BijectionError::Label("path does not return to the axis"));
        }
        Ok(LabeledMotzkinPath(steps))
    }

    pub fn steps(&self) -> &[MotzkinLabel] {
        &self.0
    }

    /// Every labeled path of length `n`.
    pub fn all(n: usize) -> Vec<LabeledMotzkinPath> {
        fn go(left: usize, h: usize, cur: &mut Vec<MotzkinLabel>, out: &mut Vec<LabeledMotzkinPath>) {
            if left == 0 {
                if h == 0 {
                    out.push(LabeledMotzkinPath(cur.clone()));
                }
                return;
            }
            let mut options = vec![MotzkinLabel::L0, MotzkinLabel::L1];
            if h > 0 {
                options.extend([MotzkinLabel::L2, MotzkinLabel::D]);
            }
            if h < left {
                options.push(MotzkinLabel::U);
            }
            for s in options {
                if s == MotzkinLabel::D && h == 0 {
                    continue;
                }
                let nh = match s {
                    MotzkinLabel::U => h + 1,
                    MotzkinLabel::D => h - 1,
                    _ => h,
                };
                if nh > left - 1 {
                    continue;
                }
                cur.push(s);
                go(left - 1, nh, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, 0, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl fmt::Display for LabeledMotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(MotzkinLabel::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for LabeledMotzkinPath {
    type Err = BijectionError;

    /// Space-separated `U`, `D`, `l0`, `l1`, `l2` tokens.
    fn from_str(s: &str) -> Result<Self, BijectionError> {
        let steps = s
            .split_whitespace()
            .map(|tok| match tok {
                "U" => Ok(MotzkinLabel::U),
                "D" => Ok(MotzkinLabel::D),
                "l0" | "L0" => Ok(MotzkinLabel::L0),
                "l1" | "L1" => Ok(MotzkinLabel::L1),
                "l2" | "L2" => Ok(MotzkinLabel::L2),
                _ => Err(BijectionError::Label("unknown step token")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        LabeledMotzkinPath::new(steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StoreMode {
    Stack,
    Queue,
}

/// Reads the path left to right starting from `R = 1`; open blocks are kept
/// in a stack (image avoids 12323) or a queue (image avoids 12332).
pub fn beta_motzkin(path: &LabeledMotzkinPath, mode: StoreMode) -> Result<Vec<u32>, BijectionError> {
    let mut r = vec![1u32];
    let mut max = 1;
    let mut store: VecDeque<u32> = VecDeque::new();
    let empty = BijectionError::Label("no open block to close");
    for &s in path.steps() {
        let next = match s {
            MotzkinLabel::U => {
                max += 1;
                store.push_back(max);
                max
            }
            MotzkinLabel::L0 => {
                max += 1;
                max
            }
            MotzkinLabel::L1 => 1,
            MotzkinLabel::D => match mode {
                StoreMode::Stack => store.pop_back().ok_or(empty.clone())?,
                StoreMode::Queue => store.pop_front().ok_or(empty.clone())?,
            },
            MotzkinLabel::L2 => *match mode {
                StoreMode::Stack => store.back(),
                StoreMode::Queue => store.front(),
            }
            .ok_or(empty.clone())?,
        };
        r.push(next);
    }
    Ok(r)
}

// RGFs without repeated ltr-maxima and 321-avoiders

/// Removes every repeated left-to-right maximum (an entry equal to the
/// maximum of the entries before it).
pub fn alpha_strip(r: &[u32]) -> Vec<u32> {
    let mut max = 0;
    let mut out = Vec::with_capacity(r.len());
    for (i, &x) in r.iter().enumerate() {
        if i > 0 && x == max {
            continue;
        }
        max = max.max(x);
        out.push(x);
    }
    out
}

fn is_strict_record(r: &[u32], i: usize) -> bool {
    r[..i].iter().all(|&y| y < r[i])
}

/// Keeps the positions of the left-to-right maxima, spreads the remaining
/// entries into an increasing sequence and fills the record positions with
/// the unused values in increasing order.
///
/// Defined on restricted growth functions whose non-record entries are
/// weakly increasing; those are in bijection with the 321-avoiders of the
/// same length, with the number of records preserved.
pub fn rgfnr12321_to_av321(r: &[u32]) -> Result<Vec<u32>, BijectionError> {
    let reject = |why| domain_err("rgfnr12321_to_av321", r, why);
    if !is_rgf(r) {
        return Err(reject("not a restricted growth function"));
    }
    let n = r.len();
    let rest: Vec<usize> = (0..n).filter(|&i| !is_strict_record(r, i)).collect();
    if rest.windows(2).any(|p| r[p[0]] > r[p[1]]) {
        return Err(reject("contains 12321"));
    }
    let mut pi = vec![0u32; n];
    let mut used = vec![false; n + 1];
    let mut prev: Option<(u32, u32)> = None;
    for &i in &rest {
        let s = match prev {
            None => r[i],
            Some((s0, r0)) => s0 + (r[i] - r0) + 1,
        };
        if s as usize > n {
            return Err(reject("spread values exceed the length"));
        }
        pi[i] = s;
        used[s as usize] = true;
        prev = Some((s, r[i]));
    }
    let mut free = (1..=n as u32).filter(|&v| !used[v as usize]);
    for i in 0..n {
        if is_strict_record(r, i) {
            pi[i] = free.next().expect("counts match");
        }
    }
    if contains_classical(&pi, &[3, 2, 1]) || (0..n).any(|i| is_strict_record(r, i) != is_strict_record(&pi, i)) {
        return Err(reject("records do not survive the construction"));
    }
    Ok(pi)
}

/// Inverse of [`rgfnr12321_to_av321`] on 321-avoiders.
pub fn av321_to_rgfnr12321(pi: &[u32]) -> Result<Vec<u32>, BijectionError> {
    if !is_permutation(pi) || contains_classical(pi, &[3, 2, 1]) {
        return Err(domain_err("av321_to_rgfnr12321", pi, "not a 321-avoiding permutation"));
    }
    let mut r = vec![0u32; pi.len()];
    let mut records = 0;
    let mut prev: Option<(u32, u32)> = None;
    for i in 0..pi.len() {
        if is_strict_record(pi, i) {
            records += 1;
            r[i] = records;
        } else {
            let v = match prev {
                None => pi[i],
                Some((s0, r0)) => (r0 + pi[i]).saturating_sub(s0 + 1),
            };
            r[i] = v;
            prev = Some((pi[i], v));
        }
    }
    if !is_rgf(&r) || rgfnr12321_to_av321(&r).as_deref() != Ok(pi) {
        return Err(domain_err("av321_to_rgfnr12321", pi, "no preimage"));
    }
    Ok(r)
}

// RGF(12231) and RGF(12321)

/// Lexicographically greatest index triple of a 321 occurrence.
fn rmost_321(r: &[u32]) -> Option<(usize, usize, usize)> {
    let n = r.len();
    for i in (0..n).rev() {
        for j in (i + 1..n).rev() {
            if r[j] >= r[i] {
                continue;
            }
            if let Some(k) = (j + 1..n).rev().find(|&k| r[k] < r[j]) {
                return Some((i, j, k));
            }
        }
    }
    None
}

/// Lexicographically least triple `i < j < k` with `r_k < r_i < r_j` where
/// `r_i` is not the first occurrence of its value.
fn lmost_tilde_231(r: &[u32]) -> Option<(usize, usize, usize)> {
    let n = r.len();
    for i in 0..n {
        if !r[..i].contains(&r[i]) {
            continue;
        }
        for j in i + 1..n {
            if r[j] <= r[i] {
                continue;
            }
            if let Some(k) = (j + 1..n).find(|&k| r[k] < r[i]) {
                return Some((i, j, k));
            }
        }
    }
    None
}

/// Swaps the first two entries of the rightmost 321 until none is left.
pub fn delta(r: &[u32]) -> Result<Vec<u32>, BijectionError> {
    if !is_rgf(r) || contains_classical(r, &[1, 2, 2, 3, 1]) {
        return Err(domain_err("delta", r, "not a restricted growth function avoiding 12231"));
    }
    let mut cur = r.to_vec();
    while let Some((i, j, _)) = rmost_321(&cur) {
        cur.swap(i, j);
    }
    Ok(cur)
}

/// Swaps the first two entries of the leftmost marked 231 until none is
/// left.
pub fn delta_inverse(r: &[u32]) -> Result<Vec<u32>, BijectionError> {
    if !is_rgf(r) || contains_classical(r, &[3, 2, 1]) {
        return Err(domain_err("delta_inverse", r, "not a restricted growth function avoiding 12321"));
    }
    let mut cur = r.to_vec();
    while let Some((i, j, _)) = lmost_tilde_231(&cur) {
        cur.swap(i, j);
    }
    Ok(cur)
}

// Descent-starting 123-sortable permutations

/// Inserts a new maximum right after the old one, or after the second
/// largest entry when the permutation starts with its maximum.
pub fn phi_add_max(pi: &[u32]) -> Result<Vec<u32>, BijectionError> {
    if pi.len() < 2 || !is_permutation(pi) || pi[0] < pi[1] || !sortable_123(pi) {
        return Err(domain_err("phi_add_max", pi, "not a descent-starting 123-sortable permutation"));
    }
    Ok(insert_max_raw(pi))
}
