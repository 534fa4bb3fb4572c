//! Closed-form sortability tests, the class/non-class classifier and the
//! dynamical predicates of a single pattern stack.
//!
//! [`Oracle::for_spec`] picks a rule for a machine. Exact matches (short
//! patterns and the solved pairs) win over the generic hat rule; anything
//! else is reported as [`OracleError::Fallback`] so callers never use a
//! closed form outside its range.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::domain::{domain_words, walk_domain};
use crate::machine::{is_sortable, MachineSpec};
use crate::patterns::{avoids_all, contains_classical, Pattern};
use crate::words::{format_letters, is_member, ltr_decompose, reverse, standardize, Domain, Extremum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("pattern {0} is too short; length at least two is required")]
    TooShort(String),
    #[error("no closed form is known for {sigma} on {domain}; use brute force")]
    Fallback { sigma: String, domain: Domain },
    #[error("{sigma} is not a pattern of the {domain} domain")]
    Unsupported { sigma: String, domain: Domain },
}

/// σ with its first two letters swapped.
pub fn hat(sigma: &[u32]) -> Result<Vec<u32>, OracleError> {
    if sigma.len() < 2 {
        return Err(OracleError::TooShort(format_letters(sigma)));
    }
    let mut h = sigma.to_vec();
    h.swap(0, 1);
    Ok(h)
}

fn hat_contains_231(sigma: &[u32]) -> bool {
    sigma.len() >= 3 && contains_classical(&hat(sigma).expect("length checked"), &[2, 3, 1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleId {
    Perm12,
    Perm21,
    Perm123,
    Perm132,
    PermHat231,
    Pair132And231,
    Pair132And321,
    Pair123And321,
    Pair123And132,
    Pair123And312,
    Cayley12,
    Cayley21,
    CayleyHat231,
    Asc11,
    Asc12Or121,
    AscContains123,
    Modasc11,
    Modasc12Or121,
    ModascContains123,
    ModascPrefix122,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone)]
enum Test {
    Avoid(Vec<Pattern>),
    Sort123,
    Sort123And321,
    Sort123And132,
    Sort123And312,
}

/// A compiled closed-form test for one machine.
#[derive(Debug, Clone)]
pub struct Oracle {
    rule: RuleId,
    test: Test,
}

fn cl(s: &str) -> Pattern {
    Pattern::Classical(s.bytes().map(|b| u32::from(b - b'0')).collect())
}

impl Oracle {
    pub fn for_spec(spec: &MachineSpec) -> Result<Oracle, OracleError> {
        let sig = spec.sigma();
        let fallback = || OracleError::Fallback {
            sigma: sig.iter().map(|s| format_letters(s)).collect::<Vec<_>>().join(","),
            domain: spec.domain(),
        };
        let single = if sig.len() == 1 { Some(sig[0].as_slice()) } else { None };
        let is = |s: &[u32], t: &str| format_letters(s) == t;
        let (rule, test) = match spec.domain() {
            Domain::Perm => match single {
                Some(s) if is(s, "12") => (RuleId::Perm12, Test::Avoid(vec![cl("213")])),
                Some(s) if is(s, "21") => {
                    let barred = Pattern::Barred { body: vec![3, 5, 2, 4, 1], bars: [2].into() };
                    (RuleId::Perm21, Test::Avoid(vec![cl("2341"), barred]))
                }
                Some(s) if is(s, "123") => (RuleId::Perm123, Test::Sort123),
                Some(s) if is(s, "132") => {
                    (RuleId::Perm132, Test::Avoid(vec![cl("2314"), Pattern::named("mu").expect("named")]))
                }
                Some(s) if hat_contains_231(s) => {
                    (RuleId::PermHat231, Test::Avoid(vec![cl("132"), Pattern::Classical(reverse(s))]))
                }
                Some(_) => return Err(fallback()),
                None => {
                    let key: Vec<String> = sig.iter().map(|s| format_letters(s)).collect();
                    match key.join(",").as_str() {
                        "132,231" => (RuleId::Pair132And231, Test::Avoid(vec![cl("1324"), cl("2314")])),
                        "132,321" => {
                            (RuleId::Pair132And321, Test::Avoid(vec![Pattern::named("mu").expect("named"), cl("123")]))
                        }
                        "123,321" => (RuleId::Pair123And321, Test::Sort123And321),
                        "123,132" => (RuleId::Pair123And132, Test::Sort123And132),
                        "123,312" => (RuleId::Pair123And312, Test::Sort123And312),
                        _ => return Err(fallback()),
                    }
                }
            },
            Domain::Cayley => match single {
                Some(s) if is(s, "12") => (RuleId::Cayley12, Test::Avoid(vec![cl("213")])),
                Some(s) if is(s, "21") => {
                    (RuleId::Cayley21, Test::Avoid(vec![cl("2341"), Pattern::named("zeta").expect("named")]))
                }
                Some(s) if hat_contains_231(s) => {
                    (RuleId::CayleyHat231, Test::Avoid(vec![cl("132"), Pattern::Classical(reverse(s))]))
                }
                _ => return Err(fallback()),
            },
            Domain::Asc => match single {
                Some(s) if is(s, "11") => (RuleId::Asc11, Test::Avoid(vec![cl("1213"), cl("1223")])),
                Some(s) if is(s, "12") || is(s, "121") => (RuleId::Asc12Or121, Test::Avoid(vec![cl("213")])),
                Some(s) if contains_classical(s, &[1, 2, 3]) => {
                    (RuleId::AscContains123, Test::Avoid(vec![cl("132")]))
                }
                _ => return Err(fallback()),
            },
            Domain::Modasc => match single {
                Some(s) if is(s, "11") => (RuleId::Modasc11, Test::Avoid(vec![cl("1213"), cl("1223")])),
                Some(s) if is(s, "12") || is(s, "121") => (RuleId::Modasc12Or121, Test::Avoid(vec![cl("213")])),
                Some(s) if contains_classical(s, &[1, 2, 3]) => {
                    (RuleId::ModascContains123, Test::Avoid(vec![cl("132")]))
                }
                Some(s) if s.len() >= 3 && standardize(&s[..3]) == [1, 2, 2] => {
                    let mut r = reverse(s);
                    r.push(s.iter().copied().max().unwrap_or(0) + 1);
                    (RuleId::ModascPrefix122, Test::Avoid(vec![cl("132"), Pattern::Classical(r)]))
                }
                _ => return Err(fallback()),
            },
            Domain::Rgf => return Err(fallback()),
        };
        Ok(Oracle { rule, test })
    }

    pub fn rule(&self) -> RuleId {
        self.rule
    }

    /// Closed-form decision; the caller is responsible for domain membership.
    pub fn is_sortable(&self, w: &[u32]) -> bool {
        match &self.test {
            Test::Avoid(basis) => avoids_all(w, basis),
            Test::Sort123 => sortable_123(w),
            Test::Sort123And321 => sortable_123(w) && !contains_classical(w, &[1, 2, 3]),
            Test::Sort123And132 => sortable_123_132(w),
            Test::Sort123And312 => sortable_123_312(w),
        }
    }
}

/// Convenience wrapper building the oracle on each call.
pub fn oracle_is_sortable(w: &[u32], spec: &MachineSpec) -> Result<bool, OracleError> {
    Oracle::for_spec(spec).map(|o| o.is_sortable(w))
}

/// Inserts a new maximum into a descent-starting word: right after the old
/// maximum, or after the second largest value when the word starts with its
/// maximum. No precondition is checked.
pub(crate) fn insert_max_raw(pi: &[u32]) -> Vec<u32> {
    let m = pi.iter().copied().max().unwrap_or(0);
    let anchor = if pi.first() == Some(&m) { m.saturating_sub(1) } else { m };
    let mut out = Vec::with_capacity(pi.len() + 1);
    for &x in pi {
        out.push(x);
        if x == anchor {
            out.push(m + 1);
        }
    }
    if anchor == 0 {
        out.push(m + 1);
    }
    out
}

/// Sortability for the 123-stack via its structural description: deflate the
/// leading run of consecutive ascents, strip maxima while each one sits where
/// the insertion rule would put it, and finish with 213-avoidance.
pub fn sortable_123(pi: &[u32]) -> bool {
    let n = pi.len();
    if n <= 1 {
        return true;
    }
    let mut r = 0;
    while r + 1 < n && pi[r + 1] == pi[r] + 1 {
        r += 1;
    }
    if r + 1 == n {
        return true;
    }
    let mut cur = standardize(&pi[r..]);
    if cur[1] > cur[0] {
        return false;
    }
    loop {
        let m = cur.len() as u32;
        if cur[0] == m {
            return !contains_classical(&cur, &[2, 1, 3]);
        }
        let without: Vec<u32> = cur.iter().copied().filter(|&x| x != m).collect();
        if insert_max_raw(&without) != cur {
            return false;
        }
        cur = without;
    }
}

/// The four-condition test on the ltr-min decomposition, plus the bound
/// `B_i < m_{i-1}` for `i >= 3`, which the block decomposition requires.
fn sortable_123_132(pi: &[u32]) -> bool {
    if pi.is_empty() {
        return true;
    }
    let d = ltr_decompose(pi, Extremum::Min).expect("nonempty");
    let t = d.pivots.len();
    let b = &d.blocks;
    for i in 0..t.saturating_sub(1) {
        let lo = b[i].iter().min();
        let hi = b[i + 1].iter().max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if lo < hi {
                return false;
            }
        }
    }
    if !b[0].windows(2).all(|p| p[0] < p[1]) {
        return false;
    }
    for i in 2..t {
        if b[i].iter().any(|&x| x > d.pivots[i - 1]) {
            return false;
        }
    }
    if t >= 2 {
        let mut head = vec![d.pivots[0], d.pivots[1]];
        head.extend(&b[1]);
        let head = standardize(&head);
        let xi = Pattern::named("xi").expect("named");
        if xi.contains(&head) || contains_classical(&head[1..], &[2, 1, 3]) {
            return false;
        }
    }
    if t >= 3 {
        let mut tail = Vec::new();
        for i in 2..t {
            tail.push(d.pivots[i]);
            tail.extend(&b[i]);
        }
        if contains_classical(&tail, &[2, 1, 3]) {
            return false;
        }
    }
    true
}

/// The ltr-max description: maxima are the top values, every block avoids
/// 213, and no 231 spreads across blocks once each block is read decreasing.
fn sortable_123_312(pi: &[u32]) -> bool {
    if pi.is_empty() {
        return true;
    }
    let n = pi.len() as u32;
    let d = ltr_decompose(pi, Extremum::Max).expect("nonempty");
    let t = d.pivots.len() as u32;
    if d.pivots.iter().enumerate().any(|(j, &m)| m != n - t + 1 + j as u32) {
        return false;
    }
    if d.blocks.iter().any(|b| contains_classical(b, &[2, 1, 3])) {
        return false;
    }
    let mut flat = Vec::with_capacity(pi.len());
    for b in &d.blocks {
        let mut s = b.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        flat.extend(s);
    }
    !contains_classical(&flat, &[2, 3, 1])
}

/// A sortable word containing a non-sortable pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub word: Vec<u32>,
    pub pattern: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub is_class: bool,
    pub basis: Option<Vec<Pattern>>,
    pub witness: Option<Witness>,
}

fn parse_letters(s: &str) -> Vec<u32> {
    s.bytes().map(|b| u32::from(b - b'0')).collect()
}

fn tabled(word: &str, pattern: &str) -> Option<Witness> {
    Some(Witness { word: parse_letters(word), pattern: parse_letters(pattern) })
}

/// Decides whether the sortable words of a single-pattern machine form a
/// class, giving the basis when known and a witness pair otherwise.
pub fn classify(sigma: &[u32], domain: Domain) -> Result<Classification, OracleError> {
    let unsupported = || OracleError::Unsupported { sigma: format_letters(sigma), domain };
    if sigma.len() < 2 {
        return Err(OracleError::TooShort(format_letters(sigma)));
    }
    if domain == Domain::Rgf || !is_member(sigma, domain) {
        return Err(unsupported());
    }
    let key = format_letters(sigma);
    let hat231 = hat_contains_231(sigma);
    let contains123 = contains_classical(sigma, &[1, 2, 3]);
    let rev = Pattern::Classical(reverse(sigma));
    let class = |basis: Vec<Pattern>| Ok(Classification { is_class: true, basis: Some(basis), witness: None });
    let (class_basis, witness): (Option<Vec<Pattern>>, Option<Witness>) = match domain {
        Domain::Perm => {
            if key == "12" {
                (Some(vec![cl("213")]), None)
            } else if hat231 {
                (Some(vec![cl("132"), rev]), None)
            } else {
                let w = match key.as_str() {
                    "21" => tabled("35241", "3241"),
                    "123" | "213" => tabled("4132", "132"),
                    "132" => tabled("2413", "132"),
                    "231" => tabled("361425", "1324"),
                    "312" => tabled("3142", "132"),
                    _ => Some(Witness { word: perm_alpha(sigma), pattern: vec![1, 3, 2] }),
                };
                (None, w)
            }
        }
        Domain::Cayley => {
            if key == "12" {
                (Some(vec![cl("213")]), None)
            } else if hat231 {
                (Some(vec![cl("132"), rev]), None)
            } else {
                let w = match key.as_str() {
                    "11" => tabled("3132", "132"),
                    "21" => tabled("35241", "3241"),
                    "231" => tabled("361425", "1324"),
                    _ => Some(Witness { word: cayley_beta(sigma), pattern: vec![1, 3, 2] }),
                };
                (None, w)
            }
        }
        Domain::Asc => match key.as_str() {
            "11" => (Some(vec![cl("1213"), cl("1223")]), None),
            "12" | "121" => (Some(vec![cl("213")]), None),
            _ if contains123 => (Some(vec![cl("132")]), None),
            "111" => (None, tabled("112312", "1232")),
            "112" => (None, tabled("121312", "1232")),
            "122" => (None, tabled("122312", "1232")),
            _ => (None, Some(Witness { word: asc_alpha(sigma), pattern: vec![1, 2, 3, 2] })),
        },
        Domain::Modasc => match key.as_str() {
            "11" => (Some(vec![cl("1213"), cl("1223")]), None),
            "12" | "121" => (Some(vec![cl("213")]), None),
            _ if contains123 => (Some(vec![cl("132")]), None),
            _ if sigma.len() >= 3 && standardize(&sigma[..3]) == [1, 2, 2] => {
                let mut r = reverse(sigma);
                r.push(sigma.iter().copied().max().unwrap_or(0) + 1);
                (Some(vec![cl("132"), Pattern::Classical(r)]), None)
            }
            "111" => (None, tabled("11312", "1312")),
            "112" => (None, tabled("121413", "1312")),
            _ => (None, Some(Witness { word: modasc_alpha(sigma), pattern: vec![1, 3, 1, 2] })),
        },
        Domain::Rgf => unreachable!("rejected above"),
    };
    if let Some(basis) = class_basis {
        return class(basis);
    }
    let mut witness = witness.expect("non-class always gets a candidate");
    if !verify_witness(sigma, domain, &witness) {
        witness = search_witness(sigma, domain, sigma.len() + 4).ok_or_else(unsupported)?;
    }
    Ok(Classification { is_class: false, basis: None, witness: Some(witness) })
}

/// Permutation patterns of length at least four whose hat avoids 231.
fn perm_alpha(s: &[u32]) -> Vec<u32> {
    let k = s.len();
    if s[0] < s[1] {
        let z = s[0];
        let p: Vec<u32> = s.iter().map(|&v| if v < z { v } else { v + 1 }).collect();
        let mut a: Vec<u32> = (2..k).rev().map(|i| p[i]).collect();
        a.extend([z, p[1], p[0]]);
        a
    } else {
        let z = s[1] + 1;
        let p: Vec<u32> = s.iter().map(|&v| if v <= s[1] { v } else { v + 1 }).collect();
        let mut a: Vec<u32> = p.iter().rev().copied().collect();
        a.push(z);
        a
    }
}

fn cayley_beta(s: &[u32]) -> Vec<u32> {
    let k = s.len();
    let strict_min = s[0] == 1 && s[1..].iter().all(|&v| v >= 2);
    if strict_min {
        let p: Vec<u32> = s.iter().map(|v| v + 1).collect();
        let mut b: Vec<u32> = (2..k).rev().map(|i| p[i]).collect();
        b.extend([1, p[1], p[0]]);
        b
    } else {
        let p: Vec<u32> = s.iter().map(|v| v + 2).collect();
        let mut b: Vec<u32> = (1..k).rev().map(|i| p[i]).collect();
        b.extend([1, p[0], 2]);
        b
    }
}

fn asc_alpha(s: &[u32]) -> Vec<u32> {
    let k = s.len();
    let max = s.iter().copied().max().unwrap_or(0);
    if max == 1 {
        let mut a = vec![1; k - 1];
        a.extend([2, 3, 1, 2]);
        return a;
    }
    let mut a = Vec::new();
    if s[k - 1] == 2 {
        a.push(1);
    }
    a.extend((1..k).rev().map(|i| s[i]));
    a.extend([3, s[0], 2]);
    a
}

fn modasc_alpha(s: &[u32]) -> Vec<u32> {
    let k = s.len();
    let m = s.iter().copied().max().unwrap_or(0);
    let mut a = Vec::new();
    if s[k - 1] > 1 {
        a.push(1);
    }
    if s[1] == 1 {
        a.extend((1..k).rev().map(|i| s[i]));
        a.extend([m + 2, s[0], m + 1]);
    } else {
        a.extend((2..k).rev().map(|i| s[i]));
        a.extend([m + 1, s[0], s[1]]);
    }
    a
}

/// Checks a witness by brute force: the word is a sortable domain member,
/// the pattern is a non-sortable domain member, and the word contains it.
pub fn verify_witness(sigma: &[u32], domain: Domain, w: &Witness) -> bool {
    let Ok(spec) = MachineSpec::single(sigma, domain) else { return false };
    is_member(&w.word, domain)
        && is_member(&w.pattern, domain)
        && is_sortable(&w.word, &spec)
        && !is_sortable(&w.pattern, &spec)
        && contains_classical(&w.word, &w.pattern)
}

/// Exhaustive search for a witness with word length at most `max_len`.
pub fn search_witness(sigma: &[u32], domain: Domain, max_len: usize) -> Option<Witness> {
    let spec = MachineSpec::single(sigma, domain).ok()?;
    let mut bad: Vec<Vec<u32>> = Vec::new();
    for len in 1..=max_len {
        let mut found = None;
        walk_domain(domain, len, &[], &mut |w| {
            if is_sortable(w, &spec) {
                if let Some(p) = bad.iter().find(|p| contains_classical(w, p)) {
                    found = Some(Witness { word: w.to_vec(), pattern: p.clone() });
                    return false;
                }
            }
            true
        });
        if found.is_some() {
            return found;
        }
        bad.extend(domain_words(domain, len).into_iter().filter(|w| !is_sortable(w, &spec)));
    }
    None
}

/// Effective means the sorted set avoids σ; this fails exactly when
/// hat(σ) = 1 ⊕ α with α avoiding 231.
pub fn is_effective(sigma: &[u32]) -> Result<bool, OracleError> {
    let h = hat(sigma)?;
    let min = h.iter().copied().min().expect("nonempty");
    let one_plus = h[0] == min && h[1..].iter().all(|&v| v > min);
    Ok(!(one_plus && !contains_classical(&h[1..], &[2, 3, 1])))
}

/// Injectivity is guaranteed when hat(σ) contains 231; otherwise unknown.
pub fn injectivity_hint(sigma: &[u32]) -> Result<Option<bool>, OracleError> {
    hat(sigma)?;
    Ok(if hat_contains_231(sigma) { Some(true) } else { None })
}

/// On Cayley permutations the stack map is a bijection iff σ₁ = σ₂.
pub fn is_fully_bijective_cayley(sigma: &[u32]) -> Result<bool, OracleError> {
    if sigma.len() < 2 {
        return Err(OracleError::TooShort(format_letters(sigma)));
    }
    Ok(sigma[0] == sigma[1])
}

/// Members of the 123 sorted set: decreasing blocks of sizes `h`, then
/// `k-1` and `t+1` (the last two in direct sum), plus the decreasing word.
/// Returned with the parameter `k` (0 for the decreasing word).
fn sorted_123_family(n: usize) -> Vec<(Vec<u32>, usize)> {
    let n32 = n as u32;
    let mut out = vec![((1..=n32).rev().collect::<Vec<u32>>(), 0)];
    for k in 2..=n {
        for h in 0..=n - k {
            let t = n - k - h;
            let mut w: Vec<u32> = (0..h as u32).map(|i| n32 - i).collect();
            w.extend((1..k as u32).rev());
            w.extend((k as u32..=(k + t) as u32).rev());
            out.push((w, k));
        }
    }
    out
}

pub fn sorted_set_123(n: usize) -> BTreeSet<Vec<u32>> {
    if n == 0 {
        return [Vec::new()].into();
    }
    sorted_123_family(n).into_iter().map(|(w, _)| w).collect()
}

/// Fertility of a sorted word under the 123-stack: `C_{k-1}` for a family
/// member with parameter `k`, one for the decreasing word, zero otherwise.
pub fn fertility_123(gamma: &[u32]) -> u64 {
    if gamma.is_empty() {
        return 1;
    }
    match sorted_123_family(gamma.len()).into_iter().find(|(w, _)| w == gamma) {
        Some((_, 0)) => 1,
        Some((_, k)) => catalan_u64(k - 1),
        None => 0,
    }
}

fn catalan_u64(n: usize) -> u64 {
    (0..n as u64).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::domain::domain_words;

    fn spec(s: &str, d: Domain) -> MachineSpec {
        MachineSpec::single(&parse_letters(s), d).unwrap()
    }

    #[test]
    fn hat_examples() {
        assert_eq!(hat(&[3, 2, 1]).unwrap(), vec![2, 3, 1]);
        assert_eq!(hat(&[2, 1]).unwrap(), vec![1, 2]);
        assert!(hat(&[1]).is_err());
        for k in 3..8 {
            let dec: Vec<u32> = (1..=k).rev().collect();
            assert!(contains_classical(&hat(&dec).unwrap(), &[2, 3, 1]));
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&[3, 2, 1], Domain::Perm).unwrap();
        assert!(c.is_class);
        assert_eq!(c.basis.unwrap(), vec![cl("132"), cl("123")]);
        let c = classify(&[2, 3, 1], Domain::Perm).unwrap();
        assert_eq!(c.witness.unwrap(), Witness { word: parse_letters("361425"), pattern: parse_letters("1324") });
        let c = classify(&[1, 1, 2], Domain::Asc).unwrap();
        assert_eq!(c.witness.unwrap(), Witness { word: parse_letters("121312"), pattern: parse_letters("1232") });
        assert!(matches!(classify(&[1, 2], Domain::Rgf), Err(OracleError::Unsupported { .. })));
        assert!(classify(&[1, 2, 1], Domain::Modasc).unwrap().is_class);
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_is_sortable(&parse_letters("2413"), &spec("132", Domain::Perm)).unwrap());
        let s = spec("213", Domain::Perm);
        assert!(matches!(oracle_is_sortable(&[1], &s), Err(OracleError::Fallback { .. })));
    }

    #[test]
    fn sortable_123_worked_example() {
        assert!(sortable_123(&parse_letters("567148923")));
        assert!(sortable_123(&parse_letters("5146723")));
        assert!(sortable_123(&parse_letters("51423")));
        assert_eq!(insert_max_raw(&parse_letters("51423")), parse_letters("514623"));
        assert_eq!(insert_max_raw(&parse_letters("21")), parse_letters("213"));
    }

    #[test]
    fn pair_123_312_example_matches_machine() {
        let pi = parse_letters("45132");
        let s = MachineSpec::from_words(vec![vec![1, 2, 3], vec![3, 1, 2]], Domain::Perm).unwrap();
        assert_eq!(sortable_123_312(&pi), is_sortable(&pi, &s));
    }

    #[test]
    fn decomposition_bound_is_needed_for_123_132() {
        // B_3 above m_2 with an empty B_2: the four listed conditions alone accept it
        let s = MachineSpec::from_words(vec![vec![1, 2, 3], vec![1, 3, 2]], Domain::Perm).unwrap();
        for w in ["4213", "52413"] {
            let pi = parse_letters(w);
            assert!(!is_sortable(&pi, &s));
            assert!(!sortable_123_132(&pi));
        }
    }

    #[test]
    fn effective_examples() {
        assert!(!is_effective(&[2, 1]).unwrap());
        assert!(!is_effective(&[2, 1, 3]).unwrap());
        assert!(!is_effective(&[3, 1, 2]).unwrap());
        assert!(is_effective(&[3, 2, 1]).unwrap());
        assert_eq!(injectivity_hint(&[3, 2, 1]).unwrap(), Some(true));
        let non: Vec<String> = (2..=3)
            .flat_map(|n| domain_words(Domain::Perm, n))
            .filter(|s| !is_effective(s).unwrap())
            .map(|s| format_letters(&s))
            .collect();
        assert_eq!(non, vec!["21", "213", "312"]);
    }

    #[test]
    fn fully_bijective_examples() {
        assert!(is_fully_bijective_cayley(&[1, 1]).unwrap());
        assert!(!is_fully_bijective_cayley(&[1, 2]).unwrap());
        assert!(is_fully_bijective_cayley(&[1, 1, 2]).unwrap());
        let s = spec("12", Domain::Cayley);
        assert_eq!(crate::machine::sigma_stack_output(&[2, 1], &s), crate::machine::sigma_stack_output(&[1, 2], &s));
    }

    #[test]
    fn sorted_123_family() {
        let got: Vec<String> = sorted_set_123(3).iter().map(|w| format_letters(w)).collect();
        assert_eq!(got, vec!["132", "213", "312", "321"]);
        let sizes: Vec<usize> = (1..=6).map(|n| sorted_set_123(n).len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 7, 11, 16]);
        assert_eq!(fertility_123(&[1, 3, 2]), 1);
        assert_eq!(fertility_123(&[2, 3, 1]), 0);
    }
}
