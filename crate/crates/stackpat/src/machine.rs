//! The right-greedy pattern-avoiding stack followed by a classical stack.
//!
//! A Σ-stack refuses any content that, read from top to bottom, contains a
//! pattern of Σ. On each input letter it pops until pushing becomes legal,
//! then pushes; at the end it drains. The second stack is the usual 21-stack
//! (it pops while the incoming letter is larger than the top), so equal
//! letters may rest on each other.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::domain::{par_partitions, walk_domain};
use crate::patterns::{contains_classical, contains_classical_anchored, Pattern, Step};
use crate::words::{format_letters, is_member, is_weakly_increasing, Domain, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("the pattern set is empty")]
    EmptySigma,
    #[error("stack patterns must be classical, got {0}")]
    NotClassical(String),
    #[error("stack pattern {0} has length one")]
    TooShort(String),
    #[error("{word} is not a {domain} word")]
    NotMember { word: String, domain: Domain },
    #[error("n = {n} exceeds the brute-force guard {guard} for {domain}")]
    GuardExceeded { n: usize, guard: usize, domain: Domain },
}

/// A set of classical patterns for the first stack plus the input domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineSpec {
    sigma: Vec<Vec<u32>>,
    domain: Domain,
}

impl MachineSpec {
    pub fn new(patterns: &[Pattern], domain: Domain) -> Result<Self, MachineError> {
        let sigma = patterns
            .iter()
            .map(|p| p.as_classical().map(<[u32]>::to_vec).ok_or_else(|| MachineError::NotClassical(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_words(sigma, domain)
    }

    pub fn from_words(mut sigma: Vec<Vec<u32>>, domain: Domain) -> Result<Self, MachineError> {
        if sigma.is_empty() {
            return Err(MachineError::EmptySigma);
        }
        if let Some(s) = sigma.iter().find(|s| s.len() < 2) {
            return Err(MachineError::TooShort(format_letters(s)));
        }
        sigma.sort();
        sigma.dedup();
        Ok(MachineSpec { sigma, domain })
    }

    /// Convenience for a single pattern.
    pub fn single(sigma: &[u32], domain: Domain) -> Result<Self, MachineError> {
        Self::from_words(vec![sigma.to_vec()], domain)
    }

    pub fn sigma(&self) -> &[Vec<u32>] {
        &self.sigma
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn sigma_labels(&self) -> Vec<String> {
        self.sigma.iter().map(|s| format_letters(s)).collect()
    }

    /// Fails unless `w` lies in the spec's domain.
    pub fn check_member(&self, w: &[u32]) -> Result<(), MachineError> {
        if is_member(w, self.domain) {
            Ok(())
        } else {
            Err(MachineError::NotMember { word: format_letters(w), domain: self.domain })
        }
    }

    pub fn check_guard(&self, n: usize, guard: Option<usize>) -> Result<(), MachineError> {
        let guard = guard.unwrap_or_else(|| self.domain.default_guard());
        if n > guard {
            Err(MachineError::GuardExceeded { n, guard, domain: self.domain })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StackOp {
    Push,
    Pop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// 1 for the pattern stack, 2 for the 21-stack.
    pub stack: u8,
    pub op: StackOp,
    pub value: u32,
}

/// Full record of a two-pass run, serialized as the trace JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MachineTrace {
    pub input: Vec<u32>,
    pub sigma: Vec<String>,
    pub steps: Vec<TraceStep>,
    pub first_output: Vec<u32>,
    pub final_output: Vec<u32>,
    pub sortable: bool,
}

/// Would pushing `x` onto `stack` (bottom first) create a forbidden pattern?
fn blocked(stack: &[u32], x: u32, sigma: &[Vec<u32>], buf: &mut Vec<u32>) -> bool {
    buf.clear();
    buf.push(x);
    buf.extend(stack.iter().rev());
    // the stack itself is pattern-free, so any new occurrence starts at x
    sigma.iter().any(|s| s.len() <= buf.len() && contains_classical_anchored(buf, s))
}

fn run_sigma_stack(w: &[u32], sigma: &[Vec<u32>], mut log: Option<&mut Vec<TraceStep>>) -> Vec<u32> {
    let mut stack: Vec<u32> = Vec::with_capacity(w.len());
    let mut out = Vec::with_capacity(w.len());
    let mut buf = Vec::with_capacity(w.len() + 1);
    for &x in w {
        while !stack.is_empty() && blocked(&stack, x, sigma, &mut buf) {
            let y = stack.pop().expect("nonempty");
            out.push(y);
            if let Some(l) = log.as_deref_mut() {
                l.push(TraceStep { stack: 1, op: StackOp::Pop, value: y });
            }
        }
        stack.push(x);
        if let Some(l) = log.as_deref_mut() {
            l.push(TraceStep { stack: 1, op: StackOp::Push, value: x });
        }
    }
    while let Some(y) = stack.pop() {
        out.push(y);
        if let Some(l) = log.as_deref_mut() {
            l.push(TraceStep { stack: 1, op: StackOp::Pop, value: y });
        }
    }
    out
}

/// One pass through the classical stack that forbids 21 read top to bottom.
pub fn stack_21(w: &[u32]) -> Vec<u32> {
    run_stack_21(w, None)
}

fn run_stack_21(w: &[u32], mut log: Option<&mut Vec<TraceStep>>) -> Vec<u32> {
    let mut stack: Vec<u32> = Vec::with_capacity(w.len());
    let mut out = Vec::with_capacity(w.len());
    for &x in w {
        while let Some(&top) = stack.last() {
            if x <= top {
                break;
            }
            stack.pop();
            out.push(top);
            if let Some(l) = log.as_deref_mut() {
                l.push(TraceStep { stack: 2, op: StackOp::Pop, value: top });
            }
        }
        stack.push(x);
        if let Some(l) = log.as_deref_mut() {
            l.push(TraceStep { stack: 2, op: StackOp::Push, value: x });
        }
    }
    while let Some(y) = stack.pop() {
        out.push(y);
        if let Some(l) = log.as_deref_mut() {
            l.push(TraceStep { stack: 2, op: StackOp::Pop, value: y });
        }
    }
    out
}

/// Output of the pattern stack alone.
pub fn sigma_stack_output(w: &[u32], spec: &MachineSpec) -> Vec<u32> {
    run_sigma_stack(w, &spec.sigma, None)
}

/// Output of the whole machine: pattern stack, then 21-stack.
pub fn machine_run(w: &[u32], spec: &MachineSpec) -> Vec<u32> {
    stack_21(&sigma_stack_output(w, spec))
}

/// Sortable iff the final output is weakly increasing.
pub fn is_sortable(w: &[u32], spec: &MachineSpec) -> bool {
    is_weakly_increasing(&machine_run(w, spec))
}

/// The same decision through the pattern criterion: the first output avoids 231.
pub fn is_sortable_by_231(w: &[u32], spec: &MachineSpec) -> bool {
    !contains_classical(&sigma_stack_output(w, spec), &[2, 3, 1])
}

pub fn trace(w: &[u32], spec: &MachineSpec) -> MachineTrace {
    let mut steps = Vec::with_capacity(4 * w.len());
    let first_output = run_sigma_stack(w, &spec.sigma, Some(&mut steps));
    let final_output = run_stack_21(&first_output, Some(&mut steps));
    MachineTrace {
        input: w.to_vec(),
        sigma: spec.sigma_labels(),
        steps,
        sortable: is_weakly_increasing(&final_output),
        first_output,
        final_output,
    }
}

/// Runs both stacks at once: each letter popped from the pattern stack goes
/// straight into the 21-stack.
pub fn machine_run_interleaved(w: &[u32], spec: &MachineSpec) -> Vec<u32> {
    let mut first: Vec<u32> = Vec::new();
    let mut second: Vec<u32> = Vec::new();
    let mut out = Vec::with_capacity(w.len());
    let mut buf = Vec::new();
    let feed = |y: u32, second: &mut Vec<u32>, out: &mut Vec<u32>| {
        while let Some(&top) = second.last() {
            if y <= top {
                break;
            }
            out.push(top);
            second.pop();
        }
        second.push(y);
    };
    for &x in w {
        while !first.is_empty() && blocked(&first, x, &spec.sigma, &mut buf) {
            let y = first.pop().expect("nonempty");
            feed(y, &mut second, &mut out);
        }
        first.push(x);
    }
    while let Some(y) = first.pop() {
        feed(y, &mut second, &mut out);
    }
    while let Some(y) = second.pop() {
        out.push(y);
    }
    out
}

/// A Dyck path whose steps carry the letters pushed (U) and popped (D).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDyckPath {
    pub steps: Vec<Step>,
    pub labels: Vec<u32>,
}

impl LabeledDyckPath {
    pub fn up_labels(&self) -> Vec<u32> {
        self.select(Step::U)
    }

    pub fn down_labels(&self) -> Vec<u32> {
        self.select(Step::D)
    }

    fn select(&self, kind: Step) -> Vec<u32> {
        self.steps.iter().zip(&self.labels).filter(|(s, _)| **s == kind).map(|(_, &l)| l).collect()
    }

    /// Mirror image: steps reversed and swapped, labels carried along.
    pub fn reversed(&self) -> LabeledDyckPath {
        LabeledDyckPath {
            steps: self.steps.iter().rev().map(|s| if *s == Step::U { Step::D } else { Step::U }).collect(),
            labels: self.labels.iter().rev().copied().collect(),
        }
    }

    pub fn step_string(&self) -> String {
        self.steps.iter().map(|s| s.to_string()).collect()
    }
}

/// Records the pattern-stack run as a labeled Dyck path.
pub fn encode_labeled_path(w: &[u32], spec: &MachineSpec) -> LabeledDyckPath {
    let mut log = Vec::new();
    run_sigma_stack(w, &spec.sigma, Some(&mut log));
    LabeledDyckPath {
        steps: log.iter().map(|t| if t.op == StackOp::Push { Step::U } else { Step::D }).collect(),
        labels: log.iter().map(|t| t.value).collect(),
    }
}

/// Preimages of `w` under the pattern stack, in lexicographic order.
pub fn preimages(w: &[u32], spec: &MachineSpec, guard: Option<usize>) -> Result<Vec<Vec<u32>>, MachineError> {
    let n = w.len();
    spec.check_guard(n, guard)?;
    let parts = par_partitions(spec.domain, n, |prefix| {
        let mut found = Vec::new();
        walk_domain(spec.domain, n, prefix, &mut |u| {
            if sigma_stack_output(u, spec) == w {
                found.push(u.to_vec());
            }
            true
        });
        found
    });
    Ok(parts.into_iter().flatten().collect())
}

pub fn fertility(w: &[u32], spec: &MachineSpec, guard: Option<usize>) -> Result<usize, MachineError> {
    preimages(w, spec, guard).map(|v| v.len())
}

/// Image of the pattern stack on all domain words of length `n`; with
/// `sorted_only`, only images avoiding 231 are kept.
pub fn image_set(
    spec: &MachineSpec,
    n: usize,
    sorted_only: bool,
    guard: Option<usize>,
) -> Result<BTreeSet<Vec<u32>>, MachineError> {
    spec.check_guard(n, guard)?;
    let parts = par_partitions(spec.domain, n, |prefix| {
        let mut set = BTreeSet::new();
        walk_domain(spec.domain, n, prefix, &mut |u| {
            let out = sigma_stack_output(u, spec);
            if !sorted_only || !contains_classical(&out, &[2, 3, 1]) {
                set.insert(out);
            }
            true
        });
        set
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Parses a word and checks membership in the spec's domain.
pub fn parse_member(text: &str, spec: &MachineSpec) -> Result<Vec<u32>, String> {
    let w: Word = text.parse().map_err(|e| format!("{e}"))?;
    let v = w.into_vec();
    spec.check_member(&v).map_err(|e| e.to_string())?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u32> {
        s.parse::<Word>().unwrap().into_vec()
    }

    fn spec(s: &str, d: Domain) -> MachineSpec {
        MachineSpec::single(&w(s), d).unwrap()
    }

    #[test]
    fn worked_outputs() {
        assert_eq!(sigma_stack_output(&w("2413"), &spec("231", Domain::Perm)), w("1432"));
        assert_eq!(sigma_stack_output(&w("42132"), &spec("11", Domain::Cayley)), w("31224"));
        assert_eq!(sigma_stack_output(&w("12132"), &spec("12", Domain::Cayley)), w("23211"));
        assert_eq!(sigma_stack_output(&w("12132"), &spec("121", Domain::Cayley)), w("22311"));
        assert_eq!(sigma_stack_output(&w("132"), &spec("123", Domain::Perm)), w("231"));
    }

    #[test]
    fn machine_examples() {
        assert_eq!(machine_run(&w("2413"), &spec("231", Domain::Perm)), w("1234"));
        assert!(!is_sortable(&w("132"), &spec("123", Domain::Perm)));
        let s123 = spec("123", Domain::Perm);
        assert!(is_sortable(&w("4132"), &s123));
        let s231 = spec("231", Domain::Perm);
        assert!(is_sortable(&w("361425"), &s231));
        assert!(!is_sortable(&w("1324"), &s231));
        let s21 = spec("21", Domain::Perm);
        assert!(is_sortable(&w("35241"), &s21));
        assert!(!is_sortable(&w("3241"), &s21));
        assert!(is_sortable(&w("2413"), &spec("132", Domain::Perm)));
    }

    #[test]
    fn labeled_path_of_42132() {
        let p = encode_labeled_path(&w("42132"), &spec("11", Domain::Cayley));
        assert_eq!(p.step_string(), "UUUUDDDUDD");
        assert_eq!(p.up_labels(), w("42132"));
        assert_eq!(p.down_labels(), w("31224"));
    }

    #[test]
    fn fertility_examples() {
        let s = spec("123", Domain::Perm);
        assert_eq!(preimages(&w("12"), &s, None).unwrap(), vec![w("21")]);
        assert_eq!(preimages(&w("132"), &s, None).unwrap(), vec![w("231")]);
        // fertilities over all of S_3 add up to 3!, and some word is never an output
        let all = crate::enumeration::domain_words(Domain::Perm, 3);
        let ferts: Vec<usize> = all.iter().map(|u| fertility(u, &s, None).unwrap()).collect();
        assert_eq!(ferts.iter().sum::<usize>(), 6);
        assert!(ferts.contains(&0));
    }

    #[test]
    fn sorted_image_examples() {
        let got = image_set(&spec("123", Domain::Perm), 3, true, None).unwrap();
        let want: BTreeSet<Vec<u32>> = ["312", "132", "213", "321"].iter().map(|s| w(s)).collect();
        assert_eq!(got, want);
        assert_eq!(image_set(&spec("231", Domain::Perm), 3, true, None).unwrap().len(), 5);
        let sizes: Vec<usize> =
            (1..=6).map(|n| image_set(&spec("123", Domain::Perm), n, true, None).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 7, 11, 16]);
    }

    #[test]
    fn trace_counts_balance() {
        let t = trace(&w("2413"), &spec("231", Domain::Perm));
        for stack in [1u8, 2] {
            let pushes = t.steps.iter().filter(|s| s.stack == stack && s.op == StackOp::Push).count();
            let pops = t.steps.iter().filter(|s| s.stack == stack && s.op == StackOp::Pop).count();
            assert_eq!((pushes, pops), (4, 4));
        }
        assert!(t.sortable);
        assert_eq!(t.first_output, w("1432"));
    }

    #[test]
    fn spec_rejects_bad_patterns() {
        assert_eq!(MachineSpec::from_words(vec![], Domain::Perm), Err(MachineError::EmptySigma));
        assert!(matches!(MachineSpec::single(&[1], Domain::Perm), Err(MachineError::TooShort(_))));
        let mu = Pattern::named("mu").unwrap();
        assert!(matches!(MachineSpec::new(&[mu], Domain::Perm), Err(MachineError::NotClassical(_))));
        let s = spec("12", Domain::Perm);
        assert!(s.check_guard(12, None).is_err());
        assert!(s.check_guard(12, Some(12)).is_ok());
    }
}
