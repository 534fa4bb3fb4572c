//! Succession rules and their level sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

/// Labels are pairs; one-parameter rules keep the second slot at zero.
pub type Label = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown succession rule `{0}`")]
pub struct UnknownRule(pub String);

#[derive(Clone, Copy)]
pub struct SuccessionRule {
    pub name: &'static str,
    pub axiom: Label,
    pub produce: fn(Label) -> Vec<Label>,
}

impl fmt::Debug for SuccessionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuccessionRule").field("name", &self.name).field("axiom", &self.axiom).finish()
    }
}

impl SuccessionRule {
    /// Label multiplicities on each level, root level first.
    pub fn levels(&self, depth: usize) -> Vec<BTreeMap<Label, BigUint>> {
        let mut out = Vec::with_capacity(depth);
        if depth == 0 {
            return out;
        }
        let mut cur: BTreeMap<Label, BigUint> = [(self.axiom, BigUint::one())].into();
        for _ in 1..depth {
            let mut next: BTreeMap<Label, BigUint> = BTreeMap::new();
            for (&label, count) in &cur {
                for child in (self.produce)(label) {
                    *next.entry(child).or_default() += count;
                }
            }
            out.push(std::mem::replace(&mut cur, next));
        }
        out.push(cur);
        out
    }
}

/// Number of nodes on levels `1..=depth`.
pub fn rule_level_counts(rule: &SuccessionRule, depth: usize) -> Vec<BigUint> {
    rule.levels(depth).into_iter().map(|lvl| lvl.values().sum()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RuleCatalogId {
    DyckPeak,
    Motzkin,
    Omega1_132_321,
    Omega2Dudu,
    Omega123_312,
    Rgf1221Sites,
}

impl RuleCatalogId {
    pub const ALL: [RuleCatalogId; 6] = [
        RuleCatalogId::DyckPeak,
        RuleCatalogId::Motzkin,
        RuleCatalogId::Omega1_132_321,
        RuleCatalogId::Omega2Dudu,
        RuleCatalogId::Omega123_312,
        RuleCatalogId::Rgf1221Sites,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleCatalogId::DyckPeak => "DYCK_PEAK",
            RuleCatalogId::Motzkin => "MOTZKIN",
            RuleCatalogId::Omega1_132_321 => "OMEGA1_132_321",
            RuleCatalogId::Omega2Dudu => "OMEGA2_DUDU",
            RuleCatalogId::Omega123_312 => "OMEGA_123_312",
            RuleCatalogId::Rgf1221Sites => "RGF1221_SITES",
        }
    }
}

impl fmt::Display for RuleCatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleCatalogId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, UnknownRule> {
        RuleCatalogId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// `(k) -> (2)(3)...(k+1)`: a new peak before any step of the last descent
/// or at the end.
fn catalan_peak((k, _): Label) -> Vec<Label> {
    (2..=k + 1).map(|j| (j, 0)).collect()
}

fn motzkin((k, _): Label) -> Vec<Label> {
    if k == 1 {
        return vec![(2, 0)];
    }
    (1..k).chain([k + 1]).map(|j| (j, 0)).collect()
}

/// Depth and empty-last-block flag; the DUDU rule has the same shape.
fn depth_flag((d, b): Label) -> Vec<Label> {
    let top = if b == 0 { d } else { d - 1 };
    std::iter::once((d + 1, 0)).chain((1..=top).map(|j| (j, 1))).collect()
}

/// Last-block sites `k` and block-order sites `m`.
fn blocks_123_312((k, m): Label) -> Vec<Label> {
    match (k, m) {
        (1, 0) => vec![(1, 0), (2, 2)],
        (1, m) => std::iter::once((1, m)).chain((2..=m + 1).map(|j| (2, j))).collect(),
        (k, m) => std::iter::once((1, m)).chain((2..=k + 1).map(|j| (j, m + 1))).collect(),
    }
}

pub fn rule_catalog(id: RuleCatalogId) -> SuccessionRule {
    match id {
        RuleCatalogId::DyckPeak => SuccessionRule { name: "DYCK_PEAK", axiom: (2, 0), produce: catalan_peak },
        RuleCatalogId::Motzkin => SuccessionRule { name: "MOTZKIN", axiom: (1, 0), produce: motzkin },
        RuleCatalogId::Omega1_132_321 => {
            SuccessionRule { name: "OMEGA1_132_321", axiom: (1, 0), produce: depth_flag }
        }
        RuleCatalogId::Omega2Dudu => SuccessionRule { name: "OMEGA2_DUDU", axiom: (1, 0), produce: depth_flag },
        RuleCatalogId::Omega123_312 => {
            SuccessionRule { name: "OMEGA_123_312", axiom: (1, 0), produce: blocks_123_312 }
        }
        // appending j in t..=M+1 leaves M+2-j sites, or one more site for M+1
        RuleCatalogId::Rgf1221Sites => {
            SuccessionRule { name: "RGF1221_SITES", axiom: (2, 0), produce: catalan_peak }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(id: RuleCatalogId, depth: usize) -> Vec<u64> {
        rule_level_counts(&rule_catalog(id), depth).iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn catalogue_levels() {
        assert_eq!(counts(RuleCatalogId::DyckPeak, 5), vec![1, 2, 5, 14, 42]);
        assert_eq!(counts(RuleCatalogId::Omega123_312, 6), vec![1, 2, 5, 15, 51, 188]);
        assert_eq!(counts(RuleCatalogId::Omega1_132_321, 8), vec![1, 2, 4, 10, 26, 72, 206, 606]);
        assert_eq!(counts(RuleCatalogId::Motzkin, 6), vec![1, 1, 2, 4, 9, 21]);
        assert_eq!(counts(RuleCatalogId::Rgf1221Sites, 5), vec![1, 2, 5, 14, 42]);
    }

    #[test]
    fn ids_parse() {
        for id in RuleCatalogId::ALL {
            assert_eq!(id.name().parse::<RuleCatalogId>().unwrap(), id);
        }
        assert!("NOPE".parse::<RuleCatalogId>().is_err());
    }
}
