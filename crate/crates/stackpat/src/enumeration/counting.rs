//! Counting sortable and sorted sets by exhaustive search, by oracle or by
//! a generating tree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::domain::par_count;
use crate::machine::{image_set, is_sortable, MachineError, MachineSpec};
use crate::oracles::{Oracle, OracleError};
use crate::paths::{rule_catalog, rule_level_counts, RuleCatalogId};
use crate::words::{format_letters, Domain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Oracle,
    Tree,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Oracle => "oracle",
            Method::Tree => "tree",
        })
    }
}

impl FromStr for Method {
    type Err = CountError;
    fn from_str(s: &str) -> Result<Self, CountError> {
        match s.to_ascii_lowercase().as_str() {
            "brute" => Ok(Method::Brute),
            "oracle" => Ok(Method::Oracle),
            "tree" => Ok(Method::Tree),
            _ => Err(CountError::UnknownMethod(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("no generating tree is catalogued for sigma = {sigma} on {domain}")]
    TreeUnavailable { sigma: String, domain: Domain },
    #[error("unknown counting method `{0}`")]
    UnknownMethod(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CountOptions {
    /// Length guard override; `None` uses the domain default.
    pub guard: Option<usize>,
    /// With the oracle method, fail instead of falling back to brute force.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountOutcome {
    #[serde(serialize_with = "crate::enumeration::serialize_decimal")]
    pub count: BigUint,
    /// The method that actually produced the count.
    pub method: Method,
    pub fell_back: bool,
}

/// The catalogued rule whose level `n` counts the sortable words of length `n`.
pub fn tree_rule_for(spec: &MachineSpec) -> Option<RuleCatalogId> {
    if spec.domain() != Domain::Perm {
        return None;
    }
    let sigma: Vec<&[u32]> = spec.sigma().iter().map(Vec::as_slice).collect();
    match sigma.as_slice() {
        [[1, 2]] => Some(RuleCatalogId::DyckPeak),
        [[1, 3, 2], [3, 2, 1]] => Some(RuleCatalogId::Omega1_132_321),
        [[1, 2, 3], [3, 1, 2]] => Some(RuleCatalogId::Omega123_312),
        _ => None,
    }
}

fn sigma_label(spec: &MachineSpec) -> String {
    spec.sigma().iter().map(|s| format_letters(s)).collect::<Vec<_>>().join(",")
}

/// Number of sortable words of length `n`. The oracle method quietly
/// falls back to brute force where no oracle is known.
pub fn count_sortable(spec: &MachineSpec, n: usize, method: Method) -> Result<BigUint, CountError> {
    count_sortable_with(spec, n, method, CountOptions::default()).map(|o| o.count)
}

pub fn count_sortable_with(
    spec: &MachineSpec,
    n: usize,
    method: Method,
    opts: CountOptions,
) -> Result<CountOutcome, CountError> {
    let brute = |fell_back| -> Result<CountOutcome, CountError> {
        spec.check_guard(n, opts.guard)?;
        let c = par_count(spec.domain(), n, |w| is_sortable(w, spec));
        Ok(CountOutcome { count: c.into(), method: Method::Brute, fell_back })
    };
    match method {
        Method::Brute => brute(false),
        Method::Oracle => match Oracle::for_spec(spec) {
            Ok(oracle) => {
                spec.check_guard(n, opts.guard)?;
                let c = par_count(spec.domain(), n, |w| oracle.is_sortable(w));
                Ok(CountOutcome { count: c.into(), method: Method::Oracle, fell_back: false })
            }
            Err(OracleError::Fallback { .. }) if !opts.strict => brute(true),
            Err(e) => Err(e.into()),
        },
        Method::Tree => {
            let id = tree_rule_for(spec)
                .ok_or_else(|| CountError::TreeUnavailable { sigma: sigma_label(spec), domain: spec.domain() })?;
            if n == 0 {
                return Ok(CountOutcome { count: 1u32.into(), method: Method::Tree, fell_back: false });
            }
            let levels = rule_level_counts(&rule_catalog(id), n);
            Ok(CountOutcome { count: levels[n - 1].clone(), method: Method::Tree, fell_back: false })
        }
    }
}

/// Counts for lengths `1..=max_n`.
pub fn count_series(spec: &MachineSpec, max_n: usize, method: Method) -> Result<Vec<BigUint>, CountError> {
    (1..=max_n).map(|n| count_sortable(spec, n, method)).collect()
}

/// Size of the sorted set: pattern-stack outputs of length `n` that the
/// second stack can finish sorting.
pub fn count_sorted(spec: &MachineSpec, n: usize, guard: Option<usize>) -> Result<usize, CountError> {
    Ok(image_set(spec, n, true, guard)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(sigma: Vec<Vec<u32>>, domain: Domain, max_n: usize, method: Method) -> Vec<u64> {
        let spec = MachineSpec::from_words(sigma, domain).unwrap();
        count_series(&spec, max_n, method).unwrap().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn documented_counts() {
        for m in [Method::Brute, Method::Oracle] {
            assert_eq!(series(vec![vec![1, 2, 3]], Domain::Perm, 6, m), [1, 2, 5, 13, 35, 99]);
            assert_eq!(
                series(vec![vec![1, 3, 2], vec![2, 3, 1]], Domain::Perm, 8, m),
                [1, 2, 6, 22, 90, 394, 1806, 8558]
            );
            assert_eq!(series(vec![vec![2, 1]], Domain::Cayley, 5, m), [1, 3, 13, 73, 483]);
        }
    }

    #[test]
    fn trees_agree_with_brute() {
        for sigma in [vec![vec![1, 2]], vec![vec![1, 3, 2], vec![3, 2, 1]], vec![vec![1, 2, 3], vec![3, 1, 2]]] {
            assert_eq!(
                series(sigma.clone(), Domain::Perm, 8, Method::Tree),
                series(sigma, Domain::Perm, 8, Method::Brute)
            );
        }
    }

    #[test]
    fn tree_and_strict_errors() {
        let spec = MachineSpec::single(&[2, 3, 1], Domain::Perm).unwrap();
        assert!(matches!(count_sortable(&spec, 4, Method::Tree), Err(CountError::TreeUnavailable { .. })));
        let rgf = MachineSpec::single(&[1, 2], Domain::Rgf).unwrap();
        let strict = CountOptions { strict: true, ..Default::default() };
        assert!(count_sortable_with(&rgf, 4, Method::Oracle, strict).is_err());
        let loose = count_sortable_with(&rgf, 4, Method::Oracle, CountOptions::default()).unwrap();
        assert!(loose.fell_back);
        assert_eq!(loose.method, Method::Brute);
    }

    #[test]
    fn guard_applies() {
        let spec = MachineSpec::single(&[1, 2], Domain::Cayley).unwrap();
        assert!(count_sortable(&spec, 9, Method::Brute).is_err());
        let opts = CountOptions { guard: Some(9), strict: false };
        assert!(count_sortable_with(&spec, 3, Method::Brute, opts).is_ok());
    }

    #[test]
    fn sorted_sizes() {
        let spec = MachineSpec::single(&[1, 2, 3], Domain::Perm).unwrap();
        let sizes: Vec<usize> = (1..=6).map(|n| count_sorted(&spec, n, None).unwrap()).collect();
        assert_eq!(sizes, [1, 2, 4, 7, 11, 16]);
    }
}
