//! Closed forms against the machine itself.

use stackpat::enumeration::domain::domain_words;
use stackpat::machine::{is_sortable, MachineSpec};
use stackpat::oracles::{classify, verify_witness, Oracle, OracleError};
use stackpat::words::{format_letters, Domain};

fn agree(spec: &MachineSpec, max_n: usize) {
    let oracle = Oracle::for_spec(spec).unwrap();
    for n in 1..=max_n {
        for w in domain_words(spec.domain(), n) {
            assert_eq!(
                oracle.is_sortable(&w),
                is_sortable(&w, spec),
                "{:?} rule {} on {}",
                spec.sigma_labels(),
                oracle.rule(),
                format_letters(&w)
            );
        }
    }
}

#[test]
fn perm_single_rules() {
    for k in 2..=4 {
        for s in domain_words(Domain::Perm, k) {
            let spec = MachineSpec::single(&s, Domain::Perm).unwrap();
            if Oracle::for_spec(&spec).is_ok() {
                agree(&spec, 8);
            }
        }
    }
}

#[test]
fn perm_pairs() {
    for pair in [["132", "231"], ["132", "321"], ["123", "321"], ["123", "132"], ["123", "312"]] {
        let sigma = pair.iter().map(|p| p.bytes().map(|b| u32::from(b - b'0')).collect()).collect();
        agree(&MachineSpec::from_words(sigma, Domain::Perm).unwrap(), 9);
    }
}

#[test]
fn growth_domain_rules() {
    for d in [Domain::Cayley, Domain::Asc, Domain::Modasc] {
        for k in 2..=4 {
            for s in domain_words(d, k) {
                let spec = MachineSpec::single(&s, d).unwrap();
                if Oracle::for_spec(&spec).is_ok() {
                    agree(&spec, if d == Domain::Cayley { 6 } else { 7 });
                }
            }
        }
    }
}

#[test]
fn rgf_has_no_closed_form() {
    let spec = MachineSpec::single(&[1, 2], Domain::Rgf).unwrap();
    assert!(matches!(Oracle::for_spec(&spec), Err(OracleError::Fallback { .. })));
}

#[test]
fn witnesses_hold() {
    for d in [Domain::Perm, Domain::Cayley, Domain::Asc, Domain::Modasc] {
        for k in 2..=5 {
            for s in domain_words(d, k) {
                let c = classify(&s, d).unwrap();
                assert_eq!(c.is_class, c.witness.is_none());
                if let Some(w) = c.witness {
                    assert!(verify_witness(&s, d, &w), "{d} {}", format_letters(&s));
                }
            }
        }
    }
}

#[test]
fn non_class_permutation_patterns_are_catalan() {
    let counts: Vec<usize> = (3..=5)
        .map(|k| domain_words(Domain::Perm, k).iter().filter(|s| !classify(s, Domain::Perm).unwrap().is_class).count())
        .collect();
    assert_eq!(counts, vec![5, 14, 42]);
}
