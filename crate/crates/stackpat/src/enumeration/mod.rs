//! Domain enumeration, sortable counts, closed-form sequences and the
//! golden-table verifier.

pub mod counting;
pub mod domain;
pub mod golden;
pub mod sequences;

use std::fmt::Display;

use serde::Serializer;

pub use counting::{count_series, count_sortable, count_sortable_with, count_sorted, CountError, CountOptions, Method};
pub use domain::{domain_words, par_count, par_filter, walk_domain};
pub use golden::{verify_golden, GoldenOptions, GoldenReport};
pub use sequences::{sequence_value, SequenceError, SequenceId, SequenceValue};

/// Big integers go to JSON as decimal strings so no precision is lost.
pub(crate) fn serialize_decimal<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn serialize_decimal_list<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}
