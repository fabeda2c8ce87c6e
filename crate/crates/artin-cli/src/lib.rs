//! Command construction and output formatting for the `artin` binary.

// negated float comparisons are deliberate: `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod plot;
pub mod table;
pub mod run;
