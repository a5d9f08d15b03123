// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundstates;
pub mod cli;
pub mod contact;
pub mod error;
pub mod kronig;
pub mod numerics;
pub mod output;
pub mod record;
pub mod scattering;
