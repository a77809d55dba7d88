// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod channels;
pub mod cli;
pub mod experiments;
pub mod metrics;
pub mod numerics;
pub mod physics;
