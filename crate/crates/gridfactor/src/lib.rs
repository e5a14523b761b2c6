//! Exact enumeration of 2-factors in grid graphs of fixed width `m` on six
//! topologies: the rectangle `P_m x P_n`, the thick cylinder `P_m x C_n`, the
//! Moebius strip, the thin cylinder `C_m x P_n`, and the twisted closures of
//! the thin cylinder into a torus or a Klein bottle.
//!
//! The engine works column by column. Every column of a 2-factor is encoded
//! as a word over a six-letter alphabet recording which of the four edges
//! around each vertex belong to the factor ([`alphabet`]). Columns that can
//! sit next to each other are linked by a transfer relation; grouping columns
//! by their (inlet, outlet) edge profiles collapses the column digraph onto a
//! `2^m x 2^m` integer matrix ([`transfer`]) whose powers count 2-factors
//! exactly, in arbitrary-precision arithmetic ([`counting`]). The connected
//! components of that matrix carry a rigid combinatorial structure which is
//! recomputed and checked rather than assumed ([`structure`]).
//!
//! Every count can be cross-checked against an independent brute-force census
//! of small explicit grids ([`oracle`]), and each of the six graph families is
//! a strategy object chosen by name at runtime ([`family`]).

pub mod alphabet;
pub mod config;
pub mod counting;
pub mod error;
pub mod family;
pub mod oracle;
pub mod structure;
pub mod transfer;

pub use config::Limits;
pub use error::Error;
/// Re-exported so downstream crates name the count type without a direct
/// num-bigint dependency.
pub use num_bigint::BigUint;
