//! Ground truth independent of the transfer matrix: explicit grid graphs,
//! exhaustive 2-factor enumeration, and the letter codec connecting factors
//! to code matrices.

mod census;
mod codec;
mod grid;

pub use census::{census, for_each_two_factor, Census, TwoFactor};
pub use codec::{decode, encode, validate, CodeMatrix, Violation};
pub use grid::GridGraph;

use crate::family::GridSpec;
use serde_json::json;

pub fn census_json(spec: &GridSpec, census: &Census) -> String {
    let histogram: serde_json::Map<String, serde_json::Value> = census
        .by_cycle_count
        .iter()
        .map(|(cycles, count)| (cycles.to_string(), json!(count.to_string())))
        .collect();
    json!({
        "spec": spec.to_json_value(),
        "total": census.total.to_string(),
        "by_cycle_count": histogram,
    })
    .to_string()
}
