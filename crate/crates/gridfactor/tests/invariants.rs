//! Cross-checks between the three independent routes to the same number:
//! matrix powers, brute-force factor enumeration, and — here — direct
//! enumeration of column-word chains with letter-level joins only. The last
//! route never multiplies anything, so it also covers dimensions where no
//! simple grid exists and the census cannot run.

use std::collections::BTreeSet;

use gridfactor::alphabet::{lr_arc, AlphaWord, WordKind};
use gridfactor::counting;
use gridfactor::family::GridSpec;
use gridfactor::oracle::{census, encode, for_each_two_factor, GridGraph};
use gridfactor::transfer::enumerate_columns;
use gridfactor::Limits;

/// Count letter chains directly: columns joined row-wise left to right,
/// closed by the family's row gluing (or by empty boundaries).
fn word_chain_count(spec: &GridSpec) -> u64 {
    let (m, n) = (spec.m(), spec.n());
    let columns: Vec<AlphaWord> = enumerate_columns(m, spec.kind()).unwrap().collect();
    let joins = |left: &AlphaWord, right: &AlphaWord| {
        (1..=m).all(|row| lr_arc(left.letters()[row - 1], right.letters()[row - 1]))
    };
    let wraps = spec.family().wrap_target(m, spec.twist(), 1).is_some();
    let closes = |first: &AlphaWord, last: &AlphaWord| {
        if wraps {
            (1..=m).all(|row| {
                let target = spec.family().wrap_target(m, spec.twist(), row).unwrap();
                lr_arc(last.letters()[row - 1], first.letters()[target - 1])
            })
        } else {
            (1..=m).all(|row| !first.letters()[row - 1].left() && !last.letters()[row - 1].right())
        }
    };

    // simple recursive walk, small inputs only
    fn extend(
        columns: &[AlphaWord],
        joins: &dyn Fn(&AlphaWord, &AlphaWord) -> bool,
        closes: &dyn Fn(&AlphaWord, &AlphaWord) -> bool,
        chain: &mut Vec<usize>,
        n: usize,
        total: &mut u64,
    ) {
        if chain.len() == n {
            if closes(&columns[chain[0]], &columns[*chain.last().unwrap()]) {
                *total += 1;
            }
            return;
        }
        for (i, candidate) in columns.iter().enumerate() {
            if let Some(&prev) = chain.last() {
                if !joins(&columns[prev], candidate) {
                    continue;
                }
            }
            chain.push(i);
            extend(columns, joins, closes, chain, n, total);
            chain.pop();
        }
    }
    let mut total = 0;
    extend(&columns, &joins, &closes, &mut Vec::new(), n, &mut total);
    total
}

fn count_of(text: &str) -> String {
    let spec: GridSpec = text.parse().unwrap();
    counting::count(&spec, &Limits::default())
        .unwrap()
        .value
        .to_string()
}

#[test]
fn matrix_counts_match_letter_chains() {
    for text in [
        "rg 2 2", "rg 2 4", "rg 3 3", "rg 4 3", "tkc 2 3", "tkc 3 3", "ms 2 3", "ms 3 3",
        "tnc 3 2", "tnc 4 2", "tg 3 3 0", "tg 3 3 2", "kb 3 3 1", "kb 4 3 1",
    ] {
        let spec: GridSpec = text.parse().unwrap();
        assert_eq!(
            count_of(text),
            word_chain_count(&spec).to_string(),
            "chain count diverges on {text}"
        );
    }
}

#[test]
fn formula_values_without_grids_still_match_letter_chains() {
    // no simple grid exists at these dimensions, yet the chains are still
    // countable by hand and must equal the matrix formula
    for text in [
        "tnc 2 3", "tnc 2 4", "tkc 2 2", "ms 3 2", "tg 4 2 1", "kb 4 2 1",
    ] {
        let spec: GridSpec = text.parse().unwrap();
        assert!(!spec.is_geometric());
        assert_eq!(
            count_of(text),
            word_chain_count(&spec).to_string(),
            "chain count diverges on {text}"
        );
    }
    assert_eq!(word_chain_count(&"tnc 2 3".parse().unwrap()), 13);
}

#[test]
fn factors_and_code_matrices_correspond_one_to_one() {
    for text in [
        "rg 2 3", "rg 3 4", "tkc 2 3", "ms 2 3", "tnc 3 2", "tg 3 3 1", "kb 3 3 1",
    ] {
        let spec: GridSpec = text.parse().unwrap();
        let graph = GridGraph::build(&spec).unwrap();
        let mut encodings = BTreeSet::new();
        let mut factors = 0u128;
        for_each_two_factor(&graph, &Limits::default(), |factor| {
            factors += 1;
            encodings.insert(encode(&graph, factor).unwrap().to_string());
        })
        .unwrap();
        assert_eq!(
            encodings.len() as u128,
            factors,
            "{text}: encoding collides"
        );
        assert_eq!(census(&graph, &Limits::default()).unwrap().total, factors);
        assert_eq!(count_of(text), factors.to_string(), "{text}");
    }
}

#[test]
fn chain_enumeration_agrees_with_the_census_on_a_twisted_pair() {
    // same grid, all twists: three routes, one answer each
    for p in 0..4 {
        let spec: GridSpec = format!("kb 4 3 {p}").parse().unwrap();
        let graph = GridGraph::build(&spec).unwrap();
        let total = census(&graph, &Limits::default()).unwrap().total;
        assert_eq!(word_chain_count(&spec) as u128, total, "kb twist {p}");
        assert_eq!(count_of(&format!("kb 4 3 {p}")), total.to_string());
    }
}

#[test]
fn circular_and_linear_alphabets_nest() {
    // every path column is also a ring column; the ring alphabet adds the
    // words whose vertical edges cross the row seam
    for m in 1..=7 {
        let linear: BTreeSet<String> = enumerate_columns(m, WordKind::Linear)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        let circular: BTreeSet<String> = enumerate_columns(m, WordKind::Circular)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert!(linear.is_subset(&circular), "m={m}");
        assert_eq!(circular.len() as u64, WordKind::Circular.word_count(m));
        assert_eq!(linear.len() as u64, WordKind::Linear.word_count(m));
    }
}
