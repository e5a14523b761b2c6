//! The release gate. Each test re-derives its expected values from scratch
//! (binomials, Z statistics, reachability, brute-force tallies) so a defect
//! in the library cannot hide behind its own verification helpers, and each
//! prints one `criterion N: PASS` line on success.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;

use gridfactor::alphabet::{ud_arc, BinaryWord, WordKind};
use gridfactor::counting;
use gridfactor::family::GridSpec;
use gridfactor::oracle::{census, decode, validate, CodeMatrix, GridGraph};
use gridfactor::structure::{
    complement_isomorphism, connecting_word, court_lady, queen, verify_structure, Component,
    ComponentLabel, StructureReport,
};
use gridfactor::transfer::{build_matrix, enumerate_columns};
use gridfactor::Limits;

const WIDTH_CAP: usize = 14;

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // every partial product is itself a binomial, so the division is exact
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn spec(text: &str) -> GridSpec {
    text.parse().unwrap()
}

fn clean_report(m: usize, kind: WordKind) -> StructureReport {
    let report = verify_structure(m, kind, WIDTH_CAP).unwrap();
    assert!(report.is_clean(), "m={m} {kind:?}: {:?}", report.violations);
    report
}

fn component(report: &StructureReport, label: ComponentLabel) -> &Component {
    let mut hits = report.components.iter().filter(|c| c.label == label);
    let comp = hits
        .next()
        .unwrap_or_else(|| panic!("no component {label}"));
    assert!(hits.next().is_none(), "duplicate component {label}");
    comp
}

#[test]
fn criterion_1_column_word_counts_match_the_closed_form() {
    for m in 1..=12 {
        let circular = enumerate_columns(m, WordKind::Circular).unwrap().count() as u64;
        let linear = enumerate_columns(m, WordKind::Linear).unwrap().count() as u64;
        let signed = if m % 2 == 0 {
            3u64.pow(m as u32) + 1
        } else {
            3u64.pow(m as u32) - 1
        };
        assert_eq!(circular, signed, "circular m={m}");
        assert_eq!(linear, signed / 2, "linear m={m}");
    }
    println!("criterion 1: PASS");
}

#[test]
fn criterion_2_even_rings_split_into_signed_levels() {
    for m in [2usize, 4, 6, 8, 10] {
        let report = clean_report(m, WordKind::Circular);
        assert_eq!(report.components.len(), m / 2 + 1, "m={m}");
        assert!(report.isolated.is_empty(), "m={m}");

        let neutral = component(&report, ComponentLabel::Neutral);
        assert_eq!(neutral.size() as u64, binom(m, m / 2), "m={m} neutral size");
        assert!(neutral.vertices.contains(&BinaryWord::zeros(m)), "m={m}");
        assert!(neutral.vertices.contains(&BinaryWord::ones(m)), "m={m}");

        for s in 1..=m / 2 {
            let comp = component(&report, ComponentLabel::Level(s as u32));
            assert_eq!(comp.size() as u64, 2 * binom(m, m / 2 - s), "m={m} s={s}");

            let (red, green) = comp
                .bipartition
                .as_ref()
                .unwrap_or_else(|| panic!("m={m} s={s}: level component is not two-colorable"));
            assert_eq!(red.len(), green.len(), "m={m} s={s}");
            let red: BTreeSet<BinaryWord> = red.iter().copied().collect();
            let green: BTreeSet<BinaryWord> = green.iter().copied().collect();
            for v in &comp.vertices {
                let class = if red.contains(v) { &red } else { &green };
                let other = if red.contains(v) { &green } else { &red };
                let want = if red.contains(v) {
                    s as i32
                } else {
                    -(s as i32)
                };
                assert_eq!(v.z_value(), want, "m={m} s={s} v={v}");
                assert!(class.contains(v) ^ other.contains(v), "m={m} v={v}");
                // reversal swaps the parity of every position, hence the class
                assert!(other.contains(&v.reversed()), "m={m} s={s} v={v}");
            }
        }
    }
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_odd_rings_pair_up_under_complement() {
    for m in [1usize, 3, 5, 7, 9, 11] {
        let report = clean_report(m, WordKind::Circular);
        assert_eq!(report.components.len(), 2, "m={m}");
        assert!(report.isolated.is_empty(), "m={m}");
        for comp in &report.components {
            assert_eq!(comp.size() as u64, 1 << (m - 1), "m={m} {}", comp.label);
            let want_odd = comp.label == ComponentLabel::OddZ;
            for v in &comp.vertices {
                assert_eq!(v.z_value().rem_euclid(2) == 1, want_odd, "m={m} v={v}");
            }
        }

        let matrix = build_matrix(m, WordKind::Circular, WIDTH_CAP).unwrap();
        for (v, w, mult) in matrix.entries() {
            assert_eq!(
                matrix.entry(v.complemented(), w.complemented()),
                mult,
                "m={m}: complement breaks the arc {v} -> {w}"
            );
        }

        let pairs = complement_isomorphism(&matrix).unwrap();
        assert_eq!(pairs.len(), 1 << (m - 1), "m={m}");
        assert_eq!(
            report.isomorphism_witness.as_deref(),
            Some(&pairs[..]),
            "m={m}"
        );
        for (v, w) in &pairs {
            assert_eq!(*w, v.complemented(), "m={m}");
            assert_eq!(v.z_value().rem_euclid(2), 0, "m={m} v={v}");
            assert_eq!(w.z_value().rem_euclid(2), 1, "m={m} w={w}");
        }
    }
    println!("criterion 3: PASS");
}

#[test]
fn criterion_4_path_alphabets_split_into_unsigned_levels() {
    for m in 2..=10 {
        let report = clean_report(m, WordKind::Linear);
        assert_eq!(report.components.len(), m / 2 + 1, "m={m}");

        let expected = |s: usize| -> u64 {
            match (m % 2, s) {
                (0, 0) => binom(m, m / 2),
                (0, _) => 2 * binom(m, m / 2 - s),
                (_, 0) => binom(m + 1, m.div_ceil(2)) / 2,
                (_, _) => binom(m + 1, m.div_ceil(2) - s),
            }
        };
        for s in 0..=m / 2 {
            let label = if s == 0 {
                ComponentLabel::Neutral
            } else {
                ComponentLabel::Level(s as u32)
            };
            let comp = component(&report, label);
            assert_eq!(comp.size() as u64, expected(s), "m={m} s={s}");
            for v in &comp.vertices {
                assert!(comp.vertices.contains(&v.reversed()), "m={m} s={s} v={v}");
            }
        }

        if m % 2 == 1 {
            assert_eq!(report.isolated, vec![BinaryWord::alternating(m)], "m={m}");
        } else {
            assert!(report.isolated.is_empty(), "m={m}");
        }
    }
    println!("criterion 4: PASS");
}

/// Forward/backward reachability inside one undirected component.
fn reaches_all(adj: &[Vec<usize>], members: &BTreeSet<usize>, start: usize) -> bool {
    let mut seen = BTreeSet::from([start]);
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for &w in &adj[v] {
            if members.contains(&w) && seen.insert(w) {
                queue.push(w);
            }
        }
    }
    seen == *members
}

#[test]
fn criterion_5_matrix_invariants_hold_and_match_enumeration() {
    for m in 1..=10 {
        for kind in [WordKind::Linear, WordKind::Circular] {
            let matrix = build_matrix(m, kind, WIDTH_CAP).unwrap();
            let cap = if kind == WordKind::Linear { 1 } else { 2 };

            let mut out = vec![Vec::new(); matrix.dim()];
            let mut inc = vec![Vec::new(); matrix.dim()];
            for (v, w, mult) in matrix.entries() {
                assert!(mult <= cap, "m={m} {kind:?}: entry {v} -> {w} = {mult}");
                assert_eq!(
                    matrix.entry(w, v),
                    mult,
                    "m={m} {kind:?}: asymmetric at {v},{w}"
                );
                out[v.index()].push(w.index());
                inc[w.index()].push(v.index());
            }

            for comp in gridfactor::structure::components(&matrix) {
                let members: BTreeSet<usize> = comp.iter().map(|v| v.index()).collect();
                let start = comp[0].index();
                assert!(
                    reaches_all(&out, &members, start),
                    "m={m} {kind:?}: not forward-connected"
                );
                assert!(
                    reaches_all(&inc, &members, start),
                    "m={m} {kind:?}: not backward-connected"
                );
            }

            if m <= 8 {
                let mut tally: BTreeMap<(usize, usize), u8> = BTreeMap::new();
                for col in enumerate_columns(m, kind).unwrap() {
                    *tally
                        .entry((col.inlet().index(), col.outlet().index()))
                        .or_insert(0) += 1;
                }
                let from_matrix: BTreeMap<(usize, usize), u8> = matrix
                    .entries()
                    .map(|(v, w, mult)| ((v.index(), w.index()), mult))
                    .collect();
                assert_eq!(from_matrix, tally, "m={m} {kind:?}");
                assert!(
                    matrix.invariant_violations(true).is_empty(),
                    "m={m} {kind:?}"
                );
            }
        }
    }
    println!("criterion 5: PASS");
}

#[test]
fn criterion_6_formula_counts_equal_the_brute_force_census() {
    let mut specs: Vec<GridSpec> = Vec::new();
    for m in 2..=5 {
        for n in 1..=5 {
            specs.push(spec(&format!("rg {m} {n}")));
        }
    }
    for family in ["tkc", "ms"] {
        for m in 2..=4 {
            for n in 3..=4 {
                specs.push(spec(&format!("{family} {m} {n}")));
            }
        }
    }
    for m in 3..=5 {
        for n in 3..=4 {
            specs.push(spec(&format!("tnc {m} {n}")));
        }
    }
    for family in ["tg", "kb"] {
        for m in 3..=4 {
            for p in 0..m {
                for n in 3..=4 {
                    specs.push(spec(&format!("{family} {m} {n} {p}")));
                }
            }
        }
    }

    let limits = Limits::default();
    assert_eq!(specs.len(), 66);
    for grid in &specs {
        let formula = counting::count(grid, &limits).unwrap();
        let brute = census(&GridGraph::build(grid).unwrap(), &limits).unwrap();
        assert_eq!(formula.value.to_string(), brute.total.to_string(), "{grid}");
    }
    println!("criterion 6: PASS");
}

#[test]
fn criterion_7_reference_encodings_decode_and_walk_exactly() {
    let klein = spec("kb 4 3 1");
    let code = CodeMatrix::parse("bfdb cabb dfac").unwrap();
    assert_eq!(validate(&klein, &code), Ok(()));
    let graph = GridGraph::build(&klein).unwrap();
    let factor = decode(&graph, &code).unwrap();
    assert_eq!(factor.edge_count(), 12);
    assert_eq!(factor.cycle_count(&graph), 2);
    let walk: Vec<String> = code.outlet_walk().iter().map(|w| w.to_string()).collect();
    assert_eq!(walk, ["0000", "1100", "0011"]);

    let torus = spec("tg 4 3 0");
    let code = CodeMatrix::parse("bfdb cabb feab").unwrap();
    assert_eq!(validate(&torus, &code), Ok(()));
    let graph = GridGraph::build(&torus).unwrap();
    let factor = decode(&graph, &code).unwrap();
    assert_eq!(factor.edge_count(), 12);
    assert_eq!(factor.cycle_count(&graph), 1);
    let walk: Vec<String> = code.outlet_walk().iter().map(|w| w.to_string()).collect();
    assert_eq!(walk, ["0000", "1100", "0110"]);

    println!("criterion 7: PASS");
}

#[test]
fn criterion_8_connecting_columns_join_ladies_to_queens() {
    for m in (3..=11).step_by(2) {
        for s in 0..m / 2 {
            let column = connecting_word(m, s).unwrap();
            assert_eq!(column.kind(), WordKind::Circular);
            let letters = column.letters();
            assert_eq!(letters.len(), m);
            for row in 0..m {
                assert!(
                    ud_arc(letters[row], letters[(row + 1) % m]),
                    "m={m} s={s}: rows {} and {} disagree",
                    row + 1,
                    (row + 1) % m + 1
                );
            }
            assert_eq!(
                column.inlet(),
                court_lady(m, s).unwrap().word,
                "m={m} s={s}"
            );
            assert_eq!(
                column.outlet(),
                queen(m, s + 2).unwrap().word,
                "m={m} s={s}"
            );
        }
        assert!(connecting_word(m, m / 2).is_err(), "m={m}");
    }
    println!("criterion 8: PASS");
}

#[test]
fn criterion_9_output_is_byte_identical_across_threads_and_runs() {
    let commands: [&[&str]; 5] = [
        &[
            "matrix", "--m", "6", "--kind", "circular", "--output", "json",
        ],
        &[
            "count", "--family", "tg", "--m", "4", "--n", "6", "--p", "1", "--output", "json",
        ],
        &["verify", "--m-max", "4", "--output", "json"],
        &[
            "sweep", "--family", "kb", "--m", "3", "--n-from", "1", "--n-to", "6", "--p", "2",
        ],
        &[
            "oracle",
            "--family",
            "tg",
            "--m",
            "3",
            "--n",
            "3",
            "--p",
            "0",
            "--histogram",
            "--output",
            "json",
        ],
    ];
    for args in commands {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "1"] {
            let out = Command::new(env!("CARGO_BIN_EXE_gridfactor"))
                .args(args)
                .args(["--threads", threads])
                .env_remove("GRIDFACTOR_CACHE_DIR")
                .output()
                .expect("binary runs");
            assert_eq!(out.status.code(), Some(0), "{args:?}");
            assert!(!out.stdout.is_empty(), "{args:?}");
            outputs.push(out.stdout);
        }
        assert_eq!(
            outputs[0], outputs[1],
            "{args:?}: threads changed the bytes"
        );
        assert_eq!(
            outputs[0], outputs[2],
            "{args:?}: a rerun changed the bytes"
        );
    }
    println!("criterion 9: PASS");
}
