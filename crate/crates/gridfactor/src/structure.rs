//! Connectivity structure of the profile graph and its verification.
//!
//! The transfer matrix induces a graph on profile words (arcs where an entry
//! is nonzero). Its shape is fully predicted by word arithmetic: components
//! group words by the zero-imbalance statistic `Z` — by `|Z|` for path
//! columns and even-width rings, by the parity of `Z` for odd-width rings —
//! with closed-form binomial sizes, a two-coloring of the `|Z| = s ≥ 1`
//! components along the sign of `Z`, and, at odd widths, a complement map
//! carrying one ring component onto the other entry-for-entry.
//!
//! [`verify_matrix_structure`] recomputes all of that from an actual matrix
//! and reports every discrepancy as data with a witness, never a panic.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde_json::json;

use crate::alphabet::{AlphaWord, BinaryWord, CodeLetter, WordKind};
use crate::config::MAX_WIDTH;
use crate::error::Error;
use crate::transfer::{build_matrix, TransferMatrix};

/// Which predicted group a component realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentLabel {
    /// The `Z = 0` group (path / even ring), or even-`Z` group (odd ring).
    Neutral,
    /// The odd-`Z` group of an odd-width ring.
    OddZ,
    /// The `|Z| = s` group, `s ≥ 1`.
    Level(u32),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Neutral => write!(f, "A"),
            ComponentLabel::OddZ => write!(f, "N"),
            ComponentLabel::Level(s) => write!(f, "{s}"),
        }
    }
}

/// One connected component of the profile graph.
#[derive(Debug, Clone)]
pub struct Component {
    /// Members sorted by word index.
    pub vertices: Vec<BinaryWord>,
    pub label: ComponentLabel,
    /// Two-coloring (red, green), when one exists.
    pub bipartition: Option<(Vec<BinaryWord>, Vec<BinaryWord>)>,
    pub has_all_zeros: bool,
    pub has_all_ones: bool,
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Everything the verification pass observed, violations included.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub m: usize,
    pub kind: WordKind,
    /// Ordered by size descending, then by smallest member.
    pub components: Vec<Component>,
    /// Words incident to no column at all.
    pub isolated: Vec<BinaryWord>,
    /// Odd-width rings: the entry-preserving complement pairing.
    pub isomorphism_witness: Option<Vec<(BinaryWord, BinaryWord)>>,
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        let components: Vec<_> = self
            .components
            .iter()
            .map(|c| {
                let mut contains = Vec::new();
                if c.has_all_zeros {
                    contains.push(BinaryWord::zeros(self.m).to_string());
                }
                if c.has_all_ones {
                    contains.push(BinaryWord::ones(self.m).to_string());
                }
                json!({
                    "size": c.size(),
                    "s_label": match c.label {
                        ComponentLabel::Neutral => json!("A"),
                        ComponentLabel::OddZ => json!("N"),
                        ComponentLabel::Level(s) => json!(s),
                    },
                    "vertices": words_json(&c.vertices),
                    "bipartition": c.bipartition.as_ref().map(|(red, green)| {
                        json!({"red": words_json(red), "green": words_json(green)})
                    }),
                    "contains": contains,
                })
            })
            .collect();
        json!({
            "m": self.m,
            "kind": self.kind.as_str(),
            "components": components,
            "isolated": words_json(&self.isolated),
            "isomorphism_witness": self.isomorphism_witness.as_ref().map(|pairs| {
                pairs
                    .iter()
                    .map(|(a, b)| json!([a.to_string(), b.to_string()]))
                    .collect::<Vec<_>>()
            }),
            "violations": self.violations,
        })
        .to_string()
    }
}

fn words_json(words: &[BinaryWord]) -> Vec<String> {
    words.iter().map(ToString::to_string).collect()
}

/// Connected components of the matrix support, isolated words excluded.
/// Ordered by size descending, then by smallest member index; members sorted.
pub fn components(matrix: &TransferMatrix) -> Vec<Vec<BinaryWord>> {
    let m = matrix.m();
    component_indices(matrix)
        .into_iter()
        .map(|comp| {
            comp.into_iter()
                .map(|i| BinaryWord::from_index(i, m))
                .collect()
        })
        .collect()
}

fn component_indices(matrix: &TransferMatrix) -> Vec<Vec<usize>> {
    let dim = matrix.dim();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for &(r, c, _) in matrix.cells() {
        adj[r as usize].push(c as usize);
        if r != c {
            adj[c as usize].push(r as usize);
        }
    }
    let mut seen = vec![false; dim];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..dim {
        if seen[start] || adj[start].is_empty() {
            continue;
        }
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            members.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps.sort_by_key(|c| (usize::MAX - c.len(), c[0]));
    comps
}

/// Two-color a component along its arcs, if no odd cycle (or loop) prevents
/// it. The red class is anchored at a positive-`Z` member when one exists.
pub fn bipartition(
    matrix: &TransferMatrix,
    component: &[BinaryWord],
) -> Option<(Vec<BinaryWord>, Vec<BinaryWord>)> {
    let m = matrix.m();
    let dim = matrix.dim();
    let mut member = vec![false; dim];
    for v in component {
        member[v.index()] = true;
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(r, c, _) in matrix.cells() {
        let (r, c) = (r as usize, c as usize);
        if member[r] && member[c] {
            if r == c {
                return None; // a loop is an odd cycle
            }
            edges.push((r, c));
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for &(r, c) in &edges {
        adj[r].push(c);
        adj[c].push(r);
    }

    let anchor = component
        .iter()
        .find(|v| v.z_value() > 0)
        .unwrap_or(&component[0])
        .index();
    let mut color: Vec<Option<bool>> = vec![None; dim];
    let mut starts = vec![anchor];
    starts.extend(component.iter().map(|v| v.index()));
    for start in starts {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(start == anchor || BinaryWord::from_index(start, m).z_value() > 0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut red = Vec::new();
    let mut green = Vec::new();
    for v in component {
        if color[v.index()] == Some(true) {
            red.push(*v);
        } else {
            green.push(*v);
        }
    }
    Some((red, green))
}

/// Check that complementation preserves every matrix entry, and return the
/// even-`Z` → odd-`Z` pairing as an explicit witness. Odd-width rings only.
pub fn complement_isomorphism(
    matrix: &TransferMatrix,
) -> Result<Vec<(BinaryWord, BinaryWord)>, Error> {
    if matrix.kind() != WordKind::Circular {
        return Err(Error::KindMismatch {
            op: "the complement pairing",
            need: "circular",
        });
    }
    let m = matrix.m();
    if m.is_multiple_of(2) {
        return Err(Error::OddWidthOnly {
            what: "the complement pairing",
            m,
        });
    }
    for (v, w, mult) in matrix.entries() {
        let got = matrix.entry(v.complemented(), w.complemented());
        if got != mult {
            return Err(Error::Internal(format!(
                "complementation breaks multiplicity at ({v}, {w}): {mult} vs {got}"
            )));
        }
    }
    Ok((0..matrix.dim())
        .map(|i| BinaryWord::from_index(i, m))
        .filter(|v| v.z_value() % 2 == 0)
        .map(|v| (v, v.complemented()))
        .collect())
}

/// Which group a word must land in, from word arithmetic alone.
fn expected_label(kind: WordKind, m: usize, v: BinaryWord) -> ComponentLabel {
    let z = v.z_value();
    if kind == WordKind::Circular && m % 2 == 1 {
        if z % 2 == 0 {
            ComponentLabel::Neutral
        } else {
            ComponentLabel::OddZ
        }
    } else if z == 0 {
        ComponentLabel::Neutral
    } else {
        ComponentLabel::Level(z.unsigned_abs())
    }
}

/// Closed-form size of the group a label names.
fn expected_size(kind: WordKind, m: usize, label: ComponentLabel) -> u64 {
    if kind == WordKind::Circular && m % 2 == 1 {
        return 1u64 << (m - 1);
    }
    match label {
        ComponentLabel::Neutral => binomial(m, m / 2),
        ComponentLabel::Level(s) if (s as usize) <= m / 2 => {
            if m.is_multiple_of(2) {
                2 * binomial(m, m / 2 - s as usize)
            } else {
                binomial(m + 1, m.div_ceil(2) - s as usize)
            }
        }
        _ => 0,
    }
}

fn expected_component_count(kind: WordKind, m: usize) -> usize {
    if kind == WordKind::Circular && m % 2 == 1 {
        2
    } else {
        m / 2 + 1
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        // exact at every step: acc * (n - i) = C(n, i+1) * (i + 1)
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Build the matrix and verify its structure end to end.
pub fn verify_structure(
    m: usize,
    kind: WordKind,
    width_cap: usize,
) -> Result<StructureReport, Error> {
    let matrix = build_matrix(m, kind, width_cap)?;
    Ok(verify_matrix_structure(&matrix))
}

/// Verify every structural prediction against an actual matrix. Violations
/// come back as readable witnesses inside the report.
pub fn verify_matrix_structure(matrix: &TransferMatrix) -> StructureReport {
    let m = matrix.m();
    let kind = matrix.kind();
    let dim = matrix.dim();
    let odd_ring = kind == WordKind::Circular && m % 2 == 1;
    let mut violations: Vec<String> = Vec::new();

    let comps = component_indices(matrix);
    let occupied = {
        let mut occ = vec![false; dim];
        for comp in &comps {
            for &i in comp {
                occ[i] = true;
            }
        }
        occ
    };
    let isolated: Vec<BinaryWord> = (0..dim)
        .filter(|&i| !occupied[i])
        .map(|i| BinaryWord::from_index(i, m))
        .collect();

    // Words incident to no column: exactly the alternating word of an
    // odd-width path alphabet, nothing else anywhere.
    let expected_isolated: Vec<BinaryWord> = if kind == WordKind::Linear && m % 2 == 1 {
        vec![BinaryWord::alternating(m)]
    } else {
        Vec::new()
    };
    if isolated != expected_isolated {
        violations.push(format!(
            "isolated words are [{}], expected [{}]",
            isolated
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            expected_isolated
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }

    // Label components by their members' classification; mixtures are
    // violations and the component keeps its first member's label.
    let mut labeled: Vec<(ComponentLabel, &Vec<usize>)> = Vec::new();
    for comp in &comps {
        let first = BinaryWord::from_index(comp[0], m);
        let label = expected_label(kind, m, first);
        for &i in &comp[1..] {
            let v = BinaryWord::from_index(i, m);
            if expected_label(kind, m, v) != label {
                violations.push(format!(
                    "component of {first} mixes groups: {v} (Z = {}) does not belong with {first} (Z = {})",
                    v.z_value(),
                    first.z_value()
                ));
                break;
            }
        }
        labeled.push((label, comp));
    }

    // The components must be exactly the predicted groups.
    let mut expected_groups: BTreeMap<ComponentLabel, Vec<usize>> = BTreeMap::new();
    for i in 0..dim {
        let v = BinaryWord::from_index(i, m);
        if expected_isolated.contains(&v) {
            continue;
        }
        expected_groups
            .entry(expected_label(kind, m, v))
            .or_default()
            .push(i);
    }
    let mut actual_groups: BTreeMap<ComponentLabel, Vec<usize>> = BTreeMap::new();
    for (label, comp) in &labeled {
        let slot = actual_groups.entry(*label).or_default();
        if !slot.is_empty() {
            violations.push(format!(
                "group {label} is split across several components (one starts at {})",
                BinaryWord::from_index(comp[0], m)
            ));
        }
        slot.extend(comp.iter().copied());
    }
    for slot in actual_groups.values_mut() {
        slot.sort_unstable();
    }
    for (label, expect) in &expected_groups {
        match actual_groups.get(label) {
            None => violations.push(format!("no component realizes group {label}")),
            Some(actual) if actual != expect => {
                let witness = expect
                    .iter()
                    .find(|i| !actual.contains(i))
                    .or_else(|| actual.iter().find(|i| !expect.contains(i)));
                violations.push(format!(
                    "component for group {label} has {} words, predicted {}{}",
                    actual.len(),
                    expect.len(),
                    witness
                        .map(|&i| format!(" (first difference: {})", BinaryWord::from_index(i, m)))
                        .unwrap_or_default()
                ));
            }
            Some(_) => {}
        }
    }
    for label in actual_groups.keys() {
        if !expected_groups.contains_key(label) {
            violations.push(format!("unpredicted group {label} appears"));
        }
    }
    if comps.len() != expected_component_count(kind, m) {
        violations.push(format!(
            "{} components, expected {}",
            comps.len(),
            expected_component_count(kind, m)
        ));
    }

    // Sizes must also match the closed forms, independently of the grouping.
    for (label, comp) in &labeled {
        let want = expected_size(kind, m, *label);
        if comp.len() as u64 != want {
            violations.push(format!(
                "component {label} has {} words, closed form gives {want}",
                comp.len()
            ));
        }
    }

    // Strong connectivity when entries are read as arcs, both directions.
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); dim];
    let mut in_adj: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for &(r, c, _) in matrix.cells() {
        out_adj[r as usize].push(c as usize);
        in_adj[c as usize].push(r as usize);
    }
    for comp in &comps {
        for (adj, dir) in [(&out_adj, "forward"), (&in_adj, "backward")] {
            let reached = reach(adj, comp[0], dim);
            if let Some(&missing) = comp.iter().find(|&&i| !reached[i]) {
                violations.push(format!(
                    "component of {} is not strongly connected: {} unreachable {dir}",
                    BinaryWord::from_index(comp[0], m),
                    BinaryWord::from_index(missing, m)
                ));
            }
        }
    }

    // Reversal is an automorphism: always the same component; opposite color
    // classes at even widths, the same class at odd widths.
    let mut comp_of = vec![usize::MAX; dim];
    for (id, comp) in comps.iter().enumerate() {
        for &i in comp {
            comp_of[i] = id;
        }
    }
    for i in 0..dim {
        if !occupied[i] {
            continue;
        }
        let v = BinaryWord::from_index(i, m);
        let r = v.reversed().index();
        if comp_of[i] != comp_of[r] {
            violations.push(format!(
                "{v} and its reversal {} are in different components",
                v.reversed()
            ));
        }
    }

    // Assemble per-component data.
    let mut components_out: Vec<Component> = Vec::new();
    for (label, comp) in &labeled {
        let vertices: Vec<BinaryWord> =
            comp.iter().map(|&i| BinaryWord::from_index(i, m)).collect();
        let parts = bipartition(matrix, &vertices);
        match label {
            ComponentLabel::Level(s) => match &parts {
                None => violations.push(format!(
                    "component {label} admits no two-coloring (an odd closed walk exists)"
                )),
                Some((red, green)) => {
                    let want_red: Vec<BinaryWord> = vertices
                        .iter()
                        .copied()
                        .filter(|v| v.z_value() == *s as i32)
                        .collect();
                    let want_green: Vec<BinaryWord> = vertices
                        .iter()
                        .copied()
                        .filter(|v| v.z_value() == -(*s as i32))
                        .collect();
                    if *red != want_red || *green != want_green {
                        violations.push(format!(
                            "two-coloring of component {label} does not split along the sign of Z"
                        ));
                    } else {
                        for v in red {
                            let rev = v.reversed();
                            let rev_is_red = want_red.contains(&rev);
                            if m.is_multiple_of(2) && rev_is_red {
                                violations.push(format!(
                                    "{v} and its reversal {rev} share a color class at even width"
                                ));
                            }
                            if m % 2 == 1 && !rev_is_red {
                                violations.push(format!(
                                    "{v} and its reversal {rev} are in different color classes at odd width"
                                ));
                            }
                        }
                    }
                }
            },
            // Neutral and odd-Z components carry loops (the all-`b` and
            // all-`e` columns), so a two-coloring must be impossible.
            _ => {
                if parts.is_some() {
                    violations.push(format!("component {label} is unexpectedly two-colorable"));
                }
            }
        }
        let zeros = BinaryWord::zeros(m);
        let ones = BinaryWord::ones(m);
        components_out.push(Component {
            has_all_zeros: vertices.contains(&zeros),
            has_all_ones: vertices.contains(&ones),
            label: *label,
            bipartition: parts,
            vertices,
        });
    }

    // Anchor membership per kind.
    if kind == WordKind::Circular {
        if m.is_multiple_of(2) {
            if let Some(neutral) = components_out
                .iter()
                .find(|c| c.label == ComponentLabel::Neutral)
            {
                if !neutral.has_all_zeros || !neutral.has_all_ones {
                    violations.push(
                        "the even-ring neutral component misses an all-equal word".to_string(),
                    );
                }
            }
        } else {
            let a_has_ones = components_out
                .iter()
                .any(|c| c.label == ComponentLabel::Neutral && c.has_all_ones);
            let n_has_zeros = components_out
                .iter()
                .any(|c| c.label == ComponentLabel::OddZ && c.has_all_zeros);
            if !a_has_ones {
                violations.push("the even-Z ring component misses the all-ones word".to_string());
            }
            if !n_has_zeros {
                violations.push("the odd-Z ring component misses the all-zeros word".to_string());
            }
        }
    }

    // Odd rings: the complement map must carry one component onto the other
    // preserving every multiplicity.
    let mut witness = None;
    if odd_ring {
        match complement_isomorphism(matrix) {
            Ok(pairs) => {
                for (v, w) in &pairs {
                    if comp_of[v.index()] == comp_of[w.index()] {
                        violations.push(format!(
                            "complement pair ({v}, {w}) stays inside one component"
                        ));
                    }
                }
                witness = Some(pairs);
            }
            Err(e) => violations.push(e.to_string()),
        }
    }

    StructureReport {
        m,
        kind,
        components: components_out,
        isolated,
        isomorphism_witness: witness,
        violations,
    }
}

fn reach(adj: &[Vec<usize>], start: usize, dim: usize) -> Vec<bool> {
    let mut seen = vec![false; dim];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Role of a canonical anchor word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Canonical red word of its level: `Z = +s`.
    Queen,
    /// Canonical green word of its level: `Z = -s` (odd widths).
    CourtLady,
}

/// A canonical anchor word together with its coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialWord {
    pub role: Role,
    pub m: usize,
    pub s: usize,
    pub word: BinaryWord,
}

fn check_width(m: usize) -> Result<(), Error> {
    if m == 0 {
        return Err(Error::WidthZero);
    }
    if m > MAX_WIDTH {
        return Err(Error::WidthUnsupported { m, max: MAX_WIDTH });
    }
    Ok(())
}

/// The canonical `Z = +s` word: alternate `01` for `s` (even width) or
/// `s - 1` (odd width) pairs, then pad with zeros.
pub fn queen(m: usize, s: usize) -> Result<SpecialWord, Error> {
    check_width(m)?;
    let (lo, hi) = if m.is_multiple_of(2) {
        (0, m / 2 + 1)
    } else {
        (1, m / 2 + 2)
    };
    if s < lo || s >= hi {
        return Err(Error::LevelRange {
            role: "queen words",
            m,
            s,
            lo,
            hi,
        });
    }
    let pairs = if m.is_multiple_of(2) { s } else { s - 1 };
    let word = BinaryWord::from_bit_iter(m, (1..=m).map(|pos| pos <= 2 * pairs && pos % 2 == 0));
    debug_assert_eq!(word.z_value(), s as i32);
    Ok(SpecialWord {
        role: Role::Queen,
        m,
        s,
        word,
    })
}

/// The canonical `Z = -s` word of an odd width: alternate `10` for `s + 1`
/// pairs, then pad with zeros (the final pair may be cut short by the edge).
pub fn court_lady(m: usize, s: usize) -> Result<SpecialWord, Error> {
    check_width(m)?;
    if m.is_multiple_of(2) {
        return Err(Error::OddWidthOnly {
            what: "court-lady words",
            m,
        });
    }
    let (lo, hi) = (0, m / 2 + 1);
    if s >= hi {
        return Err(Error::LevelRange {
            role: "court-lady words",
            m,
            s,
            lo,
            hi,
        });
    }
    let word = BinaryWord::from_bit_iter(m, (1..=m).map(|pos| pos <= 2 * (s + 1) && pos % 2 == 1));
    debug_assert_eq!(word.z_value(), -(s as i32));
    Ok(SpecialWord {
        role: Role::CourtLady,
        m,
        s,
        word,
    })
}

/// The ring column `f (af)^s a b^(m-2s-2)` whose inlet is the level-`s`
/// court lady and whose outlet is the level-`s+2` queen: a witness that the
/// groups of equal `Z`-parity connect across levels in odd-width rings.
pub fn connecting_word(m: usize, s: usize) -> Result<AlphaWord, Error> {
    check_width(m)?;
    if m.is_multiple_of(2) {
        return Err(Error::OddWidthOnly {
            what: "connecting columns",
            m,
        });
    }
    let (lo, hi) = (0, m / 2);
    if s >= hi {
        return Err(Error::LevelRange {
            role: "connecting columns",
            m,
            s,
            lo,
            hi,
        });
    }
    let mut letters = vec![CodeLetter::F];
    for _ in 0..s {
        letters.push(CodeLetter::A);
        letters.push(CodeLetter::F);
    }
    letters.push(CodeLetter::A);
    letters.extend(std::iter::repeat_n(CodeLetter::B, m - 2 * s - 2));
    AlphaWord::new(letters, WordKind::Circular)
}
