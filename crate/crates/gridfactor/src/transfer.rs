//! The quotient transfer matrix over inlet/outlet profiles.
//!
//! Columns with equal (inlet, outlet) profile pairs are interchangeable for
//! counting, so the column digraph collapses onto a `2^m x 2^m` integer
//! matrix: `entry(v, w)` is the number of valid column words with inlet `v`
//! and outlet `w`. Path columns give 0/1 entries; ring columns 0/1/2.
//!
//! Entries are computed twice by independent routes — direct enumeration of
//! every column word ([`build_matrix`]) and positionwise constraint
//! propagation ([`multiplicity`]) — and the two are cross-checked in tests
//! rather than assumed equal.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::alphabet::{ud_arc, AlphaWord, BinaryWord, CodeLetter, WordKind};
use crate::config::MAX_WIDTH;
use crate::error::Error;

/// Bumped when the serialized layout changes.
pub const FORMAT_VERSION: u32 = 1;
/// Bumped if the letter incidence table is ever re-pinned; stored alongside
/// cached matrices so stale files are rejected instead of silently reused.
pub const LETTER_TABLE_VERSION: u32 = 1;
/// Serialized index convention: a profile word maps to the integer with its
/// position-1 bit most significant, so `0^m` is row 0.
pub const INDEX_ORDER: &str = "msb-first-position-1";

/// Sparse symmetric matrix of column multiplicities, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    m: usize,
    kind: WordKind,
    /// `(row, col, multiplicity)` sorted by `(row, col)`.
    entries: Vec<(u32, u32, u8)>,
    /// CSR offsets: row `i` occupies `entries[row_start[i]..row_start[i+1]]`.
    row_start: Vec<usize>,
}

impl TransferMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    /// Matrix dimension `2^m`.
    pub fn dim(&self) -> usize {
        1 << self.m
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Multiplicity for an (inlet, outlet) profile pair; 0 when absent.
    pub fn entry(&self, v: BinaryWord, w: BinaryWord) -> u8 {
        assert_eq!(v.len(), self.m);
        assert_eq!(w.len(), self.m);
        self.entry_at(v.index(), w.index())
    }

    /// Multiplicity by raw indices; 0 when absent.
    pub fn entry_at(&self, row: usize, col: usize) -> u8 {
        let slice = &self.entries[self.row_start[row]..self.row_start[row + 1]];
        match slice.binary_search_by_key(&(col as u32), |&(_, c, _)| c) {
            Ok(i) => slice[i].2,
            Err(_) => 0,
        }
    }

    /// Nonzero cells of one row as `(column index, multiplicity)`.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.entries[self.row_start[row]..self.row_start[row + 1]]
            .iter()
            .map(|&(_, c, m)| (c as usize, m))
    }

    /// Raw sorted `(row, col, multiplicity)` triples for numeric kernels.
    pub(crate) fn cells(&self) -> &[(u32, u32, u8)] {
        &self.entries
    }

    /// All nonzero cells in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (BinaryWord, BinaryWord, u8)> + '_ {
        self.entries.iter().map(move |&(r, c, mult)| {
            (
                BinaryWord::from_index(r as usize, self.m),
                BinaryWord::from_index(c as usize, self.m),
                mult,
            )
        })
    }

    /// Sum of all multiplicities; equals the number of valid column words.
    pub fn total_mass(&self) -> u64 {
        self.entries.iter().map(|&(_, _, m)| u64::from(m)).sum()
    }

    /// Indices that appear in at least one nonzero cell (row or column).
    pub fn occupied(&self) -> Vec<usize> {
        let mut seen = vec![false; self.dim()];
        for &(r, c, _) in &self.entries {
            seen[r as usize] = true;
            seen[c as usize] = true;
        }
        (0..self.dim()).filter(|&i| seen[i]).collect()
    }

    fn from_counts(
        m: usize,
        kind: WordKind,
        counts: BTreeMap<(u32, u32), u64>,
    ) -> Result<TransferMatrix, Error> {
        let limit = match kind {
            WordKind::Linear => 1,
            WordKind::Circular => 2,
        };
        let dim = 1usize << m;
        let mut entries = Vec::with_capacity(counts.len());
        for ((r, c), mult) in counts {
            if mult == 0 {
                continue;
            }
            if mult > limit {
                return Err(Error::Internal(format!(
                    "multiplicity {mult} at ({r}, {c}) exceeds the {kind} bound {limit}"
                )));
            }
            entries.push((r, c, mult as u8));
        }
        let mut row_start = vec![0usize; dim + 1];
        for &(r, _, _) in &entries {
            row_start[r as usize + 1] += 1;
        }
        for i in 0..dim {
            row_start[i + 1] += row_start[i];
        }
        Ok(TransferMatrix {
            m,
            kind,
            entries,
            row_start,
        })
    }

    /// Invariants every correctly built matrix satisfies, reported as data.
    /// `crosscheck` additionally recomputes every cell of the full `2^m x
    /// 2^m` grid by constraint propagation (quadratic in the dimension).
    pub fn invariant_violations(&self, crosscheck: bool) -> Vec<String> {
        let mut out = Vec::new();
        let m = self.m;

        let mass = self.total_mass();
        let want = self.kind.word_count(m);
        if mass != want {
            out.push(format!(
                "total multiplicity {mass} differs from the column word count {want}"
            ));
        }

        let limit = match self.kind {
            WordKind::Linear => 1u8,
            WordKind::Circular => 2,
        };
        for (v, w, mult) in self.entries() {
            if mult == 0 || mult > limit {
                out.push(format!("entry ({v}, {w}) = {mult} outside 1..={limit}"));
            }
            if self.entry(w, v) != mult {
                out.push(format!(
                    "asymmetry: entry ({v}, {w}) = {mult} but entry ({w}, {v}) = {}",
                    self.entry(w, v)
                ));
            }
            // Reflecting every letter of a column reverses both profiles.
            if self.entry(v.reversed(), w.reversed()) != mult {
                out.push(format!("reversal equivariance fails at ({v}, {w})"));
            }
            if mult == 2
                && (self.kind != WordKind::Circular
                    || !m.is_multiple_of(2)
                    || w != v.complemented())
            {
                out.push(format!(
                    "entry ({v}, {w}) = 2 outside the even-ring complement-pair case"
                ));
            }
            if self.kind == WordKind::Circular {
                // Rotating every row of a ring column rotates both profiles.
                if self.entry(v.rotate_left(1), w.rotate_left(1)) != mult {
                    out.push(format!("rotation equivariance fails at ({v}, {w})"));
                }
            }
        }

        // A double entry sits at every complement pair of an even-width ring.
        if self.kind == WordKind::Circular && m.is_multiple_of(2) {
            for i in 0..self.dim() {
                let v = BinaryWord::from_index(i, m);
                if self.entry(v, v.complemented()) != 2 {
                    out.push(format!(
                        "expected a double entry at the complement pair ({v}, {})",
                        v.complemented()
                    ));
                }
            }
        }

        // Occupied index set: every profile word occurs, except that the
        // alternating word supports no path column when m is odd.
        let occupied = self.occupied();
        let expected: Vec<usize> = match (self.kind, m % 2) {
            (WordKind::Linear, 1) => {
                let skip = BinaryWord::alternating(m).index();
                (0..self.dim()).filter(|&i| i != skip).collect()
            }
            _ => (0..self.dim()).collect(),
        };
        if occupied != expected {
            out.push(format!(
                "occupied index set has {} words, expected {}",
                occupied.len(),
                expected.len()
            ));
        }

        if crosscheck {
            for i in 0..self.dim() {
                let v = BinaryWord::from_index(i, m);
                for j in 0..self.dim() {
                    let w = BinaryWord::from_index(j, m);
                    let prop = multiplicity(v, w, self.kind).expect("equal lengths");
                    if prop != self.entry_at(i, j) {
                        out.push(format!(
                            "propagation gives {prop} at ({v}, {w}) but enumeration stored {}",
                            self.entry_at(i, j)
                        ));
                    }
                }
            }
        }

        out
    }

    /// Canonical JSON serialization; byte-identical for equal matrices.
    pub fn to_json(&self) -> String {
        let file = MatrixFile {
            format_version: FORMAT_VERSION,
            letter_table_version: LETTER_TABLE_VERSION,
            m: self.m,
            kind: self.kind.as_str().to_string(),
            order: INDEX_ORDER.to_string(),
            entries: self
                .entries()
                .map(|(v, w, mult)| (v.to_string(), w.to_string(), mult))
                .collect(),
            checksum: self.checksum(),
        };
        serde_json::to_string(&file).expect("matrix serialization cannot fail")
    }

    /// SHA-256 over the canonical content (versions, shape, sorted entries).
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "gridfactor-matrix;format={FORMAT_VERSION};letters={LETTER_TABLE_VERSION};m={};kind={};order={INDEX_ORDER}\n",
            self.m, self.kind
        ));
        for (v, w, mult) in self.entries() {
            h.update(format!("{v},{w},{mult}\n"));
        }
        format!("{:x}", h.finalize())
    }

    /// Parse and fully re-verify a serialized matrix (shape, sortedness,
    /// entry bounds, checksum). Rejects rather than repairs.
    pub fn from_json(text: &str) -> Result<TransferMatrix, Error> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Corrupt(format!("unparsable: {e}")))?;
        if file.format_version != FORMAT_VERSION {
            return Err(Error::Corrupt(format!(
                "format version {} (expected {FORMAT_VERSION})",
                file.format_version
            )));
        }
        if file.letter_table_version != LETTER_TABLE_VERSION {
            return Err(Error::Corrupt(format!(
                "letter table version {} (expected {LETTER_TABLE_VERSION})",
                file.letter_table_version
            )));
        }
        if file.order != INDEX_ORDER {
            return Err(Error::Corrupt(format!(
                "unknown index order '{}'",
                file.order
            )));
        }
        let kind: WordKind = file
            .kind
            .parse()
            .map_err(|_| Error::Corrupt(format!("unknown kind '{}'", file.kind)))?;
        if file.m < 1 || file.m > MAX_WIDTH {
            return Err(Error::Corrupt(format!("width {} out of range", file.m)));
        }
        let mut counts = BTreeMap::new();
        let mut last: Option<(u32, u32)> = None;
        for (vs, ws, mult) in &file.entries {
            let v: BinaryWord = vs
                .parse()
                .map_err(|_| Error::Corrupt(format!("bad profile word '{vs}'")))?;
            let w: BinaryWord = ws
                .parse()
                .map_err(|_| Error::Corrupt(format!("bad profile word '{ws}'")))?;
            if v.len() != file.m || w.len() != file.m {
                return Err(Error::Corrupt(format!(
                    "entry ({vs}, {ws}) does not match width {}",
                    file.m
                )));
            }
            let key = (v.index() as u32, w.index() as u32);
            if let Some(prev) = last {
                if prev >= key {
                    return Err(Error::Corrupt(format!(
                        "entries not strictly sorted at ({vs}, {ws})"
                    )));
                }
            }
            last = Some(key);
            counts.insert(key, u64::from(*mult));
        }
        let matrix = TransferMatrix::from_counts(file.m, kind, counts)
            .map_err(|e| Error::Corrupt(e.to_string()))?;
        if matrix.checksum() != file.checksum {
            return Err(Error::Corrupt("checksum mismatch".to_string()));
        }
        Ok(matrix)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    format_version: u32,
    letter_table_version: u32,
    m: usize,
    kind: String,
    order: String,
    entries: Vec<(String, String, u8)>,
    checksum: String,
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

fn start_letters(kind: WordKind) -> &'static [CodeLetter] {
    match kind {
        WordKind::Linear => &CodeLetter::NO_UP,
        WordKind::Circular => &CodeLetter::ALL,
    }
}

fn leaf_ok(kind: WordKind, last: CodeLetter, first: CodeLetter) -> bool {
    match kind {
        WordKind::Linear => !last.down(),
        WordKind::Circular => ud_arc(last, first),
    }
}

/// Lazily yields every valid column word of width `m` in alphabetical order.
pub fn enumerate_columns(m: usize, kind: WordKind) -> Result<ColumnIter, Error> {
    check_width(m)?;
    Ok(ColumnIter {
        m,
        kind,
        cursor: Vec::with_capacity(m),
        letters: Vec::with_capacity(m),
        done: false,
        started: false,
    })
}

pub struct ColumnIter {
    m: usize,
    kind: WordKind,
    cursor: Vec<usize>,
    letters: Vec<CodeLetter>,
    done: bool,
    started: bool,
}

impl ColumnIter {
    fn candidates(&self, depth: usize) -> &'static [CodeLetter] {
        if depth == 0 {
            start_letters(self.kind)
        } else {
            crate::alphabet::ud_successors(self.letters[depth - 1])
        }
    }

    fn push_first(&mut self) {
        let depth = self.letters.len();
        let letter = self.candidates(depth)[0];
        self.cursor.push(0);
        self.letters.push(letter);
    }

    /// Move to the lexicographically next prefix, popping exhausted depths.
    fn advance(&mut self) -> bool {
        while let Some(top) = self.cursor.pop() {
            let depth = self.cursor.len();
            self.letters.pop();
            let cands = self.candidates(depth);
            if top + 1 < cands.len() {
                self.cursor.push(top + 1);
                self.letters.push(cands[top + 1]);
                return true;
            }
        }
        false
    }
}

impl Iterator for ColumnIter {
    type Item = AlphaWord;

    fn next(&mut self) -> Option<AlphaWord> {
        if self.done {
            return None;
        }
        loop {
            if !self.started {
                self.started = true;
                self.push_first();
            } else if !self.advance() {
                self.done = true;
                return None;
            }
            while self.letters.len() < self.m {
                self.push_first();
            }
            if leaf_ok(self.kind, self.letters[self.m - 1], self.letters[0]) {
                return Some(AlphaWord::from_valid(self.letters.clone(), self.kind));
            }
        }
    }
}

/// Build the transfer matrix by enumerating all `~3^m` column words and
/// tallying their (inlet, outlet) profile pairs.
pub fn build_matrix(m: usize, kind: WordKind, width_cap: usize) -> Result<TransferMatrix, Error> {
    check_width(m)?;
    if m > width_cap {
        return Err(Error::WidthCap {
            m,
            cap: width_cap,
            words: 3u64.pow(m.min(MAX_WIDTH) as u32),
        });
    }

    // Enumeration splits by first letter; the partial tallies merge by
    // keywise addition, so the partitioning cannot affect the result.
    let partials: Vec<HashMap<(u32, u32), u64>> = start_letters(kind)
        .par_iter()
        .map(|&first| {
            let mut map = HashMap::new();
            let il = (first.left() as u32) << (m - 1);
            let ol = (first.right() as u32) << (m - 1);
            if m == 1 {
                if leaf_ok(kind, first, first) {
                    *map.entry((il, ol)).or_insert(0) += 1;
                }
            } else {
                tally(m, kind, first, 2, first, il, ol, &mut map);
            }
            map
        })
        .collect();

    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for map in partials {
        for (key, value) in map {
            *counts.entry(key).or_insert(0) += value;
        }
    }
    TransferMatrix::from_counts(m, kind, counts)
}

/// Depth-first tally over positions `pos..=m` below the fixed prefix.
#[allow(clippy::too_many_arguments)]
fn tally(
    m: usize,
    kind: WordKind,
    first: CodeLetter,
    pos: usize,
    prev: CodeLetter,
    il: u32,
    ol: u32,
    map: &mut HashMap<(u32, u32), u64>,
) {
    for &y in crate::alphabet::ud_successors(prev) {
        let il2 = il | (y.left() as u32) << (m - pos);
        let ol2 = ol | (y.right() as u32) << (m - pos);
        if pos == m {
            if leaf_ok(kind, y, first) {
                *map.entry((il2, ol2)).or_insert(0) += 1;
            }
        } else {
            tally(m, kind, first, pos + 1, y, il2, ol2, map);
        }
    }
}

/// Recompute one matrix cell without enumerating words.
///
/// Positions where inlet and outlet bits agree force a single letter (`b`
/// when both edges are absent, `e` when both are present) and thereby pin
/// the vertical edge above that row; positions where they differ leave a
/// free choice whose lower edge is the negation of its upper edge. The
/// vertical edges therefore propagate deterministically from the edge above
/// row 1, which is absent for a path column and free for a ring, giving at
/// most one (path) or two (ring) consistent columns.
pub fn multiplicity(v: BinaryWord, w: BinaryWord, kind: WordKind) -> Result<u8, Error> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    let m = v.len();
    let mut count = 0u8;
    let top_choices: &[bool] = match kind {
        WordKind::Linear => &[false],
        WordKind::Circular => &[false, true],
    };
    'outer: for &top in top_choices {
        let mut up = top;
        let mut down = false;
        for pos in 1..=m {
            down = match (v.bit(pos), w.bit(pos)) {
                (false, false) => {
                    // letter b: both vertical edges present
                    if !up {
                        continue 'outer;
                    }
                    true
                }
                (true, true) => {
                    // letter e: both vertical edges absent
                    if up {
                        continue 'outer;
                    }
                    false
                }
                _ => !up, // free letter: a/c or d/f
            };
            up = down;
        }
        let closes = match kind {
            WordKind::Linear => !down,
            WordKind::Circular => down == top,
        };
        if closes {
            count += 1;
        }
    }
    Ok(count)
}
