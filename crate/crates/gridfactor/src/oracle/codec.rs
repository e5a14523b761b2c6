//! Letter encoding of 2-factors, and validation of candidate encodings.
//!
//! A grid's 2-factor is written as an `m x n` matrix of letters, one per
//! vertex, each recording which of the four surrounding edges the factor
//! uses. [`validate`] checks a candidate matrix against a grid spec purely
//! combinatorially — column words must be valid, adjacent columns must agree
//! horizontally, and the last column must meet the first across the wrap
//! joint exactly as the family glues rows. [`encode`] and [`decode`] convert
//! between factors and matrices and are mutually inverse on valid input.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{lr_arc, AlphaWord, BinaryWord, CodeLetter};
use crate::error::Error;
use crate::family::GridSpec;

use super::census::TwoFactor;
use super::grid::{GridGraph, DOWN, LEFT, RIGHT, UP};

/// An `m x n` matrix of code letters, stored column-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMatrix {
    m: usize,
    n: usize,
    letters: Vec<CodeLetter>,
}

impl CodeMatrix {
    pub fn new(m: usize, n: usize, letters: Vec<CodeLetter>) -> Result<CodeMatrix, Error> {
        if m == 0 || n == 0 || letters.len() != m * n {
            return Err(Error::Parse {
                what: "code matrix",
                detail: format!("{} letters do not fill an {m} x {n} matrix", letters.len()),
            });
        }
        Ok(CodeMatrix { m, n, letters })
    }

    /// Parse whitespace-separated column words, e.g. `"bfdb cabb dfac"`.
    pub fn parse(text: &str) -> Result<CodeMatrix, Error> {
        let columns: Vec<&str> = text.split_whitespace().collect();
        if columns.is_empty() {
            return Err(Error::Parse {
                what: "code matrix",
                detail: "no columns".to_string(),
            });
        }
        let m = columns[0].chars().count();
        let mut letters = Vec::with_capacity(m * columns.len());
        for (i, column) in columns.iter().enumerate() {
            if column.chars().count() != m {
                return Err(Error::Parse {
                    what: "code matrix",
                    detail: format!(
                        "column {} has {} letters, column 1 has {m}",
                        i + 1,
                        column.chars().count()
                    ),
                });
            }
            for ch in column.chars() {
                letters.push(CodeLetter::from_char(ch).ok_or_else(|| Error::Parse {
                    what: "code matrix",
                    detail: format!("column {}: '{ch}' is not a code letter", i + 1),
                })?);
            }
        }
        CodeMatrix::new(m, columns.len(), letters)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Letter at 1-based `(row, col)`.
    pub fn letter(&self, row: usize, col: usize) -> CodeLetter {
        self.letters[(col - 1) * self.m + (row - 1)]
    }

    /// Letters of a 1-based column, top to bottom.
    pub fn column(&self, col: usize) -> &[CodeLetter] {
        &self.letters[(col - 1) * self.m..col * self.m]
    }

    /// A column as a validated word of the given kind.
    pub fn column_word(
        &self,
        col: usize,
        kind: crate::alphabet::WordKind,
    ) -> Result<AlphaWord, Error> {
        AlphaWord::new(self.column(col).to_vec(), kind)
    }

    /// Outlet profile of every column, left to right.
    pub fn outlet_walk(&self) -> Vec<BinaryWord> {
        (1..=self.n)
            .map(|col| {
                BinaryWord::from_bit_iter(self.m, self.column(col).iter().map(|l| l.right()))
            })
            .collect()
    }
}

impl fmt::Display for CodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for col in 1..=self.n {
            if col > 1 {
                write!(f, " ")?;
            }
            for letter in self.column(col) {
                write!(f, "{}", letter.as_char())?;
            }
        }
        Ok(())
    }
}

impl FromStr for CodeMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<CodeMatrix, Error> {
        CodeMatrix::parse(s)
    }
}

/// Why a code matrix fails to describe a 2-factor of a given grid.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("matrix is {got_m} x {got_n}, the grid is {want_m} x {want_n}")]
    Shape {
        want_m: usize,
        want_n: usize,
        got_m: usize,
        got_n: usize,
    },
    #[error("column {col} is not a valid column: {detail}")]
    Column { col: usize, detail: String },
    #[error("row {row}: column {left_col} does not join the column to its right")]
    HorizontalMismatch { row: usize, left_col: usize },
    #[error("row {row} of the first column expects a neighbor outside the grid")]
    LeftBoundary { row: usize },
    #[error("row {row} of the last column expects a neighbor outside the grid")]
    RightBoundary { row: usize },
    #[error(
        "wrap joint from row {out_row} of the last column to row {in_row} of the first disagrees"
    )]
    SeamMismatch { out_row: usize, in_row: usize },
}

/// Check a candidate matrix against a grid spec. Returns the first problem
/// found, scanning shape, then columns, then horizontal joints left to
/// right, then the boundary or wrap joint.
pub fn validate(spec: &GridSpec, matrix: &CodeMatrix) -> Result<(), Violation> {
    let (m, n) = (spec.m(), spec.n());
    if matrix.m() != m || matrix.n() != n {
        return Err(Violation::Shape {
            want_m: m,
            want_n: n,
            got_m: matrix.m(),
            got_n: matrix.n(),
        });
    }
    for col in 1..=n {
        if let Err(e) = matrix.column_word(col, spec.kind()) {
            return Err(Violation::Column {
                col,
                detail: e.to_string(),
            });
        }
    }
    for left_col in 1..n {
        for row in 1..=m {
            if !lr_arc(
                matrix.letter(row, left_col),
                matrix.letter(row, left_col + 1),
            ) {
                return Err(Violation::HorizontalMismatch { row, left_col });
            }
        }
    }
    if spec.family().wrap_target(m, spec.twist(), 1).is_none() {
        for row in 1..=m {
            if matrix.letter(row, 1).left() {
                return Err(Violation::LeftBoundary { row });
            }
        }
        for row in 1..=m {
            if matrix.letter(row, n).right() {
                return Err(Violation::RightBoundary { row });
            }
        }
    } else {
        for out_row in 1..=m {
            let in_row = spec
                .family()
                .wrap_target(m, spec.twist(), out_row)
                .expect("wrap rows come in full sets");
            if !lr_arc(matrix.letter(out_row, n), matrix.letter(in_row, 1)) {
                return Err(Violation::SeamMismatch { out_row, in_row });
            }
        }
    }
    Ok(())
}

/// Write a 2-factor as a code matrix, one letter per vertex.
pub fn encode(graph: &GridGraph, factor: &TwoFactor) -> Result<CodeMatrix, Error> {
    let (m, n) = (graph.spec().m(), graph.spec().n());
    let mut letters = vec![CodeLetter::A; m * n];
    for row in 1..=m {
        for col in 1..=n {
            let ports = graph.ports(graph.vertex(row, col));
            let used = |port: usize| ports[port].is_some_and(|e| factor.contains(e));
            let letter = CodeLetter::from_incidence(used(UP), used(DOWN), used(LEFT), used(RIGHT))
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "vertex ({row}, {col}) uses an edge pattern outside the alphabet"
                    ))
                })?;
            letters[(col - 1) * m + (row - 1)] = letter;
        }
    }
    CodeMatrix::new(m, n, letters)
}

/// Read a code matrix back into a 2-factor of the grid, validating first.
pub fn decode(graph: &GridGraph, matrix: &CodeMatrix) -> Result<TwoFactor, Error> {
    validate(graph.spec(), matrix)?;
    let (m, n) = (graph.spec().m(), graph.spec().n());
    let mut state: Vec<Option<bool>> = vec![None; graph.edge_count()];
    for row in 1..=m {
        for col in 1..=n {
            let ports = graph.ports(graph.vertex(row, col));
            let (up, down, left, right) = matrix.letter(row, col).incidence();
            for (port, wants) in [(UP, up), (DOWN, down), (LEFT, left), (RIGHT, right)] {
                match ports[port] {
                    Some(edge) => {
                        if state[edge].replace(wants) == Some(!wants) {
                            return Err(Error::Internal(format!(
                                "letters at the two ends of edge {edge} disagree"
                            )));
                        }
                    }
                    None if wants => {
                        return Err(Error::Internal(format!(
                            "letter at ({row}, {col}) points off the grid"
                        )));
                    }
                    None => {}
                }
            }
        }
    }
    let flags = state
        .iter()
        .map(|s| s.expect("every edge has two lettered ends"))
        .collect();
    Ok(TwoFactor::from_flags(flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::oracle::census::for_each_two_factor;

    fn spec(text: &str) -> GridSpec {
        text.parse::<GridSpec>().unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let text = "bfdb cabb dfac";
        let matrix = CodeMatrix::parse(text).unwrap();
        assert_eq!((matrix.m(), matrix.n()), (4, 3));
        assert_eq!(matrix.letter(2, 1), CodeLetter::F);
        assert_eq!(matrix.letter(1, 2), CodeLetter::C);
        assert_eq!(matrix.to_string(), text);
        assert_eq!(text.parse::<CodeMatrix>().unwrap(), matrix);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(CodeMatrix::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(
            CodeMatrix::parse("ab abc"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            CodeMatrix::parse("ab xz"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn outlet_walks() {
        let matrix = CodeMatrix::parse("bfdb cabb dfac").unwrap();
        let walk: Vec<String> = matrix
            .outlet_walk()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(walk, ["0000", "1100", "0011"]);
    }

    #[test]
    fn validates_a_square_tour() {
        let matrix = CodeMatrix::parse("ac df").unwrap();
        assert_eq!(validate(&spec("rg 2 2"), &matrix), Ok(()));
    }

    #[test]
    fn violation_catalogue() {
        let rg = spec("rg 2 2");
        assert_eq!(
            validate(&rg, &CodeMatrix::parse("ac").unwrap()),
            Err(Violation::Shape {
                want_m: 2,
                want_n: 2,
                got_m: 2,
                got_n: 1
            })
        );
        // aa: letter a needs a neighbor below row 2
        assert!(matches!(
            validate(&rg, &CodeMatrix::parse("ac aa").unwrap()),
            Err(Violation::Column { col: 2, .. })
        ));
        // dc wants nothing to its left in row 2 where ac offers an edge
        assert_eq!(
            validate(&rg, &CodeMatrix::parse("ac dc").unwrap()),
            Err(Violation::HorizontalMismatch {
                row: 2,
                left_col: 1
            })
        );
        assert_eq!(
            validate(&spec("rg 1 2"), &CodeMatrix::parse("e e").unwrap()),
            Err(Violation::LeftBoundary { row: 1 })
        );
        assert_eq!(
            validate(&rg, &CodeMatrix::parse("ac ee").unwrap()),
            Err(Violation::RightBoundary { row: 1 })
        );
        // last column reaches right across the joint, first column refuses
        assert_eq!(
            validate(&spec("tkc 2 3"), &CodeMatrix::parse("ac ee ee").unwrap()),
            Err(Violation::SeamMismatch {
                out_row: 1,
                in_row: 1
            })
        );
    }

    #[test]
    fn encode_then_decode_is_identity() {
        for text in ["rg 2 3", "tnc 3 2", "ms 2 3", "tg 3 3 1", "kb 3 3 2"] {
            let graph = GridGraph::build(&spec(text)).unwrap();
            for_each_two_factor(&graph, &Limits::default(), |factor| {
                let matrix = encode(&graph, factor).unwrap();
                assert_eq!(validate(graph.spec(), &matrix), Ok(()));
                let back = decode(&graph, &matrix).unwrap();
                assert_eq!(&back, factor, "{text}: {matrix}");
            })
            .unwrap();
        }
    }

    #[test]
    fn decode_yields_the_square_tour() {
        let graph = GridGraph::build(&spec("rg 2 2")).unwrap();
        let factor = decode(&graph, &CodeMatrix::parse("ac df").unwrap()).unwrap();
        assert_eq!(factor.edge_count(), 4);
        assert_eq!(factor.cycle_count(&graph), 1);
    }
}
