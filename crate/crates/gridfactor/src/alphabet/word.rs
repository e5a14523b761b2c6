//! Validated column words over the six-letter alphabet.

use std::fmt;
use std::str::FromStr;

use super::binary::BinaryWord;
use super::letter::{ud_arc, CodeLetter};
use crate::config::MAX_WIDTH;
use crate::error::Error;

/// Shape of the column a word encodes: `Linear` columns are paths (the grid
/// has a top and a bottom row), `Circular` columns close into a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordKind {
    Linear,
    Circular,
}

impl WordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WordKind::Linear => "linear",
            WordKind::Circular => "circular",
        }
    }

    /// Number of valid column words of width `m`: `3^m + (-1)^m` for rings,
    /// half that for paths.
    pub fn word_count(self, m: usize) -> u64 {
        assert!((1..=MAX_WIDTH).contains(&m));
        let signed = 3u64.pow(m as u32) as i64 + if m.is_multiple_of(2) { 1 } else { -1 };
        match self {
            WordKind::Circular => signed as u64,
            WordKind::Linear => (signed / 2) as u64,
        }
    }
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WordKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "linear" => Ok(WordKind::Linear),
            "circular" => Ok(WordKind::Circular),
            other => Err(Error::Parse {
                what: "word kind",
                detail: format!("'{other}' is neither 'linear' nor 'circular'"),
            }),
        }
    }
}

/// A column word, valid by construction: consecutive letters (and for rings
/// the wrap-around pair) match vertically, and path columns start with a
/// no-upper-edge letter and end with a no-lower-edge letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaWord {
    letters: Vec<CodeLetter>,
    kind: WordKind,
}

impl AlphaWord {
    pub fn new(letters: Vec<CodeLetter>, kind: WordKind) -> Result<AlphaWord, Error> {
        if letters.is_empty() {
            return Err(Error::WidthZero);
        }
        if letters.len() > MAX_WIDTH {
            return Err(Error::WidthUnsupported {
                m: letters.len(),
                max: MAX_WIDTH,
            });
        }
        let m = letters.len();
        for i in 0..m - 1 {
            if !ud_arc(letters[i], letters[i + 1]) {
                return Err(Error::Parse {
                    what: "column word",
                    detail: format!(
                        "letters at rows {} and {} ({}, {}) do not match vertically",
                        i + 1,
                        i + 2,
                        letters[i],
                        letters[i + 1]
                    ),
                });
            }
        }
        match kind {
            WordKind::Linear => {
                if letters[0].up() {
                    return Err(Error::Parse {
                        what: "column word",
                        detail: format!(
                            "top letter {} claims an edge above row 1 of a path column",
                            letters[0]
                        ),
                    });
                }
                if letters[m - 1].down() {
                    return Err(Error::Parse {
                        what: "column word",
                        detail: format!(
                            "bottom letter {} claims an edge below row {m} of a path column",
                            letters[m - 1]
                        ),
                    });
                }
            }
            WordKind::Circular => {
                if !ud_arc(letters[m - 1], letters[0]) {
                    return Err(Error::Parse {
                        what: "column word",
                        detail: format!(
                            "letters at rows {m} and 1 ({}, {}) do not match around the ring",
                            letters[m - 1],
                            letters[0]
                        ),
                    });
                }
            }
        }
        Ok(AlphaWord { letters, kind })
    }

    /// Internal constructor for words produced by enumeration, which are
    /// valid by construction.
    pub(crate) fn from_valid(letters: Vec<CodeLetter>, kind: WordKind) -> AlphaWord {
        debug_assert!(AlphaWord::new(letters.clone(), kind).is_ok());
        AlphaWord { letters, kind }
    }

    pub fn parse(s: &str, kind: WordKind) -> Result<AlphaWord, Error> {
        let letters = s
            .chars()
            .map(|c| {
                CodeLetter::from_char(c).ok_or_else(|| Error::Parse {
                    what: "column word",
                    detail: format!("unexpected character '{c}'"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        AlphaWord::new(letters, kind)
    }

    pub fn letters(&self) -> &[CodeLetter] {
        &self.letters
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // words have at least one letter
    }

    /// Right-edge profile, top row first.
    pub fn outlet(&self) -> BinaryWord {
        BinaryWord::from_bit_iter(self.len(), self.letters.iter().map(|l| l.right()))
    }

    /// Left-edge profile, top row first.
    pub fn inlet(&self) -> BinaryWord {
        BinaryWord::from_bit_iter(self.len(), self.letters.iter().map(|l| l.left()))
    }

    /// The word read bottom-up with each letter reflected: the column as seen
    /// after flipping the grid across its horizontal axis. Valid for both
    /// kinds, and swaps nothing horizontally, so inlet/outlet profiles are
    /// simply reversed.
    pub fn reflected(&self) -> AlphaWord {
        let letters: Vec<CodeLetter> = self.letters.iter().rev().map(|l| l.reflected()).collect();
        AlphaWord::from_valid(letters, self.kind)
    }

    /// Letterwise incidence complement. Only ring columns stay valid (a path
    /// column's top letter would acquire an upper edge), and the resulting
    /// edge profiles are the bitwise complements of the originals.
    pub fn complemented(&self) -> Result<AlphaWord, Error> {
        if self.kind != WordKind::Circular {
            return Err(Error::KindMismatch {
                op: "letterwise complement",
                need: "circular",
            });
        }
        let letters: Vec<CodeLetter> = self.letters.iter().map(|l| l.complemented()).collect();
        Ok(AlphaWord::from_valid(letters, self.kind))
    }

    /// Cyclic rotation moving row `j + 1` to row 1. Ring columns only.
    pub fn rotated(&self, j: usize) -> Result<AlphaWord, Error> {
        if self.kind != WordKind::Circular {
            return Err(Error::KindMismatch {
                op: "rotation",
                need: "circular",
            });
        }
        let m = self.len();
        let j = j % m;
        let mut letters = Vec::with_capacity(m);
        letters.extend_from_slice(&self.letters[j..]);
        letters.extend_from_slice(&self.letters[..j]);
        Ok(AlphaWord::from_valid(letters, self.kind))
    }
}

impl fmt::Display for AlphaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::lr_arc;

    fn circ(s: &str) -> AlphaWord {
        AlphaWord::parse(s, WordKind::Circular).unwrap()
    }

    fn lin(s: &str) -> AlphaWord {
        AlphaWord::parse(s, WordKind::Linear).unwrap()
    }

    #[test]
    fn word_counts_match_the_closed_form() {
        assert_eq!(WordKind::Linear.word_count(1), 1);
        assert_eq!(WordKind::Circular.word_count(1), 2);
        assert_eq!(WordKind::Linear.word_count(2), 5);
        assert_eq!(WordKind::Circular.word_count(2), 10);
        assert_eq!(WordKind::Linear.word_count(4), 41);
        assert_eq!(WordKind::Circular.word_count(4), 82);
    }

    #[test]
    fn known_ring_columns_validate() {
        for s in ["bfdb", "cabb", "dfac", "feab"] {
            circ(s);
        }
    }

    #[test]
    fn known_ring_columns_fail_as_paths() {
        // all four start or end with a letter that needs a wrap edge
        for s in ["bfdb", "cabb", "feab"] {
            assert!(AlphaWord::parse(s, WordKind::Linear).is_err(), "{s}");
        }
    }

    #[test]
    fn outlet_profiles_of_known_columns() {
        assert_eq!(circ("bfdb").outlet().to_string(), "0000");
        assert_eq!(circ("cabb").outlet().to_string(), "1100");
        assert_eq!(circ("dfac").outlet().to_string(), "0011");
        assert_eq!(circ("feab").outlet().to_string(), "0110");
    }

    #[test]
    fn inlet_profiles_of_known_columns() {
        assert_eq!(circ("bfdb").inlet().to_string(), "0110");
        assert_eq!(circ("cabb").inlet().to_string(), "0000");
        assert_eq!(circ("dfac").inlet().to_string(), "1100");
        assert_eq!(circ("feab").inlet().to_string(), "1100");
    }

    /// Adjacent columns must agree edge by edge: outlet of the left column
    /// equals inlet of the right column.
    #[test]
    fn known_column_sequences_chain() {
        let kb = ["bfdb", "cabb", "dfac"];
        let tg = ["bfdb", "cabb", "feab"];
        for seq in [kb, tg] {
            for pair in seq.windows(2) {
                let left = circ(pair[0]);
                let right = circ(pair[1]);
                assert_eq!(left.outlet(), right.inlet());
                for (x, y) in left.letters().iter().zip(right.letters()) {
                    assert!(lr_arc(*x, *y));
                }
            }
        }
    }

    #[test]
    fn reflection_is_an_involution_and_reverses_profiles() {
        let c = circ("dfac");
        assert_eq!(c.reflected().reflected(), c);
        assert_eq!(c.reflected().outlet(), c.outlet().reversed());
        assert_eq!(c.reflected().inlet(), c.inlet().reversed());

        let l = lin("dc");
        assert_eq!(l.reflected().reflected(), l);
        assert_eq!(l.reflected().to_string(), "af");
    }

    #[test]
    fn reflection_fixes_bfdb() {
        assert_eq!(circ("bfdb").reflected().to_string(), "bfdb");
    }

    #[test]
    fn complement_profiles_are_complemented() {
        let c = circ("cabb");
        let f = c.complemented().unwrap();
        assert_eq!(f.outlet(), c.outlet().complemented());
        assert_eq!(f.inlet(), c.inlet().complemented());
        assert_eq!(f.complemented().unwrap(), c);
    }

    #[test]
    fn complement_of_all_e_is_all_b() {
        let e4 = circ("eeee");
        assert_eq!(e4.complemented().unwrap().to_string(), "bbbb");
    }

    #[test]
    fn complement_of_a_path_column_is_rejected() {
        assert!(lin("ee").complemented().is_err());
    }

    #[test]
    fn rotation_commutes_with_profiles() {
        let c = circ("dfac");
        for j in 0..=4 {
            let r = c.rotated(j).unwrap();
            assert_eq!(r.outlet(), c.outlet().rotate_left(j));
            assert_eq!(r.inlet(), c.inlet().rotate_left(j));
        }
    }

    #[test]
    fn invalid_words_name_the_offending_rows() {
        let err = AlphaWord::parse("bc", WordKind::Linear).unwrap_err();
        assert!(err.to_string().contains("above row 1"), "{err}");
        let err = AlphaWord::parse("ae", WordKind::Circular).unwrap_err();
        assert!(err.to_string().contains("rows 1 and 2"), "{err}");
    }
}
