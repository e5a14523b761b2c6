//! The six code letters and their two adjacency relations.
//!
//! Each letter records which two of the four edges around a grid vertex
//! belong to the 2-factor:
//!
//! ```text
//! letter   up  down  left  right
//!   a       .   x     .     x
//!   b       x   x     .     .
//!   c       x   .     .     x
//!   d       .   x     x     .
//!   e       .   .     x     x
//!   f       x   .     x     .
//! ```
//!
//! Two letters can be vertically stacked when the lower edge of the upper
//! vertex is the upper edge of the lower vertex ([`ud_arc`]), and placed side
//! by side when the right edge of the left vertex is the left edge of the
//! right vertex ([`lr_arc`]). Both relations have exactly 18 ordered pairs.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CodeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
}

use CodeLetter::*;

impl CodeLetter {
    /// All six letters in alphabetical order.
    pub const ALL: [CodeLetter; 6] = [A, B, C, D, E, F];

    /// Letters with no upper edge: the only ones allowed in the top row of an
    /// open (path-shaped) column.
    pub const NO_UP: [CodeLetter; 3] = [A, D, E];

    /// Letters with no lower edge: the only ones allowed in the bottom row of
    /// an open column.
    pub const NO_DOWN: [CodeLetter; 3] = [C, E, F];

    pub fn up(self) -> bool {
        matches!(self, B | C | F)
    }

    pub fn down(self) -> bool {
        matches!(self, A | B | D)
    }

    /// The inlet bit: true when the edge to the left is in the factor.
    pub fn left(self) -> bool {
        matches!(self, D | E | F)
    }

    /// The outlet bit: true when the edge to the right is in the factor.
    pub fn right(self) -> bool {
        matches!(self, A | C | E)
    }

    /// (up, down, left, right) incidence bits.
    pub fn incidence(self) -> (bool, bool, bool, bool) {
        (self.up(), self.down(), self.left(), self.right())
    }

    /// The letter with the given incidence, if exactly two bits are set.
    pub fn from_incidence(up: bool, down: bool, left: bool, right: bool) -> Option<CodeLetter> {
        CodeLetter::ALL
            .into_iter()
            .find(|l| l.incidence() == (up, down, left, right))
    }

    /// Reflection across the horizontal axis: up and down swap, left and
    /// right stay. An involution (`a <-> c`, `d <-> f`, `b` and `e` fixed).
    pub fn reflected(self) -> CodeLetter {
        match self {
            A => C,
            C => A,
            D => F,
            F => D,
            B => B,
            E => E,
        }
    }

    /// Complement of the incidence: the two factor edges trade places with
    /// the two non-factor edges (`a <-> f`, `b <-> e`, `c <-> d`).
    pub fn complemented(self) -> CodeLetter {
        match self {
            A => F,
            F => A,
            B => E,
            E => B,
            C => D,
            D => C,
        }
    }

    pub fn from_char(c: char) -> Option<CodeLetter> {
        match c {
            'a' => Some(A),
            'b' => Some(B),
            'c' => Some(C),
            'd' => Some(D),
            'e' => Some(E),
            'f' => Some(F),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            A => 'a',
            B => 'b',
            C => 'c',
            D => 'd',
            E => 'e',
            F => 'f',
        }
    }
}

impl fmt::Display for CodeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Vertical adjacency: `x` may sit directly above `y`.
pub fn ud_arc(x: CodeLetter, y: CodeLetter) -> bool {
    x.down() == y.up()
}

/// Horizontal adjacency: `x` may sit directly left of `y`.
pub fn lr_arc(x: CodeLetter, y: CodeLetter) -> bool {
    x.right() == y.left()
}

/// The three letters that may appear directly below `x`.
pub fn ud_successors(x: CodeLetter) -> &'static [CodeLetter; 3] {
    // Below a lower-edge letter must come an upper-edge letter and vice
    // versa; both candidate sets happen to be sorted.
    const WITH_UP: [CodeLetter; 3] = [B, C, F];
    const WITHOUT_UP: [CodeLetter; 3] = [A, D, E];
    if x.down() {
        &WITH_UP
    } else {
        &WITHOUT_UP
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_letter_has_exactly_two_incident_edges() {
        for l in CodeLetter::ALL {
            let (u, d, le, r) = l.incidence();
            let count = [u, d, le, r].iter().filter(|b| **b).count();
            assert_eq!(count, 2, "letter {l}");
        }
    }

    #[test]
    fn letters_cover_all_two_subsets_of_directions() {
        let mut seen: Vec<(bool, bool, bool, bool)> =
            CodeLetter::ALL.iter().map(|l| l.incidence()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn incidence_table_is_pinned() {
        use CodeLetter::*;
        assert_eq!(A.incidence(), (false, true, false, true));
        assert_eq!(B.incidence(), (true, true, false, false));
        assert_eq!(C.incidence(), (true, false, false, true));
        assert_eq!(D.incidence(), (false, true, true, false));
        assert_eq!(E.incidence(), (false, false, true, true));
        assert_eq!(F.incidence(), (true, false, true, false));
    }

    #[test]
    fn outlet_and_inlet_letter_classes() {
        let outlet: Vec<_> = CodeLetter::ALL.into_iter().filter(|l| l.right()).collect();
        assert_eq!(outlet, vec![A, C, E]);
        let inlet: Vec<_> = CodeLetter::ALL.into_iter().filter(|l| l.left()).collect();
        assert_eq!(inlet, vec![D, E, F]);
    }

    /// Both adjacency relations, written out in full. 18 ordered pairs each.
    #[test]
    fn golden_arc_tables() {
        let ud_expected = [
            // lower-edge letters above upper-edge letters
            "ab", "ac", "af", "bb", "bc", "bf", "db", "dc", "df",
            // flat letters above flat letters
            "ca", "cd", "ce", "ea", "ed", "ee", "fa", "fd", "fe",
        ];
        let mut ud_actual = vec![];
        let mut lr_actual = vec![];
        for x in CodeLetter::ALL {
            for y in CodeLetter::ALL {
                if ud_arc(x, y) {
                    ud_actual.push(format!("{x}{y}"));
                }
                if lr_arc(x, y) {
                    lr_actual.push(format!("{x}{y}"));
                }
            }
        }
        let mut ud_expected: Vec<String> = ud_expected.iter().map(|s| s.to_string()).collect();
        ud_expected.sort();
        assert_eq!(ud_actual, ud_expected);

        let lr_expected = [
            "ad", "ae", "af", "cd", "ce", "cf", "ed", "ee", "ef", // right-edge -> left-edge
            "ba", "bb", "bc", "da", "db", "dc", "fa", "fb", "fc", // no-right -> no-left
        ];
        let mut lr_expected: Vec<String> = lr_expected.iter().map(|s| s.to_string()).collect();
        lr_expected.sort();
        assert_eq!(lr_actual, lr_expected);
    }

    #[test]
    fn reflection_swaps_up_down_and_keeps_left_right() {
        for l in CodeLetter::ALL {
            let r = l.reflected();
            assert_eq!(r.up(), l.down());
            assert_eq!(r.down(), l.up());
            assert_eq!(r.left(), l.left());
            assert_eq!(r.right(), l.right());
            assert_eq!(r.reflected(), l);
        }
    }

    #[test]
    fn complement_flips_all_four_bits() {
        for l in CodeLetter::ALL {
            let c = l.complemented();
            assert_eq!(c.up(), !l.up());
            assert_eq!(c.down(), !l.down());
            assert_eq!(c.left(), !l.left());
            assert_eq!(c.right(), !l.right());
            assert_eq!(c.complemented(), l);
        }
    }

    /// Complementing both letters preserves both adjacency relations, so the
    /// letter complement acts on whole column words.
    #[test]
    fn complement_preserves_arcs() {
        for x in CodeLetter::ALL {
            for y in CodeLetter::ALL {
                assert_eq!(
                    ud_arc(x, y),
                    ud_arc(x.complemented(), y.complemented()),
                    "ud {x}{y}"
                );
                assert_eq!(
                    lr_arc(x, y),
                    lr_arc(x.complemented(), y.complemented()),
                    "lr {x}{y}"
                );
            }
        }
    }

    #[test]
    fn successor_sets_match_the_arc_relation() {
        for x in CodeLetter::ALL {
            let succ = ud_successors(x);
            for y in CodeLetter::ALL {
                assert_eq!(succ.contains(&y), ud_arc(x, y));
            }
        }
    }
}
