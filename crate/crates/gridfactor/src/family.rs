//! The six grid constructions, each behind a common strategy trait.
//!
//! A family fixes three things: whether a column of the grid is a path or a
//! ring (the column [`WordKind`]), how — if at all — the last column glues
//! back onto the first, and which dimensions yield a simple graph. All six
//! are registered in [`FAMILIES`] and selected by name at runtime; the rest
//! of the crate works against the trait only, so counting, the census, and
//! the CLI stay family-agnostic.

use serde_json::{json, Value};

use crate::alphabet::{BinaryWord, WordKind};
use crate::error::Error;

/// One grid construction as a runtime-selectable strategy.
///
/// `wrap_target` and `seam_map` describe the same gluing at two levels:
/// vertex-by-vertex for explicit graphs, and whole-profile for transfer
/// matrix counting. Their consistency
/// (`seam_map(p, w).bit(wrap_target(p, r)) == w.bit(r)`) is enforced by
/// tests, not assumed.
pub trait GridFamily: Sync {
    /// Registry key accepted on the command line (e.g. `"rg"`).
    fn name(&self) -> &'static str;

    /// Conventional short label used in tables and error messages.
    fn label(&self) -> &'static str;

    /// Alternative lookup spellings.
    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    /// One-line description of the construction.
    fn describe(&self) -> &'static str;

    /// Whether a column of this grid is a path or a ring.
    fn kind(&self) -> WordKind;

    /// Whether the horizontal gluing takes a twist parameter `p`.
    fn has_twist(&self) -> bool {
        false
    }

    /// Smallest width for which the graph is simple.
    fn min_width(&self) -> usize;

    /// Smallest length for which the graph is simple.
    fn min_length(&self) -> usize;

    /// Degeneracies not captured by the minima alone.
    fn degenerate(&self, _m: usize, _n: usize) -> Option<String> {
        None
    }

    /// Row of column 1 whose left side is identified with the right side of
    /// `(row, n)`, or `None` when column n ends at a boundary.
    fn wrap_target(&self, m: usize, p: usize, row: usize) -> Option<usize>;

    /// The same gluing on whole profiles: the inlet word forced on column 1
    /// when column n has outlet `w`. `None` for boundary families.
    fn seam_map(&self, p: usize, w: BinaryWord) -> Option<BinaryWord>;

    /// Reject dimensions that would not produce a simple graph.
    fn check_range(&self, m: usize, n: usize) -> Result<(), Error> {
        if m == 0 {
            return Err(Error::WidthZero);
        }
        if n == 0 {
            return Err(Error::LengthZero);
        }
        let reason = if m < self.min_width() {
            Some(format!(
                "rows wrap onto themselves below width {}",
                self.min_width()
            ))
        } else if n < self.min_length() {
            Some(format!(
                "columns wrap onto themselves below length {}",
                self.min_length()
            ))
        } else {
            self.degenerate(m, n)
        };
        match reason {
            Some(reason) => Err(Error::DegenerateGrid {
                family: self.label(),
                m,
                n,
                reason,
            }),
            None => Ok(()),
        }
    }
}

/// Rectangle: path columns, no horizontal gluing.
pub struct Rectangle;

impl GridFamily for Rectangle {
    fn name(&self) -> &'static str {
        "rg"
    }
    fn label(&self) -> &'static str {
        "RG"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["rect", "rectangle"]
    }
    fn describe(&self) -> &'static str {
        "rectangular grid: path columns in a row of length n, open at both ends"
    }
    fn kind(&self) -> WordKind {
        WordKind::Linear
    }
    fn min_width(&self) -> usize {
        1
    }
    fn min_length(&self) -> usize {
        1
    }
    fn wrap_target(&self, _m: usize, _p: usize, _row: usize) -> Option<usize> {
        None
    }
    fn seam_map(&self, _p: usize, _w: BinaryWord) -> Option<BinaryWord> {
        None
    }
}

/// Thick cylinder: path columns arranged around a ring of length n.
pub struct ThickCylinder;

impl GridFamily for ThickCylinder {
    fn name(&self) -> &'static str {
        "tkc"
    }
    fn label(&self) -> &'static str {
        "TkC"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["thick-cylinder", "thick"]
    }
    fn describe(&self) -> &'static str {
        "thick cylinder: path columns around a ring, row i gluing straight to row i"
    }
    fn kind(&self) -> WordKind {
        WordKind::Linear
    }
    fn min_width(&self) -> usize {
        1
    }
    fn min_length(&self) -> usize {
        3
    }
    fn wrap_target(&self, _m: usize, _p: usize, row: usize) -> Option<usize> {
        Some(row)
    }
    fn seam_map(&self, _p: usize, w: BinaryWord) -> Option<BinaryWord> {
        Some(w)
    }
}

/// Moebius strip: path columns glued back with a row flip.
pub struct MoebiusStrip;

impl GridFamily for MoebiusStrip {
    fn name(&self) -> &'static str {
        "ms"
    }
    fn label(&self) -> &'static str {
        "MS"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["moebius", "moebius-strip", "mobius"]
    }
    fn describe(&self) -> &'static str {
        "Moebius strip: path columns glued after a flip, row i onto row m+1-i"
    }
    fn kind(&self) -> WordKind {
        WordKind::Linear
    }
    fn min_width(&self) -> usize {
        1
    }
    fn min_length(&self) -> usize {
        2
    }
    fn degenerate(&self, m: usize, n: usize) -> Option<String> {
        // At n = 2 the flip sends the middle row of an odd-width strip onto
        // itself, doubling its horizontal edge.
        if n == 2 && m % 2 == 1 {
            Some(format!(
                "at length 2 the flip doubles the horizontal edge of middle row {}",
                m / 2 + 1
            ))
        } else {
            None
        }
    }
    fn wrap_target(&self, m: usize, _p: usize, row: usize) -> Option<usize> {
        Some(m + 1 - row)
    }
    fn seam_map(&self, _p: usize, w: BinaryWord) -> Option<BinaryWord> {
        Some(w.reversed())
    }
}

/// Thin cylinder: ring columns in an open row.
pub struct ThinCylinder;

impl GridFamily for ThinCylinder {
    fn name(&self) -> &'static str {
        "tnc"
    }
    fn label(&self) -> &'static str {
        "TnC"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["thin-cylinder", "thin"]
    }
    fn describe(&self) -> &'static str {
        "thin cylinder: ring columns in a row of length n, open at both ends"
    }
    fn kind(&self) -> WordKind {
        WordKind::Circular
    }
    fn min_width(&self) -> usize {
        3
    }
    fn min_length(&self) -> usize {
        1
    }
    fn wrap_target(&self, _m: usize, _p: usize, _row: usize) -> Option<usize> {
        None
    }
    fn seam_map(&self, _p: usize, _w: BinaryWord) -> Option<BinaryWord> {
        None
    }
}

/// Torus: ring columns around a ring, glued with a twist of `p` rows.
pub struct Torus;

impl GridFamily for Torus {
    fn name(&self) -> &'static str {
        "tg"
    }
    fn label(&self) -> &'static str {
        "TG"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["torus"]
    }
    fn describe(&self) -> &'static str {
        "torus: ring columns around a ring, row i gluing to row i-p"
    }
    fn kind(&self) -> WordKind {
        WordKind::Circular
    }
    fn has_twist(&self) -> bool {
        true
    }
    fn min_width(&self) -> usize {
        3
    }
    fn min_length(&self) -> usize {
        3
    }
    fn wrap_target(&self, m: usize, p: usize, row: usize) -> Option<usize> {
        Some((row + m - p - 1) % m + 1)
    }
    fn seam_map(&self, p: usize, w: BinaryWord) -> Option<BinaryWord> {
        Some(w.rotate_left(p))
    }
}

/// Klein bottle: ring columns glued around a ring with flip and twist.
pub struct KleinBottle;

impl GridFamily for KleinBottle {
    fn name(&self) -> &'static str {
        "kb"
    }
    fn label(&self) -> &'static str {
        "KB"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["klein", "klein-bottle"]
    }
    fn describe(&self) -> &'static str {
        "Klein bottle: ring columns around a ring, row i gluing to row p+1-i"
    }
    fn kind(&self) -> WordKind {
        WordKind::Circular
    }
    fn has_twist(&self) -> bool {
        true
    }
    fn min_width(&self) -> usize {
        3
    }
    fn min_length(&self) -> usize {
        3
    }
    fn wrap_target(&self, m: usize, p: usize, row: usize) -> Option<usize> {
        Some((m + p - row) % m + 1)
    }
    fn seam_map(&self, p: usize, w: BinaryWord) -> Option<BinaryWord> {
        Some(w.rotate_left(p).reversed())
    }
}

/// Registry of every construction, in canonical order.
pub static FAMILIES: [&dyn GridFamily; 6] = [
    &Rectangle,
    &ThickCylinder,
    &MoebiusStrip,
    &ThinCylinder,
    &Torus,
    &KleinBottle,
];

/// Look a family up by key, label, or alias (case-insensitive).
pub fn family_by_name(name: &str) -> Result<&'static dyn GridFamily, Error> {
    let key = name.to_ascii_lowercase();
    FAMILIES
        .iter()
        .copied()
        .find(|f| {
            f.name() == key
                || f.label().eq_ignore_ascii_case(&key)
                || f.aliases().contains(&key.as_str())
        })
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// A fully specified grid: family, width, length, and twist where it applies.
#[derive(Clone, Copy)]
pub struct GridSpec {
    family: &'static dyn GridFamily,
    m: usize,
    n: usize,
    p: Option<usize>,
}

impl GridSpec {
    /// Width and length must be positive; the twist is required for twisted
    /// families, rejected otherwise, and stored reduced mod m.
    pub fn new(
        family: &'static dyn GridFamily,
        m: usize,
        n: usize,
        p: Option<usize>,
    ) -> Result<GridSpec, Error> {
        if m == 0 {
            return Err(Error::WidthZero);
        }
        if n == 0 {
            return Err(Error::LengthZero);
        }
        let p = match (family.has_twist(), p) {
            (true, Some(p)) => Some(p % m),
            (true, None) => {
                return Err(Error::MissingTwist {
                    family: family.label(),
                })
            }
            (false, Some(_)) => {
                return Err(Error::UnexpectedTwist {
                    family: family.label(),
                })
            }
            (false, None) => None,
        };
        Ok(GridSpec { family, m, n, p })
    }

    /// Convenience constructor from a family name.
    pub fn parse(family: &str, m: usize, n: usize, p: Option<usize>) -> Result<GridSpec, Error> {
        GridSpec::new(family_by_name(family)?, m, n, p)
    }

    pub fn family(&self) -> &'static dyn GridFamily {
        self.family
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Twist, already reduced mod m; 0 for untwisted families.
    pub fn twist(&self) -> usize {
        self.p.unwrap_or(0)
    }

    pub fn kind(&self) -> WordKind {
        self.family.kind()
    }

    /// Whether the explicit graph exists as a simple graph at these
    /// dimensions. Counting formulas remain defined either way.
    pub fn is_geometric(&self) -> bool {
        self.family.check_range(self.m, self.n).is_ok()
    }

    /// Range check with the reason for rejection.
    pub fn check_geometric(&self) -> Result<(), Error> {
        self.family.check_range(self.m, self.n)
    }

    pub fn to_json_value(&self) -> Value {
        match self.p {
            Some(p) => json!({"family": self.family.name(), "m": self.m, "n": self.n, "p": p}),
            None => json!({"family": self.family.name(), "m": self.m, "n": self.n}),
        }
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.p {
            Some(p) => write!(f, "{}(p={}) {}x{}", self.family.label(), p, self.m, self.n),
            None => write!(f, "{} {}x{}", self.family.label(), self.m, self.n),
        }
    }
}

impl std::fmt::Debug for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GridSpec({self})")
    }
}

/// Text form `"family m n"`, plus a trailing twist for twisted families:
/// `"tg 4 3 1"`.
impl std::str::FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GridSpec, Error> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let bad = |detail: String| Error::Parse {
            what: "grid spec",
            detail,
        };
        if parts.len() < 3 || parts.len() > 4 {
            return Err(bad(format!(
                "expected \"family m n\" with an optional twist, got {} tokens",
                parts.len()
            )));
        }
        let number = |token: &str| {
            token
                .parse::<usize>()
                .map_err(|_| bad(format!("'{token}' is not a number")))
        };
        GridSpec::parse(
            parts[0],
            number(parts[1])?,
            number(parts[2])?,
            parts.get(3).map(|p| number(p)).transpose()?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup_by_every_spelling() {
        for f in FAMILIES {
            assert!(std::ptr::eq(family_by_name(f.name()).unwrap(), f));
            assert!(std::ptr::eq(family_by_name(f.label()).unwrap(), f));
            for alias in f.aliases() {
                assert!(std::ptr::eq(family_by_name(alias).unwrap(), f));
            }
        }
        assert!(matches!(
            family_by_name("hexagon"),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn registry_keys_are_distinct() {
        let mut names: Vec<&str> = FAMILIES.iter().map(|f| f.name()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), FAMILIES.len());
    }

    #[test]
    fn kinds_and_twists() {
        let linear = ["rg", "tkc", "ms"];
        let twisted = ["tg", "kb"];
        for f in FAMILIES {
            assert_eq!(
                f.kind(),
                if linear.contains(&f.name()) {
                    WordKind::Linear
                } else {
                    WordKind::Circular
                }
            );
            assert_eq!(f.has_twist(), twisted.contains(&f.name()));
        }
    }

    #[test]
    fn wrap_and_seam_describe_the_same_gluing() {
        for f in FAMILIES {
            for m in 1..=6usize {
                let ps: Vec<usize> = if f.has_twist() {
                    (0..m).collect()
                } else {
                    vec![0]
                };
                for p in ps {
                    for idx in 0..(1usize << m) {
                        let w = BinaryWord::from_index(idx, m);
                        match f.seam_map(p, w) {
                            None => {
                                assert!(f.wrap_target(m, p, 1).is_none(), "{}", f.name());
                            }
                            Some(v) => {
                                for row in 1..=m {
                                    let t = f.wrap_target(m, p, row).unwrap();
                                    assert!((1..=m).contains(&t));
                                    assert_eq!(v.bit(t), w.bit(row), "{} m={m} p={p}", f.name());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wrap_targets_are_bijective_rows() {
        for f in FAMILIES {
            for m in 3..=7usize {
                let ps: Vec<usize> = if f.has_twist() {
                    (0..m).collect()
                } else {
                    vec![0]
                };
                for p in ps {
                    if f.wrap_target(m, p, 1).is_none() {
                        continue;
                    }
                    let mut hit = vec![false; m + 1];
                    for row in 1..=m {
                        hit[f.wrap_target(m, p, row).unwrap()] = true;
                    }
                    assert!(hit[1..].iter().all(|&h| h), "{} m={m} p={p}", f.name());
                }
            }
        }
    }

    #[test]
    fn flip_gluings_are_involutions() {
        // Following the flipped seam twice must return to the original row.
        for m in 3..=7usize {
            for row in 1..=m {
                let t = MoebiusStrip.wrap_target(m, 0, row).unwrap();
                assert_eq!(MoebiusStrip.wrap_target(m, 0, t).unwrap(), row);
                for p in 0..m {
                    let t = KleinBottle.wrap_target(m, p, row).unwrap();
                    assert_eq!(KleinBottle.wrap_target(m, p, t).unwrap(), row);
                }
            }
        }
    }

    #[test]
    fn straight_gluings_compose_to_identity() {
        for m in 3..=7usize {
            for row in 1..=m {
                assert_eq!(ThickCylinder.wrap_target(m, 0, row), Some(row));
                assert_eq!(Torus.wrap_target(m, 0, row), Some(row));
                for p in 0..m {
                    let t = Torus.wrap_target(m, p, row).unwrap();
                    assert_eq!(Torus.wrap_target(m, m - p, t).unwrap(), row);
                }
            }
        }
    }

    #[test]
    fn ranges_reject_degenerate_grids() {
        assert!(GridSpec::parse("tnc", 2, 3, None)
            .unwrap()
            .check_geometric()
            .is_err());
        assert!(GridSpec::parse("tkc", 2, 2, None)
            .unwrap()
            .check_geometric()
            .is_err());
        assert!(GridSpec::parse("ms", 3, 2, None)
            .unwrap()
            .check_geometric()
            .is_err());
        assert!(GridSpec::parse("ms", 2, 2, None)
            .unwrap()
            .check_geometric()
            .is_ok());
        assert!(GridSpec::parse("tg", 4, 2, Some(0))
            .unwrap()
            .check_geometric()
            .is_err());
        assert!(GridSpec::parse("kb", 2, 4, Some(0))
            .unwrap()
            .check_geometric()
            .is_err());
        assert!(GridSpec::parse("rg", 1, 1, None)
            .unwrap()
            .check_geometric()
            .is_ok());
        assert!(GridSpec::parse("tnc", 3, 1, None)
            .unwrap()
            .check_geometric()
            .is_ok());
    }

    #[test]
    fn twist_is_required_reduced_and_rejected_appropriately() {
        assert!(matches!(
            GridSpec::parse("tg", 4, 3, None),
            Err(Error::MissingTwist { family: "TG" })
        ));
        assert!(matches!(
            GridSpec::parse("rg", 4, 3, Some(1)),
            Err(Error::UnexpectedTwist { family: "RG" })
        ));
        assert_eq!(GridSpec::parse("kb", 4, 3, Some(6)).unwrap().twist(), 2);
        assert_eq!(GridSpec::parse("rg", 4, 3, None).unwrap().twist(), 0);
    }

    #[test]
    fn spec_display_and_json() {
        let s = GridSpec::parse("tg", 4, 3, Some(1)).unwrap();
        assert_eq!(s.to_string(), "TG(p=1) 4x3");
        assert_eq!(
            s.to_json_value().to_string(),
            r#"{"family":"tg","m":4,"n":3,"p":1}"#
        );
        let r = GridSpec::parse("rg", 2, 5, None).unwrap();
        assert_eq!(r.to_string(), "RG 2x5");
        assert_eq!(
            r.to_json_value().to_string(),
            r#"{"family":"rg","m":2,"n":5}"#
        );
    }

    #[test]
    fn zero_dimensions_are_rejected() {
        assert!(matches!(
            GridSpec::parse("rg", 0, 3, None),
            Err(Error::WidthZero)
        ));
        assert!(matches!(
            GridSpec::parse("rg", 3, 0, None),
            Err(Error::LengthZero)
        ));
    }
}
