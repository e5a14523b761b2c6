//! Fixed-length binary words: the inlet/outlet edge profiles of a column.
//!
//! Positions are 1-based and read left to right; position 1 is the top row.
//! As an integer index, position 1 is the most significant bit, so `0^m` is
//! index 0 and `1^m` is index `2^m - 1`.

use std::fmt;
use std::str::FromStr;

use crate::config::MAX_WIDTH;
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    len: u8,
    bits: u32,
}

impl BinaryWord {
    /// The all-zeros word of length `m`.
    pub fn zeros(m: usize) -> BinaryWord {
        Self::from_bits(0, m)
    }

    /// The all-ones word of length `m`.
    pub fn ones(m: usize) -> BinaryWord {
        Self::from_bits(Self::mask(m), m)
    }

    /// The strictly alternating word `0101...0` (zeros at odd positions).
    /// For odd `m` this is the unique word of maximal zero imbalance.
    pub fn alternating(m: usize) -> BinaryWord {
        Self::from_bit_iter(m, (1..=m).map(|pos| pos % 2 == 0))
    }

    /// Build from the packed integer value (position 1 = most significant).
    pub fn from_bits(bits: u32, m: usize) -> BinaryWord {
        assert!((1..=MAX_WIDTH).contains(&m), "word length {m} out of range");
        assert!(
            u64::from(bits) < (1u64 << m),
            "value {bits} does not fit in {m} bits"
        );
        BinaryWord { len: m as u8, bits }
    }

    /// Build from a matrix row/column index.
    pub fn from_index(index: usize, m: usize) -> BinaryWord {
        Self::from_bits(index as u32, m)
    }

    /// Collect bits in position order (top row first).
    pub fn from_bit_iter(m: usize, iter: impl IntoIterator<Item = bool>) -> BinaryWord {
        let mut bits = 0u32;
        let mut taken = 0usize;
        for b in iter {
            bits = (bits << 1) | u32::from(b);
            taken += 1;
        }
        assert_eq!(taken, m, "bit iterator length mismatch");
        Self::from_bits(bits, m)
    }

    fn mask(m: usize) -> u32 {
        if m == 32 {
            u32::MAX
        } else {
            (1u32 << m) - 1
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false // length 1 is the minimum; kept for clippy symmetry
    }

    /// Bit at 1-based position `pos`.
    pub fn bit(&self, pos: usize) -> bool {
        debug_assert!(pos >= 1 && pos <= self.len());
        (self.bits >> (self.len() - pos)) & 1 == 1
    }

    /// The row/column index of this word (MSB-first packing).
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Cyclic left rotation by `p`: position `j` of the result is position
    /// `j + p (mod len)` of the input.
    pub fn rotate_left(&self, p: usize) -> BinaryWord {
        let m = self.len();
        let p = p % m;
        if p == 0 {
            return *self;
        }
        let bits = ((self.bits << p) & Self::mask(m)) | (self.bits >> (m - p));
        BinaryWord {
            len: self.len,
            bits,
        }
    }

    /// The word read right to left.
    pub fn reversed(&self) -> BinaryWord {
        let bits = self.bits.reverse_bits() >> (32 - self.len());
        BinaryWord {
            len: self.len,
            bits,
        }
    }

    /// Every bit flipped.
    pub fn complemented(&self) -> BinaryWord {
        BinaryWord {
            len: self.len,
            bits: self.bits ^ Self::mask(self.len()),
        }
    }

    /// Signed zero imbalance: the number of zeros at odd positions minus the
    /// number of zeros at even positions (positions are 1-based).
    pub fn z_value(&self) -> i32 {
        let mut z = 0i32;
        for pos in 1..=self.len() {
            if !self.bit(pos) {
                if pos % 2 == 1 {
                    z += 1;
                } else {
                    z -= 1;
                }
            }
        }
        z
    }

    /// Level and color from the zero imbalance.
    pub fn classify(&self) -> ZClass {
        let z = self.z_value();
        ZClass {
            s: z.unsigned_abs(),
            color: match z.signum() {
                1 => Color::Red,
                -1 => Color::Green,
                _ => Color::Neutral,
            },
        }
    }
}

/// Classification of a word by its zero imbalance `Z`: `s = |Z|` and the sign
/// as a color (red positive, green negative, neutral zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZClass {
    pub s: u32,
    pub color: Color,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Green,
    Neutral,
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 1..=self.len() {
            write!(f, "{}", if self.bit(pos) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() || s.len() > MAX_WIDTH {
            return Err(Error::Parse {
                what: "binary word",
                detail: format!("length {} outside 1..={MAX_WIDTH}", s.len()),
            });
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => {
                        return Err(Error::Parse {
                            what: "binary word",
                            detail: format!("unexpected character '{other}'"),
                        })
                    }
                };
        }
        Ok(BinaryWord::from_bits(bits, s.len()))
    }
}
