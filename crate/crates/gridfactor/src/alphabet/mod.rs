//! The column alphabet: six code letters, binary edge-profile words, and
//! validated column words.
//!
//! A vertex of a 2-factor has exactly two of its four surrounding edges
//! (up, down, left, right) in the factor; a [`CodeLetter`] names each of the
//! six possibilities. A column of the grid then reads top-down as a word of
//! letters ([`AlphaWord`]), and its left/right edge profile collapses to a
//! pair of binary words ([`BinaryWord`]): the inlet (left edges) and the
//! outlet (right edges).

mod binary;
mod letter;
mod word;

pub use binary::{BinaryWord, Color, ZClass};
pub use letter::{lr_arc, ud_arc, ud_successors, CodeLetter};
pub use word::{AlphaWord, WordKind};
