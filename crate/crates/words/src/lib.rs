//! Words over the `t`- and `u`-alphabets of 1-forms, with Q[i] coefficients.
//!
//! Text form: letters separated by whitespace, e.g. `w0 w3 | w1` or
//! `a x+1 x-i q+i`. A `|` token is ignored when parsing.

mod letters;
mod li;
mod reg;
mod word;

pub use letters::{Letter, OmegaLetter, Root4, XLetter, XSymbol};
pub use li::{li_to_word, word_to_li, LiIndex};
pub use reg::{is_admissible, reg_decompose, reg_decompose_sum, RegPolynomial};
pub use word::{expand_composites, expand_w20, reverse_with_sign, shuffle, OmegaWord, Word, WordSum, XSymbolWord, XWord};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseWordError {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("not admissible: {0}")]
    NotAdmissible(String),
}
