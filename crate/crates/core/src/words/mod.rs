//! Finite words, substitutions and the factor languages of substitution subshifts.

mod index;
mod substitution;
mod system;
mod word;

pub use substitution::Substitution;
pub use system::{
    Language, SubshiftSystem, SystemKind, BUILTIN_SYSTEMS, LANGUAGE_CAP, MAX_CHECKED_LEN,
    PREFIX_CAP,
};
pub use word::{flip_symbol, format_word_file, parse_word_file, Word, MAX_ALPHABET};
