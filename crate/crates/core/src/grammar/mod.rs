//! Number-word grammars for English, Danish, French and Japanese.
//!
//! [`to_words`] renders the canonical form of an integer, [`parse_words`]
//! inverts it strictly and [`is_grammatical`] is membership in the set of
//! canonical forms over `[0, MAX_VALUE]`.

mod lexicon;
mod parse;
mod render;

pub use lexicon::{LanguageSpec, LexEntry, Role};
pub use parse::{is_grammatical, parse_words, tokenize, ParseError, ParseErrorKind, Token};
pub use render::to_words;

use crate::error::Result;
use crate::language::Language;

/// Largest value with a canonical form.
pub const MAX_VALUE: u64 = 100_000_000;

/// A canonical number word: `surface == to_words(value, language)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberWord {
    language: Language,
    value: u64,
    surface: String,
}

impl NumberWord {
    pub fn new(value: u64, language: Language) -> Result<Self> {
        Ok(NumberWord {
            language,
            value,
            surface: to_words(value, language)?,
        })
    }

    pub fn parse(surface: &str, language: Language) -> Result<Self> {
        let value = parse_words(surface, language)?;
        Ok(NumberWord {
            language,
            value,
            surface: surface.to_string(),
        })
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn tokens(&self) -> Vec<Token<'_>> {
        tokenize(&self.surface, self.language)
    }
}
