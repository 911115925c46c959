//! Tokenization and strict parsing of number words.
//!
//! Parsing is two-phase. A lenient evaluator turns the token sequence into a
//! candidate value, then the candidate is rendered back and compared with the
//! input byte for byte. Only canonical surfaces survive the second phase, so
//! the set of accepted strings is exactly the image of [`to_words`] over
//! `[0, MAX_VALUE]`.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use super::lexicon::{LanguageSpec, Role};
use super::render::to_words;
use super::MAX_VALUE;
use crate::language::Language;

/// One token of a surface form together with the separator that precedes it.
///
/// Concatenating `sep + text` over all tokens reproduces the surface exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub sep: &'a str,
    /// Byte range of `text` in the tokenized surface.
    pub span: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnknownToken,
    OutOfRange,
    NotCanonical,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Empty => "empty input",
            ParseErrorKind::UnknownToken => "token not in lexicon",
            ParseErrorKind::OutOfRange => "value exceeds supported range",
            ParseErrorKind::NotCanonical => "not a canonical number word",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {surface:?} ({language}): {kind} at token {position}")]
pub struct ParseError {
    pub language: Language,
    pub surface: String,
    pub kind: ParseErrorKind,
    /// Index of the first offending token.
    pub position: usize,
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == '-' || c == ','
}

/// Splits a surface into tokens.
///
/// EN/FR split on runs of whitespace, hyphens and commas. DA does the same
/// and then segments each closed compound into lexicon morphemes. JA splits
/// per character. Never fails: unknown material is kept as its own token.
pub fn tokenize(surface: &str, lang: Language) -> Vec<Token<'_>> {
    match lang {
        Language::Ja => surface
            .char_indices()
            .map(|(i, c)| Token {
                text: &surface[i..i + c.len_utf8()],
                sep: "",
                span: i..i + c.len_utf8(),
            })
            .collect(),
        Language::En | Language::Fr => split_words(surface),
        Language::Da => {
            let spec = LanguageSpec::get(Language::Da);
            let mut out = Vec::new();
            for word in split_words(surface) {
                match segment(spec, word.text) {
                    Some(parts) => {
                        let mut offset = word.span.start;
                        for (k, part) in parts.into_iter().enumerate() {
                            out.push(Token {
                                text: &surface[offset..offset + part.len()],
                                sep: if k == 0 { word.sep } else { "" },
                                span: offset..offset + part.len(),
                            });
                            offset += part.len();
                        }
                    }
                    None => out.push(word),
                }
            }
            out
        }
    }
}

fn split_words(surface: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut sep_start = 0;
    let mut word_start: Option<usize> = None;
    for (i, c) in surface.char_indices() {
        match (is_separator(c), word_start) {
            (true, Some(start)) => {
                out.push(Token {
                    text: &surface[start..i],
                    sep: &surface[sep_start..start],
                    span: start..i,
                });
                word_start = None;
                sep_start = i;
            }
            (false, None) => word_start = Some(i),
            _ => {}
        }
    }
    match word_start {
        Some(start) => out.push(Token {
            text: &surface[start..],
            sep: &surface[sep_start..start],
            span: start..surface.len(),
        }),
        // A trailing separator becomes an empty token so nothing is lost.
        None if sep_start < surface.len() => out.push(Token {
            text: "",
            sep: &surface[sep_start..],
            span: surface.len()..surface.len(),
        }),
        None => {}
    }
    out
}

/// Segments a closed compound into lexicon entries, preferring longer
/// morphemes first and backtracking on dead ends.
fn segment<'w>(spec: &LanguageSpec, word: &'w str) -> Option<Vec<&'w str>> {
    fn go<'w>(spec: &LanguageSpec, rest: &'w str, acc: &mut Vec<&'w str>) -> bool {
        if rest.is_empty() {
            return true;
        }
        let mut candidates: Vec<usize> = spec
            .lexicon
            .iter()
            .filter(|e| rest.starts_with(e.surface))
            .map(|e| e.surface.len())
            .collect();
        candidates.sort_unstable_by(|a, b| b.cmp(a));
        for len in candidates {
            acc.push(&rest[..len]);
            if go(spec, &rest[len..], acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    if word.is_empty() || !go(spec, word, &mut acc) {
        return None;
    }
    Some(acc)
}

/// Parses a canonical number word back to its value.
pub fn parse_words(surface: &str, lang: Language) -> Result<u64, ParseError> {
    let fail = |kind, position| ParseError {
        language: lang,
        surface: surface.to_string(),
        kind,
        position,
    };
    if surface.is_empty() {
        return Err(fail(ParseErrorKind::Empty, 0));
    }
    let spec = LanguageSpec::get(lang);
    let tokens = tokenize(surface, lang);
    if let Some(pos) = tokens.iter().position(|t| !spec.contains(t.text)) {
        return Err(fail(ParseErrorKind::UnknownToken, pos));
    }

    let candidate = match lang {
        Language::Ja => evaluate_kanji(spec, &tokens),
        _ => evaluate_western(spec, &tokens),
    }
    .map_err(|pos| fail(ParseErrorKind::OutOfRange, pos))?;

    let canonical = to_words(candidate, lang).expect("candidate is within range");
    if canonical == surface {
        return Ok(candidate);
    }
    let expected = tokenize(&canonical, lang);
    let pos = tokens
        .iter()
        .zip(expected.iter())
        .position(|(a, b)| a.text != b.text || a.sep != b.sep)
        .unwrap_or(expected.len())
        .min(tokens.len() - 1);
    Err(fail(ParseErrorKind::NotCanonical, pos))
}

/// True iff `surface` is the canonical form of some value in `[0, MAX_VALUE]`.
pub fn is_grammatical(surface: &str, lang: Language) -> bool {
    parse_words(surface, lang).is_ok()
}

fn check(value: Option<u64>, pos: usize) -> Result<u64, usize> {
    value.filter(|v| *v <= MAX_VALUE).ok_or(pos)
}

// Additive/multiplicative evaluation for EN, DA and FR. A ten directly after a
// unit multiplies it (FR "quatre-vingt"); hundreds multiply the running group;
// larger scales close the group into the total.
fn evaluate_western(spec: &LanguageSpec, tokens: &[Token<'_>]) -> Result<u64, usize> {
    let mut total: u64 = 0;
    let mut group: u64 = 0;
    let mut last_unit: Option<u64> = None;
    for (pos, tok) in tokens.iter().enumerate() {
        let entry = spec.lookup(tok.text).ok_or(pos)?;
        let w = entry.weight;
        match entry.role {
            Role::Unit => {
                group = check(group.checked_add(w), pos)?;
                last_unit = Some(w);
                continue;
            }
            Role::Ten => {
                group = match last_unit {
                    Some(u) if u >= 2 => check((group - u).checked_add(u * w), pos)?,
                    _ => check(group.checked_add(w), pos)?,
                };
            }
            Role::Scale if w < 1_000 => {
                group = check(group.max(1).checked_mul(w), pos)?;
            }
            Role::Scale => {
                let block = check(group.max(1).checked_mul(w), pos)?;
                total = check(total.checked_add(block), pos)?;
                group = 0;
            }
            Role::Connector => {}
        }
        last_unit = None;
    }
    check(total.checked_add(group), tokens.len().saturating_sub(1))
}

// Kanji numerals: digits multiply the following 十/百/千 (default 1); 万 and 億
// close a four-digit group.
fn evaluate_kanji(spec: &LanguageSpec, tokens: &[Token<'_>]) -> Result<u64, usize> {
    let mut total: u64 = 0;
    let mut group: u64 = 0;
    let mut digit: Option<u64> = None;
    for (pos, tok) in tokens.iter().enumerate() {
        let entry = spec.lookup(tok.text).ok_or(pos)?;
        let w = entry.weight;
        match entry.role {
            Role::Unit => digit = Some(w),
            _ if w < 10_000 => {
                group = check(group.checked_add(digit.take().unwrap_or(1) * w), pos)?;
            }
            _ => {
                group += digit.take().unwrap_or(0);
                let block = check(group.max(1).checked_mul(w), pos)?;
                total = check(total.checked_add(block), pos)?;
                group = 0;
            }
        }
    }
    let tail = group + digit.unwrap_or(0);
    check(total.checked_add(tail), tokens.len().saturating_sub(1))
}
