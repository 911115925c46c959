//! Multilingual numeracy probing toolkit.
//!
//! - [`grammar`]: canonical number words for EN/DA/FR/JA, strict parsing and
//!   grammaticality judgments.
//! - [`synth`]: ungrammatical number words recombined from fragments of
//!   grammatical ones.
//! - [`dataset`]: grammaticality (task 1) and value-comparison (task 2)
//!   datasets, bare or inside sentence templates, with a TSV file format.
//! - [`probe`]: a single-hidden-layer MLP probe trained on frozen embeddings,
//!   plus the binary embedding/checkpoint format.

pub mod dataset;
pub mod error;
pub mod grammar;
pub mod language;
pub mod probe;
pub mod synth;

pub use error::{Error, Result};
pub use language::Language;
