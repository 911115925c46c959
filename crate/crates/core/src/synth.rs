//! Ungrammatical number words built by recombining fragments of two
//! grammatical ones.
//!
//! Each source word is cut into contiguous fragments that are either
//! grammatical on their own or single lexicon tokens. The two fragment lists
//! are then merged in a random order that keeps each word's fragments in
//! their original order, e.g. `fifty-five` + `two hundred` can become
//! `fifty-five two hundred` or `two fifty-five hundred`. Candidates that are
//! accidentally grammatical or longer than the configured bound are
//! discarded.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grammar::{is_grammatical, to_words, LanguageSpec, NumberWord, MAX_VALUE};
use crate::language::Language;

/// Attempts per output before giving up.
pub const MAX_ATTEMPTS: usize = 1_000;

/// Cut positions for one word: each index `i` starts a new fragment at
/// token `i`. The empty set is the no-cut split.
pub type CutSet = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthConfig {
    pub language: Language,
    pub range: RangeInclusive<u64>,
    /// Upper bound on the output length, in characters.
    pub max_len: usize,
    pub seed: u64,
}

impl SynthConfig {
    /// Config whose length bound is the longest canonical surface in `range`.
    ///
    /// Finding that bound renders every value in the range once.
    pub fn new(language: Language, range: RangeInclusive<u64>, seed: u64) -> Result<Self> {
        let (_, longest) = surface_length_bounds(language, &range)?;
        Ok(SynthConfig {
            language,
            range,
            max_len: longest,
            seed,
        })
    }

    /// Default value range `[0, 999]`.
    pub fn with_default_range(language: Language, seed: u64) -> Result<Self> {
        Self::new(language, 0..=999, seed)
    }

    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = max_len;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (shortest, _) = surface_length_bounds(self.language, &self.range)?;
        if self.max_len < shortest {
            return Err(Error::InvalidConfig(format!(
                "max length {} is below the shortest canonical surface ({shortest} chars)",
                self.max_len
            )));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// `(shortest, longest)` canonical surface length in characters over `range`.
pub fn surface_length_bounds(language: Language, range: &RangeInclusive<u64>) -> Result<(usize, usize)> {
    if range.is_empty() {
        return Err(Error::InvalidConfig(format!("empty value range {range:?}")));
    }
    if *range.end() > MAX_VALUE {
        return Err(Error::OutOfRange {
            value: *range.end(),
            max: MAX_VALUE,
        });
    }
    let mut bounds = (usize::MAX, 0);
    for v in range.clone() {
        let n = to_words(v, language)?.chars().count();
        bounds = (bounds.0.min(n), bounds.1.max(n));
    }
    Ok(bounds)
}

/// Every way to cut `word` into fragments that are each grammatical or a
/// single lexicon token. Always includes the no-cut split.
pub fn split_points(word: &NumberWord) -> Vec<CutSet> {
    let lang = word.language();
    let spec = LanguageSpec::get(lang);
    let surface = word.surface();
    let tokens = word.tokens();
    let n = tokens.len();

    // valid[i][j]: tokens i..j form an admissible fragment.
    let mut valid = vec![vec![false; n + 1]; n + 1];
    for i in 0..n {
        for j in i + 1..=n {
            valid[i][j] = (j == i + 1 && spec.contains(tokens[i].text))
                || is_grammatical(&surface[tokens[i].span.start..tokens[j - 1].span.end], lang);
        }
    }

    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let cuts: CutSet = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let mut start = 0;
        let ok = cuts.iter().copied().chain([n]).all(|end| {
            let good = valid[start][end];
            start = end;
            good
        });
        if ok {
            out.push(cuts);
        }
    }
    out
}

/// The fragment surfaces of `word` under `cuts`, internal separators kept.
pub fn fragments<'w>(word: &'w NumberWord, cuts: &[usize]) -> Vec<&'w str> {
    let tokens = word.tokens();
    let surface = word.surface();
    let mut bounds: Vec<usize> = Vec::with_capacity(cuts.len() + 2);
    bounds.push(0);
    bounds.extend_from_slice(cuts);
    bounds.push(tokens.len());
    bounds
        .windows(2)
        .map(|w| &surface[tokens[w[0]].span.start..tokens[w[1] - 1].span.end])
        .collect()
}

/// One fragment of a synthesized word and the source (0 or 1) it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub source: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesized {
    pub text: String,
    pub sources: [u64; 2],
    pub pieces: Vec<Piece>,
}

/// Reusable generator that caches split enumerations per source value.
#[derive(Debug)]
pub struct Synthesizer {
    config: SynthConfig,
    splits: HashMap<u64, (NumberWord, Vec<CutSet>)>,
}

impl Synthesizer {
    pub fn new(config: SynthConfig) -> Result<Self> {
        config.validate()?;
        Ok(Synthesizer {
            config,
            splits: HashMap::new(),
        })
    }

    pub fn config(&self) -> &SynthConfig {
        &self.config
    }

    pub fn generate<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<String> {
        self.generate_traced(rng).map(|s| s.text)
    }

    pub fn generate_traced<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Synthesized> {
        let lang = self.config.language;
        let joiner = LanguageSpec::get(lang).fragment_joiner;
        for _ in 0..MAX_ATTEMPTS {
            let a = rng.gen_range(self.config.range.clone());
            let b = rng.gen_range(self.config.range.clone());
            if a == b {
                continue;
            }
            let left = self.pick_fragments(a, rng)?;
            let right = self.pick_fragments(b, rng)?;
            let pieces = interleave(left, right, rng);
            let text = pieces
                .iter()
                .map(|p| p.text.as_str())
                .collect::<Vec<_>>()
                .join(joiner);
            if text.chars().count() <= self.config.max_len && !is_grammatical(&text, lang) {
                return Ok(Synthesized {
                    text,
                    sources: [a, b],
                    pieces,
                });
            }
        }
        Err(Error::Synthesis {
            attempts: MAX_ATTEMPTS,
        })
    }

    fn pick_fragments<R: Rng + ?Sized>(&mut self, value: u64, rng: &mut R) -> Result<Vec<String>> {
        let lang = self.config.language;
        if !self.splits.contains_key(&value) {
            let word = NumberWord::new(value, lang)?;
            let cuts = split_points(&word);
            self.splits.insert(value, (word, cuts));
        }
        let (word, cuts) = &self.splits[&value];
        let chosen = &cuts[rng.gen_range(0..cuts.len())];
        Ok(fragments(word, chosen).into_iter().map(str::to_string).collect())
    }
}

// Uniform over all order-preserving merges of the two lists.
fn interleave<R: Rng + ?Sized>(left: Vec<String>, right: Vec<String>, rng: &mut R) -> Vec<Piece> {
    let mut out = Vec::with_capacity(left.len() + right.len());
    let mut l = left.into_iter();
    let mut r = right.into_iter();
    loop {
        let (nl, nr) = (l.len(), r.len());
        if nl + nr == 0 {
            break;
        }
        let from_left = rng.gen_range(0..nl + nr) < nl;
        let (source, text) = if from_left {
            (0, l.next().unwrap())
        } else {
            (1, r.next().unwrap())
        };
        out.push(Piece { source, text });
    }
    out
}

/// Draws one ungrammatical word.
pub fn synth_ungrammatical<R: Rng + ?Sized>(cfg: &SynthConfig, rng: &mut R) -> Result<String> {
    Synthesizer::new(cfg.clone())?.generate(rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(v: u64, lang: Language) -> NumberWord {
        NumberWord::new(v, lang).unwrap()
    }

    #[test]
    fn split_examples() {
        let w = word(55, Language::En);
        let splits = split_points(&w);
        assert!(splits.contains(&vec![]));
        assert!(splits.contains(&vec![1]));
        assert_eq!(fragments(&w, &[1]), ["fifty", "five"]);

        let w = word(200, Language::En);
        assert!(split_points(&w).contains(&vec![1]));
        assert_eq!(fragments(&w, &[1]), ["two", "hundred"]);

        let w = word(30, Language::Ja);
        assert!(split_points(&w).contains(&vec![1]));
        assert_eq!(fragments(&w, &[1]), ["三", "十"]);
    }

    #[test]
    fn split_keeps_internal_separators() {
        let w = word(786, Language::En);
        let splits = split_points(&w);
        // "seven hundred" | "and" | "eighty-six"
        assert!(splits.contains(&vec![2, 3]));
        assert_eq!(
            fragments(&w, &[2, 3]),
            ["seven hundred", "and", "eighty-six"]
        );
    }

    #[test]
    fn single_token_word_has_only_trivial_split() {
        assert_eq!(split_points(&word(7, Language::En)), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn appendix_examples_are_reachable() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..2_000 {
            let pieces_a = vec!["fifty-five".to_string()];
            let pieces_b = vec!["two".to_string(), "hundred".to_string()];
            let merged = interleave(pieces_a, pieces_b, &mut rng);
            let text: Vec<_> = merged.iter().map(|p| p.text.as_str()).collect();
            seen.insert(text.join(" "));
        }
        assert!(seen.contains("two fifty-five hundred"));
        assert!(seen.contains("two hundred fifty-five"));
        assert!(seen.contains("fifty-five two hundred"));
        assert_eq!(seen.len(), 3);
        assert!(!is_grammatical("fifty-five two hundred", Language::En));
        assert!(!is_grammatical("two fifty-five hundred", Language::En));
    }

    #[test]
    fn degenerate_range_exhausts_budget() {
        let cfg = SynthConfig::new(Language::En, 0..=0, 1).unwrap();
        let mut rng = cfg.rng();
        assert!(matches!(
            synth_ungrammatical(&cfg, &mut rng),
            Err(Error::Synthesis { attempts: MAX_ATTEMPTS })
        ));
    }

    #[test]
    fn length_bound_below_shortest_is_invalid() {
        let cfg = SynthConfig::with_default_range(Language::En, 1)
            .unwrap()
            .with_max_len(2);
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        assert!(Synthesizer::new(cfg).is_err());
    }

    #[test]
    fn default_length_bound_is_longest_surface() {
        let cfg = SynthConfig::with_default_range(Language::En, 1).unwrap();
        assert_eq!(cfg.max_len, "three hundred and seventy-seven".len());
        let cfg = SynthConfig::with_default_range(Language::Ja, 1).unwrap();
        assert_eq!(cfg.max_len, 5);
    }
}
