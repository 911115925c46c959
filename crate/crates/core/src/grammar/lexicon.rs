//! Compiled-in lexicons and rendering tables for the four languages.
//!
//! Each language carries two tables:
//!
//! - a *card* table, ordered by descending value, which drives rendering
//!   (see [`super::render`]); cards may be multi-token (`"quatre-vingts"`);
//! - a *lexicon* of single surface tokens with a role and numeric weight,
//!   which drives tokenization and parsing.

use std::fmt;

use crate::language::Language;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Unit,
    Ten,
    Scale,
    Connector,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Unit => "unit",
            Role::Ten => "ten",
            Role::Scale => "scale",
            Role::Connector => "connector",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LexEntry {
    pub surface: &'static str,
    pub role: Role,
    /// Numeric weight; zero for connectors.
    pub weight: u64,
}

const fn unit(surface: &'static str, weight: u64) -> LexEntry {
    LexEntry { surface, role: Role::Unit, weight }
}

const fn ten(surface: &'static str, weight: u64) -> LexEntry {
    LexEntry { surface, role: Role::Ten, weight }
}

const fn scale(surface: &'static str, weight: u64) -> LexEntry {
    LexEntry { surface, role: Role::Scale, weight }
}

const fn connector(surface: &'static str) -> LexEntry {
    LexEntry { surface, role: Role::Connector, weight: 0 }
}

/// The lexical and compositional rules for one language.
#[derive(Debug)]
pub struct LanguageSpec {
    pub language: Language,
    pub lexicon: &'static [LexEntry],
    /// `(value, text)` pairs in strictly descending value order.
    pub cards: &'static [(u64, &'static str)],
    /// Separators that may appear between two tokens of a canonical form.
    pub joiners: &'static [&'static str],
    /// Separator placed between recombined fragments of different words.
    pub fragment_joiner: &'static str,
}

impl LanguageSpec {
    pub fn get(language: Language) -> &'static LanguageSpec {
        match language {
            Language::En => &EN,
            Language::Da => &DA,
            Language::Fr => &FR,
            Language::Ja => &JA,
        }
    }

    pub fn lookup(&self, token: &str) -> Option<&'static LexEntry> {
        self.lexicon.iter().find(|e| e.surface == token)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.lookup(token).is_some()
    }

    /// Tab-separated `token, role, weight` lines, one per lexicon entry.
    pub fn lexicon_dump(&self) -> String {
        let mut out = String::new();
        for entry in self.lexicon {
            out.push_str(entry.surface);
            out.push('\t');
            out.push_str(entry.role.as_str());
            out.push('\t');
            out.push_str(&entry.weight.to_string());
            out.push('\n');
        }
        out
    }
}

static EN: LanguageSpec = LanguageSpec {
    language: Language::En,
    lexicon: &[
        unit("zero", 0),
        unit("one", 1),
        unit("two", 2),
        unit("three", 3),
        unit("four", 4),
        unit("five", 5),
        unit("six", 6),
        unit("seven", 7),
        unit("eight", 8),
        unit("nine", 9),
        unit("ten", 10),
        unit("eleven", 11),
        unit("twelve", 12),
        unit("thirteen", 13),
        unit("fourteen", 14),
        unit("fifteen", 15),
        unit("sixteen", 16),
        unit("seventeen", 17),
        unit("eighteen", 18),
        unit("nineteen", 19),
        ten("twenty", 20),
        ten("thirty", 30),
        ten("forty", 40),
        ten("fifty", 50),
        ten("sixty", 60),
        ten("seventy", 70),
        ten("eighty", 80),
        ten("ninety", 90),
        scale("hundred", 100),
        scale("thousand", 1_000),
        scale("million", 1_000_000),
        connector("and"),
    ],
    cards: &[
        (1_000_000, "million"),
        (1_000, "thousand"),
        (100, "hundred"),
        (90, "ninety"),
        (80, "eighty"),
        (70, "seventy"),
        (60, "sixty"),
        (50, "fifty"),
        (40, "forty"),
        (30, "thirty"),
        (20, "twenty"),
        (19, "nineteen"),
        (18, "eighteen"),
        (17, "seventeen"),
        (16, "sixteen"),
        (15, "fifteen"),
        (14, "fourteen"),
        (13, "thirteen"),
        (12, "twelve"),
        (11, "eleven"),
        (10, "ten"),
        (9, "nine"),
        (8, "eight"),
        (7, "seven"),
        (6, "six"),
        (5, "five"),
        (4, "four"),
        (3, "three"),
        (2, "two"),
        (1, "one"),
        (0, "zero"),
    ],
    joiners: &[" ", "-", ", "],
    fragment_joiner: " ",
};

// Danish forms are written as closed compounds ("femogfyrretusind"); the
// lexicon holds the morphemes and the tokenizer segments compounds into them.
static DA: LanguageSpec = LanguageSpec {
    language: Language::Da,
    lexicon: &[
        unit("nul", 0),
        unit("en", 1),
        unit("et", 1),
        unit("to", 2),
        unit("tre", 3),
        unit("fire", 4),
        unit("fem", 5),
        unit("seks", 6),
        unit("syv", 7),
        unit("otte", 8),
        unit("ni", 9),
        unit("ti", 10),
        unit("elleve", 11),
        unit("tolv", 12),
        unit("tretten", 13),
        unit("fjorten", 14),
        unit("femten", 15),
        unit("seksten", 16),
        unit("sytten", 17),
        unit("atten", 18),
        unit("nitten", 19),
        ten("tyve", 20),
        ten("tredive", 30),
        ten("fyrre", 40),
        ten("halvtreds", 50),
        ten("treds", 60),
        ten("halvfjerds", 70),
        ten("firs", 80),
        ten("halvfems", 90),
        scale("hundrede", 100),
        scale("tusind", 1_000),
        scale("tusinde", 1_000),
        scale("millioner", 1_000_000),
        connector("og"),
    ],
    cards: &[
        (1_000_000, "millioner"),
        (1_000, "tusind"),
        (100, "hundrede"),
        (90, "halvfems"),
        (80, "firs"),
        (70, "halvfjerds"),
        (60, "treds"),
        (50, "halvtreds"),
        (40, "fyrre"),
        (30, "tredive"),
        (20, "tyve"),
        (19, "nitten"),
        (18, "atten"),
        (17, "sytten"),
        (16, "seksten"),
        (15, "femten"),
        (14, "fjorten"),
        (13, "tretten"),
        (12, "tolv"),
        (11, "elleve"),
        (10, "ti"),
        (9, "ni"),
        (8, "otte"),
        (7, "syv"),
        (6, "seks"),
        (5, "fem"),
        (4, "fire"),
        (3, "tre"),
        (2, "to"),
        (1, "et"),
        (0, "nul"),
    ],
    joiners: &[" ", ""],
    fragment_joiner: " ",
};

static FR: LanguageSpec = LanguageSpec {
    language: Language::Fr,
    lexicon: &[
        unit("zéro", 0),
        unit("un", 1),
        unit("deux", 2),
        unit("trois", 3),
        unit("quatre", 4),
        unit("cinq", 5),
        unit("six", 6),
        unit("sept", 7),
        unit("huit", 8),
        unit("neuf", 9),
        unit("dix", 10),
        unit("onze", 11),
        unit("douze", 12),
        unit("treize", 13),
        unit("quatorze", 14),
        unit("quinze", 15),
        unit("seize", 16),
        ten("vingt", 20),
        ten("vingts", 20),
        ten("trente", 30),
        ten("quarante", 40),
        ten("cinquante", 50),
        ten("soixante", 60),
        scale("cent", 100),
        scale("cents", 100),
        scale("mille", 1_000),
        scale("million", 1_000_000),
        scale("millions", 1_000_000),
        connector("et"),
    ],
    cards: &[
        (1_000_000, "million"),
        (1_000, "mille"),
        (100, "cent"),
        (80, "quatre-vingts"),
        (60, "soixante"),
        (50, "cinquante"),
        (40, "quarante"),
        (30, "trente"),
        (20, "vingt"),
        (19, "dix-neuf"),
        (18, "dix-huit"),
        (17, "dix-sept"),
        (16, "seize"),
        (15, "quinze"),
        (14, "quatorze"),
        (13, "treize"),
        (12, "douze"),
        (11, "onze"),
        (10, "dix"),
        (9, "neuf"),
        (8, "huit"),
        (7, "sept"),
        (6, "six"),
        (5, "cinq"),
        (4, "quatre"),
        (3, "trois"),
        (2, "deux"),
        (1, "un"),
        (0, "zéro"),
    ],
    joiners: &[" ", "-"],
    fragment_joiner: " ",
};

static JA: LanguageSpec = LanguageSpec {
    language: Language::Ja,
    lexicon: &[
        unit("零", 0),
        unit("一", 1),
        unit("二", 2),
        unit("三", 3),
        unit("四", 4),
        unit("五", 5),
        unit("六", 6),
        unit("七", 7),
        unit("八", 8),
        unit("九", 9),
        scale("十", 10),
        scale("百", 100),
        scale("千", 1_000),
        scale("万", 10_000),
        scale("億", 100_000_000),
    ],
    cards: &[
        (100_000_000, "億"),
        (10_000, "万"),
        (1_000, "千"),
        (100, "百"),
        (10, "十"),
        (9, "九"),
        (8, "八"),
        (7, "七"),
        (6, "六"),
        (5, "五"),
        (4, "四"),
        (3, "三"),
        (2, "二"),
        (1, "一"),
        (0, "零"),
    ],
    joiners: &[""],
    fragment_joiner: "",
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cards_are_strictly_descending() {
        for lang in Language::ALL {
            let spec = LanguageSpec::get(lang);
            for pair in spec.cards.windows(2) {
                assert!(pair[0].0 > pair[1].0, "{lang}: {:?}", pair);
            }
            assert_eq!(spec.cards.last().unwrap().0, 0);
        }
    }

    #[test]
    fn lexicon_surfaces_are_unique() {
        for lang in Language::ALL {
            let spec = LanguageSpec::get(lang);
            let mut seen = std::collections::HashSet::new();
            for e in spec.lexicon {
                assert!(seen.insert(e.surface), "{lang}: duplicate {}", e.surface);
                assert!(!e.surface.contains(['\t', '\n']));
            }
        }
    }

    #[test]
    fn dump_has_one_triple_per_line() {
        let dump = LanguageSpec::get(Language::En).lexicon_dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), LanguageSpec::get(Language::En).lexicon.len());
        assert!(lines.contains(&"hundred\tscale\t100"));
        assert!(lines.contains(&"and\tconnector\t0"));
        assert!(lines.iter().all(|l| l.split('\t').count() == 3));
    }
}
