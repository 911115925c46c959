use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::language::Language;

/// Placeholder for the number word inside a template pattern.
pub const SLOT: &str = "{N}";

/// Number of sentence templates each language must provide.
pub const TEMPLATES_PER_LANGUAGE: usize = 11;

const DEFAULT_TEMPLATES: &str = include_str!("../../data/templates.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub id: u8,
    pub language: Language,
    pub pattern: String,
}

impl Template {
    fn halves(&self) -> Result<(&str, &str)> {
        match self.pattern.matches(SLOT).count() {
            1 => Ok(self.pattern.split_once(SLOT).unwrap()),
            n => Err(Error::Template(format!(
                "template {} ({}) has {n} slots, expected exactly one: {:?}",
                self.id, self.language, self.pattern
            ))),
        }
    }

    /// Recovers the slot filler from a rendered sentence, if it fits this template.
    pub fn extract<'s>(&self, sentence: &'s str) -> Option<&'s str> {
        let (prefix, suffix) = self.halves().ok()?;
        sentence
            .strip_prefix(prefix)?
            .strip_suffix(suffix)
            .filter(|w| !w.is_empty())
    }
}

/// Substitutes `word` into the single slot of `template`.
pub fn render_in_template(template: &Template, word: &str) -> Result<String> {
    let (prefix, suffix) = template.halves()?;
    Ok(format!("{prefix}{word}{suffix}"))
}

/// The per-language template table, ids `0..TEMPLATES_PER_LANGUAGE`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    by_language: BTreeMap<Language, Vec<Template>>,
}

impl TemplateSet {
    /// The templates compiled into the crate.
    pub fn builtin() -> Self {
        Self::from_tsv(DEFAULT_TEMPLATES).expect("bundled template file is valid")
    }

    /// Parses `lang <TAB> id <TAB> pattern` lines; `#` starts a comment line.
    ///
    /// Every language must be present with exactly
    /// [`TEMPLATES_PER_LANGUAGE`] single-slot templates.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut by_language: BTreeMap<Language, Vec<Template>> = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [lang, id, pattern] = fields[..] else {
                return Err(Error::Template(format!(
                    "line {}: expected 3 tab-separated fields, found {}",
                    n + 1,
                    fields.len()
                )));
            };
            let language: Language = lang.parse()?;
            let id: u8 = id
                .parse()
                .map_err(|_| Error::Template(format!("line {}: bad template id {id:?}", n + 1)))?;
            let template = Template {
                id,
                language,
                pattern: pattern.to_string(),
            };
            template.halves()?;
            by_language.entry(language).or_default().push(template);
        }
        for lang in Language::ALL {
            let list = by_language.entry(lang).or_default();
            list.sort_by_key(|t| t.id);
            let ids: Vec<u8> = list.iter().map(|t| t.id).collect();
            let expected: Vec<u8> = (0..TEMPLATES_PER_LANGUAGE as u8).collect();
            if ids != expected {
                return Err(Error::Template(format!(
                    "{lang}: expected template ids 0..={}, found {ids:?}",
                    TEMPLATES_PER_LANGUAGE - 1
                )));
            }
        }
        Ok(TemplateSet { by_language })
    }

    pub fn for_language(&self, language: Language) -> &[Template] {
        &self.by_language[&language]
    }

    pub fn get(&self, language: Language, id: u8) -> Option<&Template> {
        self.for_language(language).get(id as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(pattern: &str) -> Template {
        Template {
            id: 0,
            language: Language::En,
            pattern: pattern.to_string(),
        }
    }

    #[test]
    fn render_examples() {
        assert_eq!(
            render_in_template(&t("There are {N} books in the library"), "thirty-eight").unwrap(),
            "There are thirty-eight books in the library"
        );
        assert_eq!(
            render_in_template(&t("He could eat {N} oranges"), "three hundred and two").unwrap(),
            "He could eat three hundred and two oranges"
        );
        assert_eq!(render_in_template(&t("{N}"), "five hundred").unwrap(), "five hundred");
    }

    #[test]
    fn slot_count_is_checked() {
        assert!(matches!(render_in_template(&t("no slot"), "x"), Err(Error::Template(_))));
        assert!(matches!(render_in_template(&t("{N} and {N}"), "x"), Err(Error::Template(_))));
    }

    #[test]
    fn extract_inverts_render() {
        let tpl = t("There are {N} books in the library");
        let s = render_in_template(&tpl, "seven hundred and eighty-six").unwrap();
        assert_eq!(tpl.extract(&s), Some("seven hundred and eighty-six"));
        assert_eq!(tpl.extract("There are books"), None);
    }

    #[test]
    fn builtin_set_is_complete() {
        let set = TemplateSet::builtin();
        for lang in Language::ALL {
            let list = set.for_language(lang);
            assert_eq!(list.len(), TEMPLATES_PER_LANGUAGE);
            for tpl in list {
                assert_eq!(tpl.pattern.matches(SLOT).count(), 1);
                assert!(!tpl.pattern.contains(['\t', '\n']));
            }
        }
        let en = set.for_language(Language::En);
        assert!(en.iter().any(|t| t.pattern == "He could eat {N} oranges"));
        assert!(en.iter().any(|t| t.pattern == "There are {N} books in the library"));
    }

    #[test]
    fn incomplete_file_is_rejected() {
        let err = TemplateSet::from_tsv("en\t0\tOnly {N} one\n").unwrap_err();
        assert!(matches!(err, Error::Template(_)));
        let err = TemplateSet::from_tsv("en\t0\tnothing here\n").unwrap_err();
        assert!(matches!(err, Error::Template(_)));
        let err = TemplateSet::from_tsv("xx\t0\t{N}\n").unwrap_err();
        assert!(matches!(err, Error::UnsupportedLanguage(_)));
    }
}
