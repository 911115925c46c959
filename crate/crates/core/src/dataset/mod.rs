//! Probing datasets.
//!
//! Task 1 (grammaticality): one input text, `y = 1` iff the number word in it
//! is ungrammatical. Task 2 (comparison): an ordered pair of texts, `y = 0`
//! iff the first denotes the larger value. Either task comes in a bare
//! variant (number words alone) or a sentence variant (number words inside
//! one of eleven templates); a bundle never mixes variants.

mod build;
mod io;
mod template;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

pub use build::{build, build_task1, build_task2};
pub use io::{
    format_split, parse_split, parse_split_file_name, read_dataset, read_split, split_file_name, write_dataset, write_split,
    SplitFile,
};
pub use template::{render_in_template, Template, TemplateSet, SLOT, TEMPLATES_PER_LANGUAGE};

use crate::error::{Error, Result};
use crate::grammar::parse_words;
use crate::language::Language;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Task {
    Grammaticality,
    Comparison,
}

impl Task {
    pub fn number(self) -> u8 {
        match self {
            Task::Grammaticality => 1,
            Task::Comparison => 2,
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "grammaticality" => Ok(Task::Grammaticality),
            "2" | "comparison" => Ok(Task::Comparison),
            _ => Err(Error::InvalidConfig(format!("unknown task {s:?} (expected 1 or 2)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Bare,
    Sentence,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Bare => "bare",
            Variant::Sentence => "sentence",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bare" => Ok(Variant::Bare),
            "sentence" => Ok(Variant::Sentence),
            _ => Err(Error::InvalidConfig(format!(
                "unknown variant {s:?} (expected bare or sentence)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaskVariant {
    pub task: Task,
    pub variant: Variant,
}

impl TaskVariant {
    pub fn new(task: Task, variant: Variant) -> Self {
        TaskVariant { task, variant }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Val, Split::Test];
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Input {
    Single(String),
    Pair(String, String),
}

impl Input {
    pub fn first(&self) -> &str {
        match self {
            Input::Single(s) | Input::Pair(s, _) => s,
        }
    }

    pub fn second(&self) -> Option<&str> {
        match self {
            Input::Single(_) => None,
            Input::Pair(_, s) => Some(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledExample {
    pub id: u64,
    pub input: Input,
    pub label: u8,
    pub template: Option<u8>,
}

impl LabeledExample {
    /// Values of the number words in this row, recovered by stripping the
    /// template and parsing. `None` when a text is not grammatical (the
    /// ungrammatical rows of task 1).
    pub fn source_values(&self, language: Language, templates: &TemplateSet) -> Option<Vec<u64>> {
        let word_of = |text: &'_ str| -> Option<u64> {
            let word = match self.template {
                Some(id) => templates.get(language, id)?.extract(text)?.to_string(),
                None => text.to_string(),
            };
            parse_words(&word, language).ok()
        };
        match &self.input {
            Input::Single(s) => Some(vec![word_of(s)?]),
            Input::Pair(a, b) => Some(vec![word_of(a)?, word_of(b)?]),
        }
    }
}

/// Sizes, seed and value range for one bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    pub train: usize,
    pub val: usize,
    pub test: usize,
    pub seed: u64,
    pub range: RangeInclusive<u64>,
    pub shuffle: bool,
    /// Let grammatical task 1 inputs repeat. Off by default: with the default
    /// sizes this makes the task 1 builders fail with a capacity error, since
    /// `[0, 999]` holds far fewer than 25 000 distinct grammatical inputs.
    pub allow_repeats: bool,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train: 30_000,
            val: 10_000,
            test: 10_000,
            seed: 1,
            range: 0..=999,
            shuffle: true,
            allow_repeats: false,
        }
    }
}

impl SplitSpec {
    /// A spec with the default 60-20-20 proportions and `total` rows.
    pub fn with_total(total: usize) -> Self {
        SplitSpec {
            train: total * 3 / 5,
            val: total / 5,
            test: total / 5,
            ..SplitSpec::default()
        }
    }

    pub fn total(&self) -> usize {
        self.train + self.val + self.test
    }

    pub fn size(&self, split: Split) -> usize {
        match split {
            Split::Train => self.train,
            Split::Val => self.val,
            Split::Test => self.test,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.total() == 0 {
            return Err(Error::InvalidConfig("split sizes are all zero".into()));
        }
        if self.train != 3 * self.val || self.val != self.test {
            return Err(Error::InvalidConfig(format!(
                "split sizes {}/{}/{} are not in 60-20-20 proportion",
                self.train, self.val, self.test
            )));
        }
        if Split::ALL.iter().any(|s| self.size(*s) % 2 != 0) {
            return Err(Error::InvalidConfig(
                "split sizes must be even for exact label balance".into(),
            ));
        }
        if self.range.is_empty() || *self.range.end() > crate::grammar::MAX_VALUE {
            return Err(Error::InvalidConfig(format!("bad value range {:?}", self.range)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetBundle {
    pub kind: TaskVariant,
    pub language: Language,
    pub train: Vec<LabeledExample>,
    pub val: Vec<LabeledExample>,
    pub test: Vec<LabeledExample>,
}

impl DatasetBundle {
    pub fn split(&self, split: Split) -> &[LabeledExample] {
        match split {
            Split::Train => &self.train,
            Split::Val => &self.val,
            Split::Test => &self.test,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &LabeledExample> {
        self.train.iter().chain(&self.val).chain(&self.test)
    }

    pub fn len(&self) -> usize {
        self.train.len() + self.val.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
