use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::template::{render_in_template, Template, TemplateSet};
use super::{DatasetBundle, Input, LabeledExample, Split, SplitSpec, Task, TaskVariant, Variant};
use crate::error::{Error, Result};
use crate::grammar::to_words;
use crate::language::Language;
use crate::synth::{SynthConfig, Synthesizer};

/// Consecutive duplicate draws tolerated before declaring the input space exhausted.
const STALE_LIMIT: usize = 200_000;

struct Row {
    input: Input,
    template: Option<u8>,
}

/// Builds the bundle for `kind`.
pub fn build(
    language: Language,
    kind: TaskVariant,
    spec: &SplitSpec,
    templates: &TemplateSet,
) -> Result<DatasetBundle> {
    match kind.task {
        Task::Grammaticality => build_task1(language, kind.variant, spec, templates),
        Task::Comparison => build_task2(language, kind.variant, spec, templates),
    }
}

fn template_slice<'t>(
    language: Language,
    variant: Variant,
    templates: &'t TemplateSet,
) -> Option<&'t [Template]> {
    match variant {
        Variant::Bare => None,
        Variant::Sentence => Some(templates.for_language(language)),
    }
}

fn place(word: &str, templates: Option<&[Template]>, id: Option<u8>) -> Result<String> {
    match (templates, id) {
        (Some(list), Some(id)) => render_in_template(&list[id as usize], word),
        _ => Ok(word.to_string()),
    }
}

fn range_len(spec: &SplitSpec) -> usize {
    (spec.range.end() - spec.range.start() + 1) as usize
}

/// Grammaticality judgment: half canonical number words, half synthesized
/// ungrammatical ones, labelled 0 and 1 respectively.
pub fn build_task1(
    language: Language,
    variant: Variant,
    spec: &SplitSpec,
    templates: &TemplateSet,
) -> Result<DatasetBundle> {
    spec.validate()?;
    let per_class = spec.total() / 2;
    let tpls = template_slice(language, variant, templates);
    let slots = tpls.map_or(1, <[Template]>::len);

    let grammatical_capacity = range_len(spec).saturating_mul(slots);
    if !spec.allow_repeats && grammatical_capacity < per_class {
        return Err(Error::Capacity {
            what: "grammatical inputs",
            needed: per_class,
            available: grammatical_capacity,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let synth_cfg = SynthConfig::new(language, spec.range.clone(), spec.seed)?;
    let mut synth = Synthesizer::new(synth_cfg)?;

    let mut seen: HashSet<String> = HashSet::new();
    let mut grammatical = Vec::with_capacity(per_class);
    let mut ungrammatical = Vec::with_capacity(per_class);
    let mut stale = 0;
    while grammatical.len() < per_class || ungrammatical.len() < per_class {
        let want_bad = if grammatical.len() == per_class {
            true
        } else if ungrammatical.len() == per_class {
            false
        } else {
            rng.gen_bool(0.5)
        };
        let word = if want_bad {
            synth.generate(&mut rng)?
        } else {
            to_words(rng.gen_range(spec.range.clone()), language)?
        };
        let template = tpls.map(|t| rng.gen_range(0..t.len()) as u8);
        let text = place(&word, tpls, template)?;

        let fresh = seen.insert(text.clone());
        if !fresh && (want_bad || !spec.allow_repeats) {
            stale += 1;
            if stale > STALE_LIMIT {
                let (what, found) = if want_bad {
                    ("ungrammatical inputs", ungrammatical.len())
                } else {
                    ("grammatical inputs", grammatical.len())
                };
                return Err(Error::Capacity {
                    what,
                    needed: per_class,
                    available: found,
                });
            }
            continue;
        }
        stale = 0;
        let row = Row {
            input: Input::Single(text),
            template,
        };
        if want_bad {
            ungrammatical.push(row);
        } else {
            grammatical.push(row);
        }
    }

    Ok(assemble(
        language,
        TaskVariant::new(Task::Grammaticality, variant),
        spec,
        grammatical,
        ungrammatical,
        &mut rng,
    ))
}

/// Value comparison: ordered pairs of distinct values, `y = 0` when the
/// first is larger. Sentence rows put both numbers in the same template.
pub fn build_task2(
    language: Language,
    variant: Variant,
    spec: &SplitSpec,
    templates: &TemplateSet,
) -> Result<DatasetBundle> {
    spec.validate()?;
    let per_class = spec.total() / 2;
    let tpls = template_slice(language, variant, templates);

    let k = range_len(spec);
    let pairs_per_class = k.saturating_mul(k.saturating_sub(1)) / 2;
    if pairs_per_class < per_class {
        return Err(Error::Capacity {
            what: "ordered value pairs per label",
            needed: per_class,
            available: pairs_per_class,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    let mut greater = Vec::with_capacity(per_class);
    let mut less = Vec::with_capacity(per_class);
    let mut stale = 0;
    while greater.len() < per_class || less.len() < per_class {
        let a = rng.gen_range(spec.range.clone());
        let b = rng.gen_range(spec.range.clone());
        if a == b {
            continue;
        }
        let bucket = if a > b { &mut greater } else { &mut less };
        if bucket.len() == per_class || !seen.insert((a, b)) {
            stale += 1;
            if stale > STALE_LIMIT {
                return Err(Error::Capacity {
                    what: "ordered value pairs per label",
                    needed: per_class,
                    available: greater.len().min(less.len()),
                });
            }
            continue;
        }
        stale = 0;
        let template = tpls.map(|t| rng.gen_range(0..t.len()) as u8);
        let first = place(&to_words(a, language)?, tpls, template)?;
        let second = place(&to_words(b, language)?, tpls, template)?;
        bucket.push(Row {
            input: Input::Pair(first, second),
            template,
        });
    }

    Ok(assemble(
        language,
        TaskVariant::new(Task::Comparison, variant),
        spec,
        greater,
        less,
        &mut rng,
    ))
}

// Stratified 60-20-20 cut: each split takes half its rows from each class,
// so every split is exactly balanced.
fn assemble(
    language: Language,
    kind: TaskVariant,
    spec: &SplitSpec,
    mut zeros: Vec<Row>,
    mut ones: Vec<Row>,
    rng: &mut ChaCha8Rng,
) -> DatasetBundle {
    if spec.shuffle {
        zeros.shuffle(rng);
        ones.shuffle(rng);
    }
    let mut zeros = zeros.into_iter();
    let mut ones = ones.into_iter();
    let mut next_id = 0u64;
    let mut splits: Vec<Vec<LabeledExample>> = Vec::with_capacity(3);
    for split in Split::ALL {
        let half = spec.size(split) / 2;
        let mut rows: Vec<(Row, u8)> = Vec::with_capacity(2 * half);
        for (z, o) in zeros.by_ref().take(half).zip(ones.by_ref().take(half)) {
            rows.push((z, 0));
            rows.push((o, 1));
        }
        if spec.shuffle {
            rows.shuffle(rng);
        }
        let examples = rows
            .into_iter()
            .map(|(row, label)| {
                let ex = LabeledExample {
                    id: next_id,
                    input: row.input,
                    label,
                    template: row.template,
                };
                next_id += 1;
                ex
            })
            .collect();
        splits.push(examples);
    }
    let test = splits.pop().unwrap();
    let val = splits.pop().unwrap();
    let train = splits.pop().unwrap();
    DatasetBundle {
        kind,
        language,
        train,
        val,
        test,
    }
}
