use std::fs;
use std::io::{BufWriter, Write};

use anyhow::{Context, Result};
use numprobe_core::dataset::{
    build, read_split, write_dataset, Split, SplitSpec, TaskVariant, TemplateSet,
};
use numprobe_core::grammar::{parse_words, to_words, LanguageSpec};
use numprobe_core::synth::{SynthConfig, Synthesizer};

use crate::args::{Check, GenData, Lexicon, Manifest, Synth};
use crate::UsageError;

pub fn gen_data(a: GenData, out: &mut dyn Write) -> Result<()> {
    if a.total % 10 != 0 || a.total == 0 {
        return Err(UsageError(format!(
            "--total {} must be a positive multiple of 10 so every split splits evenly by label",
            a.total
        ))
        .into());
    }
    let spec = SplitSpec {
        seed: a.seed,
        range: 0..=a.max_value,
        shuffle: !a.no_shuffle,
        allow_repeats: a.allow_repeats,
        ..SplitSpec::with_total(a.total)
    };
    let templates = match &a.templates {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading templates {}", path.display()))?;
            TemplateSet::from_tsv(&text)
                .with_context(|| format!("templates {}", path.display()))?
        }
        None => TemplateSet::builtin(),
    };
    let kind = TaskVariant::new(a.task, a.variant);
    let bundle = build(a.lang, kind, &spec, &templates)?;
    let paths = write_dataset(&a.out_dir, &bundle)?;

    for (split, path) in Split::ALL.iter().zip(&paths) {
        let rows = bundle.split(*split);
        let ones = rows.iter().filter(|r| r.label == 1).count();
        writeln!(
            out,
            "{split}\t{}\trows={}\ty1={:.4}",
            path.display(),
            rows.len(),
            ones as f64 / rows.len().max(1) as f64
        )?;
    }
    Ok(())
}

pub fn check(a: Check, out: &mut dyn Write) -> Result<()> {
    let input = a.input.trim();
    let line = if !input.is_empty() && input.bytes().all(|b| b.is_ascii_digit()) {
        let value: u64 = input
            .parse()
            .map_err(|_| numprobe_core::Error::OutOfRange {
                value: u64::MAX,
                max: numprobe_core::grammar::MAX_VALUE,
            })?;
        to_words(value, a.lang)?
    } else {
        match parse_words(&a.input, a.lang) {
            Ok(v) => format!("grammatical {v}"),
            Err(_) => "ungrammatical".to_string(),
        }
    };
    writeln!(out, "{line}")?;
    Ok(())
}

pub fn synth(a: Synth, out: &mut dyn Write) -> Result<()> {
    let mut cfg = SynthConfig::new(a.lang, 0..=a.max_value, a.seed)?;
    if let Some(n) = a.max_len {
        cfg = cfg.with_max_len(n);
    }
    let mut rng = cfg.rng();
    let mut synth = Synthesizer::new(cfg)?;
    let mut out = BufWriter::new(out);
    for _ in 0..a.count {
        writeln!(out, "{}", synth.generate(&mut rng)?)?;
    }
    out.flush()?;
    Ok(())
}

pub fn manifest(a: Manifest, out: &mut dyn Write) -> Result<()> {
    let file = read_split(&a.dataset)?;
    let mut text = String::new();
    for row in &file.rows {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            row.id,
            row.label,
            row.input.first(),
            row.input.second().unwrap_or("-")
        ));
    }
    match a.out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn lexicon(a: Lexicon, out: &mut dyn Write) -> Result<()> {
    write!(out, "{}", LanguageSpec::get(a.lang).lexicon_dump())?;
    Ok(())
}
