//! Line-delimited TSV dataset files.
//!
//! `id  task  variant  lang  x0  x1  y  template_id`, with `x1` and
//! `template_id` written as `-` when absent.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{DatasetBundle, Input, LabeledExample, Split, Task, TaskVariant, Variant};
use crate::error::{Error, Result};
use crate::language::Language;

const ABSENT: &str = "-";
const FIELDS: usize = 8;

/// `{lang}_{task}_{variant}_{split}.tsv`, e.g. `en_1_bare_train.tsv`.
pub fn split_file_name(language: Language, kind: TaskVariant, split: Split) -> String {
    format!("{language}_{}_{}_{split}.tsv", kind.task, kind.variant)
}

/// Inverse of [`split_file_name`]; the `.tsv` extension is optional.
pub fn parse_split_file_name(name: &str) -> Option<(Language, TaskVariant, Split)> {
    let stem = name.strip_suffix(".tsv").unwrap_or(name);
    let mut parts = stem.split('_');
    let language = parts.next()?.parse().ok()?;
    let task = parts.next()?.parse().ok()?;
    let variant = parts.next()?.parse().ok()?;
    let split = match parts.next()? {
        "train" => Split::Train,
        "val" => Split::Val,
        "test" => Split::Test,
        _ => return None,
    };
    if parts.next().is_some() {
        return None;
    }
    Some((language, TaskVariant::new(task, variant), split))
}

fn check_field(text: &str) -> Result<&str> {
    if text.is_empty() || text == ABSENT || text.contains(['\t', '\n', '\r']) {
        return Err(Error::InvalidConfig(format!(
            "text {text:?} cannot be stored in a dataset field"
        )));
    }
    Ok(text)
}

/// Serializes one split. Output depends only on the arguments.
pub fn format_split(language: Language, kind: TaskVariant, rows: &[LabeledExample]) -> Result<String> {
    let mut out = String::new();
    for row in rows {
        let x0 = check_field(row.input.first())?;
        let x1 = match row.input.second() {
            Some(s) => check_field(s)?,
            None => ABSENT,
        };
        let template = row.template.map_or_else(|| ABSENT.to_string(), |t| t.to_string());
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{x0}\t{x1}\t{}\t{template}",
            row.id, kind.task, kind.variant, language, row.label
        )
        .expect("writing to a String");
    }
    Ok(out)
}

/// Records of one split file together with the task, variant and language
/// they declare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFile {
    pub kind: TaskVariant,
    pub language: Language,
    pub rows: Vec<LabeledExample>,
}

/// Parses split file contents; `path` only labels errors.
pub fn parse_split(text: &str, path: &Path) -> Result<SplitFile> {
    let mut header: Option<(TaskVariant, Language)> = None;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let n = idx + 1;
        let bad = |msg: String| Error::format(path, n, msg);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != FIELDS {
            return Err(bad(format!("expected {FIELDS} fields, found {}", fields.len())));
        }
        let id: u64 = fields[0].parse().map_err(|_| bad(format!("bad id {:?}", fields[0])))?;
        let task: Task = fields[1].parse().map_err(|e: Error| bad(e.to_string()))?;
        let variant: Variant = fields[2].parse().map_err(|e: Error| bad(e.to_string()))?;
        let language: Language = fields[3].parse().map_err(|e: Error| bad(e.to_string()))?;
        let kind = TaskVariant::new(task, variant);
        match header {
            None => header = Some((kind, language)),
            Some(h) if h != (kind, language) => {
                return Err(bad("task, variant or language differs from earlier lines".into()));
            }
            Some(_) => {}
        }
        let (x0, x1) = (fields[4], fields[5]);
        if x0.is_empty() || x0 == ABSENT {
            return Err(bad("missing x0".into()));
        }
        let input = match (task, x1) {
            (Task::Grammaticality, ABSENT) => Input::Single(x0.to_string()),
            (Task::Grammaticality, _) => return Err(bad("task 1 rows take a single input".into())),
            (Task::Comparison, ABSENT | "") => return Err(bad("task 2 rows need x1".into())),
            (Task::Comparison, _) => Input::Pair(x0.to_string(), x1.to_string()),
        };
        let label = match fields[6] {
            "0" => 0,
            "1" => 1,
            other => return Err(bad(format!("label must be 0 or 1, found {other:?}"))),
        };
        let template = match (variant, fields[7]) {
            (Variant::Bare, ABSENT) => None,
            (Variant::Bare, _) => return Err(bad("bare rows have no template".into())),
            (Variant::Sentence, t) => Some(
                t.parse::<u8>()
                    .ok()
                    .filter(|&t| (t as usize) < super::TEMPLATES_PER_LANGUAGE)
                    .ok_or_else(|| bad(format!("bad template id {t:?}")))?,
            ),
        };
        rows.push(LabeledExample {
            id,
            input,
            label,
            template,
        });
    }
    let (kind, language) = header.ok_or_else(|| Error::format(path, 0, "no records"))?;
    Ok(SplitFile {
        kind,
        language,
        rows,
    })
}

pub fn write_split(
    path: &Path,
    language: Language,
    kind: TaskVariant,
    rows: &[LabeledExample],
) -> Result<()> {
    let text = format_split(language, kind, rows)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_split(path: &Path) -> Result<SplitFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_split(&text, path)
}

/// Writes the three split files into `dir`, creating it if needed.
pub fn write_dataset(dir: &Path, bundle: &DatasetBundle) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    Split::ALL
        .iter()
        .map(|&split| {
            let path = dir.join(split_file_name(bundle.language, bundle.kind, split));
            write_split(&path, bundle.language, bundle.kind, bundle.split(split))?;
            Ok(path)
        })
        .collect()
}

/// Reads the bundle written by [`write_dataset`] for `language` and `kind`.
pub fn read_dataset(dir: &Path, language: Language, kind: TaskVariant) -> Result<DatasetBundle> {
    let mut parts = Vec::with_capacity(3);
    for split in Split::ALL {
        let path = dir.join(split_file_name(language, kind, split));
        let file = read_split(&path)?;
        if (file.kind, file.language) != (kind, language) {
            return Err(Error::format(
                &path,
                1,
                format!(
                    "file holds {} task {} {}, expected {language} task {} {}",
                    file.language, file.kind.task, file.kind.variant, kind.task, kind.variant
                ),
            ));
        }
        parts.push(file.rows);
    }
    let test = parts.pop().unwrap();
    let val = parts.pop().unwrap();
    let train = parts.pop().unwrap();
    Ok(DatasetBundle {
        kind,
        language,
        train,
        val,
        test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind1() -> TaskVariant {
        TaskVariant::new(Task::Grammaticality, Variant::Bare)
    }

    fn parse(text: &str) -> Result<SplitFile> {
        parse_split(text, Path::new("x.tsv"))
    }

    fn line_of(err: Error) -> usize {
        match err {
            Error::Format { line, .. } => line,
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn file_names() {
        assert_eq!(split_file_name(Language::En, kind1(), Split::Train), "en_1_bare_train.tsv");
        let k = TaskVariant::new(Task::Comparison, Variant::Sentence);
        assert_eq!(split_file_name(Language::Ja, k, Split::Val), "ja_2_sentence_val.tsv");
        assert_eq!(
            parse_split_file_name("ja_2_sentence_val.tsv"),
            Some((Language::Ja, k, Split::Val))
        );
        assert_eq!(
            parse_split_file_name("en_1_bare_test"),
            Some((Language::En, kind1(), Split::Test))
        );
        for bad in ["en_1_bare", "xx_1_bare_train", "en_3_bare_train", "en_1_bare_train_x"] {
            assert_eq!(parse_split_file_name(bad), None, "{bad}");
        }
    }

    #[test]
    fn format_examples() {
        let rows = [
            LabeledExample {
                id: 0,
                input: Input::Single("fifty-five".into()),
                label: 0,
                template: None,
            },
            LabeledExample {
                id: 1,
                input: Input::Single("two fifty-five hundred".into()),
                label: 1,
                template: None,
            },
        ];
        assert_eq!(
            format_split(Language::En, kind1(), &rows).unwrap(),
            "0\t1\tbare\ten\tfifty-five\t-\t0\t-\n1\t1\tbare\ten\ttwo fifty-five hundred\t-\t1\t-\n"
        );
        let pair = [LabeledExample {
            id: 7,
            input: Input::Pair("He could eat two oranges".into(), "He could eat one orange".into()),
            label: 0,
            template: Some(0),
        }];
        let k = TaskVariant::new(Task::Comparison, Variant::Sentence);
        assert_eq!(
            format_split(Language::En, k, &pair).unwrap(),
            "7\t2\tsentence\ten\tHe could eat two oranges\tHe could eat one orange\t0\t0\n"
        );
    }

    #[test]
    fn label_two_is_rejected_with_line_number() {
        let text = "0\t1\tbare\ten\tone\t-\t0\t-\n1\t1\tbare\ten\ttwo\t-\t2\t-\n";
        assert_eq!(line_of(parse(text).unwrap_err()), 2);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let cases = [
            "0\t1\tbare\ten\tone\t-\t0\n",
            "x\t1\tbare\ten\tone\t-\t0\t-\n",
            "0\t3\tbare\ten\tone\t-\t0\t-\n",
            "0\t1\tmixed\ten\tone\t-\t0\t-\n",
            "0\t1\tbare\txx\tone\t-\t0\t-\n",
            "0\t1\tbare\ten\tone\ttwo\t0\t-\n",
            "0\t2\tbare\ten\tone\t-\t0\t-\n",
            "0\t1\tbare\ten\tone\t-\t0\t3\n",
            "0\t1\tsentence\ten\tone\t-\t0\t11\n",
            "0\t1\tsentence\ten\tone\t-\t0\t-\n",
            "0\t1\tbare\ten\t-\t-\t0\t-\n",
        ];
        for text in cases {
            assert_eq!(line_of(parse(text).unwrap_err()), 1, "{text:?}");
        }
        let mixed = "0\t1\tbare\ten\tone\t-\t0\t-\n1\t1\tbare\tfr\tun\t-\t0\t-\n";
        assert_eq!(line_of(parse(mixed).unwrap_err()), 2);
        assert_eq!(line_of(parse("").unwrap_err()), 0);
    }

    #[test]
    fn fields_with_tabs_cannot_be_written() {
        let rows = [LabeledExample {
            id: 0,
            input: Input::Single("a\tb".into()),
            label: 0,
            template: None,
        }];
        assert!(format_split(Language::En, kind1(), &rows).is_err());
    }
}
