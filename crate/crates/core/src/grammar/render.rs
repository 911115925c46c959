//! Integer to canonical number words.
//!
//! Rendering follows the card-decomposition scheme of the `num2words`
//! package: a value is split recursively into `(multiplier, card, remainder)`
//! triples over the descending card table, and the resulting tree is folded
//! left to right with a per-language pairwise `merge`. Reproducing that
//! exact fold order is what makes the output agree with the reference forms
//! (Danish `"ettusinde og et"`, English `"one thousand, one hundred"`, ...).

use super::lexicon::LanguageSpec;
use super::MAX_VALUE;
use crate::error::{Error, Result};
use crate::language::Language;

#[derive(Debug, Clone)]
enum Node {
    Leaf(String, u64),
    List(Vec<Node>),
}

/// Renders `value` as its canonical spelled-out form.
pub fn to_words(value: u64, lang: Language) -> Result<String> {
    if value > MAX_VALUE {
        return Err(Error::OutOfRange {
            value,
            max: MAX_VALUE,
        });
    }
    let spec = LanguageSpec::get(lang);
    let tree = split(spec, value);
    Ok(fold(lang, tree).0)
}

fn card_text(spec: &LanguageSpec, value: u64) -> &'static str {
    spec.cards
        .iter()
        .find(|(v, _)| *v == value)
        .map(|(_, t)| *t)
        .expect("every card table has an entry for 1")
}

fn split(spec: &LanguageSpec, value: u64) -> Vec<Node> {
    let &(card, text) = spec
        .cards
        .iter()
        .find(|(v, _)| *v <= value)
        .expect("card tables end with zero");
    let (div, rem) = if value == 0 {
        (1, 0)
    } else {
        (value / card, value % card)
    };

    let mut out = Vec::with_capacity(3);
    if div == 1 {
        out.push(Node::Leaf(card_text(spec, 1).to_string(), 1));
    } else {
        out.push(Node::List(split(spec, div)));
    }
    out.push(Node::Leaf(text.to_string(), card));
    if rem != 0 {
        out.push(Node::List(split(spec, rem)));
    }
    out
}

fn fold(lang: Language, mut val: Vec<Node>) -> (String, u64) {
    while val.len() != 1 {
        let mut out = Vec::with_capacity(val.len());
        if let (Node::Leaf(lt, ln), Node::Leaf(rt, rn)) = (&val[0], &val[1]) {
            let (text, num) = merge(lang, (lt, *ln), (rt, *rn));
            out.push(Node::Leaf(text, num));
            if val.len() > 2 {
                out.push(Node::List(val.split_off(2)));
            }
        } else {
            for elem in val {
                match elem {
                    Node::List(mut inner) if inner.len() == 1 => out.push(inner.pop().unwrap()),
                    Node::List(inner) => {
                        let (t, n) = fold(lang, inner);
                        out.push(Node::Leaf(t, n));
                    }
                    leaf => out.push(leaf),
                }
            }
        }
        val = out;
    }
    match val.pop().unwrap() {
        Node::Leaf(t, n) => (t, n),
        Node::List(inner) => fold(lang, inner),
    }
}

fn merge(lang: Language, left: (&str, u64), right: (&str, u64)) -> (String, u64) {
    match lang {
        Language::En => merge_en(left, right),
        Language::Da => merge_da(left, right),
        Language::Fr => merge_fr(left, right),
        Language::Ja => merge_ja(left, right),
    }
}

fn merge_en((lt, ln): (&str, u64), (rt, rn): (&str, u64)) -> (String, u64) {
    if ln == 1 && rn < 100 {
        (rt.to_string(), rn)
    } else if 100 > ln && ln > rn {
        (format!("{lt}-{rt}"), ln + rn)
    } else if ln >= 100 && 100 > rn {
        (format!("{lt} and {rt}"), ln + rn)
    } else if rn > ln {
        (format!("{lt} {rt}"), ln * rn)
    } else {
        (format!("{lt}, {rt}"), ln + rn)
    }
}

fn merge_da((lt, ln): (&str, u64), (rt, rn): (&str, u64)) -> (String, u64) {
    let mut ctext = lt.to_string();
    let mut ntext = rt.to_string();

    if ln == 1 {
        if rn < 1_000_000 {
            // "et" is prefixed to a bare hundred/thousand card.
            if rn == 100 || rn == 1_000 {
                return (format!("et{rt}"), rn);
            }
            return (ntext, rn);
        }
        ctext = "en".to_string();
    }

    let val;
    if rn > ln {
        if rn >= 1_000_000 {
            ctext.push(' ');
        }
        val = ln * rn;
    } else {
        if (100..1_000).contains(&ln) {
            ctext.push_str(" og ");
        } else if (1_000..=100_000).contains(&ln) {
            ctext.push_str("e og ");
        }
        if rn < 10 && 10 < ln && ln < 100 {
            if rn == 1 {
                ntext = "en".to_string();
            }
            let tens = std::mem::take(&mut ctext);
            ctext = format!("{ntext}og");
            ntext = tens;
        } else if ln >= 1_000_000 {
            ctext.push(' ');
        }
        val = ln + rn;
    }
    (ctext + &ntext, val)
}

fn merge_fr((lt, ln): (&str, u64), (rt, rn): (&str, u64)) -> (String, u64) {
    let mut ctext = lt.to_string();
    let mut ntext = rt.to_string();

    if ln == 1 {
        if rn < 1_000_000 {
            return (ntext, rn);
        }
    } else {
        let eighty_pattern = (ln as i64 - 80).rem_euclid(100) == 0;
        let round_hundreds = ln % 100 == 0 && ln < 1_000;
        if (eighty_pattern || round_hundreds) && rn < 1_000_000 && ctext.ends_with('s') {
            ctext.pop();
        }
        if ln < 1_000 && rn != 1_000 && !ntext.ends_with('s') && rn % 100 == 0 {
            ntext.push('s');
        }
    }

    if rn < ln && ln < 100 {
        if rn % 10 == 1 && ln != 80 {
            return (format!("{ctext} et {ntext}"), ln + rn);
        }
        return (format!("{ctext}-{ntext}"), ln + rn);
    }
    if rn > ln {
        return (format!("{ctext} {ntext}"), ln * rn);
    }
    (format!("{ctext} {ntext}"), ln + rn)
}

fn merge_ja((lt, ln): (&str, u64), (rt, rn): (&str, u64)) -> (String, u64) {
    if ln == 1 && rn < 10_000 {
        (rt.to_string(), rn)
    } else if ln > rn {
        (format!("{lt}{rt}"), ln + rn)
    } else {
        (format!("{lt}{rt}"), ln * rn)
    }
}
