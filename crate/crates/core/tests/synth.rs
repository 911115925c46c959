use numprobe_core::grammar::{is_grammatical, tokenize, LanguageSpec, NumberWord};
use numprobe_core::synth::{fragments, split_points, SynthConfig, Synthesizer};
use numprobe_core::Language;
use proptest::prelude::*;

#[test]
fn outputs_are_ungrammatical_bounded_and_built_from_lexicon_tokens() {
    for lang in Language::ALL {
        let spec = LanguageSpec::get(lang);
        let cfg = SynthConfig::with_default_range(lang, 42).unwrap();
        let max_len = cfg.max_len;
        let mut rng = cfg.rng();
        let mut synth = Synthesizer::new(cfg).unwrap();
        for _ in 0..2_000 {
            let out = synth.generate(&mut rng).unwrap();
            assert!(!is_grammatical(&out, lang), "{lang} {out:?}");
            assert!(out.chars().count() <= max_len, "{lang} {out:?}");
            for t in tokenize(&out, lang) {
                assert!(spec.contains(t.text), "{lang} {out:?} has junk token {:?}", t.text);
            }
        }
    }
}

#[test]
fn same_seed_same_sequence() {
    for lang in Language::ALL {
        let run = || {
            let cfg = SynthConfig::with_default_range(lang, 5).unwrap();
            let mut rng = cfg.rng();
            let mut synth = Synthesizer::new(cfg).unwrap();
            (0..200).map(|_| synth.generate(&mut rng).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }
}

#[test]
fn different_seeds_differ() {
    let draw = |seed| {
        let cfg = SynthConfig::with_default_range(Language::En, seed).unwrap();
        let mut rng = cfg.rng();
        let mut synth = Synthesizer::new(cfg).unwrap();
        (0..20).map(|_| synth.generate(&mut rng).unwrap()).collect::<Vec<_>>()
    };
    assert_ne!(draw(1), draw(2));
}

#[test]
fn interleaving_preserves_source_fragment_order() {
    for lang in Language::ALL {
        let cfg = SynthConfig::with_default_range(lang, 11).unwrap();
        let mut rng = cfg.rng();
        let mut synth = Synthesizer::new(cfg).unwrap();
        for _ in 0..500 {
            let s = synth.generate_traced(&mut rng).unwrap();
            assert_ne!(s.sources[0], s.sources[1]);
            for src in 0..2 {
                let word = NumberWord::new(s.sources[src], lang).unwrap();
                let mine: Vec<&str> = s
                    .pieces
                    .iter()
                    .filter(|p| p.source == src)
                    .map(|p| p.text.as_str())
                    .collect();
                // The pieces of each source must be one admissible split of it, in order.
                let matched = split_points(&word)
                    .iter()
                    .any(|cuts| fragments(&word, cuts) == mine);
                assert!(matched, "{lang} {:?} from {}", mine, word.surface());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_split_has_admissible_fragments(v in 0u64..=999, idx in 0usize..4) {
        let lang = Language::ALL[idx];
        let spec = LanguageSpec::get(lang);
        let word = NumberWord::new(v, lang).unwrap();
        let splits = split_points(&word);
        prop_assert!(splits.contains(&vec![]));
        for cuts in &splits {
            let frags = fragments(&word, cuts);
            prop_assert_eq!(frags.len(), cuts.len() + 1);
            for f in frags {
                prop_assert!(is_grammatical(f, lang) || spec.contains(f));
            }
        }
    }
}
