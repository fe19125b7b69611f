mod common;

use std::collections::HashMap;

use common::oracle_document_score;
use proptest::prelude::*;
use seedlex::lexicon::{import_csv, Lexicon, LexiconEntry};
use seedlex::scorer::{
    attribute_matches, score_corpus, score_document, Denominator, ScoreMode, ScoreOptions, TokenizedDoc,
};

fn appendix_lexicon() -> Lexicon {
    import_csv(
        "word,valence,seed,sentiment\nsuperb,1,0,Positive\nblamed,-1,0,Negative\n".as_bytes(),
        "sentiment",
        "appendix.csv",
    )
    .unwrap()
}

#[test]
fn appendix_words_polarity_and_valence() {
    let doc = TokenizedDoc::new("d", "Superb, superb... blamed");
    let lex = appendix_lexicon();
    let p = score_document(&doc, &lex, ScoreMode::Polarity);
    assert_eq!((p.matched_positive, p.matched_negative), (2, 1));
    assert!((p.score - (2.0 - 1.0) / 3.0).abs() < 1e-15);
    let v = score_document(&doc, &lex, ScoreMode::Valence);
    assert!((v.score - (1.0 + 1.0 - 1.0) / 3.0).abs() < 1e-15);

    let a = attribute_matches(&doc, &lex, ScoreMode::Polarity, 10).unwrap();
    assert_eq!(a[0].word, "superb");
    assert_eq!(a[0].contribution, 2.0);
    assert_eq!(a[1].contribution, -1.0);
}

#[test]
fn valence_and_polarity_differ_on_graded_words() {
    let lex = import_csv(
        "word,valence,seed,sentiment\ngood,1,1,Positive\nfine,0.5,0,Positive\nbad,-1,1,Negative\n".as_bytes(),
        "s",
        "s.csv",
    )
    .unwrap();
    let doc = TokenizedDoc::new("d", "fine fine bad");
    // polarity: (2 - 1) / 3; valence: (0.5 + 0.5 - 1) / 3
    assert!((score_document(&doc, &lex, ScoreMode::Polarity).score - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(score_document(&doc, &lex, ScoreMode::Valence).score, 0.0);
    let all = ScoreOptions {
        mode: ScoreMode::Polarity,
        denominator: Denominator::AllTokens,
    };
    let doc = TokenizedDoc::new("d", "fine and bad and fine and more");
    assert!((score_document(&doc, &lex, all).score - 1.0 / 7.0).abs() < 1e-15);
}

#[test]
fn no_match_document() {
    let s = score_document(&TokenizedDoc::new("d", "nothing here"), &appendix_lexicon(), ScoreMode::Valence);
    assert_eq!(s.score, 0.0);
    assert!(s.no_match);
    assert!(attribute_matches(&TokenizedDoc::new("d", ""), &appendix_lexicon(), ScoreMode::Valence, 3)
        .unwrap()
        .is_empty());
}

const VOCAB: usize = 40;

fn word(i: usize) -> String {
    format!("t{i:02}")
}

fn arb_lexicon() -> impl Strategy<Value = Lexicon> {
    prop::collection::btree_map(0..VOCAB, prop_oneof![-1.0..-0.01f64, 0.01..=1.0f64], 1..25).prop_map(|m| {
        let entries = m
            .into_iter()
            .map(|(i, valence)| LexiconEntry {
                word: word(i),
                valence,
                seed: false,
                pole: if valence > 0.0 { "Pos" } else { "Neg" }.to_string(),
            })
            .collect();
        Lexicon::new("c", "Pos", "Neg", entries).unwrap()
    })
}

fn arb_tokens() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec((0..VOCAB + 10).prop_map(word), 0..60)
}

fn valences(lex: &Lexicon) -> HashMap<String, f64> {
    lex.entries().iter().map(|e| (e.word.clone(), e.valence)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn scoring_contracts(lex in arb_lexicon(), tokens in arb_tokens(), rotate in 0usize..60, valence in any::<bool>()) {
        let mode = if valence { ScoreMode::Valence } else { ScoreMode::Polarity };
        let doc = TokenizedDoc::from_tokens("d", tokens.clone());
        let s = score_document(&doc, &lex, mode);
        prop_assert!((-1.0..=1.0).contains(&s.score));

        let (want, matched) = oracle_document_score(&tokens, &valences(&lex), valence);
        prop_assert_eq!(s.matched_total, matched);
        prop_assert!((s.score - want).abs() < 1e-12);

        // permutation invariance is exact
        let mut shuffled = tokens.clone();
        shuffled.reverse();
        if !shuffled.is_empty() {
            let r = rotate % shuffled.len();
            shuffled.rotate_left(r);
        }
        let p = score_document(&TokenizedDoc::from_tokens("d", shuffled), &lex, mode);
        prop_assert_eq!(p.score.to_bits(), s.score.to_bits());

        if mode == ScoreMode::Polarity {
            let doubled: Vec<String> = tokens.iter().chain(&tokens).cloned().collect();
            let d = score_document(&TokenizedDoc::from_tokens("d", doubled), &lex, mode);
            prop_assert_eq!(d.score.to_bits(), s.score.to_bits());
        }

        let attributions = attribute_matches(&doc, &lex, mode, usize::MAX).unwrap();
        let total: f64 = attributions.iter().map(|a| a.contribution).sum();
        prop_assert!((total - s.numerator).abs() < 1e-12);
        if mode == ScoreMode::Polarity {
            prop_assert_eq!(total, s.matched_positive as f64 - s.matched_negative as f64);
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let lex = appendix_lexicon();
    let docs: Vec<TokenizedDoc> = (0..500)
        .map(|i| {
            let text = match i % 4 {
                0 => "superb superb blamed",
                1 => "blamed",
                2 => "nothing",
                _ => "superb day",
            };
            TokenizedDoc::new(i.to_string(), text)
        })
        .collect();
    let a = score_corpus(&docs, &lex, ScoreMode::Polarity, true);
    let b = score_corpus(&docs, &lex, ScoreMode::Polarity, false);
    assert_eq!(a, b);
    assert_eq!(a[7].doc_id, "7");
}
