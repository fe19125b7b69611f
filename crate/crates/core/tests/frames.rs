mod common;

use common::fixture;
use seedlex::eval::{classification_metrics, ConfusionMatrix};
use seedlex::lexicon::read_lexicon;
use seedlex::scorer::{predict_frame, read_corpus, CorpusFormat, FrameSet, NON_MORAL};

fn read_rows(rel: &str) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(fixture(rel)).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn fifty_document_fixture() {
    let frames = FrameSet::from_lexicons(
        ["Sanctity", "Care", "Loyalty", "Fairness", "Authority"]
            .iter()
            .map(|f| read_lexicon(fixture(&format!("frames/{f}.csv"))).unwrap()),
    )
    .unwrap();
    let docs = read_corpus(fixture("frames/corpus.csv"), CorpusFormat::Csv).unwrap();
    assert_eq!(docs.len(), 50);
    let expected = read_rows("frames/expected_predictions.csv");
    let predictions: Vec<_> = docs.iter().map(|d| predict_frame(d, &frames)).collect();
    for (p, e) in predictions.iter().zip(&expected) {
        assert_eq!(p.doc_id, e[0]);
        assert_eq!(p.predicted_frame, e[1], "{}", p.doc_id);
        assert_eq!(u8::from(p.tie).to_string(), e[2], "{}", p.doc_id);
        if p.predicted_frame == NON_MORAL {
            assert!(p.frame_sums.iter().all(|(_, s)| *s == 0));
        }
    }
    assert_eq!(predictions.iter().filter(|p| p.tie).count(), 8);
    assert_eq!(predictions.iter().filter(|p| p.predicted_frame == NON_MORAL).count(), 8);

    let truth: Vec<String> = read_rows("frames/corpus.csv").into_iter().map(|r| r[2].clone()).collect();
    let predicted: Vec<&str> = predictions.iter().map(|p| p.predicted_frame.as_str()).collect();
    let labels = ["Care", "Fairness", "Loyalty", "Authority", "Sanctity", NON_MORAL];
    let cm = ConfusionMatrix::with_labels(&labels, &truth, &predicted).unwrap();
    let frozen: Vec<Vec<u64>> = read_rows("frames/confusion.csv")
        .into_iter()
        .map(|r| r[1..].iter().map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(cm.counts(), frozen.as_slice());
    let report = classification_metrics(&cm);
    let trace: u64 = (0..6).map(|i| frozen[i][i]).sum();
    assert_eq!(report.accuracy, trace as f64 / 50.0);
}
