use serde::{Deserialize, Serialize};

use super::{score_document, ScoreMode, TokenizedDoc};
use crate::error::{Error, Result};
use crate::lexicon::Lexicon;

/// Label predicted when no frame lexicon matches anything.
pub const NON_MORAL: &str = "Non-moral";

/// Frame order used to break ties.
pub const CANONICAL_FRAMES: [&str; 5] = ["care", "fairness", "loyalty", "authority", "sanctity"];

/// Frame lexicons in tie-break order: canonical frames first (matched
/// case-insensitively, by name or name prefix such as `Care-Harm`), then any
/// other frames by name.
#[derive(Debug, Clone)]
pub struct FrameSet {
    frames: Vec<(String, Lexicon)>,
}

impl FrameSet {
    pub fn new(frames: impl IntoIterator<Item = (String, Lexicon)>) -> Result<Self> {
        let mut frames: Vec<(String, Lexicon)> = frames.into_iter().collect();
        if frames.is_empty() {
            return Err(Error::InvalidArgument("no frame lexicons given".into()));
        }
        frames.sort_by(|(a, _), (b, _)| canonical_rank(a).cmp(&canonical_rank(b)).then_with(|| a.cmp(b)));
        if let Some(w) = frames.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument(format!("frame {:?} given twice", w[0].0)));
        }
        Ok(FrameSet { frames })
    }

    /// Frames named after their lexicon's concept.
    pub fn from_lexicons(lexicons: impl IntoIterator<Item = Lexicon>) -> Result<Self> {
        Self::new(lexicons.into_iter().map(|l| (l.concept().to_string(), l)))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.frames.iter().map(|(n, _)| n.as_str())
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

fn canonical_rank(name: &str) -> usize {
    let lower = name.to_lowercase();
    CANONICAL_FRAMES
        .iter()
        .position(|c| lower.starts_with(c))
        .unwrap_or(CANONICAL_FRAMES.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramePrediction {
    pub doc_id: String,
    /// Matched token count per frame, in [`FrameSet`] order.
    pub frame_sums: Vec<(String, usize)>,
    pub predicted_frame: String,
    /// More than one frame shared the maximum; the first in order won.
    pub tie: bool,
}

/// Predict the frame whose lexicon matches the most tokens, counting vice
/// and virtue words alike.
pub fn predict_frame(doc: &TokenizedDoc, frames: &FrameSet) -> FramePrediction {
    let frame_sums: Vec<(String, usize)> = frames
        .frames
        .iter()
        .map(|(name, lexicon)| {
            let s = score_document(doc, lexicon, ScoreMode::Polarity);
            (name.clone(), s.matched_total)
        })
        .collect();
    let best = frame_sums.iter().map(|(_, s)| *s).max().unwrap_or(0);
    let (predicted_frame, tie) = if best == 0 {
        (NON_MORAL.to_string(), false)
    } else {
        let mut winners = frame_sums.iter().filter(|(_, s)| *s == best);
        let first = winners.next().expect("maximum is attained").0.clone();
        (first, winners.next().is_some())
    };
    FramePrediction {
        doc_id: doc.doc_id.clone(),
        frame_sums,
        predicted_frame,
        tie,
    }
}
