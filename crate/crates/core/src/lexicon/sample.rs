use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Pole, SeedSet};
use crate::error::{Error, Result};

/// Draw `k` seeds from each pole of `full`, uniformly without replacement.
///
/// Poles are sampled one after the other from a single ChaCha stream seeded
/// by `rng_seed`; the drawn words keep their order in `full`, so `k` equal to
/// the pole size returns the pole unchanged.
pub fn sample_seeds(full: &SeedSet, k: usize, rng_seed: u64) -> Result<SeedSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut draw = |pole: Pole| -> Result<Vec<String>> {
        let words = full.seeds(pole);
        if k > words.len() {
            return Err(Error::SampleTooLarge {
                pole: full.label(pole).to_string(),
                k,
                available: words.len(),
            });
        }
        let mut picked = index::sample(&mut rng, words.len(), k).into_vec();
        picked.sort_unstable();
        Ok(picked.into_iter().map(|i| words[i].clone()).collect())
    };
    let positive = draw(Pole::Positive)?;
    let negative = draw(Pole::Negative)?;
    SeedSet::new(
        full.concept(),
        full.positive_label(),
        full.negative_label(),
        positive,
        negative,
    )
}
