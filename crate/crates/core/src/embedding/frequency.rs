use crate::error::{Error, Result};

/// Rank-to-count estimate `corpus_size / (rank + 2.7)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mandelbrot {
    pub corpus_size: f64,
    pub exponent: f64,
}

impl Default for Mandelbrot {
    /// One million tokens, exponent 1.
    fn default() -> Self {
        Mandelbrot {
            corpus_size: 1e6,
            exponent: 1.0,
        }
    }
}

impl Mandelbrot {
    const RANK_SHIFT: f64 = 2.7;

    pub fn estimate(&self, rank: u64) -> Result<f64> {
        estimate_frequency(rank, self.corpus_size, self.exponent)
    }
}

/// Estimated usage count of the word at 1-based frequency `rank`.
pub fn estimate_frequency(rank: u64, corpus_size: f64, exponent: f64) -> Result<f64> {
    if rank == 0 {
        return Err(Error::InvalidArgument("rank must be at least 1".into()));
    }
    if !(corpus_size > 0.0) {
        return Err(Error::InvalidArgument("corpus size must be positive".into()));
    }
    Ok(corpus_size / (rank as f64 + Mandelbrot::RANK_SHIFT).powf(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let m = Mandelbrot::default();
        let first = m.estimate(1).unwrap();
        assert!((first - 270_270.270_270_27).abs() / first < 1e-9);
        let tenth = m.estimate(10).unwrap();
        assert!((tenth - 78_740.157_480_315).abs() / tenth < 1e-9);
    }

    #[test]
    fn zero_exponent_is_flat() {
        for rank in [1, 7, 10_000] {
            assert_eq!(estimate_frequency(rank, 5e5, 0.0).unwrap(), 5e5);
        }
    }

    #[test]
    fn counts_decrease_with_rank() {
        let m = Mandelbrot::default();
        let counts: Vec<f64> = (1..100).map(|r| m.estimate(r).unwrap()).collect();
        assert!(counts.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn rank_zero_is_rejected() {
        assert!(estimate_frequency(0, 1e6, 1.0).is_err());
        assert!(estimate_frequency(1, 0.0, 1.0).is_err());
    }
}
