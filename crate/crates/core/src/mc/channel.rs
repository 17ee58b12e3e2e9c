use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::AntennaConfig;

/// One quasi-static realization of both hops.
///
/// `h1` is M2 x M1 (source to relay), `h2` is M3 x M2 (relay to destination);
/// entries are i.i.d. circularly-symmetric complex Gaussian with unit
/// variance.
#[derive(Debug, Clone)]
pub struct ChannelSample {
    pub h1: DMatrix<Complex64>,
    pub h2: DMatrix<Complex64>,
}

/// Draws the channel realization for one sample index.
///
/// A pure function of (seed, index): the index selects an independent ChaCha
/// stream under the seed-derived key, so any partition of the index range
/// yields the same draws.
pub fn sample_channel(config: &AntennaConfig, seed: u64, index: u64) -> ChannelSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let h1 = gaussian_matrix(&mut rng, config.m2() as usize, config.m1() as usize);
    let h2 = gaussian_matrix(&mut rng, config.m3() as usize, config.m2() as usize);
    ChannelSample { h1, h2 }
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    // Real and imaginary parts each N(0, 1/2), so |entry|^2 has unit mean.
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re * std::f64::consts::FRAC_1_SQRT_2, im * std::f64::consts::FRAC_1_SQRT_2)
    })
}
