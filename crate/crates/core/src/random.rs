//! Seeded samplers for states, isometries and direct sums.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::scalar::{lit, Real};
use crate::state::{DirectSumState, PureQubit, QubitState};

/// Deterministic generator for a `(seed, stream)` pair.
///
/// Streams are independent of evaluation order, which is what lets parallel
/// roof restarts reproduce serial results bit for bit.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Uniform over the Bloch ball.
pub fn random_state<T: Real, R: Rng + ?Sized>(rng: &mut R) -> QubitState<T> {
    let (x, y, z) = loop {
        let v = (gaussian(rng), gaussian(rng), gaussian(rng));
        let n = (v.0 * v.0 + v.1 * v.1 + v.2 * v.2).sqrt();
        if n > 1e-300 {
            let r = rng.random::<f64>().cbrt() / n;
            break (v.0 * r, v.1 * r, v.2 * r);
        }
    };
    QubitState::new(
        lit((1.0 + z) / 2.0),
        Complex::new(lit(x / 2.0), lit(-y / 2.0)),
    )
    .expect("Bloch-ball point is a valid state")
}

/// Haar-random pure state.
pub fn random_pure<T: Real, R: Rng + ?Sized>(rng: &mut R) -> PureQubit<T> {
    loop {
        let c0 = Complex::new(lit(gaussian(rng)), lit(gaussian(rng)));
        let c1 = Complex::new(lit(gaussian(rng)), lit(gaussian(rng)));
        if let Ok(phi) = PureQubit::normalized(c0, c1) {
            return phi;
        }
    }
}

/// Pure state with lower population drawn uniformly from `[0, 1/2]`, random
/// labeling and random relative phase.
pub fn random_pure_by_population<T: Real, R: Rng + ?Sized>(rng: &mut R) -> PureQubit<T> {
    let a: f64 = rng.random_range(0.0..=0.5);
    let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let small = Complex::new(lit(a.sqrt()), T::zero());
    let big = Complex::from_polar(lit((1.0 - a).sqrt()), lit(phase));
    let phi = PureQubit::normalized(small, big).expect("nonzero amplitudes");
    if rng.random::<bool>() {
        phi.swapped()
    } else {
        phi
    }
}

/// Random block weight and two random blocks.
pub fn random_direct_sum<T: Real, R: Rng + ?Sized>(rng: &mut R) -> DirectSumState<T> {
    let p: f64 = rng.random();
    DirectSumState::new(
        lit(p),
        random_pure_by_population(rng),
        random_pure_by_population(rng),
    )
    .expect("p in [0, 1)")
}

/// `4n` standard normal chart coordinates for an `n x 2` isometry.
pub fn random_isometry_params<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize) -> Vec<T> {
    (0..4 * rows).map(|_| lit(gaussian(rng))).collect()
}
