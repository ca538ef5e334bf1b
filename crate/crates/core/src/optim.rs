//! Derivative-free local search (Nelder-Mead) used by the roof oracle.
//!
//! Profiles such as `min(a/mu, 1)` are not differentiable, so the oracle only
//! ever compares objective values. Coefficients follow the dimension-adaptive
//! scheme of Gao and Han, which behaves better than the textbook constants
//! once the chart has eight or more parameters.

use crate::scalar::{half, lit, Real};

/// Stopping rule and initial simplex size.
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions<T: Real = f64> {
    pub max_iters: usize,
    /// Stop when the spread of simplex values is at most `tol` and every
    /// vertex lies within `sqrt(tol)` of the best one.
    pub tol: T,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: T,
}

impl<T: Real> Default for NelderMeadOptions<T> {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            tol: lit(1e-9),
            initial_step: lit(0.5),
        }
    }
}

/// Best point seen during a search.
#[derive(Debug, Clone)]
pub struct Minimum<T: Real = f64> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Minimizes `f` from `x0`. The returned point is the best one ever
/// evaluated, so its value never exceeds any probed value.
pub fn nelder_mead<T, F>(mut f: F, x0: &[T], opts: &NelderMeadOptions<T>) -> Minimum<T>
where
    T: Real,
    F: FnMut(&[T]) -> T,
{
    let n = x0.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[T], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        // NaN never wins a comparison; treat it as +inf.
        if v.is_nan() {
            T::infinity()
        } else {
            v
        }
    };

    let mut best_x = x0.to_vec();
    let mut best_v = eval(x0, &mut evaluations);
    if n == 0 {
        return Minimum {
            x: best_x,
            value: best_v,
            iterations: 0,
            evaluations,
        };
    }

    let dim: T = lit(n as f64);
    let alpha = T::one();
    let gamma = T::one() + lit::<T>(2.0) / dim;
    let rho = lit::<T>(0.75) - half::<T>() / dim;
    let sigma = T::one() - T::one() / dim;

    let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), best_v));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] = x[i] + opts.initial_step;
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
    }

    let track = |x: &[T], v: T, best_x: &mut Vec<T>, best_v: &mut T| {
        if v < *best_v {
            *best_v = v;
            best_x.clear();
            best_x.extend_from_slice(x);
        }
    };
    for (x, v) in &simplex {
        track(x, *v, &mut best_x, &mut best_v);
    }

    let size_tol = opts.tol.sqrt();
    let mut centroid = vec![T::zero(); n];
    let mut iterations = 0;
    while iterations < opts.max_iters {
        // Stable sort keeps the ordering deterministic on ties.
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        let spread = simplex[n].1 - simplex[0].1;
        // Values alone can tie on a wide simplex by symmetry.
        if spread <= opts.tol && diameter(&simplex) <= size_tol {
            break;
        }
        iterations += 1;

        for c in centroid.iter_mut() {
            *c = T::zero();
        }
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c = *c + *xi;
            }
        }
        for c in centroid.iter_mut() {
            *c = *c / dim;
        }

        let worst = simplex[n].0.clone();
        let along = |t: T| -> Vec<T> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| *c + t * (*c - *w))
                .collect()
        };

        let xr = along(alpha);
        let fr = eval(&xr, &mut evaluations);
        track(&xr, fr, &mut best_x, &mut best_v);

        if fr < simplex[0].1 {
            let xe = along(gamma);
            let fe = eval(&xe, &mut evaluations);
            track(&xe, fe, &mut best_x, &mut best_v);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[n].1 {
            let xc = along(alpha * rho);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        track(&xc, fc, &mut best_x, &mut best_v);
        if fc < fr.min(simplex[n].1) {
            simplex[n] = (xc, fc);
            continue;
        }

        // Shrink toward the best vertex.
        let anchor = simplex[0].0.clone();
        for (x, v) in simplex.iter_mut().skip(1) {
            for (xi, ai) in x.iter_mut().zip(&anchor) {
                *xi = *ai + sigma * (*xi - *ai);
            }
            *v = eval(x, &mut evaluations);
            track(x, *v, &mut best_x, &mut best_v);
        }
    }

    Minimum {
        x: best_x,
        value: best_v,
        iterations,
        evaluations,
    }
}

/// Largest coordinate distance from the first vertex.
fn diameter<T: Real>(simplex: &[(Vec<T>, T)]) -> T {
    let anchor = &simplex[0].0;
    simplex[1..]
        .iter()
        .flat_map(|(x, _)| x.iter().zip(anchor).map(|(a, b)| (*a - *b).abs()))
        .fold(T::zero(), T::max)
}
