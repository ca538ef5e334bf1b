//! Coherence measures defined by their value on pure states.
//!
//! For a qubit, every pure-state coherence functional depends only on
//! `m = |c0 c1*|`, so a measure is fully described by a profile on `[0, 1/2]`.
//! When that profile is continuous and convex, the convex roof of the measure
//! is the profile evaluated at `|rho01|` ([`MeasureSpec::closed_form`]). The
//! coherence rank is discontinuous and has its own piecewise formula
//! ([`coherence_rank`]).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{half, lit, to_f64, two, Real};
use crate::state::{population_from_magnitude, PureQubit, QubitState};

/// Shape of a pure-state profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureKind<T: Real = f64> {
    /// `2m`, the l1 norm of a pure state.
    Concurrence,
    /// Binary entropy of the lower population.
    Formation,
    /// The lower population itself.
    Geometric,
    /// `log2(1 + 2m)`.
    CMax,
    /// `min(a/mu, 1)`; the coherence indicator when `mu = 0`.
    CMu(T),
    /// Indicator of `m > 0`.
    Rank,
}

/// A coherence measure: its profile plus the continuity and convexity flags
/// that decide whether the closed form applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec<T: Real = f64> {
    kind: MeasureKind<T>,
    continuous: bool,
    convex_in_m: bool,
}

/// Outcome of [`MeasureSpec::convexity_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Convex,
    Concave,
    Affine,
    Neither,
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Curvature::Convex => "convex",
            Curvature::Concave => "concave",
            Curvature::Affine => "affine",
            Curvature::Neither => "neither",
        };
        f.write_str(s)
    }
}

/// Binary entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy<T: Real>(a: T) -> T {
    let term = |x: T| {
        if x <= T::zero() {
            T::zero()
        } else {
            -x * x.log2()
        }
    };
    term(a) + term(T::one() - a)
}

/// `C_mu` of a pure state with lower population `a`.
pub fn c_mu_pure<T: Real>(mu: T, a: T) -> T {
    if mu == T::zero() {
        if a > T::zero() {
            T::one()
        } else {
            T::zero()
        }
    } else {
        (a / mu).min(T::one())
    }
}

impl<T: Real> MeasureSpec<T> {
    pub fn concurrence() -> Self {
        Self {
            kind: MeasureKind::Concurrence,
            continuous: true,
            convex_in_m: true,
        }
    }

    pub fn formation() -> Self {
        Self {
            kind: MeasureKind::Formation,
            continuous: true,
            convex_in_m: true,
        }
    }

    pub fn geometric() -> Self {
        Self {
            kind: MeasureKind::Geometric,
            continuous: true,
            convex_in_m: true,
        }
    }

    pub fn cmax() -> Self {
        Self {
            kind: MeasureKind::CMax,
            continuous: true,
            convex_in_m: false,
        }
    }

    /// The `C_mu` family. Since `a <= 1/2`, the cap at 1 is never reached for
    /// `mu >= 1/2` and the profile is the geometric one scaled by `1/mu`,
    /// hence convex; below 1/2 it is neither convex nor concave, and `mu = 0`
    /// is the discontinuous rank indicator.
    pub fn cmu(mu: T) -> Result<Self> {
        if !(mu >= T::zero() && mu <= T::one()) {
            return Err(Error::MuRange(to_f64(mu)));
        }
        Ok(Self {
            kind: MeasureKind::CMu(mu),
            continuous: mu > T::zero(),
            convex_in_m: mu >= half(),
        })
    }

    pub fn rank() -> Self {
        Self {
            kind: MeasureKind::Rank,
            continuous: false,
            convex_in_m: false,
        }
    }

    /// Parses `concurrence | formation | geometric | cmax | cmu:<mu> | rank`.
    pub fn from_token(token: &str) -> Result<Self> {
        match token {
            "concurrence" => Ok(Self::concurrence()),
            "formation" => Ok(Self::formation()),
            "geometric" => Ok(Self::geometric()),
            "cmax" => Ok(Self::cmax()),
            "rank" => Ok(Self::rank()),
            _ => {
                let mu = token
                    .strip_prefix("cmu:")
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::UnknownMeasure(token.to_string()))?;
                if !mu.is_finite() {
                    return Err(Error::MuRange(mu));
                }
                Self::cmu(lit(mu))
            }
        }
    }

    /// Every built-in measure, with `C_mu` sampled at the values the
    /// examples use.
    pub fn builtins() -> Vec<Self> {
        let mut out = vec![
            Self::concurrence(),
            Self::formation(),
            Self::geometric(),
            Self::cmax(),
            Self::rank(),
        ];
        for mu in [0.0, 0.05, 1.0 / 3.0, 0.5, 1.0] {
            out.push(Self::cmu(lit(mu)).expect("mu in range"));
        }
        out
    }

    pub fn kind(&self) -> MeasureKind<T> {
        self.kind
    }

    pub fn is_continuous(&self) -> bool {
        self.continuous
    }

    pub fn is_convex_in_m(&self) -> bool {
        self.convex_in_m
    }

    /// True for the profiles equal to the indicator of `m > 0`
    /// (`rank` and `cmu:0`), whose mixed-state value is [`coherence_rank`].
    pub fn is_rank_indicator(&self) -> bool {
        match self.kind {
            MeasureKind::Rank => true,
            MeasureKind::CMu(mu) => mu == T::zero(),
            _ => false,
        }
    }

    /// CLI token for this measure.
    pub fn id(&self) -> String {
        match self.kind {
            MeasureKind::Concurrence => "concurrence".into(),
            MeasureKind::Formation => "formation".into(),
            MeasureKind::Geometric => "geometric".into(),
            MeasureKind::CMax => "cmax".into(),
            MeasureKind::CMu(mu) => format!("cmu:{}", to_f64(mu)),
            MeasureKind::Rank => "rank".into(),
        }
    }

    /// Pure-state value as a function of `m = |c0 c1*|`; `m` is clamped to `[0, 1/2]`.
    pub fn profile(&self, m: T) -> T {
        let m = m.max(T::zero()).min(half());
        match self.kind {
            MeasureKind::Concurrence => two::<T>() * m,
            MeasureKind::Formation => binary_entropy(population_from_magnitude(m)),
            MeasureKind::Geometric => population_from_magnitude(m),
            MeasureKind::CMax => (T::one() + two::<T>() * m).log2(),
            MeasureKind::CMu(mu) => c_mu_pure(mu, population_from_magnitude(m)),
            MeasureKind::Rank => {
                if m > T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            }
        }
    }

    /// Value on a pure state; independent of the amplitudes' phases.
    pub fn eval_pure(&self, phi: &PureQubit<T>) -> T {
        match self.kind {
            // Population-based profiles read the population directly rather
            // than round-tripping through m.
            MeasureKind::Geometric => phi.lower_population(),
            MeasureKind::Formation => binary_entropy(phi.lower_population()),
            MeasureKind::CMu(mu) => c_mu_pure(mu, phi.lower_population()),
            MeasureKind::Rank => {
                if phi.is_coherent() {
                    T::one()
                } else {
                    T::zero()
                }
            }
            MeasureKind::Concurrence => two::<T>() * (phi.c0() * phi.c1().conj()).norm(),
            _ => self.profile(phi.off_diagonal_magnitude()),
        }
    }

    /// Mixed-state value `profile(|rho01|)`, valid only for continuous
    /// profiles convex in `m`.
    pub fn closed_form(&self, state: &QubitState<T>) -> Result<T> {
        if !(self.continuous && self.convex_in_m) {
            return Err(Error::NonConvexMeasure(self.id()));
        }
        Ok(self.profile(state.off_diagonal_magnitude()))
    }

    /// Closed form where one exists: the profile formula for convex
    /// measures, the piecewise rank formula for the rank indicator.
    pub fn evaluate(&self, state: &QubitState<T>) -> Result<T> {
        if self.is_rank_indicator() {
            Ok(coherence_rank(state))
        } else {
            self.closed_form(state)
        }
    }

    /// Midpoint-convexity audit of the profile over a uniform grid on `[0, 1/2]`.
    pub fn convexity_probe(&self, grid_size: usize) -> Result<Curvature> {
        if grid_size < 3 {
            return Err(Error::GridSize {
                min: 3,
                got: grid_size,
            });
        }
        let tol: T = lit(1e-9);
        let step = half::<T>() / lit((grid_size - 1) as f64);
        let grid: Vec<(T, T)> = (0..grid_size)
            .map(|k| {
                let m = step * lit(k as f64);
                (m, self.profile(m))
            })
            .collect();
        let mut convex = true;
        let mut concave = true;
        for (i, &(m1, f1)) in grid.iter().enumerate() {
            for &(m2, f2) in &grid[i + 1..] {
                let mid = self.profile((m1 + m2) * half());
                let chord = (f1 + f2) * half();
                if mid > chord + tol {
                    convex = false;
                }
                if mid < chord - tol {
                    concave = false;
                }
                if !convex && !concave {
                    return Ok(Curvature::Neither);
                }
            }
        }
        Ok(match (convex, concave) {
            (true, true) => Curvature::Affine,
            (true, false) => Curvature::Convex,
            (false, true) => Curvature::Concave,
            (false, false) => Curvature::Neither,
        })
    }

    /// `(C_l1, value)` on a uniform grid of `C_l1` over `[0, 1]`.
    pub fn curve_sample(&self, n_points: usize) -> Result<Vec<(T, T)>> {
        if n_points < 2 {
            return Err(Error::GridSize {
                min: 2,
                got: n_points,
            });
        }
        let last = lit::<T>((n_points - 1) as f64);
        Ok((0..n_points)
            .map(|k| {
                let c = if k == n_points - 1 {
                    T::one()
                } else {
                    lit::<T>(k as f64) / last
                };
                (c, self.profile(c * half()))
            })
            .collect())
    }
}

/// Convex roof of the coherence indicator.
///
/// With `d = min(rho00, rho11)` and `r = |rho01|`: `2r` when `d >= r`,
/// otherwise `d + r^2/d`.
pub fn coherence_rank<T: Real>(state: &QubitState<T>) -> T {
    let d = state.rho00().min(state.rho11());
    let r = state.off_diagonal_magnitude();
    if d <= T::zero() || r == T::zero() {
        return T::zero();
    }
    let value = if d >= r {
        two::<T>() * r
    } else {
        d + r * r / d
    };
    value.min(T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn state(rho00: f64, rho01: f64) -> QubitState {
        QubitState::from_real(rho00, rho01).unwrap()
    }

    #[test]
    fn eval_pure_examples() {
        let plus = PureQubit::<f64>::plus();
        assert_abs_diff_eq!(
            MeasureSpec::formation().eval_pure(&plus),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(MeasureSpec::cmax().eval_pure(&plus), 1.0, epsilon = 1e-15);
        let phi = PureQubit::from_real(0.5, 3f64.sqrt() / 2.0).unwrap();
        let cmu = MeasureSpec::cmu(1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(cmu.eval_pure(&phi), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn eval_pure_ignores_phases() {
        let a = PureQubit::from_real(0.6, 0.8).unwrap();
        let b = PureQubit::new(
            num_complex::Complex::from_polar(0.6, 1.1),
            num_complex::Complex::from_polar(0.8, -2.3),
        )
        .unwrap();
        for spec in MeasureSpec::<f64>::builtins() {
            assert_abs_diff_eq!(spec.eval_pure(&a), spec.eval_pure(&b), epsilon = 1e-15);
        }
    }

    #[test]
    fn closed_form_examples() {
        let s = state(0.5, 0.25);
        let g = MeasureSpec::geometric().closed_form(&s).unwrap();
        assert_abs_diff_eq!(g, (1.0 - 3f64.sqrt() / 2.0) / 2.0, epsilon = 1e-15);
        assert_eq!(
            MeasureSpec::concurrence().closed_form(&s).unwrap(),
            s.l1_coherence()
        );
        let s4 = state(9.0 / 32.0, 0.25 + 15f64.sqrt() / 32.0);
        assert_eq!(
            MeasureSpec::cmax().closed_form(&s4),
            Err(Error::NonConvexMeasure("cmax".into()))
        );
        assert!(MeasureSpec::cmu(0.05).unwrap().closed_form(&s4).is_err());
        assert!(MeasureSpec::rank().closed_form(&s4).is_err());
        assert!(MeasureSpec::cmu(1.0).unwrap().closed_form(&s4).is_ok());
        let scaled = MeasureSpec::cmu(0.5).unwrap().closed_form(&s4).unwrap();
        let g = MeasureSpec::geometric().closed_form(&s4).unwrap();
        assert_abs_diff_eq!(scaled, 2.0 * g, epsilon = 1e-15);
    }

    #[test]
    fn coherence_rank_examples() {
        assert_abs_diff_eq!(coherence_rank(&state(0.3, 0.2)), 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(coherence_rank(&state(0.1, 0.2)), 0.5, epsilon = 1e-15);
        assert_eq!(coherence_rank(&state(0.5, 0.5)), 1.0);
        assert_eq!(coherence_rank(&state(0.3, 0.0)), 0.0);
        assert_eq!(coherence_rank(&state(0.0, 0.0)), 0.0);
        // basis relabeling
        assert_abs_diff_eq!(coherence_rank(&state(0.9, 0.2)), 0.1 + 0.4, epsilon = 1e-15);
    }

    #[test]
    fn coherence_rank_continuous_at_branch_boundary() {
        for k in 1..50 {
            let d = k as f64 / 100.0;
            let s = state(d, d);
            let below = state(d, d * (1.0 - 1e-9));
            let above = state(d, (d * (1.0 + 1e-9)).min((d * (1.0 - d)).sqrt()));
            assert_abs_diff_eq!(coherence_rank(&s), 2.0 * d, epsilon = 1e-15);
            assert_abs_diff_eq!(
                coherence_rank(&below),
                coherence_rank(&above),
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn probe_classifies_builtins() {
        let probe = |spec: MeasureSpec| spec.convexity_probe(257).unwrap();
        assert_eq!(probe(MeasureSpec::cmax()), Curvature::Concave);
        assert_eq!(probe(MeasureSpec::cmu(0.05).unwrap()), Curvature::Neither);
        assert_eq!(probe(MeasureSpec::concurrence()), Curvature::Affine);
        assert_eq!(probe(MeasureSpec::geometric()), Curvature::Convex);
        assert_eq!(probe(MeasureSpec::formation()), Curvature::Convex);
        assert_eq!(probe(MeasureSpec::cmu(1.0).unwrap()), Curvature::Convex);
        assert_eq!(probe(MeasureSpec::rank()), Curvature::Concave);
        assert!(MeasureSpec::<f64>::rank().convexity_probe(2).is_err());
    }

    #[test]
    fn convex_flags_agree_with_probe() {
        for spec in MeasureSpec::<f64>::builtins() {
            let c = spec.convexity_probe(257).unwrap();
            let probed = matches!(c, Curvature::Convex | Curvature::Affine);
            assert_eq!(spec.is_convex_in_m(), probed, "{}", spec.id());
        }
    }

    #[test]
    fn profiles_vanish_at_zero_and_increase() {
        for spec in MeasureSpec::<f64>::builtins() {
            assert_eq!(spec.profile(0.0), 0.0, "{}", spec.id());
            let mut prev = 0.0;
            for k in 0..1024 {
                let v = spec.profile(0.5 * k as f64 / 1023.0);
                assert!(v >= prev - 1e-12, "{} not monotone at {k}", spec.id());
                prev = v;
            }
        }
    }

    #[test]
    fn curve_examples() {
        let c = MeasureSpec::cmax().curve_sample(3).unwrap();
        assert_eq!(c[0], (0.0, 0.0));
        assert_abs_diff_eq!(c[1].1, 1.5f64.log2(), epsilon = 1e-15);
        assert_eq!(c[2], (1.0, 1.0));
        let c = MeasureSpec::rank().curve_sample(2).unwrap();
        assert_eq!(c, vec![(0.0, 0.0), (1.0, 1.0)]);
        let c = MeasureSpec::<f64>::geometric().curve_sample(3).unwrap();
        assert_abs_diff_eq!(c[1].1, (1.0 - 0.75f64.sqrt()) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c[2].1, 0.5, epsilon = 1e-15);
        assert!(MeasureSpec::<f64>::rank().curve_sample(1).is_err());
    }

    #[test]
    fn tokens_round_trip() {
        for spec in MeasureSpec::<f64>::builtins() {
            assert_eq!(MeasureSpec::from_token(&spec.id()).unwrap(), spec);
        }
        assert!(matches!(
            MeasureSpec::<f64>::from_token("cmu:1.5"),
            Err(Error::MuRange(_))
        ));
        assert!(matches!(
            MeasureSpec::<f64>::from_token("entropy"),
            Err(Error::UnknownMeasure(_))
        ));
        assert!(MeasureSpec::<f64>::from_token("cmu:nan").is_err());
    }

    #[test]
    fn binary_entropy_endpoints() {
        assert_eq!(binary_entropy(0.0f64), 0.0);
        assert_eq!(binary_entropy(1.0f64), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.5f64), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rank_indicator_dispatch() {
        let s = state(0.1, 0.2);
        assert_abs_diff_eq!(
            MeasureSpec::rank().evaluate(&s).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            MeasureSpec::cmu(0.0).unwrap().evaluate(&s).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert!(MeasureSpec::cmax().evaluate(&s).is_err());
    }
}
