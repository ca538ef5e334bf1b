//! Convex roof by brute force, plus the explicit optimal decompositions.
//!
//! Every decomposition of a qubit state `rho = sum_k lambda_k |e_k><e_k|` into
//! `n` pure states arises from an `n x 2` isometry `U` through
//! `|phi_i~> = sum_k U_ik sqrt(lambda_k) |e_k>` (Schrodinger / HJW). By
//! Caratheodory, `n <= 4` suffices for a qubit, so the roof is a minimization
//! over a compact finite-dimensional chart. [`roof_minimize`] searches that
//! chart with seeded restarts of Nelder-Mead and reports only averages it has
//! actually achieved, i.e. an upper bound on the true infimum.
//!
//! The rank indicator is discontinuous and generic search essentially never
//! lands on incoherent members, so for it the oracle searches the structured
//! family "one pure coherent part plus a diagonal residual" instead.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{coherence_rank, MeasureSpec};
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::random::{random_isometry_params, stream_rng};
use crate::scalar::{half, lit, to_f64, two, Real};
use crate::state::{EigenDecomposition, Ensemble, PureQubit, QubitState};

/// Search budget for [`roof_minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoofConfig {
    /// Ensemble sizes to search, each in `{2, 3, 4}`.
    pub ensemble_sizes: Vec<usize>,
    /// Random restarts per ensemble size.
    pub restarts: usize,
    /// Iteration cap for each local search; also the grid resolution of the
    /// rank search.
    pub max_iters: usize,
    /// Simplex convergence threshold.
    pub tol: f64,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self {
            ensemble_sizes: vec![2, 3, 4],
            restarts: 64,
            max_iters: 2000,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl RoofConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ensemble_sizes.is_empty() {
            return Err(Error::RoofConfig("no ensemble sizes".into()));
        }
        if let Some(n) = self.ensemble_sizes.iter().find(|n| !(2..=4).contains(*n)) {
            return Err(Error::RoofConfig(format!(
                "ensemble size {n} outside {{2, 3, 4}}"
            )));
        }
        if self.restarts == 0 {
            return Err(Error::RoofConfig("restarts must be positive".into()));
        }
        if self.max_iters < 2 {
            return Err(Error::RoofConfig("iters must be at least 2".into()));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::RoofConfig(format!(
                "tol {} is not a finite nonnegative number",
                self.tol
            )));
        }
        Ok(())
    }
}

/// `n x 2` complex matrix with orthonormal columns, `2 <= n <= 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry<T: Real = f64> {
    rows: Vec<[Complex<T>; 2]>,
}

impl<T: Real> Isometry<T> {
    /// Checks column orthonormality within the reassembly tolerance.
    pub fn new(rows: Vec<[Complex<T>; 2]>) -> Result<Self> {
        if !(2..=4).contains(&rows.len()) {
            return Err(Error::IsometrySize(rows.len()));
        }
        let iso = Self { rows };
        let dev = iso.orthonormality_defect();
        if !(dev <= T::reassembly_tol()) {
            return Err(Error::NotIsometry(to_f64(dev)));
        }
        Ok(iso)
    }

    /// Identity on the first two rows, zero below.
    pub fn identity(n: usize) -> Result<Self> {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let rows = (0..n)
            .map(|i| match i {
                0 => [one, zero],
                1 => [zero, one],
                _ => [zero, zero],
            })
            .collect();
        Self::new(rows)
    }

    /// Orthonormalizes the columns of the matrix whose row `i` is
    /// `(p[4i] + i p[4i+1], p[4i+2] + i p[4i+3])`. `None` if the columns are
    /// linearly dependent.
    pub fn from_params(params: &[T]) -> Option<Self> {
        if !params.len().is_multiple_of(4) || !(2..=4).contains(&(params.len() / 4)) {
            return None;
        }
        let mut col0: Vec<Complex<T>> = Vec::with_capacity(params.len() / 4);
        let mut col1: Vec<Complex<T>> = Vec::with_capacity(params.len() / 4);
        for row in params.chunks_exact(4) {
            col0.push(Complex::new(row[0], row[1]));
            col1.push(Complex::new(row[2], row[3]));
        }
        let norm0 = col0
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        if !(norm0 > T::epsilon()) {
            return None;
        }
        for z in col0.iter_mut() {
            *z = z.unscale(norm0);
        }
        let overlap = col0
            .iter()
            .zip(&col1)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            });
        for (b, a) in col1.iter_mut().zip(&col0) {
            *b = *b - *a * overlap;
        }
        let norm1 = col1
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        if !(norm1 > T::epsilon()) {
            return None;
        }
        Some(Self {
            rows: col0
                .into_iter()
                .zip(col1)
                .map(|(a, b)| [a, b.unscale(norm1)])
                .collect(),
        })
    }

    /// `[[cos t, -sin t], [sin t, cos t]]`.
    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        let z = |x: T| Complex::new(x, T::zero());
        Self {
            rows: vec![[z(c), z(-s)], [z(s), z(c)]],
        }
    }

    pub fn rows(&self) -> &[[Complex<T>; 2]] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Largest entry of `|U^dagger U - I|`.
    pub fn orthonormality_defect(&self) -> T {
        let mut g = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for row in &self.rows {
            for j in 0..2 {
                for k in 0..2 {
                    g[j][k] = g[j][k] + row[j].conj() * row[k];
                }
            }
        }
        (g[0][0].re - T::one())
            .abs()
            .max((g[1][1].re - T::one()).abs())
            .max(g[0][0].im.abs())
            .max(g[1][1].im.abs())
            .max(g[0][1].norm())
    }
}

/// Decomposition of `state` generated by `isometry`.
///
/// Zero-weight members are dropped and weights renormalized to absorb
/// rounding, so the result always passes [`Ensemble::new`].
pub fn hjw_ensemble<T: Real>(state: &QubitState<T>, isometry: &Isometry<T>) -> Result<Ensemble<T>> {
    let dev = isometry.orthonormality_defect();
    if !(dev <= T::reassembly_tol()) {
        return Err(Error::NotIsometry(to_f64(dev)));
    }
    hjw_from_eigen(&state.eigendecompose(), isometry)
}

fn hjw_from_eigen<T: Real>(
    eig: &EigenDecomposition<T>,
    isometry: &Isometry<T>,
) -> Result<Ensemble<T>> {
    let s0 = eig.values[0].sqrt();
    let s1 = eig.values[1].sqrt();
    let [e0, e1] = eig.vectors;
    let members = isometry
        .rows
        .iter()
        .filter_map(|row| {
            let a = row[0].scale(s0);
            let b = row[1].scale(s1);
            let c0 = a * e0.c0() + b * e1.c0();
            let c1 = a * e0.c1() + b * e1.c1();
            let w = c0.norm_sqr() + c1.norm_sqr();
            if w > T::zero() {
                PureQubit::normalized(c0, c1).ok().map(|phi| (w, phi))
            } else {
                None
            }
        })
        .collect();
    Ensemble::from_unnormalized(members)
}

/// Closed form and its distance from the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport<T: Real = f64> {
    pub closed_form: T,
    pub gap: T,
}

/// Best decomposition found by [`roof_minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoofResult<T: Real = f64> {
    /// Average measure over `witness`; an upper bound on the roof.
    pub value: T,
    pub witness: Ensemble<T>,
    /// Present when the measure has a closed form on this state.
    pub gap_report: Option<GapReport<T>>,
}

/// Seeded multi-start search for the convex roof of `spec` at `state`.
///
/// Restarts run in parallel; each draws from its own `(seed, size, restart)`
/// stream and ties are broken by restart order, so the result is
/// bit-identical for a given seed regardless of scheduling.
pub fn roof_minimize<T: Real>(
    spec: &MeasureSpec<T>,
    state: &QubitState<T>,
    config: &RoofConfig,
) -> Result<RoofResult<T>> {
    config.validate()?;
    let (value, witness) = if spec.is_rank_indicator() {
        rank_restricted_search(spec, state, config.max_iters)?
    } else {
        generic_search(spec, state, config)?
    };
    let gap_report = spec.evaluate(state).ok().map(|closed_form| GapReport {
        closed_form,
        gap: (closed_form - value).abs(),
    });
    Ok(RoofResult {
        value,
        witness,
        gap_report,
    })
}

fn generic_search<T: Real>(
    spec: &MeasureSpec<T>,
    state: &QubitState<T>,
    config: &RoofConfig,
) -> Result<(T, Ensemble<T>)> {
    let eig = state.eigendecompose();
    let jobs: Vec<(usize, usize)> = config
        .ensemble_sizes
        .iter()
        .flat_map(|&n| (0..config.restarts).map(move |r| (n, r)))
        .collect();
    let opts = NelderMeadOptions {
        max_iters: config.max_iters,
        tol: lit(config.tol),
        initial_step: lit(INITIAL_STEP),
    };

    let outcomes: Vec<(T, Vec<T>)> = jobs
        .par_iter()
        .map(|&(n, r)| search_restart(spec, &eig, n, config.seed, r, &opts, &mut |_| {}))
        .collect();

    let (best_value, best_params) = outcomes
        .into_iter()
        .reduce(|best, cand| if cand.0 < best.0 { cand } else { best })
        .expect("at least one job");
    let iso = Isometry::from_params(&best_params)
        .ok_or_else(|| Error::RoofConfig("every restart produced a degenerate isometry".into()))?;
    let witness = hjw_from_eigen(&eig, &iso)?;
    let value = witness.average(|phi| spec.eval_pure(phi));
    debug_assert_eq!(to_f64(value), to_f64(best_value));
    Ok((value, witness))
}

/// One local search; `observe` sees every objective value probed.
fn search_restart<T: Real>(
    spec: &MeasureSpec<T>,
    eig: &EigenDecomposition<T>,
    size: usize,
    seed: u64,
    restart: usize,
    opts: &NelderMeadOptions<T>,
    observe: &mut dyn FnMut(T),
) -> (T, Vec<T>) {
    let stream = ((size as u64) << 32) | restart as u64;
    let mut rng = stream_rng(seed, stream);
    let x0: Vec<T> = random_isometry_params(&mut rng, size);
    let objective = |p: &[T]| {
        let v = Isometry::from_params(p)
            .and_then(|iso| hjw_from_eigen(eig, &iso).ok())
            .map(|e| e.average(|phi| spec.eval_pure(phi)))
            .unwrap_or_else(T::infinity);
        observe(v);
        v
    };
    let mut objective = objective;
    let mut m = nelder_mead(&mut objective, &x0, opts);
    // A fresh simplex around the incumbent escapes the collapsed ones that
    // kinks in the profile produce.
    for _ in 0..POLISH_ROUNDS {
        let next = nelder_mead(&mut objective, &m.x, opts);
        let improved = m.value - next.value > opts.tol;
        if next.value < m.value {
            m = next;
        }
        if !improved {
            break;
        }
    }
    (m.value, m.x)
}

/// Upper bound on simplex rebuilds per restart.
const POLISH_ROUNDS: usize = 4;

/// Initial simplex edge in chart coordinates. Profiles such as the smaller
/// population are exactly flat wherever every member leans the same way, and
/// a simplex that starts inside such a plateau shrinks in place; a wide one
/// straddles its edge.
const INITIAL_STEP: f64 = 2.0;

/// Search over `rho = (pure coherent part) + (diagonal residual)`.
///
/// The coherent part on the smaller-population side has diagonal `x` there and
/// `r^2/x` on the other side, feasible for `x` in `[r^2/D, d]` where `d <= D`
/// are the populations. Its trace is the rank cost. The interval is scanned
/// on a uniform grid and the best cell refined by golden-section search.
fn rank_restricted_search<T: Real>(
    spec: &MeasureSpec<T>,
    state: &QubitState<T>,
    grid: usize,
) -> Result<(T, Ensemble<T>)> {
    let r = state.off_diagonal_magnitude();
    let small = state.rho00().min(state.rho11());
    let large = state.rho00().max(state.rho11());
    let build = |x: T| coherent_split(state, x);

    if r == T::zero() || small <= T::zero() {
        let witness = build(T::zero())?;
        return Ok((witness.average(|phi| spec.eval_pure(phi)), witness));
    }

    let lo = (r * r / large).min(small);
    let hi = small;
    let cost = |x: T| x + r * r / x;
    let steps = grid.max(2);
    let width = (hi - lo) / lit((steps - 1) as f64);
    let point = |k: usize| {
        if k == steps - 1 {
            hi
        } else {
            lo + width * lit(k as f64)
        }
    };
    let (mut best_k, mut best_c) = (0usize, cost(point(0)));
    for k in 1..steps {
        let c = cost(point(k));
        if c < best_c {
            best_k = k;
            best_c = c;
        }
    }
    let mut a = point(best_k.saturating_sub(1));
    let mut b = point((best_k + 1).min(steps - 1));
    let inv_phi: T = lit(0.618_033_988_749_894_9);
    let mut best_x = point(best_k);
    for _ in 0..200 {
        if b - a <= T::epsilon() * hi {
            break;
        }
        let x1 = b - inv_phi * (b - a);
        let x2 = a + inv_phi * (b - a);
        let (c1, c2) = (cost(x1), cost(x2));
        if c1 < best_c {
            best_c = c1;
            best_x = x1;
        }
        if c2 < best_c {
            best_c = c2;
            best_x = x2;
        }
        if c1 <= c2 {
            b = x2;
        } else {
            a = x1;
        }
    }
    let witness = build(best_x)?;
    Ok((witness.average(|phi| spec.eval_pure(phi)), witness))
}

/// Ensemble `{(x + r^2/x, coherent part), (residual, |0>), (residual, |1>)}`
/// for a coherent-part population `x` on the smaller-population side.
fn coherent_split<T: Real>(state: &QubitState<T>, x: T) -> Result<Ensemble<T>> {
    let (pure_diag, _) = split_diagonals(state, x);
    let residual = (
        (state.rho00() - pure_diag.0).max(T::zero()),
        (state.rho11() - pure_diag.1).max(T::zero()),
    );
    let mut members = Vec::with_capacity(3);
    if let Some(phi) = coherent_member(state, pure_diag) {
        members.push((pure_diag.0 + pure_diag.1, phi));
    }
    members.push((residual.0, PureQubit::zero()));
    members.push((residual.1, PureQubit::one()));
    Ensemble::from_unnormalized(members)
}

/// Diagonal of the rank-one coherent part, in the state's own basis.
fn split_diagonals<T: Real>(state: &QubitState<T>, x: T) -> ((T, T), bool) {
    let r = state.off_diagonal_magnitude();
    if r == T::zero() || x <= T::zero() {
        return ((T::zero(), T::zero()), state.rho00() <= state.rho11());
    }
    let other = r * r / x;
    if state.rho00() <= state.rho11() {
        ((x, other), true)
    } else {
        ((other, x), false)
    }
}

/// Normalized pure state with diagonal proportional to `diag` and
/// off-diagonal phase matching `rho01`.
fn coherent_member<T: Real>(state: &QubitState<T>, diag: (T, T)) -> Option<PureQubit<T>> {
    let trace = diag.0 + diag.1;
    if !(trace > T::zero()) || state.is_incoherent() {
        return None;
    }
    let delta = state.rho01().arg();
    let c0 = Complex::new((diag.0 / trace).sqrt(), T::zero());
    let c1 = Complex::from_polar((diag.1 / trace).sqrt(), -delta);
    PureQubit::normalized(c0, c1).ok()
}

/// Two-member decomposition in which both members have `m = |rho01|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStateWitness<T: Real = f64> {
    /// Lower population of both members, `q(1 - q) = |rho01|^2`, `q <= 1/2`.
    pub q: T,
    /// Weight of `phi1`.
    pub p_prime: T,
    /// `(sqrt q, sqrt(1-q) e^{-i delta})`.
    pub phi1: PureQubit<T>,
    /// `(sqrt(1-q), sqrt q e^{-i delta})`.
    pub phi2: PureQubit<T>,
}

impl<T: Real> TwoStateWitness<T> {
    pub fn ensemble(&self) -> Ensemble<T> {
        Ensemble::from_unnormalized(vec![
            (self.p_prime, self.phi1),
            (T::one() - self.p_prime, self.phi2),
        ])
        .expect("weights p', 1 - p' are not both zero")
    }
}

/// Optimal decomposition for every measure convex in `m`.
///
/// `delta = arg(rho01)`. With the convention `rho01 = c0 conj(c1)` the second
/// amplitude carries `e^{-i delta}`, so the ensemble remixes to `state` itself
/// rather than to its phase-normalized form.
pub fn two_state_witness<T: Real>(state: &QubitState<T>) -> TwoStateWitness<T> {
    let r = state.off_diagonal_magnitude().min(half());
    let four: T = lit(4.0);
    let root = (T::one() - four * r * r).max(T::zero()).sqrt();
    let q = two::<T>() * r * r / (T::one() + root);
    let denom = T::one() - two::<T>() * q;
    // q = 1/2 only for |rho01| = 1/2, a pure state with rho00 = 1/2 where both
    // members coincide and any weight works.
    let p_prime = if denom > T::zero() {
        ((T::one() - q - state.rho00()) / denom)
            .max(T::zero())
            .min(T::one())
    } else {
        half()
    };
    let delta = if r == T::zero() {
        T::zero()
    } else {
        state.rho01().arg()
    };
    let phase = Complex::from_polar(T::one(), -delta);
    let re = |x: T| Complex::new(x, T::zero());
    let phi1 = PureQubit::normalized(re(q.sqrt()), phase.scale((T::one() - q).sqrt()))
        .expect("nonzero amplitudes");
    let phi2 = PureQubit::normalized(re((T::one() - q).sqrt()), phase.scale(q.sqrt()))
        .expect("nonzero amplitudes");
    TwoStateWitness {
        q,
        p_prime,
        phi1,
        phi2,
    }
}

/// Minimal-trace split `rho = (pure coherent part) + (diagonal residual)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSplit<T: Real = f64> {
    /// Trace of the coherent part; equals the coherence rank.
    pub weight: T,
    /// Normalized coherent part, absent for incoherent input.
    pub coherent_part: Option<PureQubit<T>>,
    /// Diagonal of the unnormalized coherent part.
    pub coherent_diagonal: (T, T),
    /// Diagonal of `rho` minus the coherent part, entries clamped at 0.
    pub residual: (T, T),
}

impl<T: Real> RankSplit<T> {
    pub fn ensemble(&self) -> Ensemble<T> {
        let mut members = Vec::with_capacity(3);
        if let Some(phi) = self.coherent_part {
            members.push((self.weight, phi));
        }
        members.push((self.residual.0, PureQubit::zero()));
        members.push((self.residual.1, PureQubit::one()));
        Ensemble::from_unnormalized(members).expect("total weight is 1")
    }
}

/// The split attaining the coherence rank: the coherent part has diagonal
/// `(r, r)` when `d >= r`, else `(d, r^2/d)` on the smaller-population side.
pub fn rank_split<T: Real>(state: &QubitState<T>) -> RankSplit<T> {
    let r = state.off_diagonal_magnitude();
    let d = state.rho00().min(state.rho11());
    let x = if d <= T::zero() || r == T::zero() {
        T::zero()
    } else {
        r.min(d)
    };
    let (coherent_diagonal, _) = split_diagonals(state, x);
    let weight = if x == T::zero() {
        T::zero()
    } else {
        coherence_rank(state)
    };
    let residual = (
        (state.rho00() - coherent_diagonal.0).max(T::zero()),
        (state.rho11() - coherent_diagonal.1).max(T::zero()),
    );
    RankSplit {
        weight,
        coherent_part: coherent_member(state, coherent_diagonal),
        coherent_diagonal,
        residual,
    }
}

/// Closed form, oracle value and witness average side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport<T: Real = f64> {
    pub closed: T,
    pub oracle: T,
    pub witness_value: T,
    pub pass: bool,
}

/// Oracle agreement within this bound certifies a closed form.
pub const ORACLE_AGREEMENT: f64 = 1e-3;

/// Certifies the closed form at `state`: the oracle must land within
/// [`ORACLE_AGREEMENT`] of it and the explicit witness must attain it.
///
/// Rank-indicator measures are checked against the piecewise rank formula and
/// its split witness; other measures without a closed form are rejected.
pub fn verify_closed_form<T: Real>(
    spec: &MeasureSpec<T>,
    state: &QubitState<T>,
    config: &RoofConfig,
) -> Result<VerifyReport<T>> {
    let closed = spec.evaluate(state)?;
    let witness = if spec.is_rank_indicator() {
        rank_split(state).ensemble()
    } else {
        two_state_witness(state).ensemble()
    };
    let witness_value = witness.average(|phi| spec.eval_pure(phi));
    let oracle = roof_minimize(spec, state, config)?.value;
    let pass = (closed - oracle).abs() <= lit(ORACLE_AGREEMENT)
        && (witness_value - closed).abs() <= T::reassembly_tol();
    Ok(VerifyReport {
        closed,
        oracle,
        witness_value,
        pass,
    })
}
