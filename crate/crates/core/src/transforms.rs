//! Feasibility of state transformations under incoherent operations.
//!
//! Qubit to qubit: decided by the pair of monotones `zeta = |rho01|` and
//! `xi = |rho01| / sqrt(rho00 rho11)`.
//!
//! Two-block direct sums `p phi1 (+) (1-p) phi2`: decided by the whole `C_mu`
//! family, `C_mu(source) >= C_mu(target)` for every `mu` in `[0, 1]`. Each
//! block contributes `min(a/mu, 1)`, so between consecutive block populations
//! both sides have the form `A + B/mu` and their difference is monotone in
//! `1/mu`. Checking the populations themselves plus the endpoints therefore
//! decides the inequality on all of `[0, 1]` exactly.

use crate::error::{Error, Result};
use crate::measures::c_mu_pure;
use crate::scalar::{half, to_f64, Real};
use crate::state::{DirectSumState, PureQubit, QubitState};

/// `(zeta, xi)` for a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monotones<T: Real = f64> {
    pub zeta: T,
    pub xi: T,
}

/// `zeta = |rho01|` and `xi = |rho01| / sqrt(rho00 rho11)`, with `xi = 0` on
/// diagonal states where the ratio is `0/0`.
pub fn qubit_monotones<T: Real>(state: &QubitState<T>) -> Monotones<T> {
    let zeta = state.off_diagonal_magnitude();
    let product = state.rho00() * state.rho11();
    let xi = if product <= T::zero() || zeta == T::zero() {
        T::zero()
    } else {
        (zeta / product.sqrt()).min(T::one())
    };
    Monotones { zeta, xi }
}

/// Verdict of a feasibility check.
///
/// When infeasible, `witness_mu` (direct sums only) is the `mu` with the
/// largest violation and `lhs < rhs` are the source and target values there.
/// When feasible, `lhs`/`rhs` report the tightest comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityVerdict<T: Real = f64> {
    pub feasible: bool,
    pub witness_mu: Option<T>,
    pub lhs: T,
    pub rhs: T,
}

/// Whether `source -> target` is achievable by an incoherent operation.
pub fn qubit_transform_feasible<T: Real>(source: &QubitState<T>, target: &QubitState<T>) -> bool {
    qubit_transform_verdict(source, target).feasible
}

/// [`qubit_transform_feasible`] with the deciding monotone values attached:
/// the violated monotone if any (zeta checked first), otherwise the one with
/// the smaller margin.
pub fn qubit_transform_verdict<T: Real>(
    source: &QubitState<T>,
    target: &QubitState<T>,
) -> FeasibilityVerdict<T> {
    let s = qubit_monotones(source);
    let t = qubit_monotones(target);
    let tol = T::comparison_tol();
    let zeta_ok = s.zeta >= t.zeta - tol;
    let xi_ok = s.xi >= t.xi - tol;
    let (lhs, rhs) = if !zeta_ok {
        (s.zeta, t.zeta)
    } else if !xi_ok {
        (s.xi, t.xi)
    } else if s.zeta - t.zeta <= s.xi - t.xi {
        (s.zeta, t.zeta)
    } else {
        (s.xi, t.xi)
    };
    FeasibilityVerdict {
        feasible: zeta_ok && xi_ok,
        witness_mu: None,
        lhs,
        rhs,
    }
}

/// `C_mu` of a direct sum, by additivity over its blocks.
pub fn c_mu_direct_sum<T: Real>(mu: T, state: &DirectSumState<T>) -> Result<T> {
    if !(mu >= T::zero() && mu <= T::one()) {
        return Err(Error::MuRange(to_f64(mu)));
    }
    Ok(state.additive(|phi| c_mu_pure(mu, phi.lower_population())))
}

/// Points at which checking the `C_mu` inequality is sufficient:
/// `0`, every nonzero block population of either state, and `1`.
pub fn critical_mus<T: Real>(source: &DirectSumState<T>, target: &DirectSumState<T>) -> Vec<T> {
    let mut mus = vec![T::zero(), T::one()];
    for s in [source, target] {
        for (_, phi) in s.blocks() {
            let a = phi.lower_population();
            if a > T::zero() {
                mus.push(a);
            }
        }
    }
    mus.sort_by(|a, b| a.partial_cmp(b).expect("populations are finite"));
    mus.dedup();
    mus
}

/// Whether `source -> target` is achievable by an incoherent operation,
/// for two-block direct sums of pure qubits.
pub fn direct_sum_feasible<T: Real>(
    source: &DirectSumState<T>,
    target: &DirectSumState<T>,
) -> FeasibilityVerdict<T> {
    let tol = T::comparison_tol();
    let mut worst: Option<(T, T, T)> = None;
    for mu in critical_mus(source, target) {
        let lhs = c_mu_direct_sum(mu, source).expect("critical mu in [0, 1]");
        let rhs = c_mu_direct_sum(mu, target).expect("critical mu in [0, 1]");
        let margin = lhs - rhs;
        // Strict comparison keeps the smallest mu on ties.
        if worst.is_none_or(|(m, _, _)| margin < m) {
            worst = Some((margin, mu, lhs));
        }
    }
    let (margin, mu, lhs) = worst.expect("critical set contains 0 and 1");
    let rhs = lhs - margin;
    let feasible = margin >= -tol;
    if let Some(case) = proof_case(source, target) {
        log::debug!("direct-sum transformation falls in case {case:?}, feasible = {feasible}");
    }
    FeasibilityVerdict {
        feasible,
        witness_mu: if feasible { None } else { Some(mu) },
        lhs,
        rhs,
    }
}

/// The orderings of block populations distinguished in the sufficiency
/// argument for direct sums. Source populations `s >= t`, target `theta >= tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofCase {
    /// `s > t >= theta >= tau`: each source block converts deterministically.
    BothDominate,
    /// `s >= theta > t >= tau`.
    StrongerDominates,
    /// `theta >= s > t >= tau`.
    TargetDominates,
    /// `s = t`.
    EqualSources,
}

/// Classifies a pair by the ordering of its block populations, for
/// diagnostics. `None` for orderings outside the four named cases.
pub fn proof_case<T: Real>(
    source: &DirectSumState<T>,
    target: &DirectSumState<T>,
) -> Option<ProofCase> {
    let sorted = |d: &DirectSumState<T>| {
        let a1 = d.phi1().lower_population();
        let a2 = d.phi2().lower_population();
        (a1.max(a2), a1.min(a2))
    };
    let (s, t) = sorted(source);
    let (theta, tau) = sorted(target);
    if s == t {
        Some(ProofCase::EqualSources)
    } else if t >= theta {
        Some(ProofCase::BothDominate)
    } else if s >= theta && theta > t && t >= tau {
        Some(ProofCase::StrongerDominates)
    } else if theta >= s && t >= tau {
        Some(ProofCase::TargetDominates)
    } else {
        None
    }
}

/// Deterministic pure-to-pure conversion: the lower population cannot grow.
pub fn pure_to_pure_feasible<T: Real>(source: &PureQubit<T>, target: &PureQubit<T>) -> bool {
    source.lower_population() >= target.lower_population() - T::comparison_tol()
}

/// Largest probability of reaching the pure state with population `theta`
/// (rather than the one with `tau`) from a pure state with population
/// `a_source`: `(a_source - tau)/(theta - tau)` clamped to `[0, 1]`.
pub fn max_conversion_probability<T: Real>(a_source: T, theta: T, tau: T) -> Result<T> {
    for x in [a_source, theta, tau] {
        if !(x >= T::zero() && x <= half()) {
            return Err(Error::PopulationRange(to_f64(x)));
        }
    }
    if tau > theta {
        return Err(Error::BadOrdering {
            theta: to_f64(theta),
            tau: to_f64(tau),
        });
    }
    if theta == tau {
        return Ok(if a_source >= theta {
            T::one()
        } else {
            T::zero()
        });
    }
    Ok(((a_source - tau) / (theta - tau))
        .max(T::zero())
        .min(T::one()))
}
