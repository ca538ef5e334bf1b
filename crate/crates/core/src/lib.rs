//! Convex-roof coherence measures of single-qubit states.
//!
//! - [`state`]: pure and mixed qubit states, ensembles, two-block direct sums.
//! - [`measures`]: measures given by their pure-state profile in `m = |c0 c1*|`,
//!   their closed forms on mixed states, and the coherence rank.
//! - [`roof`]: a seeded brute-force oracle for the convex roof over all
//!   ensemble decompositions, and the explicit optimal decompositions that
//!   certify the closed forms.
//! - [`transforms`]: feasibility of qubit-to-qubit and direct-sum-to-direct-sum
//!   transformations under incoherent operations.
//! - [`io`] and [`reproduce`]: the JSON/CSV formats and the reproduction table
//!   used by the `qcoh` command-line tool.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`) with `f64` as
//! the default type parameter; the `*64` / `*32` aliases below name the
//! concrete instantiations.
//!
//! ```
//! use qubit_coherence::{roof_minimize, Measure64, QubitState64, RoofConfig};
//!
//! let rho = QubitState64::from_real(0.5, 0.25)?;
//! let formation = Measure64::formation();
//! let closed = formation.closed_form(&rho)?;
//! let config = RoofConfig { restarts: 4, ..RoofConfig::default() };
//! let oracle = roof_minimize(&formation, &rho, &config)?;
//! assert!((oracle.value - closed).abs() < 1e-3);
//! assert!(Measure64::cmax().closed_form(&rho).is_err());
//! # Ok::<(), qubit_coherence::Error>(())
//! ```

#![forbid(unsafe_code)]
// `!(x > 0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod measures;
pub mod optim;
pub mod random;
pub mod reproduce;
pub mod roof;
pub mod scalar;
pub mod state;
pub mod transforms;

pub use error::{Error, Result};
pub use measures::{coherence_rank, Curvature, MeasureKind, MeasureSpec};
pub use roof::{
    hjw_ensemble, rank_split, roof_minimize, two_state_witness, verify_closed_form, Isometry,
    RankSplit, RoofConfig, RoofResult, TwoStateWitness, VerifyReport,
};
pub use scalar::Real;
pub use state::{DirectSumState, EigenDecomposition, Ensemble, PureQubit, QubitState};
pub use transforms::{
    c_mu_direct_sum, direct_sum_feasible, max_conversion_probability, pure_to_pure_feasible,
    qubit_monotones, qubit_transform_feasible, qubit_transform_verdict, FeasibilityVerdict,
    Monotones,
};

pub type PureQubit64 = PureQubit<f64>;
pub type PureQubit32 = PureQubit<f32>;
pub type QubitState64 = QubitState<f64>;
pub type QubitState32 = QubitState<f32>;
pub type Ensemble64 = Ensemble<f64>;
pub type Ensemble32 = Ensemble<f32>;
pub type DirectSum64 = DirectSumState<f64>;
pub type DirectSum32 = DirectSumState<f32>;
pub type Measure64 = MeasureSpec<f64>;
pub type Measure32 = MeasureSpec<f32>;
pub type Verdict64 = FeasibilityVerdict<f64>;
pub type Verdict32 = FeasibilityVerdict<f32>;
