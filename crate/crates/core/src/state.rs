//! Pure and mixed single-qubit states, ensembles and two-block direct sums.
//!
//! Conventions: a density matrix is stored by its upper triangle,
//! `rho00` (real) and `rho01 = <0|rho|1>` (complex), with `rho11 = 1 - rho00`.
//! A pure state `c0|0> + c1|1>` has `rho01 = c0 * conj(c1)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{half, lit, to_f64, two, Real};

/// Normalized amplitude pair `c0|0> + c1|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit<T: Real = f64> {
    c0: Complex<T>,
    c1: Complex<T>,
}

impl<T: Real> PureQubit<T> {
    /// Builds a pure state, rejecting amplitudes whose squared norm is not 1.
    pub fn new(c0: Complex<T>, c1: Complex<T>) -> Result<Self> {
        let norm_sq = c0.norm_sqr() + c1.norm_sqr();
        if (norm_sq - T::one()).abs() > T::validation_tol() || !norm_sq.is_finite() {
            return Err(Error::NotNormalized(to_f64(norm_sq)));
        }
        Ok(Self { c0, c1 })
    }

    /// Real amplitudes, validated like [`PureQubit::new`].
    pub fn from_real(c0: T, c1: T) -> Result<Self> {
        Self::new(Complex::new(c0, T::zero()), Complex::new(c1, T::zero()))
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(c0: Complex<T>, c1: Complex<T>) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::NotNormalized(to_f64(norm * norm)));
        }
        Ok(Self {
            c0: c0.unscale(norm),
            c1: c1.unscale(norm),
        })
    }

    /// `sqrt(a)|0> + sqrt(1 - a)|1>` for a population `a` in `[0, 1]`.
    pub fn with_population(a: T) -> Result<Self> {
        if !(a >= T::zero() && a <= T::one()) {
            return Err(Error::WeightRange(to_f64(a)));
        }
        Ok(Self {
            c0: Complex::new(a.sqrt(), T::zero()),
            c1: Complex::new((T::one() - a).sqrt(), T::zero()),
        })
    }

    pub fn zero() -> Self {
        Self {
            c0: Complex::new(T::one(), T::zero()),
            c1: Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn one() -> Self {
        Self {
            c0: Complex::new(T::zero(), T::zero()),
            c1: Complex::new(T::one(), T::zero()),
        }
    }

    /// `(|0> + |1>)/sqrt(2)`.
    pub fn plus() -> Self {
        let s = T::FRAC_1_SQRT_2();
        Self {
            c0: Complex::new(s, T::zero()),
            c1: Complex::new(s, T::zero()),
        }
    }

    pub fn c0(&self) -> Complex<T> {
        self.c0
    }

    pub fn c1(&self) -> Complex<T> {
        self.c1
    }

    /// `m = |c0 c1*|`, the off-diagonal magnitude of the projector; lies in `[0, 1/2]`.
    pub fn off_diagonal_magnitude(&self) -> T {
        (self.c0 * self.c1.conj()).norm().min(half())
    }

    /// `min(|c0|^2, |c1|^2)`, in `[0, 1/2]`.
    pub fn lower_population(&self) -> T {
        self.c0.norm_sqr().min(self.c1.norm_sqr()).min(half())
    }

    pub fn is_coherent(&self) -> bool {
        self.c0.norm_sqr() > T::zero() && self.c1.norm_sqr() > T::zero()
    }

    /// The projector `|phi><phi|`.
    ///
    /// The off-diagonal is stored unclamped so that `2|rho01|` is bit-identical
    /// to the pure-state l1 value `2|c0 c1*|`.
    pub fn density(&self) -> QubitState<T> {
        QubitState {
            rho00: self.c0.norm_sqr().max(T::zero()).min(T::one()),
            rho01: self.c0 * self.c1.conj(),
        }
    }

    /// Swaps the roles of `|0>` and `|1>`.
    pub fn swapped(&self) -> Self {
        Self {
            c0: self.c1,
            c1: self.c0,
        }
    }
}

/// Single-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState<T: Real = f64> {
    rho00: T,
    rho01: Complex<T>,
}

impl<T: Real> QubitState<T> {
    /// Validates `(rho00, rho01)` as a density matrix with `rho11 = 1 - rho00`.
    ///
    /// Off-diagonals that overshoot the positivity bound by at most the
    /// validation tolerance are clamped onto the boundary, so downstream
    /// square roots of `rho00*rho11 - |rho01|^2` never see a negative radicand.
    pub fn new(rho00: T, rho01: Complex<T>) -> Result<Self> {
        if !(rho00 >= T::zero() && rho00 <= T::one()) {
            return Err(Error::TraceRange(to_f64(rho00)));
        }
        if !(rho01.re.is_finite() && rho01.im.is_finite()) {
            return Err(Error::Parse("off-diagonal element is not finite".into()));
        }
        let diag_product = rho00 * (T::one() - rho00);
        let off_sq = rho01.norm_sqr();
        if off_sq > diag_product + T::validation_tol() {
            return Err(Error::NotPositive {
                off_diag_sq: to_f64(off_sq),
                diag_product: to_f64(diag_product),
            });
        }
        Ok(Self::from_parts_clamped(rho00, rho01))
    }

    /// Real off-diagonal shorthand for [`QubitState::new`].
    pub fn from_real(rho00: T, rho01: T) -> Result<Self> {
        Self::new(rho00, Complex::new(rho01, T::zero()))
    }

    /// Diagonal state `diag(rho00, 1 - rho00)`.
    pub fn incoherent(rho00: T) -> Result<Self> {
        Self::new(rho00, Complex::new(T::zero(), T::zero()))
    }

    pub(crate) fn from_parts_clamped(rho00: T, rho01: Complex<T>) -> Self {
        let rho00 = rho00.max(T::zero()).min(T::one());
        let bound = (rho00 * (T::one() - rho00)).sqrt();
        let r = rho01.norm();
        // The margin keeps clamping idempotent: a rescaled value may land a
        // few ulps above `bound` and must not be rescaled again.
        let margin = T::one() + lit::<T>(8.0) * T::epsilon();
        let rho01 = if r > bound * margin {
            rho01.scale(bound / r)
        } else {
            rho01
        };
        Self { rho00, rho01 }
    }

    pub fn rho00(&self) -> T {
        self.rho00
    }

    pub fn rho11(&self) -> T {
        T::one() - self.rho00
    }

    pub fn rho01(&self) -> Complex<T> {
        self.rho01
    }

    pub fn rho10(&self) -> Complex<T> {
        self.rho01.conj()
    }

    /// `|rho01|`.
    pub fn off_diagonal_magnitude(&self) -> T {
        self.rho01.norm()
    }

    /// Sum of absolute values of the off-diagonal entries, `2|rho01|`.
    pub fn l1_coherence(&self) -> T {
        two::<T>() * self.rho01.norm()
    }

    pub fn is_incoherent(&self) -> bool {
        self.rho01.norm_sqr() == T::zero()
    }

    pub fn determinant(&self) -> T {
        self.rho00 * self.rho11() - self.rho01.norm_sqr()
    }

    /// Pure up to the given slack on the determinant.
    pub fn is_pure(&self, tol: T) -> bool {
        self.determinant() <= tol
    }

    /// Applies `U = diag(1, e^{i arg rho01})`, leaving a real nonnegative
    /// off-diagonal. Returns the rotated state and the removed phase
    /// (`0` when `rho01 = 0`).
    pub fn phase_normalize(&self) -> (Self, T) {
        let r = self.rho01.norm();
        let phase = if r == T::zero() {
            T::zero()
        } else {
            self.rho01.arg()
        };
        (
            Self {
                rho00: self.rho00,
                rho01: Complex::new(r, T::zero()),
            },
            phase,
        )
    }

    /// Relabels `|0> <-> |1>`; an incoherent permutation.
    pub fn swapped(&self) -> Self {
        Self {
            rho00: self.rho11(),
            rho01: self.rho01.conj(),
        }
    }

    /// Analytic spectral decomposition, eigenvalues in descending order.
    pub fn eigendecompose(&self) -> EigenDecomposition<T> {
        let a = self.rho00;
        let d = self.rho11();
        let b = self.rho01;
        let half_gap = (a - d) * half();
        let disc = (half_gap * half_gap + b.norm_sqr()).sqrt();
        let upper = half::<T>() + disc;
        let lower = (half::<T>() - disc).max(T::zero());
        let top = if b.norm_sqr() == T::zero() {
            // Diagonal input: the computational basis, larger population first.
            // Ties keep |0> first.
            if a >= d {
                PureQubit::zero()
            } else {
                PureQubit::one()
            }
        } else {
            // Rows of (rho - upper) give two candidate kernel vectors; the
            // longer one is the better conditioned.
            let from_row0 = (b, Complex::new(upper - a, T::zero()));
            let from_row1 = (Complex::new(upper - d, T::zero()), b.conj());
            let n0 = from_row0.0.norm_sqr() + from_row0.1.norm_sqr();
            let n1 = from_row1.0.norm_sqr() + from_row1.1.norm_sqr();
            let (x, y) = if n0 >= n1 { from_row0 } else { from_row1 };
            PureQubit::normalized(x, y).expect("b != 0 keeps the kernel vector nonzero")
        };
        let bottom = PureQubit {
            c0: -top.c1.conj(),
            c1: top.c0.conj(),
        };
        EigenDecomposition {
            values: [upper, lower],
            vectors: [top, bottom],
        }
    }

    /// Entrywise max deviation from another state.
    pub fn distance_max(&self, other: &Self) -> T {
        (self.rho00 - other.rho00)
            .abs()
            .max((self.rho01 - other.rho01).norm())
    }
}

/// Spectrum and eigenvectors of a qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomposition<T: Real = f64> {
    /// `values[0] >= values[1] >= 0`.
    pub values: [T; 2],
    pub vectors: [PureQubit<T>; 2],
}

impl<T: Real> EigenDecomposition<T> {
    /// `sum_k lambda_k |e_k><e_k|`.
    pub fn reassemble(&self) -> QubitState<T> {
        let mut rho00 = T::zero();
        let mut rho01 = Complex::new(T::zero(), T::zero());
        for (lambda, v) in self.values.iter().zip(self.vectors.iter()) {
            rho00 = rho00 + *lambda * v.c0.norm_sqr();
            rho01 = rho01 + (v.c0 * v.c1.conj()).scale(*lambda);
        }
        QubitState { rho00, rho01 }
    }
}

/// Weighted list of pure states realizing a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble<T: Real = f64> {
    members: Vec<(T, PureQubit<T>)>,
}

impl<T: Real> Ensemble<T> {
    /// Validates nonnegative weights summing to one.
    pub fn new(members: Vec<(T, PureQubit<T>)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let mut total = T::zero();
        for (w, _) in &members {
            if !(*w >= T::zero() && *w <= T::one() + T::validation_tol()) {
                return Err(Error::WeightRange(to_f64(*w)));
            }
            total = total + *w;
        }
        if (total - T::one()).abs() > T::validation_tol() {
            return Err(Error::WeightSum(to_f64(total)));
        }
        Ok(Self { members })
    }

    /// Drops zero weights and rescales the rest to sum to one.
    pub(crate) fn from_unnormalized(members: Vec<(T, PureQubit<T>)>) -> Result<Self> {
        let kept: Vec<_> = members
            .into_iter()
            .filter(|(w, _)| *w > T::zero())
            .collect();
        let total = kept.iter().fold(T::zero(), |acc, (w, _)| acc + *w);
        if kept.is_empty() || !(total > T::zero()) {
            return Err(Error::EmptyEnsemble);
        }
        Self::new(kept.into_iter().map(|(w, phi)| (w / total, phi)).collect())
    }

    pub fn singleton(phi: PureQubit<T>) -> Self {
        Self {
            members: vec![(T::one(), phi)],
        }
    }

    pub fn members(&self) -> &[(T, PureQubit<T>)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `sum_i p_i |phi_i><phi_i|`.
    pub fn mix(&self) -> QubitState<T> {
        let mut rho00 = T::zero();
        let mut rho01 = Complex::new(T::zero(), T::zero());
        for (w, phi) in &self.members {
            rho00 = rho00 + *w * phi.c0.norm_sqr();
            rho01 = rho01 + (phi.c0 * phi.c1.conj()).scale(*w);
        }
        QubitState::from_parts_clamped(rho00, rho01)
    }

    /// `sum_i p_i f(phi_i)`.
    pub fn average<F>(&self, mut f: F) -> T
    where
        F: FnMut(&PureQubit<T>) -> T,
    {
        self.members
            .iter()
            .fold(T::zero(), |acc, (w, phi)| acc + *w * f(phi))
    }
}

/// `p phi1 (+) (1 - p) phi2` on `span{|0>,|1>} (+) span{|2>,|3>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectSumState<T: Real = f64> {
    p: T,
    phi1: PureQubit<T>,
    phi2: PureQubit<T>,
}

impl<T: Real> DirectSumState<T> {
    pub fn new(p: T, phi1: PureQubit<T>, phi2: PureQubit<T>) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::WeightRange(to_f64(p)));
        }
        Ok(Self { p, phi1, phi2 })
    }

    /// Weight of the first block.
    pub fn p(&self) -> T {
        self.p
    }

    pub fn phi1(&self) -> &PureQubit<T> {
        &self.phi1
    }

    pub fn phi2(&self) -> &PureQubit<T> {
        &self.phi2
    }

    /// Blocks with their weights, first block first.
    pub fn blocks(&self) -> [(T, &PureQubit<T>); 2] {
        [(self.p, &self.phi1), (T::one() - self.p, &self.phi2)]
    }

    /// `p f(phi1) + (1 - p) f(phi2)`: any coherence measure is additive over
    /// orthogonal blocks.
    pub fn additive<F>(&self, mut f: F) -> T
    where
        F: FnMut(&PureQubit<T>) -> T,
    {
        self.p * f(&self.phi1) + (T::one() - self.p) * f(&self.phi2)
    }

    /// Sum of off-diagonal magnitudes of the 4x4 block-diagonal matrix.
    pub fn l1_coherence(&self) -> T {
        self.additive(|phi| two::<T>() * phi.off_diagonal_magnitude())
    }
}

/// Lower population `a(m) = (1 - sqrt(1 - 4m^2))/2`
/// of a pure state whose off-diagonal magnitude is `m`.
///
/// Written as `2m^2 / (1 + sqrt(1 - 4m^2))` to avoid cancellation near `m = 0`.
pub fn population_from_magnitude<T: Real>(m: T) -> T {
    let m = m.max(T::zero()).min(half());
    let four: T = lit(4.0);
    let root = (T::one() - four * m * m).max(T::zero()).sqrt();
    two::<T>() * m * m / (T::one() + root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn validate_maximally_coherent() {
        let s = QubitState::from_real(0.5, 0.5).unwrap();
        assert_eq!(s.rho11(), 0.5);
        assert!(s.is_pure(1e-12));
    }

    #[test]
    fn validate_section_four_state() {
        let s = QubitState::from_real(9.0 / 32.0, 0.25 + 15f64.sqrt() / 32.0).unwrap();
        assert_abs_diff_eq!(s.rho11(), 23.0 / 32.0, epsilon = 1e-15);
        assert!(!s.is_pure(1e-12));
    }

    #[test]
    fn validate_rejects_nonpositive() {
        let err = QubitState::from_real(0.3, 0.5).unwrap_err();
        assert!(matches!(err, Error::NotPositive { .. }));
        let err = QubitState::from_real(1.2, 0.0).unwrap_err();
        assert_eq!(err, Error::TraceRange(1.2));
        assert!(matches!(
            QubitState::from_real(-0.1, 0.0),
            Err(Error::TraceRange(_))
        ));
    }

    #[test]
    fn validate_clamps_within_slack() {
        let bound = (0.3f64 * 0.7).sqrt();
        let s = QubitState::from_real(0.3, bound + 1e-14).unwrap();
        assert!(s.determinant() >= -1e-16);
        assert!(s.off_diagonal_magnitude() <= bound);
    }

    #[test]
    fn l1_examples() {
        assert_eq!(QubitState::from_real(0.5, 0.5).unwrap().l1_coherence(), 1.0);
        assert_eq!(QubitState::incoherent(0.3).unwrap().l1_coherence(), 0.0);
        let s = QubitState::from_real(9.0 / 32.0, 0.25 + 15f64.sqrt() / 32.0).unwrap();
        // 2 (1/4 + sqrt(15)/32)
        assert_abs_diff_eq!(s.l1_coherence(), 0.742061459137963, epsilon = 1e-12);
    }

    #[test]
    fn phase_normalize_examples() {
        let (s, ph) = QubitState::from_real(0.5, -0.3).unwrap().phase_normalize();
        assert_eq!(s.rho01(), c(0.3, 0.0));
        assert_abs_diff_eq!(ph, std::f64::consts::PI, epsilon = 1e-15);

        let (s, ph) = QubitState::from_real(0.5, 0.25).unwrap().phase_normalize();
        assert_eq!(s.rho01(), c(0.25, 0.0));
        assert_eq!(ph, 0.0);

        let (s, ph) = QubitState::new(0.5, c(0.1, 0.1)).unwrap().phase_normalize();
        assert_abs_diff_eq!(s.rho01().re, 0.02f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ph, std::f64::consts::FRAC_PI_4, epsilon = 1e-15);

        let (s, ph) = QubitState::incoherent(0.4).unwrap().phase_normalize();
        assert_eq!(ph, 0.0);
        assert_eq!(s, QubitState::incoherent(0.4).unwrap());
    }

    #[test]
    fn mix_examples() {
        let plus = Ensemble::singleton(PureQubit::<f64>::plus()).mix();
        assert_abs_diff_eq!(plus.rho00(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(plus.rho01().re, 0.5, epsilon = 1e-15);

        let s15 = 15f64.sqrt();
        let e = Ensemble::new(vec![
            (0.5, PureQubit::from_real(0.25, s15 / 4.0).unwrap()),
            (0.5, PureQubit::plus()),
        ])
        .unwrap();
        let rho = e.mix();
        assert_abs_diff_eq!(rho.rho00(), 9.0 / 32.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.rho01().re, 0.25 + s15 / 32.0, epsilon = 1e-15);

        let e = Ensemble::new(vec![
            (
                0.3,
                PureQubit::from_real((1.0f64 / 30.0).sqrt(), (29.0f64 / 30.0).sqrt()).unwrap(),
            ),
            (0.7, PureQubit::plus()),
        ])
        .unwrap();
        let rho = e.mix();
        assert_abs_diff_eq!(rho.rho00(), 9.0 / 25.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            rho.rho01().re,
            (29f64.sqrt() + 35.0) / 100.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn ensemble_validation() {
        assert_eq!(Ensemble::<f64>::new(vec![]), Err(Error::EmptyEnsemble));
        let phi = PureQubit::plus();
        assert!(matches!(
            Ensemble::new(vec![(0.5, phi), (0.4, phi)]),
            Err(Error::WeightSum(_))
        ));
        assert!(matches!(
            Ensemble::new(vec![(-0.5, phi), (1.5, phi)]),
            Err(Error::WeightRange(_))
        ));
    }

    #[test]
    fn lower_population_examples() {
        assert_abs_diff_eq!(
            PureQubit::<f64>::plus().lower_population(),
            0.5,
            epsilon = 1e-15
        );
        let phi = PureQubit::from_real(0.25, 15f64.sqrt() / 4.0).unwrap();
        assert_abs_diff_eq!(phi.lower_population(), 1.0 / 16.0, epsilon = 1e-15);
        let phi = PureQubit::from_real((29.0f64 / 30.0).sqrt(), (1.0f64 / 30.0).sqrt()).unwrap();
        assert_abs_diff_eq!(phi.lower_population(), 1.0 / 30.0, epsilon = 1e-15);
    }

    #[test]
    fn pure_normalization_checked() {
        assert!(matches!(
            PureQubit::from_real(1.0, 1.0),
            Err(Error::NotNormalized(_))
        ));
        let phi = PureQubit::normalized(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(
            phi.c1().im,
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert!(PureQubit::normalized(c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn eigendecompose_diagonal() {
        let eig = QubitState::incoherent(0.3).unwrap().eigendecompose();
        assert_abs_diff_eq!(eig.values[0], 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(eig.values[1], 0.3, epsilon = 1e-15);
        assert_eq!(eig.vectors[0].c1().norm(), 1.0);
        assert_eq!(eig.vectors[1].c0().norm(), 1.0);
    }

    #[test]
    fn eigendecompose_pure_and_mixed() {
        let eig = QubitState::from_real(0.5, 0.5).unwrap().eigendecompose();
        assert_abs_diff_eq!(eig.values[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(eig.values[1], 0.0, epsilon = 1e-15);

        let s = QubitState::from_real(0.5, 0.25).unwrap();
        let eig = s.eigendecompose();
        assert_abs_diff_eq!(eig.values[0], 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(eig.values[1], 0.25, epsilon = 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let top = eig.vectors[0];
        // (1, 1)/sqrt(2) up to a global phase
        assert_abs_diff_eq!(top.c0().norm(), r, epsilon = 1e-15);
        assert_abs_diff_eq!((top.c0() * top.c1().conj()).re, 0.5, epsilon = 1e-15);
        let bottom = eig.vectors[1];
        assert_abs_diff_eq!((bottom.c0() * bottom.c1().conj()).re, -0.5, epsilon = 1e-15);
        assert!(eig.reassemble().distance_max(&s) < 1e-15);
    }

    #[test]
    fn eigendecompose_maximally_mixed_uses_computational_basis() {
        let eig = QubitState::incoherent(0.5).unwrap().eigendecompose();
        assert_eq!(eig.values, [0.5, 0.5]);
        assert_eq!(eig.vectors[0], PureQubit::zero());
        assert_eq!(eig.vectors[1].c1().norm(), 1.0);
    }

    #[test]
    fn direct_sum_examples() {
        let s3 = 3f64.sqrt();
        assert!(DirectSumState::new(1.0, PureQubit::plus(), PureQubit::zero()).is_ok());
        let rho1 = DirectSumState::new(
            1.0 / 6.0,
            PureQubit::plus(),
            PureQubit::from_real(0.5, s3 / 2.0).unwrap(),
        )
        .unwrap();
        // (2 + 5 sqrt 3)/12
        assert_abs_diff_eq!(
            rho1.l1_coherence(),
            (2.0 + 5.0 * s3) / 12.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            DirectSumState::new(1.5, PureQubit::plus(), PureQubit::plus()),
            Err(Error::WeightRange(_))
        ));
    }

    #[test]
    fn population_from_magnitude_inverts_pure_states() {
        for k in 0..=50 {
            let a = k as f64 / 100.0;
            let phi = PureQubit::with_population(a).unwrap();
            let back = population_from_magnitude(phi.off_diagonal_magnitude());
            assert_abs_diff_eq!(back, a, epsilon = 1e-12);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let s = QubitState::<f32>::from_real(0.5, 0.25).unwrap();
        let eig = s.eigendecompose();
        assert!((eig.values[0] - 0.75).abs() < 1e-6);
        assert!(eig.reassemble().distance_max(&s) < 1e-6);
    }
}
