//! Model data: truncated general Dirichlet series, functional-equation data,
//! presets, and model-level validation.
//!
//! A model is the pair (F_N, G) behind the approximation
//! `zeta_N(s) = F_N(s) + G(s) F_N(delta - s)`, where `F_N` is a truncated
//! general Dirichlet series `sum a_n lambda_n^{-s}` and `G` is the
//! Gamma-ratio factor `lambda^{2s-delta} Omega(delta-s)/Omega(s)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Structural construction failure. Semantic problems are reported by
/// [`ApproximationModel::validate`] as data instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("coefficients and exponents must have equal nonzero length (got {coefficients} and {exponents})")]
    ShapeMismatch {
        coefficients: usize,
        exponents: usize,
    },
}

/// Polynomial growth envelope: |a_n| <= scale * n^power and
/// lambda_n <= scale * n^power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub scale: f64,
    pub power: f64,
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope {
            scale: 1.0,
            power: 1.0,
        }
    }
}

/// Coefficients and exponents of a truncated general Dirichlet series
/// `F_N(s) = sum_{n=1}^{N} a_n lambda_n^{-s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    coefficients: Vec<Complex64>,
    exponents: Vec<f64>,
    envelope: Envelope,
}

impl SeriesSpec {
    pub fn new(
        coefficients: Vec<Complex64>,
        exponents: Vec<f64>,
        envelope: Envelope,
    ) -> Result<Self, ModelError> {
        if coefficients.is_empty() || coefficients.len() != exponents.len() {
            return Err(ModelError::ShapeMismatch {
                coefficients: coefficients.len(),
                exponents: exponents.len(),
            });
        }
        Ok(SeriesSpec {
            coefficients,
            exponents,
            envelope,
        })
    }

    /// Truncation length N.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    /// The constant term a_1.
    pub fn first_coefficient(&self) -> Complex64 {
        self.coefficients[0]
    }

    /// The exponent lambda_2 of the first non-constant term, when present.
    pub fn lambda2(&self) -> Option<f64> {
        self.exponents.get(1).copied()
    }

    /// Pairs (a_n, lambda_n) in ascending order of n.
    pub fn terms(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.coefficients
            .iter()
            .copied()
            .zip(self.exponents.iter().copied())
    }

    pub fn all_real(&self) -> bool {
        self.coefficients.iter().all(|a| a.im == 0.0)
    }

    fn validate_into(&self, out: &mut Vec<Violation>) {
        let exps = &self.exponents;
        if exps[0] != 1.0 {
            out.push(Violation::ExponentsFirstNotUnit);
        }
        if exps.windows(2).any(|w| w[1] <= w[0]) {
            out.push(Violation::ExponentsNotStrictlyIncreasing);
        }
        if exps.iter().any(|&l| l < 1.0) {
            out.push(Violation::ExponentsBelowOne);
        }
        if self.len() < 3 {
            out.push(Violation::TruncationTooShort { n: self.len() });
        }
        if self.coefficients.get(1).is_some_and(|a| *a == Complex64::ZERO) {
            out.push(Violation::SecondCoefficientZero);
        }
        if self.coefficients.get(2).is_some_and(|a| *a == Complex64::ZERO) {
            out.push(Violation::ThirdCoefficientZero);
        }
        let Envelope { scale, power } = self.envelope;
        for (i, (a, l)) in self.terms().enumerate() {
            let bound = scale * ((i + 1) as f64).powf(power);
            if a.norm() > bound {
                out.push(Violation::CoefficientEnvelope { index: i + 1 });
            }
            if l > bound {
                out.push(Violation::ExponentEnvelope { index: i + 1 });
            }
        }
    }
}

/// One factor `Gamma(alpha s + beta)` of the Gamma product Omega.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactorTerm {
    pub alpha: f64,
    pub beta: f64,
}

/// The functional-equation data (lambda, delta, Omega) together with the
/// derived constants `A = sum alpha_i` and `B = sum (alpha_i log alpha_i - alpha_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalEquationData {
    lambda: f64,
    delta: f64,
    omega: Vec<GammaFactorTerm>,
    a_const: f64,
    b_const: f64,
}

impl FunctionalEquationData {
    pub fn new(lambda: f64, delta: f64, omega: Vec<GammaFactorTerm>) -> Self {
        let (a_const, b_const) = Self::derive_constants(&omega);
        FunctionalEquationData {
            lambda,
            delta,
            omega,
            a_const,
            b_const,
        }
    }

    /// Deterministic left-to-right accumulation so that reconstruction is
    /// bit-identical.
    fn derive_constants(omega: &[GammaFactorTerm]) -> (f64, f64) {
        let mut a = 0.0;
        let mut b = 0.0;
        for term in omega {
            a += term.alpha;
            b += term.alpha * term.alpha.ln() - term.alpha;
        }
        (a, b)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn omega(&self) -> &[GammaFactorTerm] {
        &self.omega
    }

    /// A = sum of the alpha_i.
    pub fn a_const(&self) -> f64 {
        self.a_const
    }

    /// B = sum of (alpha_i log alpha_i - alpha_i).
    pub fn b_const(&self) -> f64 {
        self.b_const
    }

    /// Ordinate of the critical line sigma = delta/2.
    pub fn critical_sigma(&self) -> f64 {
        0.5 * self.delta
    }

    fn validate_into(&self, out: &mut Vec<Violation>) {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            out.push(Violation::LambdaNotPositive);
        }
        if self.omega.is_empty() {
            out.push(Violation::OmegaEmpty);
        }
        for (i, term) in self.omega.iter().enumerate() {
            if !(term.alpha > 0.0) || !term.alpha.is_finite() {
                out.push(Violation::AlphaNotPositive { index: i + 1 });
            }
        }
        let (a, b) = Self::derive_constants(&self.omega);
        if a.to_bits() != self.a_const.to_bits() || b.to_bits() != self.b_const.to_bits() {
            out.push(Violation::DerivedConstantsStale);
        }
    }
}

/// A named model invariant that failed. Violations are data: collecting them
/// never aborts, and degenerate models (for example N < 3 presets) stay
/// usable behind a warning channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ExponentsFirstNotUnit,
    ExponentsNotStrictlyIncreasing,
    ExponentsBelowOne,
    TruncationTooShort { n: usize },
    SecondCoefficientZero,
    ThirdCoefficientZero,
    CoefficientEnvelope { index: usize },
    ExponentEnvelope { index: usize },
    LambdaNotPositive,
    OmegaEmpty,
    AlphaNotPositive { index: usize },
    DerivedConstantsStale,
    RealFlagInconsistent,
}

impl Violation {
    /// True for the degenerate-truncation class that counting operations
    /// tolerate (surfaced as warnings rather than rejected).
    pub fn is_degenerate_truncation(&self) -> bool {
        matches!(
            self,
            Violation::TruncationTooShort { .. }
                | Violation::SecondCoefficientZero
                | Violation::ThirdCoefficientZero
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ExponentsFirstNotUnit => write!(f, "exponents must begin at 1"),
            Violation::ExponentsNotStrictlyIncreasing => {
                write!(f, "exponents not strictly increasing")
            }
            Violation::ExponentsBelowOne => write!(f, "exponents must all be >= 1"),
            Violation::TruncationTooShort { n } => {
                write!(f, "requires N >= 3 (got N = {n})")
            }
            Violation::SecondCoefficientZero => write!(f, "requires a2 != 0"),
            Violation::ThirdCoefficientZero => write!(f, "requires a3 != 0"),
            Violation::CoefficientEnvelope { index } => {
                write!(f, "coefficient a{index} exceeds the declared envelope")
            }
            Violation::ExponentEnvelope { index } => {
                write!(f, "exponent lambda{index} exceeds the declared envelope")
            }
            Violation::LambdaNotPositive => write!(f, "lambda must be positive"),
            Violation::OmegaEmpty => write!(f, "omega must contain at least one Gamma factor"),
            Violation::AlphaNotPositive { index } => {
                write!(f, "alpha{index} must be positive")
            }
            Violation::DerivedConstantsStale => {
                write!(f, "stored A and B do not match recomputation from omega")
            }
            Violation::RealFlagInconsistent => {
                write!(f, "real-coefficient flag inconsistent with coefficients")
            }
        }
    }
}

/// A truncated series together with its functional-equation data: the object
/// `zeta_N(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationModel {
    series: SeriesSpec,
    fe: FunctionalEquationData,
    real_coefficients: bool,
    sigma0: f64,
}

impl ApproximationModel {
    pub fn new(series: SeriesSpec, fe: FunctionalEquationData) -> Self {
        let real_coefficients = series.all_real();
        ApproximationModel {
            series,
            fe,
            real_coefficients,
            sigma0: 2.0,
        }
    }

    /// Riemann-zeta approximation: a_n = 1, lambda_n = n, delta = 1,
    /// lambda = sqrt(pi), Omega = Gamma(s/2). Derived constants A = 1/2 and
    /// B = (1/2) log(1/2) - 1/2.
    pub fn zeta_preset(n: usize) -> Self {
        assert!(n >= 1, "zeta preset needs N >= 1");
        let coefficients = vec![Complex64::ONE; n];
        let exponents = (1..=n).map(|k| k as f64).collect();
        let series = SeriesSpec::new(coefficients, exponents, Envelope::default())
            .expect("preset shape is well formed");
        let fe = FunctionalEquationData::new(
            PI.sqrt(),
            1.0,
            vec![GammaFactorTerm {
                alpha: 0.5,
                beta: 0.0,
            }],
        );
        ApproximationModel::new(series, fe)
    }

    /// Replace a_1 by a_1 - a, leaving everything else identical. This is the
    /// shifted series used for left-edge and below-line counting.
    pub fn shift_constant(&self, a: Complex64) -> Self {
        let mut series = self.series.clone();
        series.coefficients[0] -= a;
        let mut shifted = self.clone();
        shifted.real_coefficients = series.all_real();
        shifted.series = series;
        shifted
    }

    pub fn series(&self) -> &SeriesSpec {
        &self.series
    }

    pub fn fe(&self) -> &FunctionalEquationData {
        &self.fe
    }

    pub fn real_coefficients(&self) -> bool {
        self.real_coefficients
    }

    /// Abscissa of absolute convergence used by tail bounds; a configuration
    /// knob, never inferred.
    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }

    pub fn with_sigma0(mut self, sigma0: f64) -> Self {
        self.sigma0 = sigma0;
        self
    }

    /// Default strip exponent gamma = (p + 1) / (2A) + 0.1 for the declared
    /// envelope power p: the smallest admissible exponent plus a margin.
    pub fn default_gamma(&self) -> f64 {
        (self.series.envelope().power + 1.0) / (2.0 * self.fe.a_const()) + 0.1
    }

    /// Every failed invariant, as data. An empty list means the model
    /// satisfies all type-level invariants.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.series.validate_into(&mut out);
        self.fe.validate_into(&mut out);
        if self.real_coefficients != self.series.all_real() {
            out.push(Violation::RealFlagInconsistent);
        }
        out
    }

    /// Warning strings for the degenerate-but-usable violation class; counting
    /// operations attach these to their reports.
    pub fn degeneracy_warnings(&self) -> Vec<String> {
        self.validate()
            .iter()
            .filter(|v| v.is_degenerate_truncation())
            .map(|v| v.to_string())
            .collect()
    }
}
