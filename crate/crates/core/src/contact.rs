//! Contact-interaction parameter sets.
//!
//! A contact interaction at the origin is the jump condition
//!
//! ```text
//! ψ(0⁺)  = a ψ(0⁻) + b ψ'(0⁻)
//! ψ'(0⁺) = c ψ(0⁻) + d ψ'(0⁻)
//! ```
//!
//! with `(a, b, c, d) = e^{iθ} (α, β, γ, δ)` and `αδ − βγ = 1`. Self-adjoint
//! interactions have real `α, δ`; PT-symmetric ones have `δ = α*`. In both
//! families `β` and `γ` are real, so the solvers all work on the factored form
//! stored here. Units are `ħ = m = 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{Mat2, C64};
use crate::record::Record;

/// Absolute tolerance for every class-membership test.
pub const CLASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Hermitian,
    PTSymmetric,
    ParityOnly,
    TimeReversalOnly,
    General,
}

impl SymmetryClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SymmetryClass::Hermitian => "hermitian",
            SymmetryClass::PTSymmetric => "pt_symmetric",
            SymmetryClass::ParityOnly => "parity_only",
            SymmetryClass::TimeReversalOnly => "time_reversal_only",
            SymmetryClass::General => "general",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SymmetryClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hermitian" => Ok(SymmetryClass::Hermitian),
            "pt_symmetric" | "pt" | "ptsymmetric" => Ok(SymmetryClass::PTSymmetric),
            "parity_only" => Ok(SymmetryClass::ParityOnly),
            "time_reversal_only" => Ok(SymmetryClass::TimeReversalOnly),
            "general" => Ok(SymmetryClass::General),
            other => Err(Error::Parse(format!("unknown symmetry class `{other}`"))),
        }
    }
}

/// Maps an angle onto (−π, π].
pub fn normalize_phase(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if t <= -PI {
        PI
    } else {
        t
    }
}

/// Factored boundary-condition coefficients `(α, β, γ, δ, θ)` with a class tag.
///
/// The plain constructor does not check anything, so that inconsistent sets can
/// be built and passed to [`validate`]. The class-specific constructors return
/// an error for sets that fail validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactParams {
    alpha: C64,
    beta: f64,
    gamma: f64,
    delta: C64,
    theta: f64,
    class: SymmetryClass,
}

impl ContactParams {
    pub fn new(
        alpha: C64,
        beta: f64,
        gamma: f64,
        delta: C64,
        theta: f64,
        class: SymmetryClass,
    ) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            delta,
            theta: normalize_phase(theta),
            class,
        }
    }

    /// Self-adjoint interaction with `θ = 0`.
    pub fn hermitian(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        Self::new(
            C64::new(alpha, 0.0),
            beta,
            gamma,
            C64::new(delta, 0.0),
            0.0,
            SymmetryClass::Hermitian,
        )
        .checked()
    }

    /// PT-symmetric interaction with `δ = α*` and `θ = 0`.
    pub fn pt_symmetric(alpha: C64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new(
            alpha,
            beta,
            gamma,
            alpha.conj(),
            0.0,
            SymmetryClass::PTSymmetric,
        )
        .checked()
    }

    /// PT-symmetric interaction with `γ` fixed by `|α|² − βγ = 1`.
    pub fn pt_from_alpha(alpha: C64, beta: f64) -> Result<Self> {
        if beta == 0.0 {
            return Err(Error::Domain(
                "gamma is undetermined by |alpha|^2 - beta gamma = 1 when beta = 0".into(),
            ));
        }
        let gamma = (alpha.norm_sqr() - 1.0) / beta;
        Self::pt_symmetric(alpha, beta, gamma)
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = normalize_phase(theta);
        self
    }

    fn checked(self) -> Result<Self> {
        let report = validate(&self);
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> C64 {
        self.delta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }

    pub fn alpha_plus_delta(&self) -> C64 {
        self.alpha + self.delta
    }

    pub fn alpha_minus_delta(&self) -> C64 {
        self.alpha - self.delta
    }

    pub fn determinant(&self) -> C64 {
        self.alpha * self.delta - self.beta * self.gamma
    }

    /// The coefficient matrix `e^{iθ} [[α, β], [γ, δ]]` acting on `(ψ, ψ')`.
    pub fn boundary_matrix(&self) -> Mat2 {
        let phase = C64::from_polar(1.0, self.theta);
        [
            [phase * self.alpha, phase * self.beta],
            [phase * self.gamma, phase * self.delta],
        ]
    }

    /// Image under `(α, β, γ, δ) → (δ*, β*, γ*, α*)`, the action of PT on the
    /// boundary condition. PT-symmetric sets are fixed points.
    pub fn pt_image(&self) -> Self {
        Self {
            alpha: self.delta.conj(),
            delta: self.alpha.conj(),
            ..*self
        }
    }

    pub fn to_record(&self) -> Record {
        let mut rec = Record::new();
        rec.push("alpha_re", self.alpha.re)
            .push("alpha_im", self.alpha.im)
            .push("beta", self.beta)
            .push("gamma", self.gamma)
            .push("delta_re", self.delta.re)
            .push("delta_im", self.delta.im)
            .push("theta", self.theta)
            .push("class", self.class);
        rec
    }

    pub fn from_record(rec: &Record) -> Result<Self> {
        let class = rec
            .get("class")
            .ok_or_else(|| Error::Parse("missing key `class`".into()))?
            .parse()?;
        Ok(Self::new(
            C64::new(rec.get_f64("alpha_re")?, rec.get_f64("alpha_im")?),
            rec.get_f64("beta")?,
            rec.get_f64("gamma")?,
            C64::new(rec.get_f64("delta_re")?, rec.get_f64("delta_im")?),
            rec.get_f64("theta")?,
            class,
        ))
    }
}

/// The conventional delta potential `λ δ(x)`: `α = δ = 1`, `β = 0`, `γ = 2λ`.
pub fn from_delta_strength(lambda: f64) -> ContactParams {
    ContactParams::new(
        C64::new(1.0, 0.0),
        0.0,
        2.0 * lambda,
        C64::new(1.0, 0.0),
        0.0,
        SymmetryClass::Hermitian,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Finite,
    UnitDeterminant,
    RealAlpha,
    RealDelta,
    DeltaIsConjugateAlpha,
    AlphaEqualsDelta,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Finite => "non-finite coefficient",
            Invariant::UnitDeterminant => "αδ − βγ ≠ 1",
            Invariant::RealAlpha => "Im α ≠ 0",
            Invariant::RealDelta => "Im δ ≠ 0",
            Invariant::DeltaIsConjugateAlpha => "δ ≠ α*",
            Invariant::AlphaEqualsDelta => "α ≠ δ",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub invariant: Invariant,
    pub residual: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} (residual {:e})", v.invariant, v.residual)?;
        }
        Ok(())
    }
}

/// Checks `p` against the invariants of its declared class. Never fails; the
/// report lists every violated invariant with its residual.
pub fn validate(p: &ContactParams) -> ValidationReport {
    let mut violations = Vec::new();
    let finite = p.alpha.is_finite()
        && p.delta.is_finite()
        && p.beta.is_finite()
        && p.gamma.is_finite()
        && p.theta.is_finite();
    if !finite {
        violations.push(Violation {
            invariant: Invariant::Finite,
            residual: f64::INFINITY,
        });
        return ValidationReport { violations };
    }
    if p.class == SymmetryClass::General {
        return ValidationReport { violations };
    }

    let det_err = p.determinant() - 1.0;
    let det_residual = det_err.re.abs().max(det_err.im.abs());
    if det_residual > CLASS_TOL {
        violations.push(Violation {
            invariant: Invariant::UnitDeterminant,
            residual: det_residual,
        });
    }
    match p.class {
        SymmetryClass::Hermitian => {
            if p.alpha.im.abs() > CLASS_TOL {
                violations.push(Violation {
                    invariant: Invariant::RealAlpha,
                    residual: p.alpha.im.abs(),
                });
            }
            if p.delta.im.abs() > CLASS_TOL {
                violations.push(Violation {
                    invariant: Invariant::RealDelta,
                    residual: p.delta.im.abs(),
                });
            }
        }
        SymmetryClass::PTSymmetric => {
            let r = (p.delta - p.alpha.conj()).norm();
            if r > CLASS_TOL {
                violations.push(Violation {
                    invariant: Invariant::DeltaIsConjugateAlpha,
                    residual: r,
                });
            }
        }
        SymmetryClass::ParityOnly => {
            let r = (p.alpha - p.delta).norm();
            if r > CLASS_TOL {
                violations.push(Violation {
                    invariant: Invariant::AlphaEqualsDelta,
                    residual: r,
                });
            }
        }
        SymmetryClass::TimeReversalOnly | SymmetryClass::General => {}
    }
    ValidationReport { violations }
}

fn is_real(z: C64) -> bool {
    z.im.abs() <= CLASS_TOL
}

/// Splits raw coefficients into `e^{iθ}` times a unit-determinant matrix, if
/// `|ad − bc| = 1`. The phase is `arg(ad − bc)/2`.
fn factor_phase(a: C64, b: C64, c: C64, d: C64) -> Option<(f64, [C64; 4])> {
    let det = a * d - b * c;
    if (det.norm() - 1.0).abs() > CLASS_TOL {
        return None;
    }
    let theta = 0.5 * det.arg();
    let unphase = C64::from_polar(1.0, -theta);
    Some((theta, [a * unphase, b * unphase, c * unphase, d * unphase]))
}

/// Most restrictive symmetry class of raw coefficients `(a, b, c, d)`.
///
/// Precedence: Hermitian, then PT-symmetric, then parity only, then time
/// reversal only, then general.
pub fn classify_symmetry(a: C64, b: C64, c: C64, d: C64) -> SymmetryClass {
    if ![a, b, c, d].iter().all(|z| z.is_finite()) {
        return SymmetryClass::General;
    }
    if let Some((_, [alpha, beta, gamma, delta])) = factor_phase(a, b, c, d) {
        if [alpha, beta, gamma, delta].into_iter().all(is_real) {
            return SymmetryClass::Hermitian;
        }
        if is_real(beta) && is_real(gamma) && (delta - alpha.conj()).norm() <= CLASS_TOL {
            return SymmetryClass::PTSymmetric;
        }
    }
    let det = a * d - b * c;
    if (a - d).norm() <= CLASS_TOL && (det - 1.0).norm() <= CLASS_TOL {
        return SymmetryClass::ParityOnly;
    }
    if [a, b, c, d].into_iter().all(is_real) {
        return SymmetryClass::TimeReversalOnly;
    }
    SymmetryClass::General
}

/// Converts raw coefficients into the factored form used by the solvers.
/// Only the Hermitian and PT-symmetric families have one.
pub fn factor_coefficients(a: C64, b: C64, c: C64, d: C64) -> Result<ContactParams> {
    let class = classify_symmetry(a, b, c, d);
    match class {
        SymmetryClass::Hermitian | SymmetryClass::PTSymmetric => {
            let (theta, [alpha, beta, gamma, delta]) =
                factor_phase(a, b, c, d).expect("classified sets have a unit-modulus determinant");
            let (alpha, delta) = if class == SymmetryClass::Hermitian {
                (C64::new(alpha.re, 0.0), C64::new(delta.re, 0.0))
            } else {
                (alpha, alpha.conj())
            };
            Ok(ContactParams::new(
                alpha, beta.re, gamma.re, delta, theta, class,
            ))
        }
        found => Err(Error::WrongClass {
            expected: "hermitian or pt_symmetric",
            found,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryKind {
    /// `α = δ = 1`, `β = θ = 0`, `γ` from zero (free) to ∞ (Dirichlet walls).
    GammaRay,
    /// `α = δ = cosh s`, `β = ξ sinh s`, `γ = sinh s / ξ`: from free motion to two
    /// disconnected half lines with Robin conditions of length `ξ`.
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryParams {
    pub kind: TrajectoryKind,
    /// Robin length; only used by [`TrajectoryKind::Hyperbolic`].
    pub xi: f64,
}

pub fn trajectory_point(t: &TrajectoryParams, value: f64) -> Result<ContactParams> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(Error::Domain(format!(
            "trajectory parameter must be finite and non-negative, got {value}"
        )));
    }
    let one = C64::new(1.0, 0.0);
    match t.kind {
        TrajectoryKind::GammaRay => Ok(ContactParams::new(
            one,
            0.0,
            value,
            one,
            0.0,
            SymmetryClass::Hermitian,
        )),
        TrajectoryKind::Hyperbolic => {
            if t.xi == 0.0 || !t.xi.is_finite() {
                return Err(Error::Domain(
                    "Robin length xi must be finite and non-zero".into(),
                ));
            }
            let (sh, ch) = (value.sinh(), value.cosh());
            Ok(ContactParams::new(
                C64::new(ch, 0.0),
                t.xi * sh,
                sh / t.xi,
                C64::new(ch, 0.0),
                0.0,
                SymmetryClass::Hermitian,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn coeffs(p: &ContactParams) -> (f64, f64, f64, f64, f64) {
        (p.alpha.re, p.beta, p.gamma, p.delta.re, p.theta)
    }

    #[test]
    fn delta_strength_examples() {
        assert_eq!(
            coeffs(&from_delta_strength(-1.0)),
            (1.0, 0.0, -2.0, 1.0, 0.0)
        );
        assert_eq!(coeffs(&from_delta_strength(0.0)), (1.0, 0.0, 0.0, 1.0, 0.0));
        assert_eq!(coeffs(&from_delta_strength(3.0)), (1.0, 0.0, 6.0, 1.0, 0.0));
        assert!(validate(&from_delta_strength(3.0)).is_valid());
    }

    #[test]
    fn validate_examples() {
        assert!(ContactParams::hermitian(-2.0, 1.0, 3.0, -2.0).is_ok());

        let pt = ContactParams::pt_symmetric(C64::new(-1.0, 0.6), 1.0, 0.36).unwrap();
        assert!(validate(&pt).is_valid());

        let bad = ContactParams::new(
            C64::new(-2.0, 0.1),
            1.0,
            3.0,
            r(-2.0),
            0.0,
            SymmetryClass::Hermitian,
        );
        let report = validate(&bad);
        let v = report
            .violations
            .iter()
            .find(|v| v.invariant == Invariant::RealAlpha)
            .expect("Im α violation reported");
        assert!((v.residual - 0.1).abs() < 1e-15);
        assert_eq!(v.invariant.to_string(), "Im α ≠ 0");
    }

    #[test]
    fn validate_reports_determinant_residual() {
        let p = ContactParams::new(r(1.0), 1.0, 1.0, r(1.0), 0.0, SymmetryClass::Hermitian);
        let report = validate(&p);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].invariant, Invariant::UnitDeterminant);
        assert!((report.violations[0].residual - 1.0).abs() < 1e-15);
        assert!(ContactParams::hermitian(1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn non_finite_is_invalid() {
        let p = ContactParams::new(r(f64::NAN), 0.0, 0.0, r(1.0), 0.0, SymmetryClass::General);
        assert!(!validate(&p).is_valid());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_symmetry(r(1.0), r(0.0), r(-2.0), r(1.0)),
            SymmetryClass::Hermitian
        );
        assert_eq!(
            classify_symmetry(C64::new(-1.0, 0.6), r(1.0), r(0.36), C64::new(-1.0, -0.6)),
            SymmetryClass::PTSymmetric
        );
        // real entries, a ≠ d, determinant 2: neither self-adjoint nor parity symmetric
        assert_eq!(
            classify_symmetry(r(2.0), r(0.0), r(0.0), r(1.0)),
            SymmetryClass::TimeReversalOnly
        );
        // real with unit determinant is a self-adjoint (SL(2,R)) interaction
        assert_eq!(
            classify_symmetry(r(2.0), r(0.0), r(0.0), r(0.5)),
            SymmetryClass::Hermitian
        );
    }

    #[test]
    fn classify_parity_and_general() {
        // a = d, det 1, complex entries that are not PT symmetric
        let a = C64::new(1.0, 1.0);
        let b = C64::new(0.0, 1.0);
        let c = (a * a - 1.0) / b;
        assert_eq!(classify_symmetry(a, b, c, a), SymmetryClass::ParityOnly);
        assert_eq!(
            classify_symmetry(C64::new(1.0, 1.0), r(0.0), r(0.0), r(3.0)),
            SymmetryClass::General
        );
    }

    #[test]
    fn classify_sees_through_phase() {
        let p = ContactParams::hermitian(-2.0, 1.0, 3.0, -2.0)
            .unwrap()
            .with_theta(0.7);
        let m = p.boundary_matrix();
        assert_eq!(
            classify_symmetry(m[0][0], m[0][1], m[1][0], m[1][1]),
            SymmetryClass::Hermitian
        );
        let back = factor_coefficients(m[0][0], m[0][1], m[1][0], m[1][1]).unwrap();
        assert!((back.theta() - 0.7).abs() < 1e-14);
        assert!((back.alpha() - p.alpha()).norm() < 1e-14);
        assert!((back.gamma() - 3.0).abs() < 1e-14);

        let pt = ContactParams::pt_from_alpha(C64::new(-1.0, 1.3), 1.0)
            .unwrap()
            .with_theta(-2.0);
        let m = pt.boundary_matrix();
        let back = factor_coefficients(m[0][0], m[0][1], m[1][0], m[1][1]).unwrap();
        assert_eq!(back.class(), SymmetryClass::PTSymmetric);
        // the factorization is unique only up to an overall sign, (θ, M) ~ (θ + π, −M)
        let same = (back.alpha() - pt.alpha()).norm() < 1e-13;
        let flipped = (back.alpha() + pt.alpha()).norm() < 1e-13;
        assert!(same || flipped);
    }

    #[test]
    fn factor_rejects_unstructured_sets() {
        assert!(factor_coefficients(r(2.0), r(0.0), r(0.0), r(1.0)).is_err());
    }

    #[test]
    fn theta_is_normalized() {
        let p = from_delta_strength(1.0).with_theta(3.0 * PI);
        assert_eq!(p.theta(), PI);
        let p = from_delta_strength(1.0).with_theta(-PI);
        assert_eq!(p.theta(), PI);
        let p = from_delta_strength(1.0).with_theta(-0.5);
        assert_eq!(p.theta(), -0.5);
    }

    #[test]
    fn hyperbolic_trajectory() {
        let t = TrajectoryParams {
            kind: TrajectoryKind::Hyperbolic,
            xi: -2.0,
        };
        let p0 = trajectory_point(&t, 0.0).unwrap();
        assert_eq!(coeffs(&p0), (1.0, 0.0, 0.0, 1.0, 0.0));
        let p1 = trajectory_point(&t, 1.0).unwrap();
        let (s, c) = (1f64.sinh(), 1f64.cosh());
        assert_eq!(coeffs(&p1), (c, -2.0 * s, -s / 2.0, c, 0.0));
        assert!((p1.determinant() - 1.0).norm() < 1e-15);
        let zero_xi = TrajectoryParams { xi: 0.0, ..t };
        assert!(trajectory_point(&zero_xi, 1.0).is_err());
        assert!(trajectory_point(&t, -1.0).is_err());
    }

    #[test]
    fn gamma_ray_trajectory() {
        let t = TrajectoryParams {
            kind: TrajectoryKind::GammaRay,
            xi: 0.0,
        };
        assert_eq!(
            coeffs(&trajectory_point(&t, 5.0).unwrap()),
            (1.0, 0.0, 5.0, 1.0, 0.0)
        );
    }

    #[test]
    fn pt_image_fixes_pt_sets() {
        let pt = ContactParams::pt_from_alpha(C64::new(0.3, -1.7), -0.8)
            .unwrap()
            .with_theta(1.1);
        assert_eq!(pt.pt_image(), pt);
        let herm = ContactParams::hermitian(2.0, 1.0, 1.0, 1.0).unwrap();
        assert_ne!(herm.pt_image(), herm);
    }

    #[test]
    fn record_round_trip() {
        let p = ContactParams::pt_from_alpha(C64::new(-1.0 / 3.0, 0.1 + 0.2), 7.0)
            .unwrap()
            .with_theta(1.0 / 7.0);
        let text = p.to_record().to_string();
        assert!(text.contains("class = pt_symmetric"));
        let back = ContactParams::from_record(&text.parse().unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
