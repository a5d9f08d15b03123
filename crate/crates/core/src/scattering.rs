//! Scattering off a single contact at real wavenumber `k > 0`.
//!
//! Amplitudes come from solving the boundary condition directly. Left
//! incidence (`e^{ikx} + r e^{−ikx}` → `t e^{ikx}`) gives
//!
//! ```text
//! t  − (a − ikb) r = a + ikb
//! ikt − (c − ikd) r = c + ikd
//! ```
//!
//! and right incidence (`e^{−ikx} + r′ e^{ikx}` → `t′ e^{−ikx}`) gives
//!
//! ```text
//! (a − ikb) t′ − r′   = 1
//! (c − ikd) t′ − ik r′ = −ik
//! ```
//!
//! with `(a, b, c, d) = e^{iθ}(α, β, γ, δ)`. The closed form
//! `t = 2ik e^{iθ} / (βk² + ik(α+δ) − γ)` is kept separately as a cross-check.

use crate::boundstates::{characteristic_roots, CharacteristicRoots};
use crate::contact::{validate, ContactParams, SymmetryClass};
use crate::error::{Error, Result};
use crate::numerics::{bisect, fit_lorentzian, solve_2x2, LorentzianFit, Mat2, C64};

/// Relative tolerance for the `|Δ| = 2k|cos θ|` threshold.
pub const THRESHOLD_TOL: f64 = 1e-12;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringSolution {
    pub k: f64,
    pub t: C64,
    pub r: C64,
    pub t_prime: C64,
    pub r_prime: C64,
}

impl ScatteringSolution {
    /// `[[t′, r′], [r, t]]`: the diagonal carries `t₀e^{−iθ}` then `t₀e^{+iθ}`.
    pub fn s_matrix(&self) -> Mat2 {
        [[self.t_prime, self.r_prime], [self.r, self.t]]
    }

    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }
}

fn require_scatterable(p: &ContactParams) -> Result<()> {
    match p.class() {
        SymmetryClass::Hermitian | SymmetryClass::PTSymmetric => {}
        found => {
            return Err(Error::WrongClass {
                expected: "hermitian or pt_symmetric",
                found,
            })
        }
    }
    let report = validate(p);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid(report))
    }
}

fn require_positive_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "wavenumber must be positive, got {k}"
        )))
    }
}

pub fn scatter(p: &ContactParams, k: f64) -> Result<ScatteringSolution> {
    require_scatterable(p)?;
    require_positive_k(k)?;
    let [[a, b], [c, d]] = p.boundary_matrix();
    let ik = I * k;

    let left: Mat2 = [[C64::new(1.0, 0.0), -(a - ik * b)], [ik, -(c - ik * d)]];
    let [t, r] = solve_2x2(&left, [a + ik * b, c + ik * d]).ok_or(Error::RealAxisPole { k })?;

    let right: Mat2 = [[a - ik * b, C64::new(-1.0, 0.0)], [c - ik * d, -ik]];
    let [t_prime, r_prime] =
        solve_2x2(&right, [C64::new(1.0, 0.0), -ik]).ok_or(Error::RealAxisPole { k })?;

    Ok(ScatteringSolution {
        k,
        t,
        r,
        t_prime,
        r_prime,
    })
}

/// Left-incidence transmission from the factored pole form
/// `2ik e^{iθ} / (β(k − iκ₊)(k − iκ₋))`, or `2ik e^{iθ} / (ik(α+δ) − γ)` when `β = 0`.
pub fn transmission_closed_form(p: &ContactParams, k: f64) -> Result<C64> {
    require_scatterable(p)?;
    require_positive_k(k)?;
    let phase = C64::from_polar(1.0, p.theta());
    let numer = 2.0 * I * k * phase;
    let denom = match characteristic_roots(p) {
        Ok(CharacteristicRoots::Pair { plus, minus }) => {
            p.beta() * (k - I * plus) * (k - I * minus)
        }
        Ok(_) | Err(Error::NoQuantizationCondition) => I * k * p.alpha_plus_delta() - p.gamma(),
        Err(e) => return Err(e),
    };
    if denom.norm() == 0.0 {
        return Err(Error::RealAxisPole { k });
    }
    Ok(numer / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatteringPhase {
    /// Both eigenvalues on the unit circle.
    Unimodular,
    /// Eigenvalues `λ, 1/λ*` off the unit circle.
    Broken,
    /// `|Δ| = 2k|cos θ|`: the two eigenvalues coalesce on the unit circle.
    Threshold,
}

impl ScatteringPhase {
    pub fn is_broken(self) -> bool {
        self == ScatteringPhase::Broken
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrixEigenproblem {
    pub k: f64,
    /// `Δ = γ − βk² − ik(α+δ)`.
    pub delta: C64,
    /// Root of larger magnitude (first branch when both are unimodular).
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    pub phase: ScatteringPhase,
}

impl SMatrixEigenproblem {
    pub fn broken(&self) -> bool {
        self.phase.is_broken()
    }

    /// `|Δλ² + 4ik cos θ λ − Δ*|` for a candidate eigenvalue.
    pub fn closure_residual(&self, theta: f64, lambda: C64) -> f64 {
        (self.delta * lambda * lambda + 4.0 * I * self.k * theta.cos() * lambda - self.delta.conj())
            .norm()
    }
}

fn require_real_structure(p: &ContactParams) -> Result<()> {
    match p.class() {
        SymmetryClass::Hermitian | SymmetryClass::PTSymmetric => Ok(()),
        found => Err(Error::WrongClass {
            expected: "hermitian or pt_symmetric",
            found,
        }),
    }
}

/// Eigenvalues of the S-matrix as roots of `Δλ² + 4ik cos θ λ − Δ* = 0`.
pub fn s_eigenvalues(p: &ContactParams, k: f64) -> Result<SMatrixEigenproblem> {
    require_real_structure(p)?;
    require_positive_k(k)?;
    let s = p.alpha_plus_delta().re;
    let delta = C64::new(p.gamma() - p.beta() * k * k, -k * s);
    if delta.norm() == 0.0 {
        return Err(Error::DegenerateEigenproblem { k });
    }
    let two_kc = 2.0 * k * p.theta().cos();
    let gap = delta.norm() - two_kc.abs();

    let phase = if gap.abs() <= THRESHOLD_TOL * delta.norm().max(1.0) {
        ScatteringPhase::Threshold
    } else if gap < 0.0 {
        ScatteringPhase::Broken
    } else {
        ScatteringPhase::Unimodular
    };

    // λ = (−2ikc ± √(|Δ|² − 4k²c²)) / Δ
    let disc = delta.norm_sqr() - two_kc * two_kc;
    let (lambda_plus, lambda_minus) = match phase {
        ScatteringPhase::Broken => {
            let root = (-disc).sqrt();
            let sign = if two_kc >= 0.0 { 1.0 } else { -1.0 };
            let big = I * (-two_kc - sign * root) / delta;
            (big, -delta.conj() / (delta * big))
        }
        ScatteringPhase::Threshold => {
            let lam = -I * two_kc / delta;
            (lam, lam)
        }
        ScatteringPhase::Unimodular => {
            let root = disc.sqrt();
            ((-I * two_kc + root) / delta, (-I * two_kc - root) / delta)
        }
    };

    Ok(SMatrixEigenproblem {
        k,
        delta,
        lambda_plus,
        lambda_minus,
        phase,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowRow {
    pub k: f64,
    /// `(γ + βk²)² + Re((α−δ)²)k² + 4k² sin²θ`; negative inside the window.
    pub margin: f64,
    pub broken: bool,
}

/// Sign of `|Δ|² − 4k²cos²θ`, rewritten through `αδ − βγ = 1`. For the PT
/// class `(α−δ)² = −4α_I²`; for the Hermitian class it is non-negative.
pub fn breaking_margin(p: &ContactParams, k: f64) -> f64 {
    let g = p.gamma() + p.beta() * k * k;
    let dm = p.alpha_minus_delta();
    let sin = p.theta().sin();
    g * g + (dm * dm).re * k * k + 4.0 * k * k * sin * sin
}

pub fn pt_breaking_window(p: &ContactParams, k_grid: &[f64]) -> Result<Vec<WindowRow>> {
    require_real_structure(p)?;
    k_grid
        .iter()
        .map(|&k| {
            require_positive_k(k)?;
            let margin = breaking_margin(p, k);
            Ok(WindowRow {
                k,
                margin,
                broken: margin < 0.0,
            })
        })
        .collect()
}

/// Edges of the broken window inside `[k_min, k_max]`, located by scanning
/// `n` points for sign changes of the margin and bisecting each to `tol`.
pub fn breaking_window_edges(
    p: &ContactParams,
    k_min: f64,
    k_max: f64,
    n: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    require_real_structure(p)?;
    require_positive_k(k_min)?;
    if !(k_max > k_min) || n < 2 {
        return Err(Error::Domain(
            "need k_max > k_min and at least two scan points".into(),
        ));
    }
    let f = |k: f64| breaking_margin(p, k);
    let step = (k_max - k_min) / (n - 1) as f64;
    let mut edges = Vec::new();
    let mut prev_k = k_min;
    let mut prev = f(prev_k);
    for j in 1..n {
        let k = k_min + step * j as f64;
        let cur = f(k);
        if cur == 0.0 {
            edges.push(k);
        } else if prev != 0.0 && (prev < 0.0) != (cur < 0.0) {
            edges.push(bisect(f, prev_k, k, tol)?);
        }
        prev_k = k;
        prev = cur;
    }
    Ok(edges)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceSample {
    pub k: f64,
    /// `|t|²`, NaN at a real-axis pole.
    pub transmission: f64,
    pub pole: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceProfile {
    pub samples: Vec<ResonanceSample>,
    /// Lorentzian fit around the maximum; only attempted when the poles of `t`
    /// are a complex pair off the imaginary `k` axis.
    pub fit: Option<LorentzianFit>,
}

pub fn resonance_profile(p: &ContactParams, k_grid: &[f64]) -> Result<ResonanceProfile> {
    require_scatterable(p)?;
    let samples: Vec<ResonanceSample> = k_grid
        .iter()
        .map(|&k| match transmission_closed_form(p, k) {
            Ok(t) if t.is_finite() => Ok(ResonanceSample {
                k,
                transmission: t.norm_sqr(),
                pole: false,
            }),
            Ok(_) | Err(Error::RealAxisPole { .. }) => Ok(ResonanceSample {
                k,
                transmission: f64::NAN,
                pole: true,
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;

    let off_axis = match characteristic_roots(p) {
        Ok(CharacteristicRoots::Pair { plus, minus }) => plus.im != 0.0 && minus.im != 0.0,
        _ => false,
    };
    let fit = if off_axis { fit_peak(&samples) } else { None };
    Ok(ResonanceProfile { samples, fit })
}

fn fit_peak(samples: &[ResonanceSample]) -> Option<LorentzianFit> {
    let (imax, peak) = samples
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.pole)
        .max_by(|a, b| a.1.transmission.total_cmp(&b.1.transmission))?;
    let half = 0.5 * peak.transmission;
    let usable = |s: &ResonanceSample| !s.pole && s.transmission >= half;
    let mut lo = imax;
    while lo > 0 && usable(&samples[lo - 1]) {
        lo -= 1;
    }
    let mut hi = imax;
    while hi + 1 < samples.len() && usable(&samples[hi + 1]) {
        hi += 1;
    }
    let window = &samples[lo..=hi];
    if window.len() < 4 {
        return None;
    }
    let xs: Vec<f64> = window.iter().map(|s| s.k).collect();
    let ys: Vec<f64> = window.iter().map(|s| s.transmission).collect();
    let width = 0.5 * (xs[xs.len() - 1] - xs[0]).max(f64::EPSILON);
    fit_lorentzian(&xs, &ys, (peak.k, width, peak.transmission))
}
