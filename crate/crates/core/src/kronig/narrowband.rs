//! Closed-form band dispersions for exponentially narrow bands.
//!
//! Near an isolated root the tunnelling terms are small, so the quantization
//! condition reduces to a quadratic in the root shift. These formulas are
//! accurate to relative order `e^{−κℓ}`.

use std::cmp::Ordering;

use super::exact::{summarize_bands, wrap_into_zone, RegimeRule, RegimeSummary};
use super::{zone_grid, BandPoint, BandStructure, LatticeParams, Regime};
use crate::boundstates::{bound_states, SpectrumKind};
use crate::contact::SymmetryClass;
use crate::error::{Error, Result};
use crate::numerics::C64;

/// Above this `e^{−κ̄ℓ}` the narrow-band expansion is unreliable.
pub const NARROW_LIMIT: f64 = 0.05;

/// PT-symmetric two-band model around `κ̄ = −α_R/β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtNarrowBand {
    pub kappa_bar: f64,
    /// `W = √(4κ̄ e^{−κ̄ℓ}/β)`.
    pub w: f64,
    /// Rescaled root half-splitting `ε = ϵ/W`, with `ϵ = √|1 − α_I²|/β`.
    pub varepsilon: f64,
    /// `|α_I| > 1`: isolated roots are a conjugate pair.
    pub above_transition: bool,
    pub ell: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtNarrowBandPoint {
    pub k: f64,
    pub delta_plus: C64,
    pub delta_minus: C64,
    pub e_plus: C64,
    pub e_minus: C64,
}

impl PtNarrowBand {
    pub fn from_lattice(lat: &LatticeParams) -> Result<Self> {
        let p = lat.contact();
        if p.class() != SymmetryClass::PTSymmetric {
            return Err(Error::WrongClass {
                expected: "pt_symmetric",
                found: p.class(),
            });
        }
        let beta = p.beta();
        if !(beta > 0.0) {
            return Err(Error::Domain(format!(
                "narrow-band width needs beta > 0, got {beta}; use the exact solver"
            )));
        }
        let kappa_bar = -p.alpha().re / beta;
        if !(kappa_bar > 0.0) {
            return Err(Error::Domain(format!(
                "narrow bands need -alpha_R/beta > 0, got {kappa_bar}"
            )));
        }
        let ai = p.alpha().im;
        let w = (4.0 * kappa_bar * (-kappa_bar * lat.ell()).exp() / beta).sqrt();
        let half_split = (1.0 - ai * ai).abs().sqrt() / beta;
        Ok(Self {
            kappa_bar,
            w,
            varepsilon: half_split / w,
            above_transition: ai.abs() > 1.0,
            ell: lat.ell(),
            theta: p.theta(),
        })
    }

    /// Whether `e^{−κ̄ℓ}` is small enough for the expansion to be trusted.
    pub fn is_narrow(&self) -> bool {
        (-self.kappa_bar * self.ell).exp() <= NARROW_LIMIT
    }

    pub fn eval(&self, k: f64) -> PtNarrowBandPoint {
        let c = (k * self.ell - self.theta).cos();
        let e2 = self.varepsilon * self.varepsilon;
        let arg = if self.above_transition {
            c - e2
        } else {
            e2 + c
        };
        let root = C64::new(arg, 0.0).sqrt() * self.w;
        let centre = -0.5 * self.kappa_bar * self.kappa_bar;
        PtNarrowBandPoint {
            k,
            delta_plus: root,
            delta_minus: -root,
            e_plus: centre - self.kappa_bar * root,
            e_minus: centre + self.kappa_bar * root,
        }
    }
}

impl PtNarrowBand {
    /// Both bands on the closed `n_k`-point zone grid, with `κ = κ̄ + Δ±` and
    /// the linearized energies. Residuals are NaN: these are not exact roots.
    pub fn bands(&self, n_k: usize) -> Vec<BandStructure> {
        let pts: Vec<PtNarrowBandPoint> = zone_grid(self.ell, n_k)
            .into_iter()
            .map(|k| self.eval(k))
            .collect();
        let band = |index: usize| BandStructure {
            band_index: index,
            points: pts
                .iter()
                .map(|p| {
                    let (delta, energy) = if index == 0 {
                        (p.delta_plus, p.e_plus)
                    } else {
                        (p.delta_minus, p.e_minus)
                    };
                    BandPoint {
                        k: p.k,
                        kappa: self.kappa_bar + delta,
                        energy,
                        residual: f64::NAN,
                    }
                })
                .collect(),
            regime: Regime::Unclassified,
        };
        vec![band(0), band(1)]
    }

    /// Regime summary of [`PtNarrowBand::bands`], labelled by the same rules as the exact sweep.
    pub fn summary(&self, n_k: usize) -> RegimeSummary {
        let bands = self.bands(n_k);
        let ordering = if self.above_transition {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        summarize_bands(
            &bands,
            2.0 * std::f64::consts::PI / self.ell,
            self.kappa_bar,
            RegimeRule::Pt {
                centre: wrap_into_zone(self.theta / self.ell, self.ell),
                alpha_i_vs_one: ordering,
            },
        )
    }
}

pub fn pt_narrowband(lat: &LatticeParams, k: f64) -> Result<PtNarrowBandPoint> {
    Ok(PtNarrowBand::from_lattice(lat)?.eval(k))
}

/// Two cosine bands hanging off well-separated Hermitian roots `κ₁ > κ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianNarrowBand {
    pub k: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    /// First-order root shifts.
    pub dkappa1: f64,
    pub dkappa2: f64,
    pub e1: f64,
    pub e2: f64,
}

pub fn hermitian_narrowband(lat: &LatticeParams, k: f64) -> Result<HermitianNarrowBand> {
    let p = lat.contact();
    if p.class() != SymmetryClass::Hermitian {
        return Err(Error::WrongClass {
            expected: "hermitian",
            found: p.class(),
        });
    }
    if p.beta() == 0.0 {
        return Err(Error::Domain("two-band dispersion needs beta != 0".into()));
    }
    let set = bound_states(p)?;
    if set.kind() == SpectrumKind::DegeneratePair {
        return Err(Error::Domain(
            "degenerate roots: use the Dirac-cone dispersion instead".into(),
        ));
    }
    if set.kind() != SpectrumKind::TwoReal {
        return Err(Error::Domain(format!(
            "two-band dispersion needs two real bound states, found {:?}",
            set.kind()
        )));
    }
    let (k1, k2) = (set.roots()[0].re, set.roots()[1].re);
    let ell = lat.ell();
    let c = (k * ell - p.theta()).cos();
    let scale = 4.0 / (p.beta() * (k1 - k2));
    let dkappa1 = scale * k1 * (-k1 * ell).exp() * c;
    let dkappa2 = -scale * k2 * (-k2 * ell).exp() * c;
    Ok(HermitianNarrowBand {
        k,
        kappa1: k1,
        kappa2: k2,
        dkappa1,
        dkappa2,
        e1: -0.5 * k1 * k1 - k1 * dkappa1,
        e2: -0.5 * k2 * k2 - k2 * dkappa2,
    })
}

/// Nearly degenerate Hermitian roots `κ̄ ± ϵ` with `1/β = fϵ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracConeParams {
    pub kappa_bar: f64,
    pub epsilon: f64,
    pub f: f64,
    /// `ε = ϵ e^{κ̄ℓ}/(2κ̄)`.
    pub varepsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracPoint {
    pub k: f64,
    /// Lower band.
    pub e_plus: f64,
    /// Upper band.
    pub e_minus: f64,
    pub gap: f64,
}

impl DiracConeParams {
    pub fn new(kappa_bar: f64, epsilon: f64, f: f64, ell: f64) -> Result<Self> {
        let varepsilon = epsilon * (kappa_bar * ell).exp() / (2.0 * kappa_bar);
        Self::from_scaled(kappa_bar, varepsilon, f, ell)
    }

    /// Parameters from the rescaled detuning `ε` directly.
    pub fn from_scaled(kappa_bar: f64, varepsilon: f64, f: f64, ell: f64) -> Result<Self> {
        if !(kappa_bar > 0.0) || !(varepsilon > 0.0) || !(ell > 0.0) {
            return Err(Error::Domain(
                "Dirac-cone parameters need kappa_bar, varepsilon, ell > 0".into(),
            ));
        }
        if !(f.abs() <= 1.0 + 1e-12) {
            return Err(Error::Domain(format!("|f| must not exceed 1, got {f}")));
        }
        let f = f.clamp(-1.0, 1.0);
        Ok(Self {
            kappa_bar,
            epsilon: 2.0 * kappa_bar * (-kappa_bar * ell).exp() * varepsilon,
            f,
            varepsilon,
        })
    }

    pub fn from_lattice(lat: &LatticeParams) -> Result<Self> {
        let p = lat.contact();
        if p.class() != SymmetryClass::Hermitian || p.beta() == 0.0 {
            return Err(Error::Domain(
                "Dirac-cone parameters need a Hermitian contact with beta != 0".into(),
            ));
        }
        let set = bound_states(p)?;
        let (k1, k2) = match set.kind() {
            SpectrumKind::TwoReal | SpectrumKind::DegeneratePair => {
                (set.roots()[0].re, set.roots()[1].re)
            }
            other => {
                return Err(Error::Domain(format!(
                    "Dirac-cone parameters need two real roots, found {other:?}"
                )))
            }
        };
        let kappa_bar = 0.5 * (k1 + k2);
        let epsilon = 0.5 * (k1 - k2);
        Self::new(kappa_bar, epsilon, 1.0 / (p.beta() * epsilon), lat.ell())
    }

    fn amplitude(&self, ell: f64) -> f64 {
        2.0 * self.kappa_bar * self.kappa_bar * (-self.kappa_bar * ell).exp()
    }
}

pub fn dirac_cone_bands(d: &DiracConeParams, ell: f64, k: f64) -> Result<DiracPoint> {
    let e = d.varepsilon;
    // 1 + ε² + 2εf cos kℓ = (ε − 1)² + 2ε(1 + f cos kℓ), with the last factor
    // written in half angles so it keeps full precision next to a touching point
    let half = 0.5 * k * ell;
    let one_plus_fcos = if d.f < 0.0 {
        (1.0 + d.f) - 2.0 * d.f * half.sin().powi(2)
    } else {
        (1.0 - d.f) + 2.0 * d.f * half.cos().powi(2)
    };
    let arg = (e - 1.0).powi(2) + 2.0 * e * one_plus_fcos;
    if arg < -1e-12 * (1.0 + e * e) {
        return Err(Error::Domain(format!(
            "negative radicand {arg} in Dirac-cone dispersion"
        )));
    }
    let half = d.amplitude(ell) * arg.max(0.0).sqrt();
    let centre = -0.5 * d.kappa_bar * d.kappa_bar;
    Ok(DiracPoint {
        k,
        e_plus: centre - half,
        e_minus: centre + half,
        gap: 2.0 * half,
    })
}

/// One-sided slope of the gap at `k_touch`, by a forward difference of step `h`.
pub fn gap_slope(d: &DiracConeParams, ell: f64, k_touch: f64, h: f64) -> Result<f64> {
    let g0 = dirac_cone_bands(d, ell, k_touch)?.gap;
    let g1 = dirac_cone_bands(d, ell, k_touch + h)?.gap;
    Ok((g1 - g0) / h)
}
