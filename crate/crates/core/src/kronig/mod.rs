//! Periodic array of identical contacts at `x = νℓ`.
//!
//! Negative-energy Bloch states `e^{−κx}`/`e^{κx}` between contacts satisfy
//!
//! ```text
//! [βκ² + (α+δ)κ + γ] − 4κ cos(kℓ − θ) e^{−κℓ} − [βκ² − (α+δ)κ + γ] e^{−2κℓ} = 0
//! ```
//!
//! which [`exact`] solves by continuation in `k`. [`narrowband`] holds the
//! closed-form dispersions valid when `e^{−κℓ} ≪ 1`.

pub mod exact;
pub mod narrowband;

use std::fmt;
use std::str::FromStr;

use crate::contact::{validate, ContactParams, SymmetryClass};
use crate::error::{Error, Result};
use crate::numerics::C64;

pub use exact::{
    band_sweep, classify_regime, default_seeds, quantization_derivative, quantization_residual,
    solve_band, BandSweep, ExceptionalPoint, RegimeSummary,
};
pub use narrowband::{
    dirac_cone_bands, hermitian_narrowband, pt_narrowband, DiracConeParams, DiracPoint,
    HermitianNarrowBand, PtNarrowBand, PtNarrowBandPoint,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    contact: ContactParams,
    ell: f64,
}

impl LatticeParams {
    pub fn new(contact: ContactParams, ell: f64) -> Result<Self> {
        if !(ell > 0.0) || !ell.is_finite() {
            return Err(Error::Domain(format!(
                "lattice period must be positive, got {ell}"
            )));
        }
        match contact.class() {
            SymmetryClass::Hermitian | SymmetryClass::PTSymmetric => {}
            found => {
                return Err(Error::WrongClass {
                    expected: "hermitian or pt_symmetric",
                    found,
                })
            }
        }
        let report = validate(&contact);
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        Ok(Self { contact, ell })
    }

    pub fn contact(&self) -> &ContactParams {
        &self.contact
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// Half-width of the Brillouin zone, `π/ℓ`.
    pub fn zone_edge(&self) -> f64 {
        std::f64::consts::PI / self.ell
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPoint {
    pub k: f64,
    pub kappa: C64,
    /// `−κ²/2`, or NaN once the root has crossed `Re κ = 0` into the continuum.
    pub energy: C64,
    pub residual: f64,
}

impl BandPoint {
    pub fn new(k: f64, kappa: C64, residual: f64) -> Self {
        Self {
            k,
            kappa,
            energy: -0.5 * kappa * kappa,
            residual,
        }
    }

    /// A point of the continued root past the continuum edge, with no bound state.
    pub fn unbound(k: f64, kappa: C64, residual: f64) -> Self {
        Self {
            k,
            kappa,
            energy: C64::new(f64::NAN, f64::NAN),
            residual,
        }
    }

    pub fn is_bound(&self) -> bool {
        self.energy.re.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    RealBands,
    ConjugatePairBands,
    PartialOnset,
    PartialCompletion,
    HermitianGapped,
    HermitianDiracCone,
    Unclassified,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::RealBands => "real_bands",
            Regime::ConjugatePairBands => "conjugate_pair_bands",
            Regime::PartialOnset => "partial_onset",
            Regime::PartialCompletion => "partial_completion",
            Regime::HermitianGapped => "hermitian_gapped",
            Regime::HermitianDiracCone => "hermitian_dirac_cone",
            Regime::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Regime::RealBands,
            Regime::ConjugatePairBands,
            Regime::PartialOnset,
            Regime::PartialCompletion,
            Regime::HermitianGapped,
            Regime::HermitianDiracCone,
            Regime::Unclassified,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
        .ok_or_else(|| Error::Parse(format!("unknown regime `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    pub band_index: usize,
    pub points: Vec<BandPoint>,
    pub regime: Regime,
}

/// Closed grid over the zone: `n` points from `−π/ℓ` to `π/ℓ` inclusive.
pub fn zone_grid(ell: f64, n: usize) -> Vec<f64> {
    let edge = std::f64::consts::PI / ell;
    if n < 2 {
        return vec![0.0; n];
    }
    (0..n)
        .map(|j| -edge + 2.0 * edge * j as f64 / (n - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_edges_and_centre() {
        let g = zone_grid(2.0, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], -std::f64::consts::FRAC_PI_2);
        assert_eq!(g[2], 0.0);
        assert_eq!(g[4], std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn rejects_bad_lattices() {
        let p = ContactParams::hermitian(-2.0, 1.0, 3.0, -2.0).unwrap();
        assert!(LatticeParams::new(p, 0.0).is_err());
        assert!(LatticeParams::new(p, f64::NAN).is_err());
        assert!(LatticeParams::new(p, 1.0).is_ok());
    }

    #[test]
    fn regime_names_round_trip() {
        for r in [
            Regime::RealBands,
            Regime::HermitianDiracCone,
            Regime::Unclassified,
        ] {
            assert_eq!(r.as_str().parse::<Regime>().unwrap(), r);
        }
    }
}
