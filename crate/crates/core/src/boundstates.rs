//! Bound states of a single contact interaction.
//!
//! The decaying ansatz `ψ ∝ e^{−κ|x|}` has energy `E = −κ²/2` and survives the
//! boundary condition iff `βκ² + (α+δ)κ + γ = 0`. Everything here is closed
//! form. Using `αδ − βγ = 1` the discriminant is `4 + (α−δ)²`, which is at
//! least 4 in the Hermitian case and `4(1 − α_I²)` in the PT case, so the
//! reality of the roots is decided exactly rather than through a cancelling
//! difference.

use crate::contact::{ContactParams, SymmetryClass, CLASS_TOL};
use crate::error::{Error, Result};
use crate::numerics::C64;

/// Roots with `|Re κ|` at or below this are marginal (non-normalizable).
pub const MARGINAL_TOL: f64 = 1e-12;

fn degenerate(a: C64, b: C64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + a.norm())
}

/// Analytic roots of the bound-state quadratic, regardless of admissibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacteristicRoots {
    /// `β ≠ 0`: the `±` branches of the closed-form root.
    Pair { plus: C64, minus: C64 },
    /// `β = 0`: the quadratic is linear.
    Single(C64),
    /// `β = 0`, `α + δ = 0`, `γ ≠ 0`: no κ satisfies the condition.
    Inconsistent,
}

impl CharacteristicRoots {
    pub fn to_vec(&self) -> Vec<C64> {
        match *self {
            CharacteristicRoots::Pair { plus, minus } => vec![plus, minus],
            CharacteristicRoots::Single(k) => vec![k],
            CharacteristicRoots::Inconsistent => Vec::new(),
        }
    }
}

fn require_solvable_class(p: &ContactParams) -> Result<()> {
    match p.class() {
        SymmetryClass::Hermitian | SymmetryClass::PTSymmetric => Ok(()),
        found => Err(Error::WrongClass {
            expected: "hermitian or pt_symmetric",
            found,
        }),
    }
}

/// Both roots of `βκ² + (α+δ)κ + γ = 0`. Independent of θ.
pub fn characteristic_roots(p: &ContactParams) -> Result<CharacteristicRoots> {
    require_solvable_class(p)?;
    let beta = p.beta();
    let gamma = p.gamma();
    let s = p.alpha_plus_delta();

    if beta == 0.0 {
        if s.norm() <= CLASS_TOL {
            return if gamma == 0.0 {
                Err(Error::NoQuantizationCondition)
            } else {
                Ok(CharacteristicRoots::Inconsistent)
            };
        }
        return Ok(CharacteristicRoots::Single(-gamma / s));
    }

    let disc = match p.class() {
        SymmetryClass::PTSymmetric => {
            let ai = p.alpha().im;
            4.0 * (1.0 - ai) * (1.0 + ai)
        }
        _ => 4.0 + p.alpha_minus_delta().norm_sqr(),
    };

    if disc < 0.0 {
        // conjugate pair: real parts coincide, no cancellation possible
        let sd = C64::new(0.0, (-disc).sqrt());
        return Ok(CharacteristicRoots::Pair {
            plus: (-s + sd) / (2.0 * beta),
            minus: (-s - sd) / (2.0 * beta),
        });
    }

    let sd = disc.sqrt();
    let sign = if s.re >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (s + sign * sd);
    if q.norm() == 0.0 {
        let zero = C64::new(0.0, 0.0);
        return Ok(CharacteristicRoots::Pair {
            plus: zero,
            minus: zero,
        });
    }
    let big = q / beta;
    let small = gamma / q;
    // q carries the branch −sign·√disc
    let (plus, minus) = if sign > 0.0 {
        (small, big)
    } else {
        (big, small)
    };
    Ok(CharacteristicRoots::Pair { plus, minus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Empty,
    OneReal,
    TwoReal,
    ConjugatePair,
    DegeneratePair,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundStateSet {
    roots: Vec<C64>,
    marginal: Vec<C64>,
    kind: SpectrumKind,
}

impl BoundStateSet {
    /// Admissible roots, `Re κ > 0`, ordered by decreasing real part and then
    /// decreasing imaginary part.
    pub fn roots(&self) -> &[C64] {
        &self.roots
    }

    /// Roots with `|Re κ| ≤ MARGINAL_TOL`; reported but not bound.
    pub fn marginal(&self) -> &[C64] {
        &self.marginal
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn energies(&self) -> Vec<C64> {
        self.roots.iter().map(|k| -0.5 * k * k).collect()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn bound_states(p: &ContactParams) -> Result<BoundStateSet> {
    let analytic = characteristic_roots(p)?.to_vec();
    let mut roots: Vec<C64> = analytic
        .iter()
        .copied()
        .filter(|k| k.re > MARGINAL_TOL)
        .collect();
    let marginal = analytic
        .iter()
        .copied()
        .filter(|k| k.re.abs() <= MARGINAL_TOL)
        .collect();
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));

    let kind = match roots.as_slice() {
        [] => SpectrumKind::Empty,
        [_] => SpectrumKind::OneReal,
        [a, b] if degenerate(*a, *b) => SpectrumKind::DegeneratePair,
        [a, b] if a.im.abs() > CLASS_TOL || b.im.abs() > CLASS_TOL => SpectrumKind::ConjugatePair,
        _ => SpectrumKind::TwoReal,
    };
    Ok(BoundStateSet {
        roots,
        marginal,
        kind,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtPhase {
    Unbroken,
    Broken,
    Critical,
}

/// Whether the bound-state spectrum of a PT-symmetric contact has left the
/// real axis: broken iff `|α_I| > 1` and `−α_R/β > 0`.
pub fn pt_phase(p: &ContactParams) -> Result<PtPhase> {
    if p.class() != SymmetryClass::PTSymmetric {
        return Err(Error::WrongClass {
            expected: "pt_symmetric",
            found: p.class(),
        });
    }
    if p.beta() == 0.0 {
        return Ok(PtPhase::Unbroken);
    }
    let ai = p.alpha().im.abs();
    if (ai - 1.0).abs() <= CLASS_TOL {
        return Ok(PtPhase::Critical);
    }
    if ai < 1.0 {
        return Ok(PtPhase::Unbroken);
    }
    let center = -p.alpha().re / p.beta();
    if center.abs() <= MARGINAL_TOL {
        // purely imaginary roots: marginal, neither bound nor clearly broken
        Ok(PtPhase::Critical)
    } else if center > 0.0 {
        Ok(PtPhase::Broken)
    } else {
        Ok(PtPhase::Unbroken)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PitchforkRow {
    pub alpha_i: f64,
    pub kappa_plus: C64,
    pub kappa_minus: C64,
    pub admissible: usize,
}

/// Both analytic roots along a line of PT-symmetric contacts with fixed
/// `α_R, β` and `γ` from `|α|² − βγ = 1`.
pub fn pitchfork_scan(alpha_r: f64, beta: f64, alpha_i_grid: &[f64]) -> Result<Vec<PitchforkRow>> {
    if beta == 0.0 {
        return Err(Error::Domain("pitchfork scan needs beta != 0".into()));
    }
    alpha_i_grid
        .iter()
        .map(|&alpha_i| {
            let p = ContactParams::pt_from_alpha(C64::new(alpha_r, alpha_i), beta)?;
            match characteristic_roots(&p)? {
                CharacteristicRoots::Pair { plus, minus } => Ok(PitchforkRow {
                    alpha_i,
                    kappa_plus: plus,
                    kappa_minus: minus,
                    admissible: [plus, minus].iter().filter(|k| k.re > MARGINAL_TOL).count(),
                }),
                _ => unreachable!("beta != 0 always yields a root pair"),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaDeltaSign {
    Plus,
    Minus,
}

/// A Hermitian contact described by `β` and its two real roots `κ₁ > κ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootParametrization {
    pub beta: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub sign: AlphaDeltaSign,
}

/// Rebuilds `(α, β, γ, δ)` from `(β, κ₁, κ₂)`: `α + δ = −β(κ₁+κ₂)`,
/// `γ = βκ₁κ₂`, `α − δ = ±√(β²(κ₁−κ₂)² − 4)`.
pub fn from_root_parametrization(r: &RootParametrization) -> Result<ContactParams> {
    let RootParametrization {
        beta,
        kappa1,
        kappa2,
        sign,
    } = *r;
    if beta == 0.0 || ![beta, kappa1, kappa2].iter().all(|v| v.is_finite()) {
        return Err(Error::Domain(
            "root parametrization needs finite beta != 0".into(),
        ));
    }
    if kappa1 <= kappa2 {
        return Err(Error::Domain(
            "root parametrization needs kappa1 > kappa2".into(),
        ));
    }
    let gap = (kappa1 - kappa2) * beta.abs();
    if gap < 2.0 - CLASS_TOL {
        return Err(Error::Domain(format!(
            "root-gap constraint violated: (kappa1 - kappa2)|beta| = {gap} < 2"
        )));
    }
    let sum = -beta * (kappa1 + kappa2);
    let diff_sq = (beta * (kappa1 - kappa2)).powi(2) - 4.0;
    let diff = match sign {
        AlphaDeltaSign::Plus => diff_sq.max(0.0).sqrt(),
        AlphaDeltaSign::Minus => -diff_sq.max(0.0).sqrt(),
    };
    Ok(ContactParams::new(
        C64::new(0.5 * (sum + diff), 0.0),
        beta,
        beta * kappa1 * kappa2,
        C64::new(0.5 * (sum - diff), 0.0),
        0.0,
        SymmetryClass::Hermitian,
    ))
}
