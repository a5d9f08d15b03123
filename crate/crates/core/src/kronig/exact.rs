//! Exact band roots by damped Newton and continuation across the zone.

use std::cmp::Ordering;
use std::f64::consts::PI;

use super::{zone_grid, BandPoint, BandStructure, LatticeParams, Regime};
use crate::boundstates::{characteristic_roots, MARGINAL_TOL};
use crate::contact::SymmetryClass;
use crate::error::{Error, Result};
use crate::numerics::{newton_complex, RootFindConfig, C64};
use crate::record::Record;

/// Largest accepted `|F(κ)|` for a band root.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Roots closer than this are the same root.
pub const MERGE_TOL: f64 = 1e-9;
/// `κ = 0` solves the condition for every `k`; anything this close to the
/// imaginary axis is that spurious root, not a band. Tracked roots at or
/// below it have left the bound spectrum.
pub const SPURIOUS_TOL: f64 = 1e-6;

struct Coefficients {
    beta: f64,
    gamma: f64,
    s: f64,
    ell: f64,
}

impl Coefficients {
    fn of(lat: &LatticeParams) -> Self {
        let p = lat.contact();
        Self {
            beta: p.beta(),
            gamma: p.gamma(),
            s: p.alpha_plus_delta().re,
            ell: lat.ell(),
        }
    }

    fn value(&self, kappa: C64, c: f64) -> C64 {
        let sq = self.beta * kappa * kappa + self.gamma;
        let p = sq + self.s * kappa;
        let q = sq - self.s * kappa;
        let e1 = (-kappa * self.ell).exp();
        p - 4.0 * c * kappa * e1 - q * e1 * e1
    }

    fn derivative(&self, kappa: C64, c: f64) -> C64 {
        let sq = self.beta * kappa * kappa + self.gamma;
        let q = sq - self.s * kappa;
        let e1 = (-kappa * self.ell).exp();
        let two_bk = 2.0 * self.beta * kappa;
        two_bk + self.s
            - 4.0 * c * e1 * (1.0 - kappa * self.ell)
            - ((two_bk - self.s) - 2.0 * self.ell * q) * e1 * e1
    }

    /// `F(κ)/κ`, written so it stays accurate through `κ = 0`. Band roots are
    /// tracked on this function so a band can run into the continuum edge
    /// without colliding with the trivial root.
    fn reduced(&self, kappa: C64, c: f64) -> C64 {
        let sq = self.beta * kappa * kappa + self.gamma;
        let e1 = (-kappa * self.ell).exp();
        let x = 2.0 * self.ell * kappa;
        sq * 2.0 * self.ell * one_minus_exp_over(x) + self.s * (1.0 + e1 * e1) - 4.0 * c * e1
    }

    fn reduced_derivative(&self, kappa: C64, c: f64) -> C64 {
        let sq = self.beta * kappa * kappa + self.gamma;
        let e1 = (-kappa * self.ell).exp();
        let x = 2.0 * self.ell * kappa;
        let two_l = 2.0 * self.ell;
        2.0 * self.beta * kappa * two_l * one_minus_exp_over(x)
            + sq * two_l * two_l * one_minus_exp_over_derivative(x)
            - self.s * two_l * e1 * e1
            + 4.0 * c * self.ell * e1
    }
}

const SERIES_RADIUS: f64 = 1e-2;

/// `(1 − e^{−x})/x`.
fn one_minus_exp_over(x: C64) -> C64 {
    if x.norm() < SERIES_RADIUS {
        // 1 − x/2 + x²/6 − x³/24 + x⁴/120 − x⁵/720
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for n in 1..6 {
            term = -term * x / (n + 1) as f64;
            sum += term;
        }
        sum
    } else {
        (1.0 - (-x).exp()) / x
    }
}

/// `d/dx` of [`one_minus_exp_over`].
fn one_minus_exp_over_derivative(x: C64) -> C64 {
    if x.norm() < SERIES_RADIUS {
        // Σ (−1)ⁿ n xⁿ⁻¹ / (n+1)!
        let mut sum = C64::new(0.0, 0.0);
        let mut fact = 1.0;
        let mut pow = C64::new(1.0, 0.0);
        for n in 1..7 {
            fact *= (n + 1) as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * n as f64 * pow / fact;
            pow *= x;
        }
        sum
    } else {
        ((-x).exp() * (1.0 + x) - 1.0) / (x * x)
    }
}

fn bloch_cos(lat: &LatticeParams, k: f64) -> f64 {
    (k * lat.ell() - lat.contact().theta()).cos()
}

/// Left side minus right side of the quantization condition at `(κ, k)`.
pub fn quantization_residual(lat: &LatticeParams, kappa: C64, k: f64) -> C64 {
    Coefficients::of(lat).value(kappa, bloch_cos(lat, k))
}

/// `∂/∂κ` of [`quantization_residual`].
pub fn quantization_derivative(lat: &LatticeParams, kappa: C64, k: f64) -> C64 {
    Coefficients::of(lat).derivative(kappa, bloch_cos(lat, k))
}

/// Admissible roots of the isolated contact: the `ℓ → ∞` limit of every band.
pub fn default_seeds(lat: &LatticeParams) -> Vec<C64> {
    match characteristic_roots(lat.contact()) {
        Ok(roots) => roots
            .to_vec()
            .into_iter()
            .filter(|k| k.re > MARGINAL_TOL)
            .collect(),
        Err(_) => Vec::new(),
    }
}

fn push_unique(out: &mut Vec<C64>, z: C64) {
    if out.iter().all(|w| (w - z).norm() > MERGE_TOL) {
        out.push(z);
    }
}

fn polish(coef: &Coefficients, c: f64, seed: C64) -> Option<C64> {
    let cfg = RootFindConfig::default();
    let root = newton_complex(|z| coef.value(z, c), |z| coef.derivative(z, c), seed, &cfg).ok()?;
    let z = root.root;
    (z.re > SPURIOUS_TOL && root.residual < RESIDUAL_TOL).then_some(z)
}

fn solve_roots(coef: &Coefficients, c: f64, seeds: &[C64]) -> Vec<C64> {
    let mut out = Vec::new();
    for &seed in seeds {
        if let Some(z) = polish(coef, c, seed) {
            push_unique(&mut out, z);
        }
    }
    out
}

/// Locally convergent roots near each seed, polished and deduplicated.
/// Seeds that fail to converge are dropped.
pub fn solve_band(lat: &LatticeParams, k: f64, seeds: &[C64]) -> Vec<BandPoint> {
    let coef = Coefficients::of(lat);
    let c = bloch_cos(lat, k);
    solve_roots(&coef, c, seeds)
        .into_iter()
        .map(|z| BandPoint::new(k, z, coef.value(z, c).norm()))
        .collect()
}

/// A grid point where band roots coalesce, or the midpoint of a grid step
/// across which a pair of bands leaves or joins the real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalPoint {
    pub k: f64,
    pub kappa: C64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeSummary {
    pub regime: Regime,
    /// Share of the zone where every band energy is real (trapezoid weights).
    pub real_fraction: f64,
    /// Smallest `|E₁ − E₂|` over the grid; NaN with a single band.
    pub min_gap: f64,
    pub k_at_min_gap: f64,
}

impl RegimeSummary {
    pub fn to_record(&self) -> Record {
        let mut rec = Record::new();
        rec.push("regime", self.regime)
            .push("real_fraction", self.real_fraction)
            .push("min_gap", self.min_gap)
            .push("k_at_min_gap", self.k_at_min_gap);
        rec
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandSweep {
    pub bands: Vec<BandStructure>,
    pub regime: Regime,
    pub exceptional_points: Vec<ExceptionalPoint>,
    pub summary: RegimeSummary,
}

impl BandSweep {
    pub fn max_residual(&self) -> f64 {
        self.bands
            .iter()
            .flat_map(|b| b.points.iter().map(|p| p.residual))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn wrap_into_zone(k: f64, ell: f64) -> f64 {
    let period = 2.0 * PI / ell;
    let edge = PI / ell;
    let mut w = (k + edge).rem_euclid(period) - edge;
    if w <= -edge {
        w += period;
    }
    w
}

fn nearest_index(grid: &[f64], k: f64) -> usize {
    grid.iter()
        .enumerate()
        .min_by(|a, b| (a.1 - k).abs().total_cmp(&(b.1 - k).abs()))
        .map(|(j, _)| j)
        .unwrap_or(0)
}

/// Order candidates by decreasing real then imaginary part so ties resolve
/// the same way every time.
fn sort_candidates(c: &mut [C64]) {
    c.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
}

fn track(coef: &Coefficients, c: f64, seed: C64) -> Option<C64> {
    let cfg = RootFindConfig::default();
    let root = newton_complex(
        |z| coef.reduced(z, c),
        |z| coef.reduced_derivative(z, c),
        seed,
        &cfg,
    )
    .ok()?;
    (root.residual < RESIDUAL_TOL).then_some(root.root)
}

/// Roots of `F(κ)/κ` near the previous step's roots. These may sit at
/// `Re κ ≤ 0` where a band has left the bound spectrum.
fn candidates(coef: &Coefficients, c: f64, prev: &[C64]) -> Vec<C64> {
    let mut found = Vec::new();
    for &z in prev {
        let eta = C64::new(0.0, 1e-4 * z.norm().max(1.0));
        for seed in [z, z + eta, z - eta] {
            if let Some(r) = track(coef, c, seed) {
                push_unique(&mut found, r);
            }
        }
    }

    if prev.len() == 2 && found.len() == 1 {
        // look for a second root with the first one divided out
        let r = found[0];
        let g = |z: C64| coef.reduced(z, c) / (z - r);
        let dg = |z: C64| (coef.reduced_derivative(z, c) - g(z)) / (z - r);
        let other = if (prev[0] - r).norm() < (prev[1] - r).norm() {
            prev[1]
        } else {
            prev[0]
        };
        for seed in [
            other,
            other + C64::new(0.0, 1e-3),
            other - C64::new(0.0, 1e-3),
        ] {
            if let Ok(root) = newton_complex(g, dg, seed, &RootFindConfig::default()) {
                let z = root.root;
                if coef.reduced(z, c).norm() < RESIDUAL_TOL {
                    push_unique(&mut found, z);
                }
            }
        }
    }

    let conj: Vec<C64> = found.iter().map(|z| z.conj()).collect();
    for z in conj {
        push_unique(&mut found, z);
    }
    sort_candidates(&mut found);
    found
}

/// Assigns candidates to bands by least total displacement. Returns `None`
/// when there are no candidates and `merged = true` when bands share a root.
fn assign(prev: &[C64], cand: &[C64]) -> Option<(Vec<C64>, bool)> {
    if cand.is_empty() {
        return None;
    }
    match prev.len() {
        1 => {
            let best = cand
                .iter()
                .min_by(|a, b| (*a - prev[0]).norm().total_cmp(&(*b - prev[0]).norm()))?;
            Some((vec![*best], false))
        }
        2 if cand.len() == 1 => Some((vec![cand[0], cand[0]], true)),
        2 => {
            let mut best = (f64::INFINITY, 0, 1);
            for i in 0..cand.len() {
                for j in 0..cand.len() {
                    if i == j {
                        continue;
                    }
                    let cost = (cand[i] - prev[0]).norm() + (cand[j] - prev[1]).norm();
                    if cost < best.0 - 1e-15 * (1.0 + best.0.abs()) {
                        best = (cost, i, j);
                    }
                }
            }
            Some((vec![cand[best.1], cand[best.2]], false))
        }
        _ => None,
    }
}

fn mean_kappa(seeds: &[C64]) -> f64 {
    seeds.iter().map(|z| z.re).sum::<f64>() / seeds.len() as f64
}

fn is_real_energy(e: C64, tol: f64) -> bool {
    e.im.abs() < tol
}

/// Tracks every isolated-contact root across a closed `n_k`-point zone grid.
///
/// The sweep starts where `cos(kℓ − θ) = 0`, where band roots sit closest to
/// the isolated ones, and continues outward in both directions, seeding each
/// step from the previous roots.
pub fn band_sweep(lat: &LatticeParams, n_k: usize) -> Result<BandSweep> {
    if n_k < 2 {
        return Err(Error::Domain(
            "band sweep needs at least two k points".into(),
        ));
    }
    let seeds = default_seeds(lat);
    if seeds.is_empty() {
        return Err(Error::NoBands);
    }
    let nb = seeds.len();
    let coef = Coefficients::of(lat);
    let grid = zone_grid(lat.ell(), n_k);
    let theta = lat.contact().theta();
    let start = nearest_index(
        &grid,
        wrap_into_zone((theta + 0.5 * PI) / lat.ell(), lat.ell()),
    );

    let mut roots: Vec<Option<Vec<C64>>> = vec![None; n_k];
    let mut merged = vec![false; n_k];

    let mut first = candidates(&coef, bloch_cos(lat, grid[start]), &seeds);
    if first.is_empty() {
        return Err(Error::NoRoot);
    }
    sort_candidates(&mut first);
    let (r0, m0) = assign(&seeds, &first).ok_or(Error::NoRoot)?;
    roots[start] = Some(r0.clone());
    merged[start] = m0;

    let forward: Vec<usize> = (start + 1..n_k).collect();
    let backward: Vec<usize> = (0..start).rev().collect();
    for path in [forward, backward] {
        let mut prev = r0.clone();
        for j in path {
            let cand = candidates(&coef, bloch_cos(lat, grid[j]), &prev);
            let Some((next, m)) = assign(&prev, &cand) else {
                break;
            };
            merged[j] = m;
            roots[j] = Some(next.clone());
            prev = next;
        }
    }

    // a failed step truncates the sweep in that direction
    let hi = (start..n_k)
        .take_while(|&j| roots[j].is_some())
        .last()
        .unwrap_or(start);
    let lo = (0..=start)
        .rev()
        .take_while(|&j| roots[j].is_some())
        .last()
        .unwrap_or(start);

    let mut bands: Vec<BandStructure> = (0..nb)
        .map(|b| BandStructure {
            band_index: b,
            points: Vec::with_capacity(hi - lo + 1),
            regime: Regime::Unclassified,
        })
        .collect();
    for j in lo..=hi {
        let row = roots[j].as_ref().expect("contiguous run");
        let c = bloch_cos(lat, grid[j]);
        for (b, &z) in row.iter().enumerate() {
            let residual = coef.value(z, c).norm();
            bands[b].points.push(if z.re > SPURIOUS_TOL {
                BandPoint::new(grid[j], z, residual)
            } else {
                BandPoint::unbound(grid[j], z, residual)
            });
        }
    }

    let kbar = mean_kappa(&seeds);
    let tol = 1e-9 * kbar * kbar;
    let mut exceptional_points = Vec::new();
    for j in lo..=hi {
        if merged[j] {
            exceptional_points.push(ExceptionalPoint {
                k: grid[j],
                kappa: roots[j].as_ref().unwrap()[0],
            });
        }
    }
    if nb == 2 {
        for j in lo..hi {
            if merged[j] || merged[j + 1] {
                continue;
            }
            let real_at = |i: usize| {
                roots[i]
                    .as_ref()
                    .unwrap()
                    .iter()
                    .all(|z| z.re <= SPURIOUS_TOL || is_real_energy(-0.5 * z * z, tol))
            };
            let (a, b) = (real_at(j), real_at(j + 1));
            if a != b {
                let real_side = if a { j } else { j + 1 };
                let r = roots[real_side].as_ref().unwrap();
                exceptional_points.push(ExceptionalPoint {
                    k: 0.5 * (grid[j] + grid[j + 1]),
                    kappa: 0.5 * (r[0] + r[1]),
                });
            }
        }
    }
    exceptional_points.sort_by(|a, b| a.k.total_cmp(&b.k));

    let summary = summarize(lat, &bands, kbar);
    for b in &mut bands {
        b.regime = summary.regime;
    }
    Ok(BandSweep {
        bands,
        regime: summary.regime,
        exceptional_points,
        summary,
    })
}

fn trapezoid_weights(ks: &[f64]) -> Vec<f64> {
    let n = ks.len();
    if n < 2 {
        return vec![1.0; n];
    }
    (0..n)
        .map(|j| {
            let left = if j > 0 { ks[j] - ks[j - 1] } else { 0.0 };
            let right = if j + 1 < n { ks[j + 1] - ks[j] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

/// What decides the regime label besides the energies themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum RegimeRule {
    Hermitian,
    /// `centre` is where `cos(kℓ − θ) = 1`; `alpha_i_vs_one` orders `|α_I|` against 1.
    Pt {
        centre: f64,
        alpha_i_vs_one: Ordering,
    },
    Other,
}

impl RegimeRule {
    fn of(lat: &LatticeParams) -> Self {
        let p = lat.contact();
        match p.class() {
            SymmetryClass::Hermitian => RegimeRule::Hermitian,
            SymmetryClass::PTSymmetric => RegimeRule::Pt {
                centre: wrap_into_zone(p.theta() / lat.ell(), lat.ell()),
                alpha_i_vs_one: p.alpha().im.abs().total_cmp(&1.0),
            },
            _ => RegimeRule::Other,
        }
    }
}

fn summarize(lat: &LatticeParams, bands: &[BandStructure], kbar: f64) -> RegimeSummary {
    summarize_bands(bands, 2.0 * lat.zone_edge(), kbar, RegimeRule::of(lat))
}

/// Reality pattern, gap and regime of bands that share one `k` grid spanning `span`.
pub(crate) fn summarize_bands(
    bands: &[BandStructure],
    span: f64,
    kbar: f64,
    rule: RegimeRule,
) -> RegimeSummary {
    let tol = 1e-9 * kbar * kbar;
    let ks: Vec<f64> = bands[0].points.iter().map(|p| p.k).collect();
    let real: Vec<bool> = (0..ks.len())
        .map(|j| {
            bands
                .iter()
                .map(|b| &b.points[j])
                .all(|p| !p.is_bound() || is_real_energy(p.energy, tol))
        })
        .collect();
    let weights = trapezoid_weights(&ks);
    let real_fraction = weights
        .iter()
        .zip(&real)
        .filter(|(_, &r)| r)
        .map(|(w, _)| w)
        .sum::<f64>()
        / span;

    let (min_gap, k_at_min_gap) = if bands.len() == 2 {
        (0..ks.len())
            .filter(|&j| bands[0].points[j].is_bound() && bands[1].points[j].is_bound())
            .map(|j| {
                (
                    (bands[0].points[j].energy - bands[1].points[j].energy).norm(),
                    ks[j],
                )
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap_or((f64::NAN, f64::NAN))
    } else {
        (f64::NAN, f64::NAN)
    };

    let regime = match rule {
        RegimeRule::Hermitian => {
            if min_gap < 1e-6 * kbar * kbar {
                Regime::HermitianDiracCone
            } else {
                Regime::HermitianGapped
            }
        }
        RegimeRule::Pt {
            centre,
            alpha_i_vs_one,
        } => pt_regime(&ks, &real, centre, alpha_i_vs_one),
        RegimeRule::Other => Regime::Unclassified,
    };
    RegimeSummary {
        regime,
        real_fraction,
        min_gap,
        k_at_min_gap,
    }
}

fn pt_regime(ks: &[f64], real: &[bool], centre: f64, alpha_i_vs_one: Ordering) -> Regime {
    let n_real = real.iter().filter(|&&r| r).count();
    if n_real == real.len() {
        return Regime::RealBands;
    }
    if n_real <= 1 {
        return Regime::ConjugatePairBands;
    }
    if !real[nearest_index(ks, centre)] {
        return Regime::Unclassified;
    }
    match alpha_i_vs_one {
        Ordering::Less => Regime::PartialOnset,
        Ordering::Greater => Regime::PartialCompletion,
        Ordering::Equal => Regime::Unclassified,
    }
}

/// Regime of an already computed set of bands sharing one `k` grid.
pub fn classify_regime(lat: &LatticeParams, bands: &[BandStructure]) -> Result<Regime> {
    if bands.is_empty() {
        return Err(Error::NoBands);
    }
    let n = bands[0].points.len();
    if bands.iter().any(|b| b.points.len() != n) || n == 0 {
        return Err(Error::Domain("bands must share a non-empty k grid".into()));
    }
    let seeds = default_seeds(lat);
    let kbar = if seeds.is_empty() {
        bands.iter().map(|b| b.points[n / 2].kappa.re).sum::<f64>() / bands.len() as f64
    } else {
        mean_kappa(&seeds)
    };
    Ok(summarize(lat, bands, kbar).regime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundstates::{from_root_parametrization, AlphaDeltaSign, RootParametrization};
    use crate::contact::{from_delta_strength, ContactParams};

    fn well_separated(ell: f64) -> LatticeParams {
        let p = from_root_parametrization(&RootParametrization {
            beta: 2.0,
            kappa1: 3.0,
            kappa2: 1.0,
            sign: AlphaDeltaSign::Plus,
        })
        .unwrap();
        LatticeParams::new(p, ell).unwrap()
    }

    fn pt(alpha_r: f64, alpha_i: f64, beta: f64, ell: f64) -> LatticeParams {
        LatticeParams::new(
            ContactParams::pt_from_alpha(C64::new(alpha_r, alpha_i), beta).unwrap(),
            ell,
        )
        .unwrap()
    }

    #[test]
    fn long_period_residual_vanishes_at_isolated_root() {
        let p = ContactParams::hermitian(-2.0, 1.0, 3.0, -2.0).unwrap();
        let lat = LatticeParams::new(p, 50.0).unwrap();
        let r = quantization_residual(&lat, C64::new(3.0, 0.0), 0.37);
        assert!(r.norm() < 1e-20);
    }

    #[test]
    fn quarter_zone_drops_cosine_term() {
        let lat = well_separated(2.0);
        let k = PI / (2.0 * lat.ell());
        let kappa = C64::new(1.3, 0.2);
        let (beta, s, gamma) = (2.0, -8.0, 6.0);
        let p = beta * kappa * kappa + s * kappa + gamma;
        let q = beta * kappa * kappa - s * kappa + gamma;
        let expected = p - q * (-2.0 * kappa * lat.ell()).exp();
        assert!((quantization_residual(&lat, kappa, k) - expected).norm() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let lat = pt(-1.0, 1.3, 1.0, 3.0);
        let z = C64::new(0.9, 0.4);
        let h = 1e-6;
        let fd = (quantization_residual(&lat, z + h, 0.2)
            - quantization_residual(&lat, z - h, 0.2))
            / (2.0 * h);
        assert!((fd - quantization_derivative(&lat, z, 0.2)).norm() < 1e-7);
    }

    #[test]
    fn free_particle_has_no_negative_energy_band() {
        let lat = LatticeParams::new(from_delta_strength(0.0), 2.0).unwrap();
        assert!(default_seeds(&lat).is_empty());
        let seeds = [C64::new(0.5, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.3)];
        for k in [0.0, 0.7, PI / 2.0] {
            assert!(solve_band(&lat, k, &seeds).is_empty());
        }
        assert!(matches!(band_sweep(&lat, 11), Err(Error::NoBands)));
    }

    #[test]
    fn pt_quarter_zone_roots_are_a_conjugate_pair() {
        let lat = pt(-1.0, 1.2, 1.0, 4.0);
        let k = PI / (2.0 * lat.ell());
        let pts = solve_band(&lat, k, &[C64::new(1.0, 0.5), C64::new(1.0, -0.5)]);
        assert_eq!(pts.len(), 2);
        assert!((pts[0].kappa - pts[1].kappa.conj()).norm() < 1e-10);
        assert!(pts[0].kappa.im.abs() > 1e-3);
        assert!(pts.iter().all(|p| p.residual < RESIDUAL_TOL));
    }

    #[test]
    fn roots_are_even_in_k_without_phase() {
        let lat = well_separated(3.0);
        let seeds = default_seeds(&lat);
        let a = solve_band(&lat, 0.4, &seeds);
        let b = solve_band(&lat, -0.4, &seeds);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.kappa, y.kappa);
        }
    }

    #[test]
    fn well_separated_sweep_is_gapped() {
        let lat = well_separated(5.0);
        let sweep = band_sweep(&lat, 51).unwrap();
        assert_eq!(sweep.regime, Regime::HermitianGapped);
        assert_eq!(sweep.bands.len(), 2);
        assert!(sweep.bands.iter().all(|b| b.points.len() == 51));
        assert!(sweep.max_residual() < RESIDUAL_TOL);
        assert!(sweep.exceptional_points.is_empty());
        assert!((sweep.summary.real_fraction - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pt_sweep_is_conjugation_closed() {
        let lat = pt(-1.0, 1.2, 1.0, 4.0);
        let sweep = band_sweep(&lat, 41).unwrap();
        let (a, b) = (&sweep.bands[0].points, &sweep.bands[1].points);
        for (x, y) in a.iter().zip(b) {
            let closed = (x.kappa - y.kappa.conj()).norm() < 1e-10
                || (x.kappa.im.abs() < 1e-10 && y.kappa.im.abs() < 1e-10);
            assert!(closed, "k = {}: {} vs {}", x.k, x.kappa, y.kappa);
        }
    }

    #[test]
    fn reduced_matches_quotient() {
        let lat = LatticeParams::new(
            ContactParams::pt_from_alpha(C64::new(-1.0, 0.8), 1.0).unwrap(),
            4.0,
        )
        .unwrap();
        let coef = Coefficients::of(&lat);
        for z in [
            C64::new(0.7, 0.3),
            C64::new(1e-3, 2e-3),
            C64::new(-0.2, 0.0),
            C64::new(3e-4, 0.0),
        ] {
            for c in [-1.0, 0.3, 1.0] {
                let want = coef.value(z, c) / z;
                assert!(
                    (coef.reduced(z, c) - want).norm() < 1e-9 * (1.0 + want.norm()),
                    "{z}"
                );
                let h = 1e-6;
                let fd = (coef.reduced(z + h, c) - coef.reduced(z - h, c)) / (2.0 * h);
                assert!(
                    (coef.reduced_derivative(z, c) - fd).norm() < 1e-6 * (1.0 + fd.norm()),
                    "{z}"
                );
            }
        }
    }

    #[test]
    fn band_entering_continuum_is_flagged_not_lost() {
        // κ = 1.6, 0.4; the shallow band reaches E = 0 inside the zone
        let lat = LatticeParams::new(
            ContactParams::pt_from_alpha(C64::new(-1.0, 0.8), 1.0).unwrap(),
            4.0,
        )
        .unwrap();
        let sweep = band_sweep(&lat, 201).unwrap();
        assert_eq!(sweep.bands.len(), 2);
        assert!(sweep.bands.iter().all(|b| b.points.len() == 201));
        assert!(sweep.bands[0]
            .points
            .iter()
            .all(|p| p.is_bound() && p.kappa.re > 1.5));
        let shallow = &sweep.bands[1].points;
        assert!(shallow.iter().any(|p| !p.is_bound()));
        assert!(shallow
            .iter()
            .all(|p| p.kappa.re < 1.0 && p.residual < 1e-9));
        assert!(sweep.summary.min_gap > 1.0);
        assert_eq!(sweep.regime, Regime::RealBands);
    }

    #[test]
    fn wraps_into_zone() {
        let ell = 2.0;
        assert!((wrap_into_zone(PI / ell + 0.1, ell) - (-PI / ell + 0.1)).abs() < 1e-12);
        assert_eq!(wrap_into_zone(PI / ell, ell), PI / ell);
        assert!((wrap_into_zone(0.3, ell) - 0.3).abs() < 1e-15);
    }
}
