//! Small numerical kernels shared by the solvers.
//!
//! Everything here is double precision and allocation free: a cancellation-safe
//! quadratic solver, damped complex Newton with a secant fallback, bisection on a
//! bracket, 2×2 complex linear algebra and a three-parameter Lorentzian fit.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A 2×2 complex matrix in row-major order.
pub type Mat2 = [[C64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFindConfig {
    pub max_iter: usize,
    pub tol_residual: f64,
    /// Largest allowed Newton step, as a multiple of the seed magnitude.
    pub step_clamp: f64,
}

impl Default for RootFindConfig {
    fn default() -> Self {
        Self {
            max_iter: 60,
            tol_residual: 1e-12,
            step_clamp: 0.5,
        }
    }
}

impl RootFindConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter < 1 {
            return Err(Error::Domain("max_iter must be at least 1".into()));
        }
        if !(self.tol_residual > 0.0) {
            return Err(Error::Domain("tol_residual must be positive".into()));
        }
        if !(self.step_clamp > 0.0) {
            return Err(Error::Domain("step_clamp must be positive".into()));
        }
        Ok(())
    }
}

/// Roots of `a2 z² + a1 z + a0`. `second` is `None` when the polynomial is linear.
///
/// For a true quadratic `first` is the root of larger magnitude and `second`
/// comes from the root product, so neither suffers from cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticRoots {
    pub first: C64,
    pub second: Option<C64>,
}

pub fn solve_quadratic_stable(a2: C64, a1: C64, a0: C64) -> Result<QuadraticRoots> {
    if a2 == C64::new(0.0, 0.0) {
        if a1 == C64::new(0.0, 0.0) {
            return Err(Error::Domain(
                "quadratic and linear coefficients both vanish".into(),
            ));
        }
        return Ok(QuadraticRoots {
            first: -a0 / a1,
            second: None,
        });
    }
    let sqrt_disc = (a1 * a1 - 4.0 * a2 * a0).sqrt();
    let (first, second) = stable_pair(a2, a1, a0, sqrt_disc);
    Ok(QuadraticRoots {
        first,
        second: Some(second),
    })
}

/// Quadratic roots given a precomputed square root of the discriminant.
///
/// Callers that know the discriminant in closed form (e.g. through a
/// determinant identity) use this to keep its sign exact.
pub fn stable_pair(a2: C64, a1: C64, a0: C64, sqrt_disc: C64) -> (C64, C64) {
    let sign = if (a1.conj() * sqrt_disc).re >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let q = -0.5 * (a1 + sign * sqrt_disc);
    if q == C64::new(0.0, 0.0) {
        // a1 = 0 and a zero discriminant force a0 = 0: double root at the origin.
        return (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    }
    (q / a2, a0 / q)
}

/// Eigenvalues of a 2×2 complex matrix from its trace and determinant.
pub fn eig_2x2(m: &Mat2) -> (C64, C64) {
    let tr = m[0][0] + m[1][1];
    let det = det_2x2(m);
    let sqrt_disc = (tr * tr - 4.0 * det).sqrt();
    stable_pair(C64::new(1.0, 0.0), -tr, det, sqrt_disc)
}

pub fn det_2x2(m: &Mat2) -> C64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Solves `m x = rhs` by Cramer's rule. Returns `None` when `m` is singular
/// relative to the size of its entries.
pub fn solve_2x2(m: &Mat2, rhs: [C64; 2]) -> Option<[C64; 2]> {
    let det = det_2x2(m);
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0_f64, f64::max);
    if !det.is_finite() || det.norm() <= 1e-14 * scale * scale {
        return None;
    }
    let x0 = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
    let x1 = (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det;
    Some([x0, x1])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonRoot {
    pub root: C64,
    pub residual: f64,
    pub iterations: usize,
}

/// Damped Newton iteration for an analytic function.
///
/// Steps are clamped to `step_clamp · max(|seed|, 1e-3)`. When the derivative
/// vanishes or is not finite the step falls back to a secant through the two
/// most recent iterates. Once `|f| < tol_residual` the iteration keeps polishing
/// while the residual still decreases, which matters near double roots where
/// convergence is only linear.
pub fn newton_complex<F, D>(f: F, df: D, seed: C64, cfg: &RootFindConfig) -> Result<NewtonRoot>
where
    F: Fn(C64) -> C64,
    D: Fn(C64) -> C64,
{
    cfg.validate()?;
    let clamp = cfg.step_clamp * seed.norm().max(1e-3);
    let mut z = seed;
    let mut fz = f(z);
    if !fz.is_finite() {
        return Err(Error::NoRoot);
    }
    let mut prev: Option<(C64, C64)> = None;
    let mut converged = fz.norm() < cfg.tol_residual;

    for it in 0..cfg.max_iter {
        if fz.norm() == 0.0 {
            return Ok(NewtonRoot {
                root: z,
                residual: 0.0,
                iterations: it,
            });
        }
        let dfz = df(z);
        let mut step = if dfz.is_finite() && dfz.norm() > 1e-300 {
            fz / dfz
        } else {
            match prev {
                Some((zp, fp)) if (fz - fp).norm() > 0.0 => fz * (z - zp) / (fz - fp),
                _ => C64::new(clamp * 1e-3, 0.0),
            }
        };
        if !step.is_finite() {
            break;
        }
        if step.norm() > clamp {
            step *= clamp / step.norm();
        }
        let z_next = z - step;
        let f_next = f(z_next);
        if !f_next.is_finite() {
            break;
        }
        if converged && f_next.norm() >= fz.norm() {
            // polishing no longer helps
            break;
        }
        prev = Some((z, fz));
        z = z_next;
        fz = f_next;
        if fz.norm() < cfg.tol_residual {
            converged = true;
        }
        if converged && step.norm() <= 4.0 * f64::EPSILON * z.norm() {
            return Ok(NewtonRoot {
                root: z,
                residual: fz.norm(),
                iterations: it + 1,
            });
        }
    }
    if converged {
        Ok(NewtonRoot {
            root: z,
            residual: fz.norm(),
            iterations: cfg.max_iter,
        })
    } else {
        Err(Error::NoRoot)
    }
}

/// Bisection for a sign change of `f` on `[a, b]`, down to an interval of width `tol`.
pub fn bisect<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::Domain(format!("no sign change on [{a}, {b}]")));
    }
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianFit {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
    pub rss: f64,
}

impl LorentzianFit {
    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.width;
        self.amplitude / (1.0 + u * u)
    }
}

/// Least-squares fit of `A / (1 + ((x - c)/w)²)` by Levenberg-Marquardt.
///
/// `init` is `(center, width, amplitude)`. Returns `None` if the data are too
/// short or the iteration produces non-finite parameters.
pub fn fit_lorentzian(xs: &[f64], ys: &[f64], init: (f64, f64, f64)) -> Option<LorentzianFit> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return None;
    }
    let rss_of = |p: [f64; 3]| -> f64 {
        xs.iter()
            .zip(ys)
            .map(|(&x, &y)| {
                let u = (x - p[0]) / p[1];
                let r = y - p[2] / (1.0 + u * u);
                r * r
            })
            .sum()
    };
    let mut p = [init.0, init.1.abs().max(1e-12), init.2];
    let mut rss = rss_of(p);
    let mut lambda = 1e-3;

    for _ in 0..200 {
        let mut jtj = [[0.0_f64; 3]; 3];
        let mut jtr = [0.0_f64; 3];
        for (&x, &y) in xs.iter().zip(ys) {
            let u = (x - p[0]) / p[1];
            let d = 1.0 + u * u;
            let model = p[2] / d;
            let g = [
                p[2] * 2.0 * u / (p[1] * d * d),
                p[2] * 2.0 * u * u / (p[1] * d * d),
                1.0 / d,
            ];
            let r = y - model;
            for i in 0..3 {
                jtr[i] += g[i] * r;
                for j in 0..3 {
                    jtj[i][j] += g[i] * g[j];
                }
            }
        }
        let mut improved = false;
        for _ in 0..20 {
            let mut a = jtj;
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += lambda * jtj[i][i].max(1e-300);
            }
            let Some(delta) = solve_3x3(a, jtr) else {
                lambda *= 10.0;
                continue;
            };
            let trial = [p[0] + delta[0], (p[1] + delta[1]).abs(), p[2] + delta[2]];
            let trial_rss = rss_of(trial);
            if trial_rss.is_finite() && trial_rss <= rss {
                let rel = (rss - trial_rss) / rss.max(1e-300);
                p = trial;
                rss = trial_rss;
                lambda = (lambda * 0.3).max(1e-12);
                improved = rel > 1e-15;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    if p.iter().all(|v| v.is_finite()) {
        Some(LorentzianFit {
            center: p[0],
            width: p[1],
            amplitude: p[2],
            rss,
        })
    } else {
        None
    }
}

#[allow(clippy::needless_range_loop)]
fn solve_3x3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn factorable_quadratic() {
        let r = solve_quadratic_stable(c(1.0), c(-4.0), c(3.0)).unwrap();
        assert_eq!(r.first, c(3.0));
        assert_eq!(r.second, Some(c(1.0)));
    }

    #[test]
    fn perfect_square() {
        let r = solve_quadratic_stable(c(1.0), c(-2.0), c(1.0)).unwrap();
        assert_eq!(r.first, c(1.0));
        assert_eq!(r.second, Some(c(1.0)));
    }

    #[test]
    fn tiny_leading_coefficient_keeps_small_root() {
        let r = solve_quadratic_stable(c(1e-30), c(1.0), c(1.0)).unwrap();
        // Series oracle for the small root: -(c/b) (1 + ac/b² + 2(ac/b²)² + ...)
        let eps = 1e-30;
        let small = -(1.0 + eps + 2.0 * eps * eps);
        let big = -1.0 / eps - small;
        assert!((r.second.unwrap().re - small).abs() <= 1e-15);
        assert!((r.first.re - big).abs() <= 1e-15 * big.abs());
        // the textbook formula loses the small root entirely
        let naive = (-1.0 + (1.0 - 4.0 * eps).sqrt()) / (2.0 * eps);
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn linear_and_degenerate_cases() {
        let r = solve_quadratic_stable(c(0.0), c(2.0), c(-4.0)).unwrap();
        assert_eq!(r.first, c(2.0));
        assert_eq!(r.second, None);
        assert!(solve_quadratic_stable(c(0.0), c(0.0), c(1.0)).is_err());
    }

    #[test]
    fn newton_square_root() {
        let cfg = RootFindConfig::default();
        let r = newton_complex(|z| z * z - 1.0, |z| 2.0 * z, C64::new(0.5, 0.1), &cfg).unwrap();
        assert!((r.root - 1.0).norm() < 1e-12);
    }

    #[test]
    fn newton_transcendental() {
        let cfg = RootFindConfig {
            max_iter: 200,
            ..Default::default()
        };
        // e^z + 1 = 0 has roots at odd multiples of iπ; a purely real seed
        // cannot leave the real axis, so nudge it.
        let r = newton_complex(|z| z.exp() + 1.0, |z| z.exp(), C64::new(3.0, 0.5), &cfg).unwrap();
        let target = C64::new(0.0, std::f64::consts::PI);
        assert!((r.root - target).norm() < 1e-10, "{:?}", r);
    }

    #[test]
    fn newton_real_seed_stays_real() {
        let cfg = RootFindConfig::default();
        let res = newton_complex(|z| z.exp() + 1.0, |z| z.exp(), c(3.0), &cfg);
        assert!(res.is_err());
    }

    #[test]
    fn newton_is_deterministic() {
        let cfg = RootFindConfig::default();
        let f = |z: C64| z * z * z - 2.0 * z + 2.0;
        let df = |z: C64| 3.0 * z * z - 2.0;
        let a = newton_complex(f, df, C64::new(-1.0, 0.3), &cfg).unwrap();
        let b = newton_complex(f, df, C64::new(-1.0, 0.3), &cfg).unwrap();
        assert_eq!(a.root.re.to_bits(), b.root.re.to_bits());
        assert_eq!(a.root.im.to_bits(), b.root.im.to_bits());
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn newton_secant_fallback_on_flat_derivative() {
        let cfg = RootFindConfig::default();
        // derivative reported as zero everywhere
        let r = newton_complex(|z| z - 0.7, |_| C64::new(0.0, 0.0), c(1.0), &cfg).unwrap();
        assert!((r.root - 0.7).norm() < 1e-12);
    }

    #[test]
    fn newton_reports_missing_root() {
        let cfg = RootFindConfig::default();
        assert!(newton_complex(|z| z * z + 1.0, |z| 2.0 * z, c(2.0), &cfg).is_err());
    }

    #[test]
    fn eig_identity_and_pauli() {
        let one = c(1.0);
        let zero = c(0.0);
        let (a, b) = eig_2x2(&[[one, zero], [zero, one]]);
        assert_eq!((a, b), (one, one));
        let (a, b) = eig_2x2(&[[zero, one], [one, zero]]);
        let mut v = [a.re, b.re];
        v.sort_by(f64::total_cmp);
        assert_eq!(v, [-1.0, 1.0]);
    }

    #[test]
    fn linear_solver_and_singularity() {
        let m = [[c(2.0), c(1.0)], [c(1.0), c(3.0)]];
        let x = solve_2x2(&m, [c(3.0), c(5.0)]).unwrap();
        assert!((x[0] - 0.8).norm() < 1e-15 && (x[1] - 1.4).norm() < 1e-15);
        let s = [[c(1.0), c(2.0)], [c(2.0), c(4.0)]];
        assert!(solve_2x2(&s, [c(1.0), c(1.0)]).is_none());
    }

    #[test]
    fn bisection_finds_sign_change() {
        let r = bisect(|x| x * x - 2.0, 0.0, 3.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        assert!(bisect(|x| x * x + 1.0, 0.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn lorentzian_recovers_exact_profile() {
        let truth = LorentzianFit {
            center: 2.0,
            width: 0.3,
            amplitude: 5.0,
            rss: 0.0,
        };
        let xs: Vec<f64> = (0..200).map(|i| i as f64 * 0.02).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| truth.eval(x)).collect();
        let fit = fit_lorentzian(&xs, &ys, (1.9, 0.5, 4.0)).unwrap();
        assert!((fit.center - 2.0).abs() < 1e-8);
        assert!((fit.width - 0.3).abs() < 1e-8);
        assert!((fit.amplitude - 5.0).abs() < 1e-8);
    }
}
