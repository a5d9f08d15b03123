//! Python bindings. Built as the `contactband` extension module.

use contactband::boundstates::{bound_states, pitchfork_scan};
use contactband::contact::{
    classify_symmetry as classify, factor_coefficients, from_delta_strength, ContactParams,
};
use contactband::error::Error;
use contactband::kronig::{
    band_sweep as sweep, dirac_cone_bands, pt_narrowband as pt_nb, DiracConeParams, LatticeParams,
};
use contactband::scattering::{s_eigenvalues, scatter};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Invalid(_) | Error::WrongClass { .. } | Error::Domain(_) | Error::Parse(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A point contact in the factored form `e^{iθ}(α, β, γ, δ)`.
#[pyclass(name = "Contact", module = "contactband", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Contact {
    inner: ContactParams,
}

#[pymethods]
impl Contact {
    #[staticmethod]
    #[pyo3(signature = (alpha, beta, gamma, delta, theta = 0.0))]
    fn hermitian(alpha: f64, beta: f64, gamma: f64, delta: f64, theta: f64) -> PyResult<Self> {
        let inner = ContactParams::hermitian(alpha, beta, gamma, delta).map_err(to_py)?;
        Ok(Self {
            inner: inner.with_theta(theta),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (alpha, beta, gamma, theta = 0.0))]
    fn pt_symmetric(alpha: Complex64, beta: f64, gamma: f64, theta: f64) -> PyResult<Self> {
        let inner = ContactParams::pt_symmetric(alpha, beta, gamma).map_err(to_py)?;
        Ok(Self {
            inner: inner.with_theta(theta),
        })
    }

    /// PT contact with `γ` fixed by the unit determinant.
    #[staticmethod]
    #[pyo3(signature = (alpha, beta, theta = 0.0))]
    fn pt_from_alpha(alpha: Complex64, beta: f64, theta: f64) -> PyResult<Self> {
        let inner = ContactParams::pt_from_alpha(alpha, beta).map_err(to_py)?;
        Ok(Self {
            inner: inner.with_theta(theta),
        })
    }

    #[staticmethod]
    fn delta_potential(strength: f64) -> Self {
        Self {
            inner: from_delta_strength(strength),
        }
    }

    /// Factors raw boundary coefficients `(a, b, c, d)` with `ad − bc` of unit modulus.
    #[staticmethod]
    fn from_coefficients(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PyResult<Self> {
        Ok(Self {
            inner: factor_coefficients(a, b, c, d).map_err(to_py)?,
        })
    }

    #[getter]
    fn alpha(&self) -> Complex64 {
        self.inner.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma()
    }

    #[getter]
    fn delta(&self) -> Complex64 {
        self.inner.delta()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta()
    }

    #[getter]
    fn symmetry_class(&self) -> &'static str {
        self.inner.class().as_str()
    }

    /// Admissible roots as `(kappa, energy)` pairs, deepest first.
    fn bound_states(&self) -> PyResult<Vec<(Complex64, Complex64)>> {
        let set = bound_states(&self.inner).map_err(to_py)?;
        Ok(set.roots().iter().copied().zip(set.energies()).collect())
    }

    /// Amplitudes `t, r` (incident from the left) and `t_prime, r_prime` (from the right).
    fn scatter<'py>(&self, py: Python<'py>, k: f64) -> PyResult<Bound<'py, PyDict>> {
        let s = scatter(&self.inner, k).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("t", s.t)?;
        d.set_item("r", s.r)?;
        d.set_item("t_prime", s.t_prime)?;
        d.set_item("r_prime", s.r_prime)?;
        Ok(d)
    }

    /// `(lambda_plus, lambda_minus, broken)` for the S-matrix at `k`.
    fn s_eigenvalues(&self, k: f64) -> PyResult<(Complex64, Complex64, bool)> {
        let e = s_eigenvalues(&self.inner, k).map_err(to_py)?;
        Ok((e.lambda_plus, e.lambda_minus, e.broken()))
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "Contact(class={}, alpha={}, beta={}, gamma={}, delta={}, theta={})",
            p.class(),
            p.alpha(),
            p.beta(),
            p.gamma(),
            p.delta(),
            p.theta()
        )
    }
}

#[pyfunction]
fn classify_symmetry(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> &'static str {
    classify(a, b, c, d).as_str()
}

/// Rows `(alpha_i, kappa_plus, kappa_minus, admissible_count)` of PT contacts along `alpha_i`.
#[pyfunction]
fn pitchfork(
    alpha_r: f64,
    beta: f64,
    alpha_i: Vec<f64>,
) -> PyResult<Vec<(f64, Complex64, Complex64, usize)>> {
    let rows = pitchfork_scan(alpha_r, beta, &alpha_i).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.alpha_i, r.kappa_plus, r.kappa_minus, r.admissible))
        .collect())
}

/// Exact bands over the zone. Returns a dict with `regime`, `real_fraction`,
/// `exceptional_k` and `bands`, a list of `(k, kappa, energy)` lists; energy
/// is NaN where a band has crossed into the continuum.
#[pyfunction]
#[pyo3(signature = (contact, ell, nk = 201))]
fn band_sweep<'py>(
    py: Python<'py>,
    contact: &Contact,
    ell: f64,
    nk: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let lat = LatticeParams::new(contact.inner, ell).map_err(to_py)?;
    let s = sweep(&lat, nk).map_err(to_py)?;
    let bands: Vec<Vec<(f64, Complex64, Complex64)>> = s
        .bands
        .iter()
        .map(|b| b.points.iter().map(|p| (p.k, p.kappa, p.energy)).collect())
        .collect();
    let d = PyDict::new(py);
    d.set_item("regime", s.regime.as_str())?;
    d.set_item("real_fraction", s.summary.real_fraction)?;
    d.set_item("min_gap", s.summary.min_gap)?;
    d.set_item(
        "exceptional_k",
        s.exceptional_points.iter().map(|e| e.k).collect::<Vec<_>>(),
    )?;
    d.set_item("max_residual", s.max_residual())?;
    d.set_item("bands", bands)?;
    Ok(d)
}

/// Narrow-band PT energies `(e_plus, e_minus)` at `k`.
#[pyfunction]
fn pt_narrowband(contact: &Contact, ell: f64, k: f64) -> PyResult<(Complex64, Complex64)> {
    let lat = LatticeParams::new(contact.inner, ell).map_err(to_py)?;
    let p = pt_nb(&lat, k).map_err(to_py)?;
    Ok((p.e_plus, p.e_minus))
}

/// Two-band Dirac dispersion `(e_plus, e_minus, gap)` at `k`; `e_plus` is the lower band.
#[pyfunction]
fn dirac_cone(
    kappa_bar: f64,
    varepsilon: f64,
    f: f64,
    ell: f64,
    k: f64,
) -> PyResult<(f64, f64, f64)> {
    let d = DiracConeParams::from_scaled(kappa_bar, varepsilon, f, ell).map_err(to_py)?;
    let p = dirac_cone_bands(&d, ell, k).map_err(to_py)?;
    Ok((p.e_plus, p.e_minus, p.gap))
}

#[pymodule]
#[pyo3(name = "contactband")]
pub fn contactband_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Contact>()?;
    m.add_function(wrap_pyfunction!(classify_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(pitchfork, m)?)?;
    m.add_function(wrap_pyfunction!(band_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(pt_narrowband, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_cone, m)?)?;
    Ok(())
}
