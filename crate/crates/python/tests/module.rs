use contactband_py::contactband_module;
use pyo3::prelude::*;

fn with_module(code: &std::ffi::CStr) {
    pyo3::append_to_inittab!(contactband_module);
    Python::initialize();
    Python::attach(|py| {
        py.run(code, None, None).map_err(|e| e.display(py)).unwrap();
    });
}

#[test]
fn module_round_trip() {
    with_module(
        cr#"
import contactband as cb
h = cb.Contact.hermitian(-2.0, 1.0, 3.0, -2.0)
ks = [k for k, _ in h.bound_states()]
assert abs(ks[0] - 3) < 1e-12 and abs(ks[1] - 1) < 1e-12, ks
assert h.symmetry_class == "hermitian"
try:
    cb.Contact.hermitian(2.0, 1.0, 5.0, 2.0)
    raise AssertionError("accepted")
except ValueError:
    pass
lp, lm, broken = cb.Contact.pt_symmetric(1j, 1.0, 0.0).s_eigenvalues(1.0)
assert broken and abs(abs(lp) * abs(lm) - 1) < 1e-12
rows = cb.pitchfork(-1.0, 1.0, [0.5, 1.0, 1.5])
assert [r[3] for r in rows] == [2, 2, 2]
s = cb.band_sweep(cb.Contact.pt_from_alpha(complex(-1, 0.5), 1.0), 12.0, nk=21)
assert s["regime"] == "real_bands" and len(s["bands"]) == 2
"#,
    );
}
