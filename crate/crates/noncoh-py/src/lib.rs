//! Python bindings for the noncoh library.
//!
//! Exposes the state types, the non-orthogonal basis, the coherence
//! measures and extremal states, the leaky double-slit duality, basis-family
//! bound verification, and the thermal energy-cost law. Complex amplitudes
//! cross the boundary as Python `complex` values.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use noncoh::channels;
use noncoh::comeasure::{self, CoherenceConvention};
use noncoh::duality;
use noncoh::multibasis::{self, BlochFrame};
use noncoh::nobasis;
use noncoh::qstate;
use noncoh::thermo;

type SweepTuple = (f64, f64, f64, f64, u64, u64);
type Bloch3 = (f64, f64, f64);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn convention_from(name: &str) -> PyResult<CoherenceConvention> {
    match name {
        "euclidean" => Ok(CoherenceConvention::Euclidean),
        "half" => Ok(CoherenceConvention::Half),
        other => Err(value_err(format!(
            "unknown convention '{other}': want 'euclidean' or 'half'"
        ))),
    }
}

/// A normalized pure qubit state.
#[pyclass(frozen, skip_from_py_object, name = "PureQubit")]
#[derive(Clone)]
struct PyPureQubit {
    inner: qstate::PureQubit,
}

#[pymethods]
impl PyPureQubit {
    /// Builds a state from two complex amplitudes, rescaling to unit norm.
    #[new]
    fn new(amp0: Complex64, amp1: Complex64) -> PyResult<Self> {
        qstate::PureQubit::normalized(amp0, amp1)
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn zero() -> Self {
        Self {
            inner: qstate::PureQubit::zero(),
        }
    }

    #[staticmethod]
    fn one() -> Self {
        Self {
            inner: qstate::PureQubit::one(),
        }
    }

    #[staticmethod]
    fn plus() -> Self {
        Self {
            inner: qstate::PureQubit::plus(),
        }
    }

    #[staticmethod]
    fn minus() -> Self {
        Self {
            inner: qstate::PureQubit::minus(),
        }
    }

    /// State at polar angle `theta`, azimuth `phi` on the Bloch sphere.
    #[staticmethod]
    fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        Self {
            inner: qstate::PureQubit::from_bloch_angles(theta, phi),
        }
    }

    #[getter]
    fn amp0(&self) -> Complex64 {
        self.inner.amp0
    }

    #[getter]
    fn amp1(&self) -> Complex64 {
        self.inner.amp1
    }

    fn bloch(&self) -> (f64, f64, f64) {
        let v = self.inner.bloch();
        (v.x, v.y, v.z)
    }

    /// `|<self|other>|`.
    fn overlap(&self, other: &PyPureQubit) -> f64 {
        self.inner.overlap(&other.inner)
    }

    fn density(&self) -> PyDensityMatrix {
        PyDensityMatrix {
            inner: self.inner.density(),
        }
    }

    fn __repr__(&self) -> String {
        format!("PureQubit({}, {})", self.inner.amp0, self.inner.amp1)
    }
}

/// A 2x2 density matrix.
#[pyclass(frozen, skip_from_py_object, name = "DensityMatrix")]
#[derive(Clone)]
struct PyDensityMatrix {
    inner: qstate::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    /// Validates a 2x2 complex matrix as a density operator.
    #[new]
    fn new(entries: [[Complex64; 2]; 2]) -> PyResult<Self> {
        qstate::DensityMatrix::new(qstate::Mat2(entries))
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_bloch(x: f64, y: f64, z: f64) -> PyResult<Self> {
        qstate::DensityMatrix::from_bloch(&qstate::BlochVector::new(x, y, z))
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn maximally_mixed() -> Self {
        Self {
            inner: qstate::DensityMatrix::maximally_mixed(),
        }
    }

    fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.inner.matrix().0
    }

    fn bloch(&self) -> (f64, f64, f64) {
        let v = self.inner.bloch();
        (v.x, v.y, v.z)
    }

    fn purity(&self) -> f64 {
        self.inner.purity()
    }

    /// Von Neumann entropy in bits.
    fn entropy_bits(&self) -> f64 {
        self.inner.von_neumann_entropy()
    }

    fn __repr__(&self) -> String {
        let v = self.inner.bloch();
        format!("DensityMatrix(bloch=({:.6}, {:.6}, {:.6}))", v.x, v.y, v.z)
    }
}

/// An ordered pair of pure states with overlap `cos(alpha) < 1`.
#[pyclass(frozen, skip_from_py_object, name = "NOBasis")]
#[derive(Clone)]
struct PyNOBasis {
    inner: nobasis::NOBasis,
}

#[pymethods]
impl PyNOBasis {
    #[new]
    fn new(b1: &PyPureQubit, b2: &PyPureQubit) -> PyResult<Self> {
        nobasis::NOBasis::new(b1.inner, b2.inner)
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    /// The symmetric family with half-angle `alpha` and phase `phi`; the
    /// chord sits at `z = -cos(alpha)`.
    #[staticmethod]
    #[pyo3(signature = (alpha, phi = 0.0))]
    fn symmetric(alpha: f64, phi: f64) -> PyResult<Self> {
        thermo::coherence_basis(alpha, phi)
            .map(|fam| Self { inner: fam.basis })
            .map_err(value_err)
    }

    #[getter]
    fn b1(&self) -> PyPureQubit {
        PyPureQubit {
            inner: *self.inner.b1(),
        }
    }

    #[getter]
    fn b2(&self) -> PyPureQubit {
        PyPureQubit {
            inner: *self.inner.b2(),
        }
    }

    /// `|<b1|b2>| = cos(alpha)`.
    fn overlap(&self) -> f64 {
        self.inner.overlap()
    }

    fn half_angle(&self) -> f64 {
        self.inner.half_angle()
    }

    /// The free state `p |b1><b1| + (1-p) |b2><b2|`.
    fn nois_state(&self, p: f64) -> PyResult<PyDensityMatrix> {
        self.inner
            .nois_state(p)
            .map(|pt| PyDensityMatrix { inner: pt.state })
            .map_err(value_err)
    }

    /// The mixing weight if `rho` lies on the free segment within `tol`.
    #[pyo3(signature = (rho, tol = 1e-9))]
    fn is_nois(&self, rho: &PyDensityMatrix, tol: f64) -> Option<f64> {
        self.inner.is_nois(&rho.inner, tol)
    }

    /// Exact nearest free state: `(weight, state, euclidean_distance)`.
    fn nearest_nois(&self, rho: &PyDensityMatrix) -> (f64, PyDensityMatrix, f64) {
        let (pt, dist) = self.inner.nearest_nois(&rho.inner);
        (pt.weight, PyDensityMatrix { inner: pt.state }, dist)
    }

    fn __repr__(&self) -> String {
        format!(
            "NOBasis(overlap={:.6}, half_angle={:.6})",
            self.inner.overlap(),
            self.inner.half_angle()
        )
    }
}

/// Reproducible random source addressed by `(seed, stream)`.
#[pyclass(name = "SeededRng")]
struct PySeededRng {
    inner: qstate::SeededRng,
}

#[pymethods]
impl PySeededRng {
    #[new]
    #[pyo3(signature = (seed, stream = 0))]
    fn new(seed: u64, stream: u64) -> Self {
        Self {
            inner: qstate::SeededRng::with_stream(seed, stream),
        }
    }

    /// Haar-uniform pure state.
    fn haar_pure(&mut self) -> PyPureQubit {
        PyPureQubit {
            inner: qstate::haar_pure_qubit(&mut self.inner),
        }
    }

    /// Hilbert-Schmidt random mixed state (flat on the Bloch ball).
    fn random_mixed(&mut self) -> PyDensityMatrix {
        PyDensityMatrix {
            inner: qstate::random_mixed_qubit(&mut self.inner),
        }
    }
}

#[pyfunction]
fn trace_distance(a: &PyDensityMatrix, b: &PyDensityMatrix) -> f64 {
    qstate::trace_distance(&a.inner, &b.inner)
}

/// Relative entropy in bits; `inf` on support mismatch.
#[pyfunction]
fn relative_entropy(rho: &PyDensityMatrix, sigma: &PyDensityMatrix) -> f64 {
    qstate::relative_entropy(&rho.inner, &sigma.inner)
}

/// Trace-distance coherence of `rho` in `basis`.
#[pyfunction]
#[pyo3(signature = (rho, basis, convention = "euclidean"))]
fn c_trace(rho: &PyDensityMatrix, basis: &PyNOBasis, convention: &str) -> PyResult<f64> {
    Ok(comeasure::c_trace(
        &rho.inner,
        &basis.inner,
        convention_from(convention)?,
    ))
}

/// Relative-entropy coherence of `rho` in `basis`, in bits.
#[pyfunction]
fn c_rel(rho: &PyDensityMatrix, basis: &PyNOBasis) -> f64 {
    comeasure::c_rel(&rho.inner, &basis.inner)
}

/// The unique pure state maximizing the trace coherence.
#[pyfunction]
fn max_coherent_state(basis: &PyNOBasis) -> PyResult<PyPureQubit> {
    comeasure::max_coherent_state(&basis.inner)
        .map(|inner| PyPureQubit { inner })
        .map_err(value_err)
}

/// The maximally coherent state at Bloch radius `r` (coherence `r + cos a`).
#[pyfunction]
fn nomcms(basis: &PyNOBasis, r: f64) -> PyResult<PyDensityMatrix> {
    comeasure::nomcms(&basis.inner, r)
        .map(|inner| PyDensityMatrix { inner })
        .map_err(value_err)
}

/// The minimally coherent state at Bloch radius `r`.
#[pyfunction]
fn nomincms(basis: &PyNOBasis, r: f64) -> PyResult<PyDensityMatrix> {
    comeasure::nomincms(&basis.inner, r)
        .map(|inner| PyDensityMatrix { inner })
        .map_err(value_err)
}

/// Below `(1 + cos^2 a)/2` no state of the basis can be free.
#[pyfunction]
fn purity_threshold(basis: &PyNOBasis) -> f64 {
    comeasure::purity_threshold(&basis.inner)
}

/// Slack `(upper, lower)` of the two complementarity inequalities.
#[pyfunction]
fn complementarity_gaps(rho: &PyDensityMatrix, basis: &PyNOBasis) -> (f64, f64) {
    let gaps = comeasure::complementarity_gaps(&rho.inner, &basis.inner);
    (gaps.upper, gaps.lower)
}

/// Wave and particle scores `(c_tilde, d_tilde)` of one leaky double-slit
/// configuration.
#[pyfunction]
fn duality_point(
    amp_alpha: Complex64,
    amp_beta: Complex64,
    pass_prob: f64,
    d0: &PyPureQubit,
    dpsi: &PyPureQubit,
) -> PyResult<(f64, f64)> {
    let cfg = duality::SlitConfig::new(amp_alpha, amp_beta, pass_prob, d0.inner, dpsi.inner)
        .map_err(value_err)?;
    let pt = duality::duality_point(&cfg).map_err(value_err)?;
    Ok((pt.c_tilde, pt.d_tilde))
}

/// Haar sweep of the duality bound; rows of
/// `(pass_prob, max_c, max_d, max_sum, samples, discarded)`.
#[pyfunction]
fn sweep_duality(r_grid: Vec<f64>, samples_per_r: u64, seed: u64) -> PyResult<Vec<SweepTuple>> {
    let sweep = duality::sweep_duality(&r_grid, samples_per_r, seed).map_err(value_err)?;
    Ok(sweep
        .rows
        .iter()
        .map(|r| {
            (
                r.pass_prob,
                r.max_c_tilde,
                r.max_d_tilde,
                r.max_sum,
                r.samples,
                r.discarded,
            )
        })
        .collect())
}

/// The reverse basis-change success probability `1 - cos(alpha)`.
#[pyfunction]
fn reverse_bc_success_prob(basis: &PyNOBasis) -> PyResult<f64> {
    channels::reverse_bc_attempt(&basis.inner)
        .map(|r| r.success_prob)
        .map_err(value_err)
}

/// Phase-flip demonstration data:
/// `(input_bloch, flipped_bloch, input_coherence, flipped_coherence)`.
#[pyfunction]
fn phase_flip_demo(basis: &PyNOBasis) -> PyResult<(Bloch3, Bloch3, f64, f64)> {
    let demo = channels::phase_flip_demo(&basis.inner).map_err(value_err)?;
    let iv = demo.input.bloch();
    let fv = demo.flipped.bloch();
    Ok((
        (iv.x, iv.y, iv.z),
        (fv.x, fv.y, fv.z),
        demo.input_coherence,
        demo.flipped_coherence,
    ))
}

/// Sum of squared coherences over a named family
/// (`triangle`, `square`, or `cyclic:n`).
#[pyfunction]
fn sum_sq_coherence(rho: &PyDensityMatrix, family: &str) -> PyResult<f64> {
    let fam = parse_family(family)?;
    Ok(multibasis::sum_sq_coherence(&rho.inner, &fam))
}

/// Monte Carlo bound report for a named family, as a JSON string.
#[pyfunction]
fn verify_family_bounds_json(family: &str, samples: u64, seed: u64) -> PyResult<String> {
    let fam = parse_family(family)?;
    let mut rng = qstate::SeededRng::new(seed);
    let report = multibasis::verify_family_bounds(&fam, samples, &mut rng);
    serde_json::to_string_pretty(&report).map_err(value_err)
}

fn parse_family(spec: &str) -> PyResult<multibasis::BasisFamily> {
    let result = match spec {
        "triangle" => multibasis::cyclic_bases(3, &BlochFrame::xz(), 0.0),
        "square" => multibasis::cyclic_bases(4, &BlochFrame::xz(), 0.0),
        _ => {
            if let Some(n) = spec.strip_prefix("cyclic:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| value_err(format!("bad vertex count in '{spec}'")))?;
                multibasis::cyclic_bases(n, &BlochFrame::xz(), 0.0)
            } else if let Some(body) = spec.strip_prefix("mutually-orthogonal:") {
                let theta0: f64 = body
                    .parse()
                    .map_err(|_| value_err(format!("bad angle in '{spec}'")))?;
                multibasis::mutually_orthogonal_pair(&qstate::PureQubit::from_bloch_angles(
                    theta0, 0.0,
                ))
            } else {
                return Err(value_err(format!(
                    "unknown family '{spec}': want triangle | square | cyclic:n | \
                     mutually-orthogonal:theta0"
                )));
            }
        }
    };
    result.map(Ok).map_err(value_err)?
}

/// Thermal state of a two-level system (`k_B = 1`).
#[pyfunction]
fn thermal_state(e1: f64, temperature: f64) -> PyResult<PyDensityMatrix> {
    let sys = thermo::TwoLevelSystem::new(e1).map_err(value_err)?;
    thermo::thermal_state(&sys, temperature)
        .map(|ts| PyDensityMatrix { inner: ts.rho })
        .map_err(value_err)
}

/// Energy cost of the basis change: `(delta, coherence, ratio)` with
/// `ratio = delta / coherence = e1 / 2`.
#[pyfunction]
#[pyo3(signature = (e1, temperature, alpha, phi = 0.0))]
fn energy_cost(e1: f64, temperature: f64, alpha: f64, phi: f64) -> PyResult<(f64, f64, f64)> {
    let sys = thermo::TwoLevelSystem::new(e1).map_err(value_err)?;
    let fam = thermo::coherence_basis(alpha, phi).map_err(value_err)?;
    let check = thermo::linearity_check(&sys, temperature, &fam).map_err(value_err)?;
    Ok((check.delta, check.coherence, check.ratio))
}

#[pymodule]
fn noncoh_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureQubit>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyNOBasis>()?;
    m.add_class::<PySeededRng>()?;
    m.add_function(wrap_pyfunction!(trace_distance, m)?)?;
    m.add_function(wrap_pyfunction!(relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(c_trace, m)?)?;
    m.add_function(wrap_pyfunction!(c_rel, m)?)?;
    m.add_function(wrap_pyfunction!(max_coherent_state, m)?)?;
    m.add_function(wrap_pyfunction!(nomcms, m)?)?;
    m.add_function(wrap_pyfunction!(nomincms, m)?)?;
    m.add_function(wrap_pyfunction!(purity_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(complementarity_gaps, m)?)?;
    m.add_function(wrap_pyfunction!(duality_point, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_duality, m)?)?;
    m.add_function(wrap_pyfunction!(reverse_bc_success_prob, m)?)?;
    m.add_function(wrap_pyfunction!(phase_flip_demo, m)?)?;
    m.add_function(wrap_pyfunction!(sum_sq_coherence, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family_bounds_json, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_state, m)?)?;
    m.add_function(wrap_pyfunction!(energy_cost, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
