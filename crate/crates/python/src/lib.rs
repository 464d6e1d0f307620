//! Python bindings.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qudit_arith::block_builder::{self, Mode};
use qudit_arith::qubit_adders::{self, AdderSpec, AdderWiring};
use qudit_arith::sim::BasisState;
use qudit_arith::{compress, json, resources, sim, CompressionScheme};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scheme(name: &str) -> PyResult<CompressionScheme> {
    CompressionScheme::parse_builtin(name).ok_or_else(|| value_err(format!("unknown scheme {name:?}")))
}

fn mode(name: &str) -> PyResult<Mode> {
    Mode::parse(name).ok_or_else(|| value_err(format!("unknown mode {name:?}, expected 'a+b' or '+k'")))
}

/// A reversible mixed-radix circuit.
#[pyclass(name = "Circuit", module = "qudit_arith_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCircuit {
    inner: qudit_arith::Circuit,
}

#[pymethods]
impl PyCircuit {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyCircuit {
            inner: json::from_json(s).map_err(value_err)?,
        })
    }

    fn to_json(&self) -> String {
        json::to_json(&self.inner)
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn dims(&self) -> Vec<u32> {
        self.inner.dims()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.wires().iter().map(|w| w.name.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn inverse(&self) -> Self {
        PyCircuit {
            inner: self.inner.inverse(),
        }
    }

    /// Run on one basis state given as a list of digits.
    fn run(&self, digits: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(sim::run(&self.inner, &BasisState(digits)).map_err(value_err)?.0)
    }

    /// Like `run`, also returning the largest digit seen at any point.
    fn run_max_digit(&self, digits: Vec<u32>) -> PyResult<(Vec<u32>, u32)> {
        let (out, peak) = sim::run_max_digit(&self.inner, &BasisState(digits)).map_err(value_err)?;
        Ok((out.0, peak))
    }

    /// Resource report as a JSON string.
    #[pyo3(signature = (expand_cost_model = false))]
    fn report(&self, expand_cost_model: bool) -> String {
        let r = resources::report(&self.inner);
        if expand_cost_model {
            resources::expand_cost_model(&r).to_json()
        } else {
            r.to_json()
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(width={}, gates={}, depth={})",
            self.inner.width(),
            self.inner.len(),
            self.inner.depth()
        )
    }
}

impl PyCircuit {
    pub fn inner(&self) -> &qudit_arith::Circuit {
        &self.inner
    }
}

fn wrap(c: Result<qudit_arith::Circuit, qudit_arith::BuildError>) -> PyResult<PyCircuit> {
    c.map(|inner| PyCircuit { inner }).map_err(value_err)
}

#[pyfunction]
fn compress_231() -> PyCircuit {
    PyCircuit {
        inner: compress::compress_231_circuit(),
    }
}

#[pyfunction]
fn compress_241() -> PyCircuit {
    PyCircuit {
        inner: compress::compress_241_circuit(),
    }
}

/// `2m - popcount(m) - floor(log2 m)`.
#[pyfunction]
fn ancilla_required(m: usize) -> PyResult<usize> {
    if m == 0 {
        return Err(value_err("m must be positive"));
    }
    Ok(qubit_adders::ancilla_required(m))
}

/// Logarithmic-depth adder on qubits: wires `a`, `b`, carries, then ancilla.
#[pyfunction]
#[pyo3(signature = (n, carry_in = false, carry_out = false))]
fn cla_adder(n: usize, carry_in: bool, carry_out: bool) -> PyResult<PyCircuit> {
    if n == 0 {
        return Err(value_err("n must be positive"));
    }
    let spec = AdderSpec::new(n, carry_in, carry_out);
    let (wires, w) = AdderWiring::standard(spec, qubit_adders::ancilla_required(n), true);
    wrap(qubit_adders::build_cla_adder(wires, spec, &w))
}

/// Constant adder on qubits: wires `b`, carries, then ancilla.
#[pyfunction]
#[pyo3(signature = (n, k, carry_in = false, carry_out = false))]
fn plus_k(n: usize, k: BigUint, carry_in: bool, carry_out: bool) -> PyResult<PyCircuit> {
    if n == 0 {
        return Err(value_err("n must be positive"));
    }
    let spec = AdderSpec::new(n, carry_in, carry_out);
    let (wires, w) = AdderWiring::standard(spec, qubit_adders::ancilla_required_plus_k(n), false);
    wrap(qubit_adders::build_plus_k(wires, spec, &w, &k))
}

/// Linear-depth adder without ancilla: wires `a`, `b`, then carries.
#[pyfunction]
#[pyo3(signature = (n, carry_in = false, carry_out = false))]
fn ripple_adder(n: usize, carry_in: bool, carry_out: bool) -> PyResult<PyCircuit> {
    if n == 0 {
        return Err(value_err("n must be positive"));
    }
    let spec = AdderSpec::new(n, carry_in, carry_out);
    let (wires, w) = AdderWiring::standard(spec, 0, true);
    wrap(qubit_adders::build_ripple_adder(wires, spec, &w))
}

/// Block plan as JSON, or `None` when no block count works.
#[pyfunction]
fn plan_blocks(mode_name: &str, scheme_name: &str, n: usize) -> PyResult<Option<String>> {
    Ok(block_builder::plan_blocks(mode(mode_name)?, scheme(scheme_name)?, n).map(|p| p.to_json()))
}

#[pyfunction]
#[pyo3(signature = (n, scheme_name = "231", carry_in = false, carry_out = false))]
fn block_adder(n: usize, scheme_name: &str, carry_in: bool, carry_out: bool) -> PyResult<PyCircuit> {
    let plan = block_builder::require_plan(Mode::APlusB, scheme(scheme_name)?, n).map_err(value_err)?;
    wrap(block_builder::build_block_adder(&plan, carry_in, carry_out))
}

#[pyfunction]
#[pyo3(signature = (n, k, scheme_name = "231", carry_in = false, carry_out = false))]
fn block_plus_k(n: usize, k: BigUint, scheme_name: &str, carry_in: bool, carry_out: bool) -> PyResult<PyCircuit> {
    let plan = block_builder::require_plan(Mode::PlusK, scheme(scheme_name)?, n).map_err(value_err)?;
    wrap(block_builder::build_block_plus_k(&plan, &k, carry_in, carry_out))
}

/// Add two integers with a block adder, returning `(sum mod 2^n, carry)`.
#[pyfunction]
#[pyo3(signature = (n, a, b, scheme_name = "231"))]
fn block_add(n: usize, a: BigUint, b: BigUint, scheme_name: &str) -> PyResult<(BigUint, u32)> {
    let plan = block_builder::require_plan(Mode::APlusB, scheme(scheme_name)?, n).map_err(value_err)?;
    let c = block_builder::build_block_adder(&plan, false, true).map_err(value_err)?;
    let regs = block_builder::RegisterLayout::new(Mode::APlusB, n, false, true);
    let limit = BigUint::from(1u8) << n;
    if a >= limit || b >= limit {
        return Err(value_err(format!("operands must be below 2^{n}")));
    }
    let mut s = BasisState::zeros(c.width());
    s.set_bits(&regs.a, &a);
    s.set_bits(&regs.b, &b);
    let out = sim::run(&c, &s).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((out.get_bits(&regs.b), out.0[regs.carry_out.expect("carry-out wire")]))
}

#[pymodule]
pub fn qudit_arith_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCircuit>()?;
    m.add_function(wrap_pyfunction!(compress_231, m)?)?;
    m.add_function(wrap_pyfunction!(compress_241, m)?)?;
    m.add_function(wrap_pyfunction!(ancilla_required, m)?)?;
    m.add_function(wrap_pyfunction!(cla_adder, m)?)?;
    m.add_function(wrap_pyfunction!(plus_k, m)?)?;
    m.add_function(wrap_pyfunction!(ripple_adder, m)?)?;
    m.add_function(wrap_pyfunction!(plan_blocks, m)?)?;
    m.add_function(wrap_pyfunction!(block_adder, m)?)?;
    m.add_function(wrap_pyfunction!(block_plus_k, m)?)?;
    m.add_function(wrap_pyfunction!(block_add, m)?)?;
    Ok(())
}
