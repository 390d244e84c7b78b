//! Python bindings for `ybpump`.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ybpump::crypto::{self, BlockCode};
use ybpump::enumerate::{census_filter, enumerate_solutions, CensusPredicate};
use ybpump::lazy_tree::{self, CostConstants, CostVariant, PumpTree, DEFAULT_MATERIALIZE_BOUND};
use ybpump::permutation::Permutation;
use ybpump::solution::AnalysisOptions;

create_exception!(ybpump_py, YbpumpError, PyValueError);

fn py_err(e: ybpump::Error) -> PyErr {
    YbpumpError::new_err(e.to_string())
}

fn parse_family(texts: &[String], n: usize) -> PyResult<Vec<Permutation>> {
    texts
        .iter()
        .map(|t| Permutation::parse(t, n).map_err(py_err))
        .collect()
}

/// A set-theoretic solution given by its sigma and gamma families.
#[pyclass(name = "Solution", module = "ybpump_py", skip_from_py_object)]
#[derive(Clone)]
struct PySolution {
    inner: ybpump::Solution,
}

#[pymethods]
impl PySolution {
    /// Builds a solution from sigma permutations in cycle notation; gamma is derived.
    #[new]
    fn new(sigma: Vec<String>) -> PyResult<Self> {
        let n = sigma.len();
        let inner = ybpump::Solution::from_sigma(parse_family(&sigma, n)?).map_err(py_err)?;
        Ok(PySolution { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PySolution {
            inner: ybpump::Solution::parse_file(text).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| py_err(e.into()))?;
        Self::parse(&text)
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(PySolution {
            inner: ybpump::catalog::by_name(name)
                .ok_or_else(|| YbpumpError::new_err(format!("unknown catalog entry {name:?}")))?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn sigmas(&self) -> Vec<String> {
        self.inner.sigmas().iter().map(|p| p.to_string()).collect()
    }

    fn gammas(&self) -> Vec<String> {
        self.inner.gammas().iter().map(|p| p.to_string()).collect()
    }

    fn r(&self, x: usize, y: usize) -> PyResult<(usize, usize)> {
        self.inner.apply_r(x, y).map_err(py_err)
    }

    /// `True` when the maps are bijective, involutive and braided.
    fn is_solution(&self) -> bool {
        self.inner.verify().is_solution()
    }

    /// The analysis report as a JSON string.
    fn analyze(&self) -> PyResult<String> {
        let report = self.inner.analyze(&AnalysisOptions::default()).map_err(py_err)?;
        Ok(report.to_json().to_string())
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.inner.orbits()
    }

    fn pump(&self) -> PyResult<PySolution> {
        Ok(PySolution {
            inner: ybpump::pump::pump(&self.inner).map_err(py_err)?.result,
        })
    }

    fn to_file_string(&self) -> String {
        self.inner.to_file_string(&[])
    }

    fn __repr__(&self) -> String {
        format!("Solution({:?})", self.sigmas())
    }

    fn __eq__(&self, other: &PySolution) -> bool {
        self.inner == other.inner
    }
}

/// The key permutation for label `i` on the `k`-fold pumped set, evaluated pointwise.
#[pyclass(name = "LazyKey", module = "ybpump_py")]
struct PyLazyKey {
    inner: lazy_tree::LazyKey,
}

#[pymethods]
impl PyLazyKey {
    #[new]
    fn new(base: &PySolution, i: BigUint, k: u32) -> PyResult<Self> {
        Ok(PyLazyKey {
            inner: lazy_tree::LazyKey::new(&base.inner, &i, k).map_err(py_err)?,
        })
    }

    #[getter]
    fn size(&self) -> BigUint {
        self.inner.size().clone()
    }

    fn eval(&self, m: BigUint) -> PyResult<BigUint> {
        self.inner.eval(&m).map_err(py_err)
    }

    fn eval_inverse(&self, m: BigUint) -> PyResult<BigUint> {
        self.inner.eval_inverse(&m).map_err(py_err)
    }

    /// Builds the full permutation; returns the number of pair builds.
    #[pyo3(signature = (bound = DEFAULT_MATERIALIZE_BOUND))]
    fn materialize(&mut self, bound: usize) -> PyResult<usize> {
        self.inner.materialize(bound).map_err(py_err)
    }

    fn tree(&self) -> String {
        self.inner.tree().render()
    }
}

fn with_key<T>(base: &PySolution, i: BigUint, k: u32, f: impl FnOnce(&lazy_tree::LazyKey) -> ybpump::Result<T>) -> PyResult<T> {
    let key = lazy_tree::LazyKey::new(&base.inner, &i, k).map_err(py_err)?;
    f(&key).map_err(py_err)
}

fn blocks(v: Vec<BigUint>) -> BlockCode {
    BlockCode(v)
}

#[pyfunction]
fn encode_text(text: &str) -> PyResult<Vec<BigUint>> {
    Ok(crypto::encode_text(text).map_err(py_err)?.0)
}

#[pyfunction]
fn decode_text(code: Vec<BigUint>) -> PyResult<String> {
    crypto::decode_text(&blocks(code)).map_err(py_err)
}

#[pyfunction]
fn encrypt(base: &PySolution, k: u32, i: BigUint, code: Vec<BigUint>) -> PyResult<Vec<BigUint>> {
    with_key(base, i, k, |key| crypto::encrypt(&blocks(code), key)).map(|c| c.0)
}

#[pyfunction]
fn decrypt(base: &PySolution, k: u32, i: BigUint, code: Vec<BigUint>) -> PyResult<Vec<BigUint>> {
    with_key(base, i, k, |key| crypto::decrypt(&blocks(code), key)).map(|c| c.0)
}

/// Signs with key `j` and encrypts for key `i`; returns the transmitted blocks.
#[pyfunction]
fn sign(base: &PySolution, k: u32, i: BigUint, j: BigUint, code: Vec<BigUint>) -> PyResult<Vec<BigUint>> {
    let sender = lazy_tree::LazyKey::new(&base.inner, &j, k).map_err(py_err)?;
    with_key(base, i, k, |receiver| crypto::sign(&blocks(code), &sender, receiver)).map(|t| t.transmitted.0)
}

#[pyfunction]
fn open_signature(base: &PySolution, k: u32, i: BigUint, j: BigUint, code: Vec<BigUint>) -> PyResult<Vec<BigUint>> {
    let sender = lazy_tree::LazyKey::new(&base.inner, &j, k).map_err(py_err)?;
    with_key(base, i, k, |receiver| crypto::open_signature(&blocks(code), receiver, &sender)).map(|c| c.0)
}

/// Runs one exchange; returns `(bob_sends, alice_sends, keys_agree)`.
#[pyfunction]
#[pyo3(signature = (base, k, i, j, l, samples = 100, seed = 0))]
fn key_exchange(base: &PySolution, k: u32, i: BigUint, j: BigUint, l: BigUint, samples: usize, seed: u64) -> PyResult<(BigUint, BigUint, bool)> {
    let kx = crypto::key_exchange(&base.inner, k, &i, &j, &l).map_err(py_err)?;
    let points = lazy_tree::sample_points(kx.bob_key.outer.size(), samples, seed);
    let agree = kx.keys_agree(DEFAULT_MATERIALIZE_BOUND, &points).map_err(py_err)?;
    Ok((kx.bob_sends, kx.alice_sends, agree))
}

/// Levels of the label tree, root first.
#[pyfunction]
fn tree_levels(n: usize, k: u32, i: BigUint) -> PyResult<Vec<Vec<BigUint>>> {
    let tree = PumpTree::build(&i, n, k).map_err(py_err)?;
    Ok((0..=k).rev().map(|l| tree.level(l).to_vec()).collect())
}

/// `(operations, seconds)` for computing one key.
#[pyfunction]
#[pyo3(signature = (n, k, small_i = false))]
fn cost_model(n: usize, k: u32, small_i: bool) -> PyResult<(BigUint, f64)> {
    let variant = if small_i { CostVariant::SmallI } else { CostVariant::General };
    let e = lazy_tree::cost_model(n, k, variant, &CostConstants::default()).map_err(py_err)?;
    Ok((e.ops, e.seconds))
}

/// Isomorphism-class representatives on `n` points, optionally filtered.
#[pyfunction]
#[pyo3(signature = (n, filters = Vec::new()))]
fn enumerate(n: usize, filters: Vec<String>) -> PyResult<Vec<PySolution>> {
    let predicates = filters
        .iter()
        .map(|f| CensusPredicate::parse(f).map_err(py_err))
        .collect::<PyResult<Vec<_>>>()?;
    let census = census_filter(&enumerate_solutions(n).map_err(py_err)?, &predicates);
    Ok(census
        .representatives()
        .map(|s| PySolution { inner: s.clone() })
        .collect())
}

#[pymodule]
fn ybpump_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("YbpumpError", m.py().get_type::<YbpumpError>())?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyLazyKey>()?;
    m.add_function(wrap_pyfunction!(encode_text, m)?)?;
    m.add_function(wrap_pyfunction!(decode_text, m)?)?;
    m.add_function(wrap_pyfunction!(encrypt, m)?)?;
    m.add_function(wrap_pyfunction!(decrypt, m)?)?;
    m.add_function(wrap_pyfunction!(sign, m)?)?;
    m.add_function(wrap_pyfunction!(open_signature, m)?)?;
    m.add_function(wrap_pyfunction!(key_exchange, m)?)?;
    m.add_function(wrap_pyfunction!(tree_levels, m)?)?;
    m.add_function(wrap_pyfunction!(cost_model, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    Ok(())
}
