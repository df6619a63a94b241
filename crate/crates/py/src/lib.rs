//! Python bindings. Probabilities cross the boundary as exact strings
//! (`"1/100"`, `"0.25"`), never as floats.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use oneshot::capacity::{avg_capacity_via_graph, max_capacity_via_graph};
use oneshot::channel::{gen_example1, gen_from_cubic_graph, gen_random, parse_channel, write_channel};
use oneshot::decoding::{avg_error, codeword_errors, max_error, simulate as simulate_scheme};
use oneshot::graphs::{build_avg_graph_with, sparse_number as sparse, AvgGraphConfig};
use oneshot::hardness::verify_reduction as verify;
use oneshot::{Channel, CubicGraph, Example1Spec, Metric, Prob, Scheme};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prob(text: &str) -> PyResult<Prob> {
    Prob::parse(text).map_err(value_error)
}

fn metric(text: &str) -> PyResult<Metric> {
    text.parse().map_err(value_error)
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(PyModule::import(py, "json")?.call_method1("loads", (text,))?.unbind())
}

/// Discrete channel with exact rational transition probabilities.
#[pyclass(name = "Channel", module = "oneshot_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyChannel {
    inner: Channel,
}

#[pymethods]
impl PyChannel {
    /// Rows of probability strings; each row must sum to exactly one.
    #[new]
    fn new(rows: Vec<Vec<String>>) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|p| prob(p)).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyChannel {
            inner: Channel::new(rows).map_err(value_error)?,
        })
    }

    /// Parses the channel text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyChannel {
            inner: parse_channel(text).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyChannel {
            inner: Channel::identity(n),
        }
    }

    /// Staircase channel with thresholds `e`.
    #[staticmethod]
    fn example1(n: usize, e: Vec<String>) -> PyResult<Self> {
        let e = e.iter().map(|t| prob(t)).collect::<PyResult<Vec<_>>>()?;
        let spec = Example1Spec::new(n, e).map_err(value_error)?;
        Ok(PyChannel {
            inner: gen_example1(&spec),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (num_inputs, num_outputs, seed, denominator_bound = 12))]
    fn random(num_inputs: usize, num_outputs: usize, seed: u64, denominator_bound: u64) -> PyResult<Self> {
        Ok(PyChannel {
            inner: gen_random(num_inputs, num_outputs, seed, denominator_bound).map_err(value_error)?,
        })
    }

    /// Channel of a cubic graph: outputs are edges, each vertex hits its
    /// three edges with probability 1/3.
    #[staticmethod]
    fn from_cubic_graph(num_vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let g = CubicGraph::new(num_vertices, edges).map_err(value_error)?;
        Ok(PyChannel {
            inner: gen_from_cubic_graph(&g),
        })
    }

    #[getter]
    fn num_inputs(&self) -> usize {
        self.inner.num_inputs()
    }

    #[getter]
    fn num_outputs(&self) -> usize {
        self.inner.num_outputs()
    }

    fn prob(&self, x: usize, y: usize) -> PyResult<String> {
        if x >= self.inner.num_inputs() || y >= self.inner.num_outputs() {
            return Err(value_error(format!("({x}, {y}) out of range")));
        }
        Ok(self.inner.prob(x, y).to_string())
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner
            .rows()
            .iter()
            .map(|row| row.iter().map(Prob::to_string).collect())
            .collect()
    }

    fn to_text(&self) -> String {
        write_channel(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Channel({}x{})", self.inner.num_inputs(), self.inner.num_outputs())
    }
}

/// Codebook plus a total decoder from outputs to codewords.
#[pyclass(name = "Scheme", module = "oneshot_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScheme {
    inner: Scheme,
}

#[pymethods]
impl PyScheme {
    #[new]
    fn new(codebook: Vec<usize>, decoder: Vec<usize>) -> PyResult<Self> {
        Ok(PyScheme {
            inner: Scheme::new(codebook, decoder).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyScheme {
            inner: Scheme::from_json(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn codebook(&self) -> Vec<usize> {
        self.inner.codebook().to_vec()
    }

    #[getter]
    fn decoder(&self) -> Vec<usize> {
        self.inner.decoder().to_vec()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Exact error of each codeword, in codebook order.
    fn codeword_errors(&self, channel: &PyChannel) -> PyResult<Vec<String>> {
        let errs = codeword_errors(&channel.inner, &self.inner).map_err(value_error)?;
        Ok(errs.iter().map(Prob::to_string).collect())
    }

    fn max_error(&self, channel: &PyChannel) -> PyResult<String> {
        Ok(max_error(&channel.inner, &self.inner).map_err(value_error)?.to_string())
    }

    fn avg_error(&self, channel: &PyChannel) -> PyResult<String> {
        Ok(avg_error(&channel.inner, &self.inner).map_err(value_error)?.to_string())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Scheme(codebook={:?}, decoder={:?})", self.inner.codebook(), self.inner.decoder())
    }
}

#[pyclass(name = "CapacityResult", module = "oneshot_py", frozen, get_all)]
struct PyCapacityResult {
    metric: String,
    epsilon: String,
    codebook_size: usize,
    capacity_bits: f64,
    witness: PyScheme,
}

#[pymethods]
impl PyCapacityResult {
    fn __repr__(&self) -> String {
        format!(
            "CapacityResult(metric={}, epsilon={}, k={}, bits={:.12})",
            self.metric, self.epsilon, self.codebook_size, self.capacity_bits
        )
    }
}

impl From<oneshot::CapacityResult> for PyCapacityResult {
    fn from(r: oneshot::CapacityResult) -> Self {
        PyCapacityResult {
            metric: r.metric.to_string(),
            epsilon: r.epsilon.to_string(),
            codebook_size: r.codebook_size,
            capacity_bits: r.capacity_bits,
            witness: PyScheme { inner: r.witness },
        }
    }
}

/// `engine` is `"packing"`, `"graph"` or `"brute"`.
#[pyfunction]
#[pyo3(signature = (channel, epsilon, engine = "packing"))]
fn max_capacity(channel: &PyChannel, epsilon: &str, engine: &str) -> PyResult<PyCapacityResult> {
    let eps = prob(epsilon)?;
    let c = &channel.inner;
    let r = match engine {
        "packing" => oneshot::max_capacity(c, &eps),
        "graph" => max_capacity_via_graph(c, &eps).map_err(value_error)?,
        "brute" => oneshot::brute_force_capacity(c, Metric::Maximum, &eps).map_err(value_error)?,
        other => return Err(value_error(format!("unknown engine {other:?}"))),
    };
    Ok(r.into())
}

/// `engine` is `"search"`, `"graph"` or `"brute"`.
#[pyfunction]
#[pyo3(signature = (channel, epsilon, engine = "search"))]
fn avg_capacity(channel: &PyChannel, epsilon: &str, engine: &str) -> PyResult<PyCapacityResult> {
    let eps = prob(epsilon)?;
    let c = &channel.inner;
    let r = match engine {
        "search" | "packing" => oneshot::avg_capacity(c, &eps),
        "graph" => avg_capacity_via_graph(c, &eps).map_err(value_error)?,
        "brute" => oneshot::brute_force_capacity(c, Metric::Average, &eps).map_err(value_error)?,
        other => return Err(value_error(format!("unknown engine {other:?}"))),
    };
    Ok(r.into())
}

/// Breakpoints `(epsilon, k)` of the capacity step function.
#[pyfunction]
fn capacity_curve(channel: &PyChannel, metric_name: &str) -> PyResult<Vec<(String, usize)>> {
    let curve = oneshot::capacity_curve(&channel.inner, metric(metric_name)?).map_err(value_error)?;
    Ok(curve
        .breakpoints
        .into_iter()
        .map(|(t, k)| (t.to_string(), k))
        .collect())
}

/// `(input, decoding region)`
type NodePair = (usize, Vec<usize>);

/// `(alpha, [(input, [outputs]), ...])` for the average-one-shot graph.
#[pyfunction]
#[pyo3(signature = (channel, epsilon, include_empty = false))]
fn sparse_number(channel: &PyChannel, epsilon: &str, include_empty: bool) -> PyResult<(usize, Vec<NodePair>)> {
    let config = AvgGraphConfig {
        include_empty_sets: include_empty,
        ..AvgGraphConfig::default()
    };
    let g = build_avg_graph_with(&channel.inner, config).map_err(value_error)?;
    let (alpha, witness) = sparse(&g, &prob(epsilon)?);
    Ok((
        alpha,
        witness.members.iter().map(|n| (n.input, n.dset.to_vec())).collect(),
    ))
}

/// Monte-Carlo report as a dict.
#[pyfunction]
#[pyo3(signature = (channel, scheme, trials = 100_000, seed = 0))]
fn simulate(py: Python<'_>, channel: &PyChannel, scheme: &PyScheme, trials: u64, seed: u64) -> PyResult<Py<PyAny>> {
    let report = simulate_scheme(&channel.inner, &scheme.inner, trials, seed).map_err(value_error)?;
    json_to_py(py, &serde_json::to_string(&report).map_err(value_error)?)
}

/// Reduction report for a cubic graph as a dict.
#[pyfunction]
fn verify_reduction(py: Python<'_>, num_vertices: usize, edges: Vec<(usize, usize)>, epsilon: &str) -> PyResult<Py<PyAny>> {
    let g = CubicGraph::new(num_vertices, edges).map_err(value_error)?;
    let report = verify(&g, &prob(epsilon)?).map_err(value_error)?;
    json_to_py(py, &report.to_json())
}

#[pymodule]
fn oneshot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChannel>()?;
    m.add_class::<PyScheme>()?;
    m.add_class::<PyCapacityResult>()?;
    m.add_function(wrap_pyfunction!(max_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(avg_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_curve, m)?)?;
    m.add_function(wrap_pyfunction!(sparse_number, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_reduction, m)?)?;
    Ok(())
}
