//! Python bindings. Mutation directions are one-based, as in the CLI.

use clusterlab::models::triangulation::Triangulation;
use clusterlab::search::{explore_matrix_class, explore_seeds, ExplorationLimits};
use clusterlab::seed::{MutationWord, Seed as CoreSeed};
use clusterlab::sequences;
use clusterlab::tp::{all_minors_positive, tp_test_solid, RationalMatrix};
use clusterlab::{Error, ExchangeMatrix};
use num_bigint::BigInt;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn word(letters: &[usize]) -> PyResult<MutationWord> {
    MutationWord::from_one_based(letters).map_err(py_err)
}

fn direction(k: usize, n: usize) -> PyResult<usize> {
    if k == 0 || k > n {
        return Err(py_err(Error::IndexOutOfRange { index: k, max: n }));
    }
    Ok(k - 1)
}

/// A labeled seed: extended exchange matrix and cluster of Laurent polynomials.
#[pyclass(frozen, skip_from_py_object, module = "clusterlab")]
#[derive(Clone)]
struct Seed {
    inner: CoreSeed,
}

#[pymethods]
impl Seed {
    /// The initial seed of an extended exchange matrix (mutable rows first).
    #[new]
    fn new(matrix: Vec<Vec<i64>>) -> PyResult<Self> {
        let b = ExchangeMatrix::new(matrix).map_err(py_err)?;
        Ok(Seed { inner: CoreSeed::initial(b) })
    }

    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        CoreSeed::from_json(doc).map(|inner| Seed { inner }).map_err(py_err)
    }

    /// The Plücker seed of a triangulation written `m; a-b, c-d`.
    #[staticmethod]
    fn plucker(triangulation: &str) -> PyResult<Self> {
        let t = Triangulation::parse_text(triangulation).map_err(py_err)?;
        Ok(Seed { inner: t.plucker_seed() })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn mutate(&self, k: usize) -> PyResult<Self> {
        let k = direction(k, self.inner.n())?;
        self.inner.mutate(k).map(|inner| Seed { inner }).map_err(py_err)
    }

    fn mutate_word(&self, letters: Vec<usize>) -> PyResult<Self> {
        self.inner.mutate_word(&word(&letters)?).map(|inner| Seed { inner }).map_err(py_err)
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<i64>> {
        self.inner.matrix().rows().to_vec()
    }

    /// Cluster variables as canonical polynomial strings.
    #[getter]
    fn cluster(&self) -> Vec<String> {
        self.inner.cluster().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn word(&self) -> Vec<usize> {
        self.inner.word().to_one_based()
    }

    fn denominator_vector(&self, k: usize) -> PyResult<Vec<u32>> {
        let k = direction(k, self.inner.n())?;
        self.inner.cluster()[k].denominator_vector().map_err(py_err)
    }

    fn is_positive(&self, k: usize) -> PyResult<bool> {
        let k = direction(k, self.inner.n())?;
        Ok(self.inner.cluster()[k].is_positive())
    }

    /// Number of seeds reachable within the limits, and whether a limit was hit.
    #[pyo3(signature = (max_nodes=10_000, max_depth=64))]
    fn exchange_graph(&self, max_nodes: usize, max_depth: usize) -> PyResult<(usize, bool)> {
        let limits = ExplorationLimits::new(max_nodes, max_depth).map_err(py_err)?;
        let g = explore_seeds(&self.inner, limits).map_err(py_err)?.graph;
        Ok((g.len(), g.truncated))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.matrix() == other.inner.matrix() && self.inner.cluster() == other.inner.cluster()
    }

    fn __repr__(&self) -> String {
        format!("Seed(m={}, n={}, word={:?})", self.inner.m(), self.inner.n(), self.inner.word().to_one_based())
    }
}

/// Matrix mutation in direction `k`.
#[pyfunction]
fn mutate_matrix(matrix: Vec<Vec<i64>>, k: usize) -> PyResult<Vec<Vec<i64>>> {
    let b = ExchangeMatrix::new(matrix).map_err(py_err)?;
    let k = direction(k, b.n())?;
    Ok(b.mutate(k).map_err(py_err)?.rows().to_vec())
}

/// Size of the mutation class of a matrix within the limits, and whether a limit was hit.
#[pyfunction]
#[pyo3(signature = (matrix, max_nodes=10_000, max_depth=64))]
fn mutation_class_size(matrix: Vec<Vec<i64>>, max_nodes: usize, max_depth: usize) -> PyResult<(usize, bool)> {
    let b = ExchangeMatrix::new(matrix).map_err(py_err)?;
    let limits = ExplorationLimits::new(max_nodes, max_depth).map_err(py_err)?;
    let g = explore_matrix_class(&b, limits).map_err(py_err)?.graph;
    Ok((g.len(), g.truncated))
}

#[pyfunction]
fn somos4(count: usize) -> PyResult<Vec<BigInt>> {
    sequences::somos4_terms(count).map_err(py_err)
}

#[pyfunction]
fn somos5(count: usize) -> PyResult<Vec<BigInt>> {
    sequences::somos5_terms(count).map_err(py_err)
}

/// Markov triples up to the given depth of the tree, with their depths.
#[pyfunction]
fn markov_triples(depth: usize) -> Vec<(usize, [BigInt; 3])> {
    sequences::markov_tree(depth).into_iter().map(|n| (n.depth, n.triple)).collect()
}

fn rational_matrix(rows: &[Vec<String>]) -> PyResult<RationalMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut text = format!("{} {}\n", rows.len(), cols);
    for r in rows {
        text.push_str(&r.join(" "));
        text.push('\n');
    }
    RationalMatrix::parse_text(&text).map_err(py_err)
}

/// Total positivity from the solid minors alone; entries are rationals written `p/q`.
#[pyfunction]
fn is_totally_positive(rows: Vec<Vec<String>>) -> PyResult<bool> {
    tp_test_solid(&rational_matrix(&rows)?).map_err(py_err)
}

/// Total positivity by checking every minor.
#[pyfunction]
fn all_minors_are_positive(rows: Vec<Vec<String>>) -> PyResult<bool> {
    Ok(all_minors_positive(&rational_matrix(&rows)?))
}

#[pymodule(name = "clusterlab")]
pub fn clusterlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Seed>()?;
    m.add_function(wrap_pyfunction!(mutate_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(mutation_class_size, m)?)?;
    m.add_function(wrap_pyfunction!(somos4, m)?)?;
    m.add_function(wrap_pyfunction!(somos5, m)?)?;
    m.add_function(wrap_pyfunction!(markov_triples, m)?)?;
    m.add_function(wrap_pyfunction!(is_totally_positive, m)?)?;
    m.add_function(wrap_pyfunction!(all_minors_are_positive, m)?)?;
    Ok(())
}
