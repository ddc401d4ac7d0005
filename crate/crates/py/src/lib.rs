//! Python module `hwp`. Elements cross the boundary as their ASCII text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hwp_core::search::{search_hwp_with, SearchOptions};
use hwp_core::solutions::{load_solution_or_file, solution_dot};
use hwp_core::{
    build_group, cycle_orbit, partial_differences, Elem, FactorizationCertificate, FiniteGroup,
    GroupId, Notation, SearchTarget, SolutionSpec,
};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: FiniteGroup,
}

impl PyGroup {
    fn elem(&self, text: &str) -> PyResult<Elem> {
        self.inner.parse_element(text).map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    /// `"2O"`, `"Q24"` or `"SL23"`.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        let id: GroupId = name.parse().map_err(err)?;
        Ok(PyGroup {
            inner: build_group(id).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.id().as_str()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(|g| self.inner.name(g)).collect()
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.name(self.inner.mul(self.elem(a)?, self.elem(b)?)))
    }

    fn inverse(&self, a: &str) -> PyResult<String> {
        Ok(self.inner.name(self.inner.inverse(self.elem(a)?)))
    }

    fn element_order(&self, a: &str) -> PyResult<usize> {
        Ok(self.inner.element_order(self.elem(a)?))
    }

    /// Canonical text of an element; with `unicode`, `1/√2(...)` and `±`.
    #[pyo3(signature = (text, unicode = false))]
    fn format(&self, text: &str, unicode: bool) -> PyResult<String> {
        let notation = if unicode { Notation::Unicode } else { Notation::Ascii };
        Ok(self.inner.format_element(self.elem(text)?, notation))
    }

    fn involution(&self) -> PyResult<String> {
        Ok(self.inner.name(self.inner.unique_involution().map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.id().as_str(), self.inner.order())
    }
}

#[pyclass(name = "Certificate", frozen)]
struct PyCertificate {
    inner: FactorizationCertificate,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn verified(&self) -> bool {
        self.inner.is_verified()
    }

    #[getter]
    fn witness(&self) -> Option<String> {
        self.inner.witness().map(String::from)
    }

    #[getter]
    fn failures(&self) -> Vec<String> {
        self.inner.failures.clone()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.discrepancies.clone()
    }

    #[getter]
    fn checksum(&self) -> String {
        self.inner.checksum.clone()
    }

    /// `(v, r, s)` as counted from the factors.
    #[getter]
    fn params(&self) -> Option<(usize, usize, usize)> {
        self.inner.computed.map(|p| (p.v, p.r, p.s))
    }

    fn to_json(&self) -> String {
        self.inner.to_canonical_json()
    }

    fn to_human(&self) -> String {
        self.inner.to_human()
    }

    fn __repr__(&self) -> String {
        format!("Certificate(verified={})", self.inner.is_verified())
    }
}

#[pyclass(name = "Solution", frozen)]
struct PySolution {
    inner: SolutionSpec,
}

#[pymethods]
impl PySolution {
    /// An embedded id such as `"48-5-18"` or a path to a TOML file.
    #[staticmethod]
    fn load(id_or_path: &str) -> PyResult<Self> {
        Ok(PySolution {
            inner: load_solution_or_file(id_or_path).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        Ok(PySolution {
            inner: SolutionSpec::from_toml_str(text).map_err(err)?,
        })
    }

    #[getter]
    fn id(&self) -> String {
        self.inner.id.clone()
    }

    #[getter]
    fn group(&self) -> &'static str {
        self.inner.group.as_str()
    }

    #[getter]
    fn expected(&self) -> (usize, usize, usize) {
        let e = self.inner.expected;
        (e.v, e.r, e.s)
    }

    #[getter]
    fn cycles(&self) -> Vec<(String, Vec<String>)> {
        self.inner.cycles.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    fn verify(&self) -> PyResult<PyCertificate> {
        Ok(PyCertificate {
            inner: hwp_core::verify_solution(&self.inner).map_err(err)?,
        })
    }

    /// Difference set of a base cycle, inverses included.
    fn omega(&self, cycle: &str) -> PyResult<Vec<String>> {
        let r = self.inner.resolve().map_err(err)?;
        let omega = partial_differences(&r.group, r.cycle(cycle).map_err(err)?);
        Ok(omega.iter().map(|g| r.group.name(g)).collect())
    }

    /// Distinct translates of a base cycle under a named subgroup.
    fn orbit(&self, cycle: &str, subgroup: &str) -> PyResult<Vec<Vec<String>>> {
        let r = self.inner.resolve().map_err(err)?;
        let orbit = cycle_orbit(
            &r.group,
            r.subgroup(subgroup).map_err(err)?,
            r.cycle(cycle).map_err(err)?,
        );
        Ok(orbit
            .cycles
            .iter()
            .map(|c| c.vertices().iter().map(|&g| r.group.name(g)).collect())
            .collect())
    }

    fn to_toml(&self) -> String {
        self.inner.to_toml_string()
    }

    fn to_dot(&self) -> PyResult<String> {
        solution_dot(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Solution({:?}, {})", self.inner.id, self.inner.expected)
    }
}

#[pyclass(name = "SearchResult", frozen, get_all)]
struct PySearchResult {
    /// `"found"`, `"exhausted"` or `"budget-exceeded"`.
    verdict: String,
    nodes: u64,
    reason: Option<String>,
    solution: Option<Py<PySolution>>,
}

#[pymethods]
impl PySearchResult {
    fn __repr__(&self) -> String {
        format!("SearchResult({:?}, nodes={})", self.verdict, self.nodes)
    }
}

fn solution_ids() -> Vec<&'static str> {
    hwp_core::list_solutions()
}

/// Ids of the embedded solutions.
#[pyfunction]
fn list_solutions() -> Vec<&'static str> {
    solution_ids()
}

/// Run the searcher on a target given as TOML text.
#[pyfunction]
#[pyo3(signature = (target_toml, node_budget = None, parallel = false))]
fn search(py: Python<'_>, target_toml: &str, node_budget: Option<u64>, parallel: bool) -> PyResult<PySearchResult> {
    let target = SearchTarget::from_toml_str(target_toml).map_err(err)?;
    let options = SearchOptions {
        parallel,
        node_budget,
    };
    let outcome = py.detach(|| search_hwp_with(&target, &options));
    let verdict = match outcome.verdict {
        hwp_core::search::SearchVerdict::Found => "found",
        hwp_core::search::SearchVerdict::Exhausted => "exhausted",
        hwp_core::search::SearchVerdict::BudgetExceeded => "budget-exceeded",
    };
    let solution = match outcome.solution {
        Some(s) => Some(Py::new(py, PySolution { inner: s })?),
        None => None,
    };
    Ok(PySearchResult {
        verdict: verdict.into(),
        nodes: outcome.stats.nodes,
        reason: outcome.reason,
        solution,
    })
}

#[pymodule]
fn hwp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PySearchResult>()?;
    m.add_function(wrap_pyfunction!(list_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
