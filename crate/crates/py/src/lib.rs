//! Python bindings: the catalog, variety analysis, the Monge pipeline, the
//! CI criterion, threshold predicates, and quadric-system syzygy data.
//! Structured results cross the boundary as JSON strings; `Variety` wraps a
//! parametrization with its marked point.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use prodiff::catalog;
use prodiff::osculate::{monge_quadrics, osculating_space, quadratic_generation_check};
use prodiff::quadsys::{
    bracket_part, prolongation, relations, split_dims, thresholds, variety_from_quadrics,
    QuadricSystem,
};
use prodiff::rat::{parse_rat, Rat};
use prodiff::report::{analyze, random_point, render_json, AnalysisConfig};
use prodiff::variety::{adapt_at_point, ci_verdict, ideal_slice, ParamVariety, VarietySpec};
use prodiff::mpoly::VarStyle;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass]
struct Variety {
    inner: ParamVariety,
    point: Vec<Rat>,
}

#[pymethods]
impl Variety {
    /// Load a catalog entry by name.
    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        let e = catalog::catalog_get(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown catalog entry `{name}`")))?;
        Ok(Variety {
            inner: e.variety,
            point: e.point,
        })
    }

    /// Build from a variety spec JSON string.
    #[staticmethod]
    fn from_spec_json(text: &str) -> PyResult<Self> {
        let spec: VarietySpec = serde_json::from_str(text).map_err(err)?;
        let (v, p) = spec.to_variety().map_err(err)?;
        let n = v.n;
        Ok(Variety {
            inner: v,
            point: p.unwrap_or_else(|| vec![Rat::from_integer(0.into()); n]),
        })
    }

    /// Build the graph variety of a quadric system (strings in t1..tn).
    #[staticmethod]
    fn from_quadrics(n: usize, quadrics: Vec<String>, label: &str) -> PyResult<Self> {
        let refs: Vec<&str> = quadrics.iter().map(|s| s.as_str()).collect();
        let sys = QuadricSystem::from_strings(n, &refs).map_err(err)?;
        let v = variety_from_quadrics(&sys, label);
        let point = vec![Rat::from_integer(0.into()); n];
        Ok(Variety { inner: v, point })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn a(&self) -> usize {
        self.inner.a
    }

    fn spec_json(&self) -> PyResult<String> {
        let spec = VarietySpec::from_variety(&self.inner, Some(&self.point));
        serde_json::to_string_pretty(&spec).map_err(err)
    }

    /// Move the marked point (list of rational strings) or pick a seeded
    /// random smooth one.
    fn set_point(&mut self, coords: Vec<String>) -> PyResult<()> {
        if coords.len() != self.inner.n {
            return Err(PyValueError::new_err(format!(
                "expected {} coordinates",
                self.inner.n
            )));
        }
        let p: Result<Vec<Rat>, _> = coords.iter().map(|s| parse_rat(s)).collect();
        self.point = p.map_err(err)?;
        Ok(())
    }

    fn set_random_point(&mut self, seed: u64) -> PyResult<()> {
        self.point = random_point(&self.inner, seed).map_err(err)?;
        Ok(())
    }

    /// Exact dimension of I_d.
    fn ideal_dim(&self, d: u32) -> usize {
        ideal_slice(&self.inner, d).len()
    }

    /// Generators of I_d as polynomial strings in x0..x{n+a}.
    fn ideal_generators(&self, d: u32) -> Vec<String> {
        ideal_slice(&self.inner, d)
            .iter()
            .map(|p| p.to_string_style(VarStyle::X))
            .collect()
    }

    /// Dimension of the space of degree-d forms osculating to order k.
    fn osculating_dim(&self, d: u32, k: u32) -> PyResult<usize> {
        let chart = adapt_at_point(&self.inner, &self.point, k).map_err(err)?;
        Ok(osculating_space(&chart, d, k).map_err(err)?.dim())
    }

    /// Full analysis report as JSON.
    #[pyo3(signature = (max_degree = 3, max_order = 7))]
    fn analyze_json(&self, max_degree: u32, max_order: u32) -> PyResult<String> {
        let cfg = AnalysisConfig {
            max_degree,
            max_order,
            run_monge: true,
            run_ci: true,
            seed: None,
        };
        let rep = analyze(&self.inner, &self.point, &cfg).map_err(err)?;
        Ok(render_json(&rep))
    }

    /// Monge pipeline report as JSON.
    fn monge_json(&self) -> PyResult<String> {
        let chart = adapt_at_point(&self.inner, &self.point, 5).map_err(err)?;
        let rep = monge_quadrics(&chart).map_err(err)?;
        serde_json::to_string_pretty(&rep).map_err(err)
    }

    /// Complete-intersection criterion report as JSON.
    #[pyo3(signature = (max_degree = 3))]
    fn ci_json(&self, max_degree: u32) -> PyResult<String> {
        let rep = ci_verdict(&self.inner, &self.point, max_degree).map_err(err)?;
        serde_json::to_string_pretty(&rep).map_err(err)
    }

    /// Quadratic-generation check as JSON.
    #[pyo3(signature = (max_degree = 3))]
    fn quadratic_generation_json(&self, max_degree: u32) -> PyResult<String> {
        let rep = quadratic_generation_check(&self.inner, &self.point, max_degree).map_err(err)?;
        serde_json::to_string_pretty(&rep).map_err(err)
    }
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::catalog_names().iter().map(|s| s.to_string()).collect()
}

/// The three codimension threshold predicates for (n, a, b_sing).
#[pyfunction]
fn threshold_predicates(n: i64, a: i64, b_sing: i64) -> (bool, bool, bool) {
    let t = thresholds(n, a, b_sing);
    (
        t.prolongation_forced_zero,
        t.no_linear_syzygies_forced,
        t.ci_if_quadric_generated,
    )
}

/// Syzygy data of a quadric system given as polynomial strings in t1..tn:
/// (span dim, prolongation dim, linear syzygy dim, image dim).
#[pyfunction]
fn quadric_system_dims(n: usize, quadrics: Vec<String>) -> PyResult<(usize, usize, usize, usize)> {
    let refs: Vec<&str> = quadrics.iter().map(|s| s.as_str()).collect();
    let sys = QuadricSystem::from_strings(n, &refs).map_err(err)?;
    let (img, ker) = split_dims(&sys);
    Ok((sys.a(), prolongation(&sys).len(), ker, img))
}

/// Number of degree-e relations among the quadrics (total, new).
#[pyfunction]
fn quadric_relations(n: usize, quadrics: Vec<String>, e: u32) -> PyResult<(usize, usize)> {
    let refs: Vec<&str> = quadrics.iter().map(|s| s.as_str()).collect();
    let sys = QuadricSystem::from_strings(n, &refs).map_err(err)?;
    let (_, rep) = relations(&sys, e);
    Ok((rep.dim_relations, rep.dim_new))
}

/// Linear syzygy certificates of a quadric system, as covector coefficient
/// rows per basis quadric.
#[pyfunction]
fn quadric_linear_syzygies(n: usize, quadrics: Vec<String>) -> PyResult<Vec<Vec<Vec<String>>>> {
    let refs: Vec<&str> = quadrics.iter().map(|s| s.as_str()).collect();
    let sys = QuadricSystem::from_strings(n, &refs).map_err(err)?;
    let certs = bracket_part(&sys);
    Ok(certs
        .into_iter()
        .map(|c| match c {
            prodiff::quadsys::SyzygyCert::Linear { l } => l
                .into_iter()
                .map(|cov| cov.iter().map(prodiff::rat::fmt_rat).collect())
                .collect(),
            _ => Vec::new(),
        })
        .collect())
}

#[pymodule]
fn prodiff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Variety>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_predicates, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_system_dims, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_relations, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_linear_syzygies, m)?)?;
    Ok(())
}
