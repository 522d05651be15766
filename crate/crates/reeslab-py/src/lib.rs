//! Python bindings: rings, presented modules, Rees-algebra invariants and
//! the full analysis entry point returning canonical JSON.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use reeslab::bourbaki::{self, BourbakiMode};
use reeslab::config::{Budget, Config};
use reeslab::field::FieldSpec;
use reeslab::groebner::Ideal;
use reeslab::input;
use reeslab::modlib::{self, PresentedModule};
use reeslab::parse::parse_polynomial;
use reeslab::rees;
use reeslab::report::{self, AnalyzeFlags};
use reeslab::ring::PolyRing;
use std::collections::BTreeMap;
use std::sync::Arc;

fn err(e: reeslab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<BourbakiMode> {
    match mode {
        "random" => Ok(BourbakiMode::Random),
        "symbolic" => Ok(BourbakiMode::Symbolic),
        _ => Err(PyValueError::new_err(
            "mode must be `random` or `symbolic`",
        )),
    }
}

/// A graded polynomial ring over Z/p (default p = 32003) or Q.
#[pyclass(name = "Ring", frozen)]
struct PyRing {
    inner: Arc<PolyRing>,
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (vars, field = None))]
    fn new(vars: Vec<String>, field: Option<&str>) -> PyResult<Self> {
        let field = match field {
            None => FieldSpec::default_prime(),
            Some("q") => FieldSpec::Rationals,
            Some(s) => match s.strip_prefix("zmod ") {
                Some(p) => FieldSpec::PrimeField(
                    p.trim().parse().map_err(|_| {
                        PyValueError::new_err("field must be `q` or `zmod <prime>`")
                    })?,
                ),
                None => {
                    return Err(PyValueError::new_err(
                        "field must be `q` or `zmod <prime>`",
                    ))
                }
            },
        };
        let n = vars.len();
        let inner = PolyRing::new(
            field,
            vars,
            vec![1; n],
            reeslab::MonomialOrder::GrevLex,
        )
        .map_err(err)?;
        Ok(PyRing { inner })
    }

    fn vars(&self) -> Vec<String> {
        self.inner.vars.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Ring({}, field `{}`)",
            self.inner.vars.join(", "),
            report::field_name(&self.inner.field)
        )
    }
}

/// A finitely presented graded module, built from a direct sum of ideals.
#[pyclass(name = "Module", frozen)]
struct PyPresentedModule {
    inner: PresentedModule,
}

impl PyPresentedModule {
    fn package(&self) -> PyResult<rees::ReesPackage> {
        rees::rees_algebra(&self.inner, &Budget::default()).map_err(err)
    }
}

#[pymethods]
impl PyPresentedModule {
    #[staticmethod]
    fn direct_sum_of_ideals(ring: &PyRing, ideals: Vec<Vec<String>>) -> PyResult<Self> {
        let mut parsed = vec![];
        for gens in &ideals {
            let polys = gens
                .iter()
                .map(|s| parse_polynomial(&ring.inner, s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            parsed.push(Ideal::new(&ring.inner, polys).map_err(err)?);
        }
        let inner =
            PresentedModule::direct_sum_of_ideals(&ring.inner, &parsed, &Budget::default())
                .map_err(err)?;
        Ok(PyPresentedModule { inner })
    }

    fn rank(&self) -> PyResult<usize> {
        modlib::module_rank(&self.inner).map_err(err)
    }

    fn mu(&self) -> usize {
        modlib::minimal_generators(&self.inner)
    }

    fn depth(&self) -> PyResult<i64> {
        modlib::depth(&self.inner, &Budget::default()).map_err(err)
    }

    fn betti(&self) -> PyResult<Vec<usize>> {
        let res = modlib::free_resolution(&self.inner, &Budget::default()).map_err(err)?;
        Ok(res.betti)
    }

    fn is_torsion_free(&self) -> PyResult<bool> {
        modlib::is_torsion_free(&self.inner, &Budget::default()).map_err(err)
    }

    fn analytic_spread(&self) -> PyResult<i64> {
        let p = self.package()?;
        rees::analytic_spread(&p, &Budget::default()).map_err(err)
    }

    fn is_linear_type(&self) -> PyResult<bool> {
        let p = self.package()?;
        rees::is_linear_type(&p, &Budget::default()).map_err(err)
    }

    fn rees_is_cm(&self) -> PyResult<(bool, i64, i64)> {
        let p = self.package()?;
        let cm = rees::rees_cm_test(&p, &Budget::default()).map_err(err)?;
        Ok((cm.is_cm, cm.depth, cm.dim))
    }

    #[pyo3(signature = (seed = 42))]
    fn reduction_number(&self, seed: u64) -> PyResult<(u32, String, u64)> {
        let p = self.package()?;
        let config = Config {
            seed,
            ..Config::default()
        };
        let r = rees::reduction_number(&p, &config, &Budget::default()).map_err(err)?;
        Ok((r.value, r.status, r.seed))
    }

    fn depth_of_powers(&self, n_max: u32) -> PyResult<BTreeMap<u32, i64>> {
        let budget = Budget::default();
        let p = self.package()?;
        let mut out = BTreeMap::new();
        for n in 1..=n_max.max(1) {
            let en = rees::power_component(&p, n, &budget).map_err(err)?;
            out.insert(n, modlib::depth(&en, &budget).map_err(err)?);
        }
        Ok(out)
    }

    #[pyo3(signature = (mode = "random", seed = 42))]
    fn bourbaki(&self, mode: &str, seed: u64) -> PyResult<(i64, Vec<String>)> {
        let config = Config {
            seed,
            ..Config::default()
        };
        let b = bourbaki::generic_bourbaki(
            &self.inner,
            None,
            parse_mode(mode)?,
            &config,
            &Budget::default(),
        )
        .map_err(err)?;
        let gens = b.ideal.gens.iter().map(|g| g.render()).collect();
        Ok((b.height, gens))
    }

    fn __repr__(&self) -> String {
        format!(
            "Module({} generators, {} relations)",
            self.inner.phi.rows, self.inner.phi.cols
        )
    }
}

/// Run the full analysis on input text and return the canonical JSON report.
#[pyfunction]
#[pyo3(signature = (text, theorem = None, seed = None, mode = None))]
fn analyze(
    text: &str,
    theorem: Option<String>,
    seed: Option<u64>,
    mode: Option<&str>,
) -> PyResult<String> {
    let spec = input::parse_input(text).map_err(err)?;
    let flags = AnalyzeFlags {
        theorem,
        seed,
        mode: mode.map(parse_mode).transpose()?,
    };
    let rep = report::analyze(&spec, &flags).map_err(err)?;
    report::to_canonical_json(&rep).map_err(err)
}

/// Run the full analysis on an input file and return the JSON report.
#[pyfunction]
#[pyo3(signature = (path, theorem = None, seed = None))]
fn analyze_file(path: &str, theorem: Option<String>, seed: Option<u64>) -> PyResult<String> {
    let spec = input::load_input(std::path::Path::new(path)).map_err(err)?;
    let flags = AnalyzeFlags {
        theorem,
        seed,
        mode: None,
    };
    let rep = report::analyze(&spec, &flags).map_err(err)?;
    report::to_canonical_json(&rep).map_err(err)
}

#[pymodule]
fn reeslab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyPresentedModule>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_file, m)?)?;
    Ok(())
}
