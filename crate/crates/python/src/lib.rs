//! Python bindings: germs, invariant reports, ideals, deformations and the catalog.

use curvelog::catalog::{build_catalog, verify_catalog};
use curvelog::cli::{build_report, parse_poly, What};
use curvelog::germ::{normalize, CurveGerm};
use curvelog::logideals::{
    certify_es_log, ideal_ea, ideal_ea_fix, ideal_ea_log, ideal_ea_rel, semiuniversal_family, tau_report,
    tjurina_ideal, Certification, Flavor, LogError, LogRoute,
};
use curvelog::branches::{ideal_cd, ideal_ec, inclusion_chain_check};
use curvelog::series2::BiPoly;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(pycurvelog, IdentityViolation, PyException);

fn to_py(e: LogError) -> PyErr {
    match curvelog::cli::exit_code(&e) {
        curvelog::cli::EXIT_INVALID_INPUT => PyValueError::new_err(e.to_string()),
        curvelog::cli::EXIT_IDENTITY_VIOLATION => IdentityViolation::new_err(e.to_string()),
        _ => PyException::new_err(e.to_string()),
    }
}

fn parse(poly: &str) -> PyResult<BiPoly> {
    parse_poly(poly).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn parse_what(what: &str) -> PyResult<What> {
    Ok(match what {
        "all" => What::All,
        "tau" => What::Tau,
        "tes" => What::Tes,
        "ideals" => What::Ideals,
        "deformation" => What::Deformation,
        "resolution" => What::Resolution,
        other => return Err(PyValueError::new_err(format!("unknown section {other}"))),
    })
}

/// A reduced germ `F = y·f + x^w·u` not containing the divisor `y = 0`.
#[pyclass(frozen, module = "pycurvelog")]
struct Germ {
    inner: CurveGerm,
}

#[pymethods]
impl Germ {
    #[new]
    fn new(poly: &str) -> PyResult<Self> {
        let p = parse(poly)?;
        let inner = normalize(&p).map_err(|e| to_py(e.into()))?;
        Ok(Germ { inner })
    }

    #[getter]
    fn poly(&self) -> String {
        self.inner.poly.to_text()
    }

    /// Intersection multiplicity with the divisor.
    #[getter]
    fn w(&self) -> u32 {
        self.inner.w
    }

    /// Tjurina-type numbers keyed by name.
    fn invariants(&self) -> PyResult<Vec<(&'static str, usize)>> {
        let r = tau_report(&self.inner).map_err(to_py)?;
        Ok(vec![
            ("w", r.w as usize),
            ("tau", r.tau),
            ("tau_fix", r.tau_fix),
            ("tau_rel_d", r.tau_rel_d),
            ("tau_rel_dp", r.tau_rel_dp),
            ("tau_log", r.tau_log),
            ("tau_cup", r.tau_cup),
            ("tes_log", r.tes_log),
            ("tes_cup", r.tes_cup),
            ("delta", r.delta),
        ])
    }

    /// Reduced basis of one of `ea, ea_fix, ea_rel_d, ea_rel_dp, ea_log, ea_cup, ec, cd`.
    fn ideal(&self, name: &str) -> PyResult<Vec<String>> {
        let g = &self.inner;
        let basis = match name {
            "ea" => ideal_ea(g),
            "ea_fix" => ideal_ea_fix(g),
            "ea_rel_d" => ideal_ea_rel(g, false),
            "ea_rel_dp" => ideal_ea_rel(g, true),
            "ea_log" => ideal_ea_log(g, LogRoute::Colon),
            "ea_cup" => tjurina_ideal(&g.with_divisor()),
            "ec" => ideal_ec(g).map_err(LogError::from),
            "cd" => ideal_cd(g).map_err(LogError::from),
            other => return Err(PyValueError::new_err(format!("unknown ideal {other}"))),
        }
        .map_err(to_py)?;
        Ok(basis.to_strings())
    }

    /// `(template, [(parameter, monomial)])` of the semiuniversal family.
    #[pyo3(signature = (absolute = false))]
    fn deformation(&self, absolute: bool) -> PyResult<(String, Vec<(String, String)>)> {
        let flavor = if absolute { Flavor::Absolute } else { Flavor::Log };
        let fam = semiuniversal_family(&self.inner, flavor).map_err(to_py)?;
        let params = fam.params.iter().map(|(t, m)| (t.clone(), m.to_text())).collect();
        Ok((fam.template, params))
    }

    /// Whether every link of `I^ea ⊆ I^ea_log ⊆ I^ec ⊆ I^cd` and the numeric bounds hold.
    fn chain_holds(&self) -> PyResult<bool> {
        Ok(inclusion_chain_check(&self.inner).map_err(to_py)?.all_hold())
    }

    /// `"certified_equal"`, `"certified_sandwich"` or `"refuted: <reason>"`.
    fn certify(&self, candidate: Vec<String>) -> PyResult<String> {
        let gens = candidate.iter().map(|s| parse(s)).collect::<PyResult<Vec<_>>>()?;
        Ok(match certify_es_log(&self.inner, &gens).map_err(to_py)? {
            Certification::CertifiedEqual => "certified_equal".into(),
            Certification::CertifiedSandwich => "certified_sandwich".into(),
            Certification::Refuted { reason } => format!("refuted: {reason}"),
        })
    }

    fn __repr__(&self) -> String {
        format!("Germ('{}', w={})", self.inner.poly.to_text(), self.inner.w)
    }
}

/// The JSON report printed by `curvelog report --format json`.
#[pyfunction]
#[pyo3(signature = (poly, what = "all"))]
fn report_json(poly: &str, what: &str) -> PyResult<String> {
    let p = parse(poly)?;
    let report = build_report(&p, parse_what(what)?, None).map_err(to_py)?;
    serde_json::to_string(&report.doc).map_err(|e| PyException::new_err(e.to_string()))
}

/// `(label, passed, diffs)` for every catalog row up to `wmax`.
#[pyfunction]
#[pyo3(signature = (wmax = 10))]
fn verify(py: Python<'_>, wmax: u32) -> Vec<(String, bool, Vec<String>)> {
    let report = py.detach(|| verify_catalog(&build_catalog(wmax)));
    report.entries.into_iter().map(|e| (e.label, e.passed, e.diffs)).collect()
}

#[pymodule]
fn pycurvelog(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Germ>()?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("IdentityViolation", m.py().get_type::<IdentityViolation>())?;
    Ok(())
}
