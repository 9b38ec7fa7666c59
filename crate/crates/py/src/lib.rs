use num_bigint::BigUint;
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;

use ranklab::constructions::{gabidulin as build_gabidulin, skew_mrd, twisted_code, SkewParams, TwistFamily, TwistSpec};
use ranklab::explore::{census as run_census, equivalence_test, sample_mrd_fraction, CensusParams};
use ranklab::symmetric::schmidt_bound as bound;
use ranklab::transforms::{delsarte_dual, macwilliams_transform};
use ranklab::{Error, Field, Linearity, RankDistribution, RankMetricCode};

fn err(e: Error) -> PyErr {
    match e {
        Error::Resource { .. } => PyMemoryError::new_err(e.to_string()),
        other => {
            let msg = match other.witness() {
                Some(w) => format!("{other} (witness: {w})"),
                None => other.to_string(),
            };
            PyValueError::new_err(msg)
        }
    }
}

/// A rank-metric code held by the Rust library.
#[pyclass(name = "Code", frozen)]
struct PyCode {
    inner: RankMetricCode,
}

#[pymethods]
impl PyCode {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCode {
            inner: RankMetricCode::from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn linearity(&self) -> String {
        self.inner.linearity().to_string()
    }

    fn size(&self) -> BigUint {
        self.inner.size()
    }

    fn rank_distribution(&self) -> PyResult<Vec<u128>> {
        Ok(self.inner.rank_distribution().map_err(err)?.0)
    }

    fn min_distance(&self) -> PyResult<usize> {
        self.inner.min_distance().map_err(err)
    }

    fn is_mrd(&self) -> PyResult<bool> {
        self.inner.is_mrd().map_err(err)
    }

    fn dual(&self) -> PyResult<PyCode> {
        Ok(PyCode {
            inner: delsarte_dual(&self.inner).map_err(err)?,
        })
    }

    fn same_code(&self, other: &PyCode) -> bool {
        self.inner.same_code(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(q={}, n={}, m={}, linearity={}, prime_dim={})",
            self.inner.q(),
            self.inner.n(),
            self.inner.m(),
            self.inner.linearity(),
            self.inner.prime_dim()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (q, n, k, s=1))]
fn gabidulin(q: &str, n: u32, k: usize, s: u32) -> PyResult<PyCode> {
    let f = Field::parse(q).map_err(err)?;
    Ok(PyCode {
        inner: build_gabidulin(&f, n, k, s).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (q, n, k, family="gtg", eta=0, h=1, s=1))]
fn twisted(q: &str, n: u32, k: usize, family: &str, eta: u32, h: u32, s: u32) -> PyResult<PyCode> {
    let f = Field::parse(q).map_err(err)?;
    let family: TwistFamily = family.parse().map_err(err)?;
    Ok(PyCode {
        inner: twisted_code(&TwistSpec::new(family, k, eta, h), &f, n, s).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (q, n, s_deg, k, eta=0, seed=0))]
fn skew(q: &str, n: u32, s_deg: u32, k: usize, eta: u32, seed: u64) -> PyResult<PyCode> {
    let f = Field::parse(q).map_err(err)?;
    let mut p = SkewParams::new(n, s_deg, k, eta);
    p.seed = seed;
    Ok(PyCode {
        inner: skew_mrd(&f, &p).map_err(err)?,
    })
}

/// Rank distribution of the dual predicted from `dist`.
#[pyfunction]
fn macwilliams(dist: Vec<u128>, q: u64, n: usize, m: usize) -> PyResult<Vec<u128>> {
    Ok(macwilliams_transform(&RankDistribution(dist), q, n, m).map_err(err)?.0)
}

#[pyfunction]
#[pyo3(signature = (q, n, d, additive=false))]
fn schmidt_bound(q: u64, n: u32, d: u32, additive: bool) -> PyResult<BigUint> {
    bound(q, n, d, additive).map_err(err)
}

/// `True`, `False`, or `None` when the search is out of reach.
#[pyfunction]
fn equivalent(a: &PyCode, b: &PyCode) -> PyResult<Option<bool>> {
    Ok(equivalence_test(&a.inner, &b.inner).map_err(err)?.is_equivalent())
}

/// Census report as a JSON string.
#[pyfunction]
#[pyo3(signature = (q, n, m, dim, d, transpose=true, classify=true))]
fn census(py: Python<'_>, q: &str, n: usize, m: usize, dim: usize, d: usize, transpose: bool, classify: bool) -> PyResult<String> {
    let f = Field::parse(q).map_err(err)?;
    let mut p = CensusParams::new(&f, n, m, dim, d);
    p.transpose = transpose;
    p.classify = classify;
    let report = py.detach(|| run_census(&p)).map_err(err)?;
    Ok(report.to_json())
}

/// `(mrd, samples, exact)` for random `dim`-dimensional subspaces.
#[pyfunction]
#[pyo3(signature = (q, n, m, dim, linearity="fq", trials=10000, seed=0))]
fn sample(q: &str, n: usize, m: usize, dim: usize, linearity: &str, trials: u64, seed: u64) -> PyResult<(u64, u64, bool)> {
    let f = Field::parse(q).map_err(err)?;
    let lin: Linearity = linearity.parse().map_err(err)?;
    let r = sample_mrd_fraction(&f, n, m, dim, lin, trials, seed).map_err(err)?;
    Ok((r.mrd, r.samples, r.exact))
}

#[pymodule]
fn pyranklab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(gabidulin, m)?)?;
    m.add_function(wrap_pyfunction!(twisted, m)?)?;
    m.add_function(wrap_pyfunction!(skew, m)?)?;
    m.add_function(wrap_pyfunction!(macwilliams, m)?)?;
    m.add_function(wrap_pyfunction!(schmidt_bound, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    Ok(())
}
