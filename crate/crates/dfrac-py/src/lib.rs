//! Python bindings for the dfrac crate: factorial powers, fractional
//! operators on grid functions, identity suites, Mittag-Leffler functions,
//! and the fractional difference equation solvers. Rational parameters
//! (orders, bases, arguments) are passed as strings like "1/2" or "0.25"
//! and converted exactly.

#![allow(clippy::useless_conversion)] // the ? operator re-converts PyErr inside #[pyfunction] bodies

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dfrac::fde::{self, FdeProblem, Method};
use dfrac::grid::{Direction, Grid, GridFn};
use dfrac::ml::{ml_eval as ml_eval_rs, MlFamily, MlSpec};
use dfrac::ops::{
    caputo_diff, dual_caputo_diff, frac_sum, riemann_diff, Calculus, Family, OpSpec, Side,
};
use dfrac::verify::{run_all_suites, SweepConfig};
use dfrac::Rat;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat(s: &str) -> PyResult<Rat> {
    s.parse::<Rat>().map_err(err)
}

fn parse_family(s: &str) -> PyResult<Family> {
    match s {
        "sum" => Ok(Family::Sum),
        "riemann" => Ok(Family::Riemann),
        "caputo" => Ok(Family::Caputo),
        "dual-caputo" => Ok(Family::DualCaputo),
        _ => Err(PyValueError::new_err(format!("unknown family {s:?}"))),
    }
}

fn parse_calculus(s: &str) -> PyResult<Calculus> {
    match s {
        "delta" => Ok(Calculus::Delta),
        "nabla" => Ok(Calculus::Nabla),
        _ => Err(PyValueError::new_err(format!("unknown calculus {s:?}"))),
    }
}

fn parse_side(s: &str) -> PyResult<Side> {
    match s {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err(PyValueError::new_err(format!("unknown side {s:?}"))),
    }
}

/// A function sampled on a unit-step grid. `forward=True` holds points
/// offset, offset+1, …; `forward=False` holds offset, offset−1, ….
/// Extension samples sit just outside the grid (before the offset on
/// forward grids, after it on backward ones).
#[pyclass(name = "GridFn")]
#[derive(Clone)]
struct PyGridFn {
    inner: GridFn,
}

#[pymethods]
impl PyGridFn {
    #[new]
    #[pyo3(signature = (offset, values, forward=true, ext=Vec::new()))]
    fn new(offset: &str, values: Vec<f64>, forward: bool, ext: Vec<f64>) -> PyResult<Self> {
        let offset = rat(offset)?;
        let grid = if forward {
            Grid::forward(offset, values.len())
        } else {
            Grid::backward(offset, values.len())
        };
        Ok(PyGridFn {
            inner: GridFn::with_ext(grid, values, ext).map_err(err)?,
        })
    }

    #[getter]
    fn offset(&self) -> String {
        self.inner.offset().to_string()
    }

    #[getter]
    fn forward(&self) -> bool {
        self.inner.direction() == Direction::Forward
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    /// The grid points as exact rational strings, in storage order.
    fn points(&self) -> Vec<String> {
        (0..self.inner.len())
            .map(|k| self.inner.grid().point(k).to_string())
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "GridFn(offset={}, len={}, forward={})",
            self.inner.offset(),
            self.inner.len(),
            self.inner.direction() == Direction::Forward
        )
    }
}

/// Falling factorial power t^(α) = Γ(t+1)/Γ(t+1−α), pole-aware.
#[pyfunction]
fn falling(t: &str, alpha: &str) -> PyResult<f64> {
    dfrac::falling(&rat(t)?, &rat(alpha)?).map_err(err)
}

/// Rising factorial power t^{ᾱ} = Γ(t+α)/Γ(t), pole-aware.
#[pyfunction]
fn rising(t: &str, alpha: &str) -> PyResult<f64> {
    dfrac::rising(&rat(t)?, &rat(alpha)?).map_err(err)
}

/// Γ(p)/Γ(q) with limit semantics at the poles.
#[pyfunction]
fn gamma_ratio(p: &str, q: &str) -> PyResult<f64> {
    dfrac::gamma_ratio(&rat(p)?, &rat(q)?).map_err(err)
}

/// n = [α]+1 (equal to α for integer α).
#[pyfunction]
fn floor_order(alpha: &str) -> PyResult<i64> {
    dfrac::floor_order(&rat(alpha)?).map_err(err)
}

/// Apply a fractional operator. family: sum | riemann | caputo |
/// dual-caputo; calculus: delta | nabla; side: left | right.
#[pyfunction]
fn apply(
    family: &str,
    calculus: &str,
    side: &str,
    order: &str,
    base: &str,
    f: &PyGridFn,
) -> PyResult<PyGridFn> {
    let family = parse_family(family)?;
    let spec = OpSpec::new(
        family,
        parse_calculus(calculus)?,
        parse_side(side)?,
        rat(order)?,
        rat(base)?,
    );
    let out = match family {
        Family::Sum => frac_sum(&spec, &f.inner),
        Family::Riemann => riemann_diff(&spec, &f.inner),
        Family::Caputo => caputo_diff(&spec, &f.inner),
        Family::DualCaputo => dual_caputo_diff(&spec, &f.inner),
    }
    .map_err(err)?;
    Ok(PyGridFn { inner: out })
}

/// The grid reflection (Qf)(s) = f(a+b−s) on [a..b].
#[pyfunction]
fn q_transform(f: &PyGridFn, a: &str, b: &str) -> PyResult<PyGridFn> {
    Ok(PyGridFn {
        inner: dfrac::verify::q_transform(&f.inner, &rat(a)?, &rat(b)?).map_err(err)?,
    })
}

/// Evaluate a discrete Mittag-Leffler function. Returns (value, K) with K
/// the truncation index.
#[pyfunction]
#[pyo3(signature = (family, alpha, lambda_, z, beta="1", tol=1e-13, kmax=5000))]
fn ml_eval(
    family: &str,
    alpha: &str,
    lambda_: f64,
    z: &str,
    beta: &str,
    tol: f64,
    kmax: usize,
) -> PyResult<(f64, usize)> {
    let family = match family {
        "delta" => MlFamily::Delta,
        "nabla" => MlFamily::Nabla,
        _ => return Err(PyValueError::new_err(format!("unknown family {family:?}"))),
    };
    let spec = MlSpec::new(family, rat(alpha)?, rat(beta)?, lambda_).with_truncation(tol, kmax);
    let v = ml_eval_rs(&spec, &rat(z)?).map_err(err)?;
    Ok((v.value, v.terms))
}

/// Run identity suites. Returns rows (suite, params, residual, pass).
#[pyfunction]
#[pyo3(signature = (suite="all", seed=42, tol=None))]
fn check(suite: &str, seed: u64, tol: Option<f64>) -> PyResult<Vec<(String, String, f64, bool)>> {
    let cfg = SweepConfig {
        seed,
        tol,
        only: vec![suite.to_string()],
        ..SweepConfig::default()
    };
    let reports = run_all_suites(&cfg).map_err(err)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.suite, r.params, r.residual, r.pass))
        .collect())
}

/// Solve a linear Caputo fractional difference IVP. forcing is a list of
/// samples on the equation grid (N_0 for delta, N_{a+1} for nabla) or one
/// of "zero" | "one" | "ramp". Returns (solution, residual).
#[pyfunction]
#[pyo3(signature = (calculus, alpha, lambda_, a0, n, forcing=None, method="ml", a=None))]
#[allow(clippy::too_many_arguments)]
fn solve(
    calculus: &str,
    alpha: &str,
    lambda_: f64,
    a0: f64,
    n: usize,
    forcing: Option<Bound<'_, PyAny>>,
    method: &str,
    a: Option<&str>,
) -> PyResult<(PyGridFn, f64)> {
    let calculus = parse_calculus(calculus)?;
    let alpha = rat(alpha)?;
    let a = match a {
        Some(s) => rat(s)?,
        None if calculus == Calculus::Delta => &alpha - 1,
        None => Rat::zero(),
    };
    let forcing = match forcing {
        None => fde::builtin_forcing("zero", calculus, &a, n).map_err(err)?,
        Some(obj) => {
            if let Ok(name) = obj.extract::<String>() {
                fde::builtin_forcing(&name, calculus, &a, n).map_err(err)?
            } else {
                let vals: Vec<f64> = obj.extract()?;
                let offset = match calculus {
                    Calculus::Delta => Rat::zero(),
                    Calculus::Nabla => &a + 1,
                };
                GridFn::new(Grid::forward(offset, vals.len()), vals).map_err(err)?
            }
        }
    };
    let problem = FdeProblem::new(calculus, alpha, lambda_, a, a0, forcing, n).map_err(err)?;
    let method = match method {
        "ml" => Method::MlClosedForm,
        "march" => Method::Marching,
        "picard" => Method::Picard,
        _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
    };
    let report = fde::solve(&problem, method, 50).map_err(err)?;
    Ok((
        PyGridFn {
            inner: report.solution,
        },
        report.residual,
    ))
}

#[pymodule]
fn dfrac_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGridFn>()?;
    m.add_function(wrap_pyfunction!(falling, m)?)?;
    m.add_function(wrap_pyfunction!(rising, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(floor_order, m)?)?;
    m.add_function(wrap_pyfunction!(apply, m)?)?;
    m.add_function(wrap_pyfunction!(q_transform, m)?)?;
    m.add_function(wrap_pyfunction!(ml_eval, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    Ok(())
}
