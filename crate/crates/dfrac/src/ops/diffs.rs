//! Riemann, Caputo, and dual Caputo fractional differences, the relations
//! between them, and the inversion and commutation identities.
//!
//! The Riemann difference of non-integer order α is the outer integer
//! difference of the (n−α)-order sum; because the nabla sums are empty (0)
//! at and before their base, the outer ∇^n can reach one point past the
//! base and the nabla Riemann difference is defined on N_{base+1} /
//! {base−1}N. Integer orders reduce to the plain n-th difference (circled
//! on right sides).

use crate::error::{Error, Result};
use crate::fpow::{binom, diff_n, DiffOp};
use crate::gamma::{factorial, gamma_ratio};
use crate::grid::{Direction, Grid, GridFn};
use crate::report::IdentityReport;
use crate::scalar::Rat;

use super::sums::{
    delta_left_sum_window, delta_right_sum_window, nabla_left_sum_window, nabla_right_sum_window,
};
use super::{frac_sum, Calculus, Family, OpSpec, Side};

fn zext(v: &[f64], i: i64) -> f64 {
    if i < 0 {
        0.0
    } else {
        v[i as usize]
    }
}

/// m!/(m−k)! — the integer falling power m^(k).
fn falling_int(m: i64, k: i64) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (m - j) as f64;
    }
    acc
}

/// m(m+1)⋯(m+k−1) — the integer rising power m^{k bar} (1 for k = 0).
fn rising_int(m: i64, k: i64) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (m + j) as f64;
    }
    acc
}

fn require_base_is_offset(spec: &OpSpec, f: &GridFn, what: &str) -> Result<()> {
    if &spec.base != f.offset() {
        return Err(Error::Domain(format!(
            "{what} base {} must equal the grid offset {}",
            spec.base,
            f.offset()
        )));
    }
    Ok(())
}

fn require_len(f: &GridFn, n: i64, what: &str) -> Result<()> {
    if f.len() as i64 <= n {
        return Err(Error::Domain(format!(
            "{what} of order with n = {n} needs more than {n} points, grid has {}",
            f.len()
        )));
    }
    Ok(())
}

/// Σ_r (−1)^r C(n,r) u[i−r] with zero extension below index 0 — the outer
/// ∇^n (forward storage) and ⊖Δ^n (backward storage) of the nabla sums.
fn nabla_outer(u: &[f64], n: i64, i: i64) -> f64 {
    (0..=n)
        .map(|r| {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom(n, r) * zext(u, i - r)
        })
        .sum()
}

/// Σ_r (−1)^(n−r) C(n,r) u[i+r] — the outer Δ^n (forward storage) and
/// ∇_⊖^n (backward storage) of the delta sums.
fn delta_outer(u: &[f64], n: i64, i: i64) -> f64 {
    (0..=n)
        .map(|r| {
            let sign = if (n - r) % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom(n, r) * zext(u, i + r)
        })
        .sum()
}

/// Delta left Riemann difference values at the points a+(n−α)+k for
/// k = k_lo .. k_lo+out_len−1 (negative k reach the empty-sum extension of
/// the inner sum).
pub(crate) fn riemann_delta_left_window(
    alpha: &Rat,
    f: &GridFn,
    k_lo: i64,
    out_len: usize,
) -> Result<Vec<f64>> {
    let n = crate::gamma::floor_order(alpha)?;
    let beta = &Rat::from_int(n) - alpha;
    let u = delta_left_sum_window(&beta, f, k_lo, out_len + n as usize)?;
    Ok((0..out_len as i64)
        .map(|k| delta_outer(&u, n, k))
        .collect())
}

/// Delta right Riemann difference values at the points b−(n−α)−k.
pub(crate) fn riemann_delta_right_window(
    alpha: &Rat,
    f: &GridFn,
    k_lo: i64,
    out_len: usize,
) -> Result<Vec<f64>> {
    let n = crate::gamma::floor_order(alpha)?;
    let beta = &Rat::from_int(n) - alpha;
    let u = delta_right_sum_window(&beta, f, k_lo, out_len + n as usize)?;
    Ok((0..out_len as i64)
        .map(|k| delta_outer(&u, n, k))
        .collect())
}

/// Nabla left Riemann difference based at `base` (offset or one before it;
/// interior bases serve the shifted-base variants): output on N_{base+1}.
pub(crate) fn riemann_nabla_left_based(alpha: &Rat, f: &GridFn, base: &Rat) -> Result<GridFn> {
    let n = crate::gamma::floor_order(alpha)?;
    let beta = &Rat::from_int(n) - alpha;
    let last = f.offset() + (f.len() as i64 - 1);
    let m_max = (&last - base)
        .as_i64()
        .ok_or_else(|| Error::Domain("base not congruent to the grid mod 1".into()))?;
    if m_max < 1 {
        return Err(Error::Domain("grid too short past the base".into()));
    }
    let u = nabla_left_sum_window(&beta, f, base, 0, m_max as usize + 1)?;
    let vals = (0..m_max).map(|k| nabla_outer(&u, n, k + 1)).collect();
    GridFn::new(Grid::forward(base + 1, m_max as usize), vals)
}

/// Nabla right Riemann difference based at `base`: output on {base−1}N.
pub(crate) fn riemann_nabla_right_based(alpha: &Rat, f: &GridFn, base: &Rat) -> Result<GridFn> {
    let n = crate::gamma::floor_order(alpha)?;
    let beta = &Rat::from_int(n) - alpha;
    let bottom = f.offset() - (f.len() as i64 - 1);
    let m_max = (base - &bottom)
        .as_i64()
        .ok_or_else(|| Error::Domain("base not congruent to the grid mod 1".into()))?;
    if m_max < 1 {
        return Err(Error::Domain("grid too short past the base".into()));
    }
    let u = nabla_right_sum_window(&beta, f, base, 0, m_max as usize + 1)?;
    let vals = (0..m_max).map(|k| nabla_outer(&u, n, k + 1)).collect();
    GridFn::new(Grid::backward(base - 1, m_max as usize), vals)
}

/// Riemann fractional difference: the outer integer difference of the
/// (n−α)-order sum. Integer orders reduce to the plain n-th difference
/// (circled on right sides).
pub fn riemann_diff(spec: &OpSpec, f: &GridFn) -> Result<GridFn> {
    spec.expect_family(Family::Riemann, "riemann_diff")?;
    let n = spec.n()?;
    let beta = spec.inner_order()?;
    let integer = beta.is_zero();
    match (spec.calculus, spec.side) {
        (Calculus::Delta, Side::Left) => {
            require_base_is_offset(spec, f, "delta left Riemann difference")?;
            require_len(f, n, "delta left Riemann difference")?;
            if integer {
                return diff_n(f, n as usize, DiffOp::Delta);
            }
            let out_len = f.len() - n as usize;
            let vals = riemann_delta_left_window(&spec.order, f, 0, out_len)?;
            GridFn::new(Grid::forward(f.offset() + &beta, out_len), vals)
        }
        (Calculus::Delta, Side::Right) => {
            require_base_is_offset(spec, f, "delta right Riemann difference")?;
            require_len(f, n, "delta right Riemann difference")?;
            if integer {
                return diff_n(f, n as usize, DiffOp::CircledNabla);
            }
            let out_len = f.len() - n as usize;
            let vals = riemann_delta_right_window(&spec.order, f, 0, out_len)?;
            GridFn::new(Grid::backward(f.offset() - &beta, out_len), vals)
        }
        (Calculus::Nabla, Side::Left) => {
            if f.direction() != Direction::Forward {
                return Err(Error::Domain("nabla left Riemann needs a forward grid".into()));
            }
            let d0 = (f.offset() - &spec.base).as_i64();
            if !matches!(d0, Some(0) | Some(1)) {
                return Err(Error::Domain(format!(
                    "nabla left Riemann base {} must be the grid offset {} or the point before it",
                    spec.base,
                    f.offset()
                )));
            }
            if integer {
                require_len(f, n, "nabla left Riemann difference")?;
                return diff_n(f, n as usize, DiffOp::Nabla);
            }
            riemann_nabla_left_based(&spec.order, f, &spec.base)
        }
        (Calculus::Nabla, Side::Right) => {
            if f.direction() != Direction::Backward {
                return Err(Error::Domain("nabla right Riemann needs a backward grid".into()));
            }
            let e0 = (&spec.base - f.offset()).as_i64();
            if !matches!(e0, Some(0) | Some(1)) {
                return Err(Error::Domain(format!(
                    "nabla right Riemann base {} must be the grid offset {} or the point after it",
                    spec.base,
                    f.offset()
                )));
            }
            if integer {
                require_len(f, n, "nabla right Riemann difference")?;
                return diff_n(f, n as usize, DiffOp::CircledDelta);
            }
            riemann_nabla_right_based(&spec.order, f, &spec.base)
        }
    }
}

/// The n-th nabla difference on N_{offset+1}, reaching into the extension
/// samples before the grid: g(offset+1+i) = Σ_r (−1)^r C(n,r) f(offset+1+i−r).
/// (On backward grids the same index arithmetic is the circled ⊖Δ^n.)
pub(crate) fn nabla_n_with_ext(f: &GridFn, n: i64, what: &str) -> Result<Vec<f64>> {
    let needed = (n - 1).max(0) as usize;
    if f.ext().len() < needed {
        return Err(Error::Domain(format!(
            "{what} needs {needed} extension sample(s) outside the base grid, found {}",
            f.ext().len()
        )));
    }
    (0..f.len() as i64 - 1)
        .map(|i| {
            (0..=n)
                .map(|r| {
                    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                    let v = f.value_signed(1 + i - r).ok_or_else(|| {
                        Error::Domain(format!("{what}: missing sample at signed index {}", 1 + i - r))
                    })?;
                    Ok(sign * binom(n, r) * v)
                })
                .sum::<Result<f64>>()
        })
        .collect()
}

/// Caputo fractional difference: the (n−α)-order sum of the n-th integer
/// difference. The nabla variants read n−1 extension samples outside the
/// base grid; integer orders return the plain n-th difference (circled on
/// right sides) on the same output grid as the fractional case.
pub fn caputo_diff(spec: &OpSpec, f: &GridFn) -> Result<GridFn> {
    spec.expect_family(Family::Caputo, "caputo_diff")?;
    let n = spec.n()?;
    let beta = spec.inner_order()?;
    let integer = beta.is_zero();
    match (spec.calculus, spec.side) {
        (Calculus::Delta, Side::Left) => {
            require_base_is_offset(spec, f, "delta left Caputo difference")?;
            require_len(f, n, "delta left Caputo difference")?;
            let g = diff_n(f, n as usize, DiffOp::Delta)?;
            if integer {
                return Ok(g);
            }
            let out_len = g.len();
            let vals = delta_left_sum_window(&beta, &g, 0, out_len)?;
            GridFn::new(Grid::forward(f.offset() + &beta, out_len), vals)
        }
        (Calculus::Delta, Side::Right) => {
            require_base_is_offset(spec, f, "delta right Caputo difference")?;
            require_len(f, n, "delta right Caputo difference")?;
            let g = diff_n(f, n as usize, DiffOp::CircledNabla)?;
            if integer {
                return Ok(g);
            }
            let out_len = g.len();
            let vals = delta_right_sum_window(&beta, &g, 0, out_len)?;
            GridFn::new(Grid::backward(f.offset() - &beta, out_len), vals)
        }
        (Calculus::Nabla, Side::Left) => {
            require_base_is_offset(spec, f, "nabla left Caputo difference")?;
            require_len(f, 1, "nabla left Caputo difference")?;
            let gvals = nabla_n_with_ext(f, n, "nabla left Caputo difference")?;
            let g = GridFn::new(Grid::forward(f.offset() + 1, gvals.len()), gvals)?;
            if integer {
                return Ok(g);
            }
            let out_len = g.len();
            let vals = nabla_left_sum_window(&beta, &g, &spec.base, 1, out_len)?;
            GridFn::new(Grid::forward(f.offset() + 1, out_len), vals)
        }
        (Calculus::Nabla, Side::Right) => {
            require_base_is_offset(spec, f, "nabla right Caputo difference")?;
            require_len(f, 1, "nabla right Caputo difference")?;
            let gvals = nabla_n_with_ext(f, n, "nabla right Caputo difference")?;
            let g = GridFn::new(Grid::backward(f.offset() - 1, gvals.len()), gvals)?;
            if integer {
                return Ok(g);
            }
            let out_len = g.len();
            let vals = nabla_right_sum_window(&beta, &g, &spec.base, 1, out_len)?;
            GridFn::new(Grid::backward(f.offset() - 1, out_len), vals)
        }
    }
}

/// Dual Caputo difference (nabla calculus): the (n−α)-order sum, based at
/// a(α) = a+n−1 / b(α) = b−n+1, of the plain n-th difference. Needs no
/// samples outside the base grid, and coincides with the Caputo difference
/// for 0 < α <= 1.
pub fn dual_caputo_diff(spec: &OpSpec, f: &GridFn) -> Result<GridFn> {
    spec.expect_family(Family::DualCaputo, "dual_caputo_diff")?;
    if spec.calculus != Calculus::Nabla {
        return Err(Error::Domain(
            "the dual Caputo difference is a nabla-calculus operator".into(),
        ));
    }
    let n = spec.n()?;
    let beta = spec.inner_order()?;
    require_base_is_offset(spec, f, "dual Caputo difference")?;
    require_len(f, n, "dual Caputo difference")?;
    let shifted = spec.shifted_base()?;
    match spec.side {
        Side::Left => {
            let g = diff_n(f, n as usize, DiffOp::Nabla)?;
            if beta.is_zero() {
                return Ok(g);
            }
            let out_len = g.len();
            let vals = nabla_left_sum_window(&beta, &g, &shifted, 1, out_len)?;
            GridFn::new(Grid::forward(f.offset() + n, out_len), vals)
        }
        Side::Right => {
            let g = diff_n(f, n as usize, DiffOp::CircledDelta)?;
            if beta.is_zero() {
                return Ok(g);
            }
            let out_len = g.len();
            let vals = nabla_right_sum_window(&beta, &g, &shifted, 1, out_len)?;
            GridFn::new(Grid::backward(f.offset() - n, out_len), vals)
        }
    }
}

/// The n boundary values the relation identities subtract: ∇^k f(p) or
/// Δ^k f(p) (left), ⊖Δ^k f(p) or ∇_⊖^k f(p) (right), k = 0..n−1. Always
/// recomputed from the supplied grid function, never caller-provided.
#[derive(Debug, Clone)]
pub struct BoundaryData {
    pub side: Side,
    pub values: Vec<f64>,
}

impl BoundaryData {
    pub fn extract(
        calculus: Calculus,
        side: Side,
        f: &GridFn,
        point: &Rat,
        n: i64,
    ) -> Result<BoundaryData> {
        let ip = f
            .grid()
            .index_of(point)
            .ok_or_else(|| Error::Domain(format!("boundary point {point} not on the grid")))?
            as i64;
        let mut values = Vec::with_capacity(n as usize);
        for k in 0..n {
            let mut acc = 0.0;
            for r in 0..=k {
                let (sign, idx) = match (calculus, side) {
                    // Δ^k f(p) on a forward grid
                    (Calculus::Delta, Side::Left) => ((k - r) % 2 == 0, ip + r),
                    // ∇^k f(p) on a forward grid (reaches the extension)
                    (Calculus::Nabla, Side::Left) => (r % 2 == 0, ip - r),
                    // ∇_⊖^k f(p) = (−1)^k ∇^k f(p) on a backward grid
                    (Calculus::Delta, Side::Right) => ((k - r) % 2 == 0, ip + r),
                    // ⊖Δ^k f(p) = (−1)^k Δ^k f(p) on a backward grid
                    (Calculus::Nabla, Side::Right) => (r % 2 == 0, ip - r),
                };
                let v = f.value_signed(idx).ok_or_else(|| {
                    Error::Domain(format!(
                        "boundary data of order {k} needs a sample at signed index {idx}"
                    ))
                })?;
                acc += if sign { 1.0 } else { -1.0 } * binom(k, r) * v;
            }
            values.push(acc);
        }
        Ok(BoundaryData { side, values })
    }
}

/// (t−p)^(k−α) / Γ(k−α+1) with t−p = x and x−k+α a positive integer; exact.
fn delta_relate_coef(x: &Rat, k: i64, alpha: &Rat) -> Result<f64> {
    let gamma_arg = &(x - k) + alpha; // x + 1 − (k−α+1)
    let int = gamma_arg
        .as_i64()
        .ok_or_else(|| Error::Domain("relate coefficient expects integer spacing".into()))?;
    Ok(gamma_ratio(&(x + 1), &(&(Rat::from_int(k) - alpha) + 1))? / factorial(int as u64))
}

/// (m)^{k−α bar} / Γ(k−α+1) for integer m >= 1; exact.
fn nabla_relate_coef(m: i64, k: i64, alpha: &Rat) -> Result<f64> {
    let q = &(Rat::from_int(k) - alpha) + 1;
    Ok(gamma_ratio(&(&q + (m - 1)), &q)? / factorial((m - 1) as u64))
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn calculus_name(calculus: Calculus) -> &'static str {
    match calculus {
        Calculus::Delta => "delta",
        Calculus::Nabla => "nabla",
    }
}

/// Residual of the Riemann–Caputo relation: Caputo minus (Riemann − Σ
/// boundary terms), maximized over the common grid. `spec.family` selects
/// the Caputo or dual Caputo version.
pub fn relate_residual(spec: &OpSpec, f: &GridFn) -> Result<IdentityReport> {
    let n = spec.n()?;
    let alpha = &spec.order;
    let (name, residual) = match spec.family {
        Family::Caputo => {
            let c = caputo_diff(spec, f)?;
            let mut rspec = spec.clone();
            rspec.family = Family::Riemann;
            let r = riemann_diff(&rspec, f)?;
            let bd = BoundaryData::extract(spec.calculus, spec.side, f, &spec.base, n)?;
            let beta = spec.inner_order()?;
            let mut worst = 0.0f64;
            match spec.calculus {
                Calculus::Delta => {
                    for j in 0..c.len() {
                        let x = &beta + j as i64; // t−a (left) or b−t (right)
                        let mut sum = 0.0;
                        for k in 0..n {
                            sum += delta_relate_coef(&x, k, alpha)? * bd.values[k as usize];
                        }
                        worst = worst.max((c.value(j) - r.value(j) + sum).abs());
                    }
                }
                Calculus::Nabla => {
                    for j in 0..c.len() {
                        let m = j as i64 + 1; // t−a (left) or b−t (right)
                        let mut sum = 0.0;
                        for k in 0..n {
                            sum += nabla_relate_coef(m, k, alpha)? * bd.values[k as usize];
                        }
                        worst = worst.max((c.value(j) - r.value(j) + sum).abs());
                    }
                }
            }
            (
                format!(
                    "relate-{}-{}",
                    calculus_name(spec.calculus),
                    side_name(spec.side)
                ),
                worst,
            )
        }
        Family::DualCaputo => {
            let c = dual_caputo_diff(spec, f)?;
            let shifted = spec.shifted_base()?;
            let r = match spec.side {
                Side::Left => riemann_nabla_left_based(alpha, f, &shifted)?,
                Side::Right => riemann_nabla_right_based(alpha, f, &shifted)?,
            };
            let bd = BoundaryData::extract(Calculus::Nabla, spec.side, f, &shifted, n)?;
            let mut worst = 0.0f64;
            for j in 0..c.len() {
                let m = j as i64 + 1; // t − a(α) (left) or b(α) − t (right)
                let mut sum = 0.0;
                for k in 0..n {
                    sum += nabla_relate_coef(m, k, alpha)? * bd.values[k as usize];
                }
                worst = worst.max((c.value(j) - r.value(j) + sum).abs());
            }
            (format!("relate-dual-{}", side_name(spec.side)), worst)
        }
        _ => {
            return Err(Error::Domain(
                "relate_residual expects a Caputo or dual Caputo spec".into(),
            ))
        }
    };
    Ok(IdentityReport::new(
        name,
        format!("alpha={} len={}", alpha, f.len()),
        residual,
        1e-9,
    ))
}

/// Residual of the inversion formula: the α-order sum of the Caputo
/// difference against f minus its Taylor-like boundary sum.
pub fn inversion_residual(spec: &OpSpec, f: &GridFn) -> Result<IdentityReport> {
    let n = spec.n()?;
    let alpha = &spec.order;
    let (name, residual) = match spec.family {
        Family::Caputo => {
            let c = caputo_diff(spec, f)?;
            let sum_spec = OpSpec::new(
                Family::Sum,
                spec.calculus,
                spec.side,
                alpha.clone(),
                c.offset().clone(),
            );
            let (sum_spec, bd) = match spec.calculus {
                Calculus::Delta => (
                    sum_spec,
                    BoundaryData::extract(Calculus::Delta, spec.side, f, &spec.base, n)?,
                ),
                Calculus::Nabla => {
                    // the outer sum is based at the original base, one point
                    // before the Caputo output grid
                    let mut s = sum_spec;
                    s.base = spec.base.clone();
                    (
                        s,
                        BoundaryData::extract(Calculus::Nabla, spec.side, f, &spec.base, n)?,
                    )
                }
            };
            let s = frac_sum(&sum_spec, &c)?;
            let mut worst = 0.0f64;
            match spec.calculus {
                Calculus::Delta => {
                    // s lives on N_{a+n} / {b−n}N; f index n+j matches.
                    for j in 0..s.len() {
                        let m = n + j as i64;
                        let mut rhs = f.value((n + j as i64) as usize);
                        for k in 0..n {
                            rhs -= falling_int(m, k) / factorial(k as u64) * bd.values[k as usize];
                        }
                        worst = worst.max((s.value(j) - rhs).abs());
                    }
                }
                Calculus::Nabla => {
                    // s lives on the full base grid again.
                    for m in 0..s.len() {
                        let mut rhs = f.value(m);
                        for k in 0..n {
                            rhs -= rising_int(m as i64, k) / factorial(k as u64)
                                * bd.values[k as usize];
                        }
                        worst = worst.max((s.value(m) - rhs).abs());
                    }
                }
            }
            (
                format!(
                    "inversion-{}-{}",
                    calculus_name(spec.calculus),
                    side_name(spec.side)
                ),
                worst,
            )
        }
        Family::DualCaputo => {
            let c = dual_caputo_diff(spec, f)?;
            let shifted = spec.shifted_base()?;
            let sum_spec = OpSpec::new(
                Family::Sum,
                Calculus::Nabla,
                spec.side,
                alpha.clone(),
                shifted.clone(),
            );
            let s = frac_sum(&sum_spec, &c)?;
            let bd = BoundaryData::extract(Calculus::Nabla, spec.side, f, &shifted, n)?;
            let mut worst = 0.0f64;
            for m in 0..s.len() {
                // s starts at a(α); f index n−1+m matches the point a(α)+m.
                let mut rhs = f.value(n as usize - 1 + m);
                for k in 0..n {
                    rhs -= rising_int(m as i64, k) / factorial(k as u64) * bd.values[k as usize];
                }
                worst = worst.max((s.value(m) - rhs).abs());
            }
            (format!("inversion-dual-{}", side_name(spec.side)), worst)
        }
        _ => {
            return Err(Error::Domain(
                "inversion_residual expects a Caputo or dual Caputo spec".into(),
            ))
        }
    };
    Ok(IdentityReport::new(
        name,
        format!("alpha={} len={}", alpha, f.len()),
        residual,
        1e-9,
    ))
}

/// (m)^{γ bar}/Γ(γ+1) for integer m >= 1 and rational γ; exact. The
/// boundary coefficient of the sum/difference commutation identities.
fn commutation_coef(m: i64, gamma_exp: &Rat) -> Result<f64> {
    let q = gamma_exp + 1;
    Ok(gamma_ratio(&(&q + (m - 1)), &q)? / factorial((m - 1) as u64))
}

/// Residual of the commutation identity between a fractional sum of order
/// `order` and the p-th integer difference:
///
/// * delta calculus (p = 1 only): the sum of Δf / ∇_⊖f against Δ / ∇_⊖ of
///   the sum plus the (t−a)^{α−1 bar}/Γ(α) f(a) boundary term;
/// * nabla calculus, any p >= 1: the sum of ∇^p f / ⊖Δ^p f against ∇^p /
///   ⊖Δ^p of the sum plus the boundary sum Σ_k (·)^{α−p+k bar}/Γ(α+k−p+1)
///   with the k-th difference of f at the base.
///
/// In the nabla calculus the order may be any nonzero rational that is not
/// a negative integer: negative non-integer orders evaluate the unified
/// difference kernel, which is how the identity extends to all real orders.
/// The nabla variants read p−1 extension samples outside the grid.
pub fn sum_diff_commutation_residual(
    calculus: Calculus,
    side: Side,
    order: &Rat,
    p: i64,
    f: &GridFn,
) -> Result<IdentityReport> {
    if order.is_zero() || (order.is_negative() && order.is_integer()) {
        return Err(Error::Domain(format!(
            "commutation identity needs a nonzero, non-negative-integer order, got {order}"
        )));
    }
    if p < 1 {
        return Err(Error::Domain("commutation needs p >= 1".into()));
    }
    let nf = f.len() as i64;
    let worst = match calculus {
        Calculus::Delta => {
            if p != 1 {
                return Err(Error::Domain(
                    "the delta commutation identities are stated for p = 1".into(),
                ));
            }
            if !order.is_positive() {
                return Err(Error::Domain(
                    "the delta commutation identities need order > 0".into(),
                ));
            }
            let (dop, end_val) = match side {
                Side::Left => (DiffOp::Delta, f.value(0)),
                Side::Right => (DiffOp::CircledNabla, f.value(0)),
            };
            let g = diff_n(f, 1, dop)?;
            let (lhs, u) = match side {
                Side::Left => (
                    delta_left_sum_window(order, &g, 0, g.len())?,
                    delta_left_sum_window(order, f, 0, f.len())?,
                ),
                Side::Right => (
                    delta_right_sum_window(order, &g, 0, g.len())?,
                    delta_right_sum_window(order, f, 0, f.len())?,
                ),
            };
            // Δ (left) and ∇_⊖ (right) of the sum are u[j+1]−u[j] in
            // storage order on both sides. The boundary term carries the
            // falling power (t−a)^(α−1)/Γ(α), i.e. Γ(α+j+1)/(Γ(α) (j+1)!),
            // computed exactly.
            let mut worst = 0.0f64;
            for j in 0..(nf - 1) {
                let rhs_diff = u[(j + 1) as usize] - u[j as usize];
                let coef =
                    gamma_ratio(&(&(order + j) + 1), order)? / factorial((j + 1) as u64);
                let r = lhs[j as usize] - (rhs_diff - coef * end_val);
                worst = worst.max(r.abs());
            }
            worst
        }
        Calculus::Nabla => {
            let base = f.offset().clone();
            let (gvals, base, bd) = match side {
                Side::Left => (
                    nabla_n_with_ext(f, p, "nabla left commutation")?,
                    base,
                    BoundaryData::extract(Calculus::Nabla, side, f, f.offset(), p)?,
                ),
                Side::Right => (
                    nabla_n_with_ext(f, p, "nabla right commutation")?,
                    base,
                    BoundaryData::extract(Calculus::Nabla, side, f, f.offset(), p)?,
                ),
            };
            let (lhs, u) = match side {
                Side::Left => {
                    let g = GridFn::new(Grid::forward(&base + 1, gvals.len()), gvals)?;
                    (
                        nabla_left_sum_window(order, &g, &base, 1, g.len())?,
                        nabla_left_sum_window(order, f, &base, 0, f.len())?,
                    )
                }
                Side::Right => {
                    let g = GridFn::new(Grid::backward(&base - 1, gvals.len()), gvals)?;
                    (
                        nabla_right_sum_window(order, &g, &base, 1, g.len())?,
                        nabla_right_sum_window(order, f, &base, 0, f.len())?,
                    )
                }
            };
            let mut worst = 0.0f64;
            for k in 0..(nf - 1) {
                let m = k + 1;
                let rhs_diff = nabla_outer(&u, p, m);
                let mut boundary = 0.0;
                for kk in 0..p {
                    let exp = &(order - p) + kk;
                    boundary += commutation_coef(m, &exp)? * bd.values[kk as usize];
                }
                let r = lhs[k as usize] - (rhs_diff - boundary);
                worst = worst.max(r.abs());
            }
            worst
        }
    };
    Ok(IdentityReport::new(
        format!(
            "commute-{}-{}",
            calculus_name(calculus),
            side_name(side)
        ),
        format!("order={order} p={p} len={}", f.len()),
        worst,
        1e-9,
    ))
}

/// Residual of the modified commutation identity, which rebases the sum at
/// a+p−1 (left) / b−p+1 (right) so that f is needed on the base grid only.
pub fn mod_commutation_residual(
    side: Side,
    order: &Rat,
    p: i64,
    f: &GridFn,
) -> Result<IdentityReport> {
    if order.is_zero() || (order.is_negative() && order.is_integer()) {
        return Err(Error::Domain(format!(
            "commutation identity needs a nonzero, non-negative-integer order, got {order}"
        )));
    }
    if p < 1 || f.len() as i64 <= p {
        return Err(Error::Domain("modified commutation needs p >= 1 and a grid longer than p".into()));
    }
    let np = f.len() as i64 - p;
    let (rebase, lhs, u, bd) = match side {
        Side::Left => {
            let rebase = f.offset() + (p - 1);
            let g = diff_n(f, p as usize, DiffOp::Nabla)?;
            (
                rebase.clone(),
                nabla_left_sum_window(order, &g, &rebase, 1, g.len())?,
                nabla_left_sum_window(order, f, &rebase, 0, np as usize + 1)?,
                BoundaryData::extract(Calculus::Nabla, side, f, &rebase, p)?,
            )
        }
        Side::Right => {
            let rebase = f.offset() - (p - 1);
            let g = diff_n(f, p as usize, DiffOp::CircledDelta)?;
            (
                rebase.clone(),
                nabla_right_sum_window(order, &g, &rebase, 1, g.len())?,
                nabla_right_sum_window(order, f, &rebase, 0, np as usize + 1)?,
                BoundaryData::extract(Calculus::Nabla, side, f, &rebase, p)?,
            )
        }
    };
    let _ = rebase;
    let mut worst = 0.0f64;
    for k in 0..np {
        let m = k + 1;
        let rhs_diff = nabla_outer(&u, p, m);
        let mut boundary = 0.0;
        for kk in 0..p {
            let exp = &(order - p) + kk;
            boundary += commutation_coef(m, &exp)? * bd.values[kk as usize];
        }
        let r = lhs[k as usize] - (rhs_diff - boundary);
        worst = worst.max(r.abs());
    }
    Ok(IdentityReport::new(
        format!("commute-mod-{}", side_name(side)),
        format!("order={order} p={p} len={}", f.len()),
        worst,
        1e-9,
    ))
}
