//! Numerical verifiers for the dual identities, the Q-operator symmetries,
//! and the integration-by-parts formulas, plus the batch harness that
//! sweeps every identity suite with seeded random grid functions.
//!
//! Each suite evaluates the two sides of one identity through disjoint call
//! paths (the left side through one operator family, the right side through
//! the other) and reports the maximum absolute residual. The identities are
//! exact, so the residuals measure double rounding only.
//!
//! Suite input conventions (what `check_identity` expects in `f` / `g`):
//!
//! | suite           | f                                    | g                           |
//! |-----------------|--------------------------------------|-----------------------------|
//! | left-dual-*     | y on N_a (forward)                   | —                           |
//! | right-dual-*    | y on {b+1}N (backward)               | —                           |
//! | right-dual2-*   | y on {n−α}N (backward, offset n−α)   | —                           |
//! | lCdual / rCdual | f on N_a / bN                        | —                           |
//! | q-*             | wide forward samples on [a−m..b+m],  | —                           |
//! |                 | m = n−1 for q-nabla-caputo else 0    |                             |
//! | byparts-*       | forward factor on N_a                | backward factor on bN, same span |
//! | lbsdandds       | f on N_a (ext for integer α)         | —                           |
//! | bsdandds        | f on bN (ext for integer α)          | —                           |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fde;
use crate::fpow::{falling, rising};
use crate::gamma::{floor_order, gamma};
use crate::grid::{Direction, Grid, GridFn};
use crate::ml::{ml_eval, MlFamily, MlSpec};
use crate::ops::{
    caputo_diff, dual_caputo_diff, frac_sum, inversion_residual, mod_commutation_residual,
    power_rule, relate_residual, riemann_diff, semigroup_residual, sum_diff_commutation_residual,
    Calculus, Family, OpSpec, Side,
};
use crate::report::IdentityReport;
use crate::scalar::Rat;

/// The grid reflection (Qf)(s) = f(a+b−s). The function must be given on
/// exactly the window [a..b] (either direction, no extension samples); the
/// result lives on the same point set.
pub fn q_transform(f: &GridFn, a: &Rat, b: &Rat) -> Result<GridFn> {
    if !a.congruent_mod_1(b) {
        return Err(Error::Domain(format!(
            "Q operator needs a ≡ b (mod 1), got a = {a}, b = {b}"
        )));
    }
    if !f.ext().is_empty() {
        return Err(Error::Domain(
            "Q operator reflects a function on [a..b] only; drop extension samples".into(),
        ));
    }
    let (lo, hi) = match f.direction() {
        Direction::Forward => (f.offset().clone(), f.offset() + (f.len() as i64 - 1)),
        Direction::Backward => (f.offset() - (f.len() as i64 - 1), f.offset().clone()),
    };
    if &lo != a || &hi != b {
        return Err(Error::Domain(format!(
            "Q operator needs the grid to cover exactly [{a}..{b}], got [{lo}..{hi}]"
        )));
    }
    let mut vals = f.values().to_vec();
    vals.reverse();
    GridFn::new(f.grid().clone(), vals)
}

/// Every dual/Q/by-parts identity suite. Each id maps to exactly one
/// identity; the table in the module docs lists the expected inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    LeftDualI,
    LeftDualII,
    RightDualI,
    RightDualII,
    RightDual2I,
    RightDual2II,
    LCdual,
    RCdual,
    QDeltaSum,
    QDeltaCaputo,
    QDeltaRiemann,
    QNablaSum,
    QNablaCaputo,
    QNablaRiemann,
    BypartsNablaSum,
    BypartsNablaRiemann,
    BypartsDeltaSum,
    BypartsDeltaRiemann,
    BypartsCaputoNabla,
    BypartsCaputoDelta,
    Lbsdandds,
    Bsdandds,
}

impl SuiteId {
    pub const ALL: [SuiteId; 22] = [
        SuiteId::LeftDualI,
        SuiteId::LeftDualII,
        SuiteId::RightDualI,
        SuiteId::RightDualII,
        SuiteId::RightDual2I,
        SuiteId::RightDual2II,
        SuiteId::LCdual,
        SuiteId::RCdual,
        SuiteId::QDeltaSum,
        SuiteId::QDeltaCaputo,
        SuiteId::QDeltaRiemann,
        SuiteId::QNablaSum,
        SuiteId::QNablaCaputo,
        SuiteId::QNablaRiemann,
        SuiteId::BypartsNablaSum,
        SuiteId::BypartsNablaRiemann,
        SuiteId::BypartsDeltaSum,
        SuiteId::BypartsDeltaRiemann,
        SuiteId::BypartsCaputoNabla,
        SuiteId::BypartsCaputoDelta,
        SuiteId::Lbsdandds,
        SuiteId::Bsdandds,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::LeftDualI => "left-dual-i",
            SuiteId::LeftDualII => "left-dual-ii",
            SuiteId::RightDualI => "right-dual-i",
            SuiteId::RightDualII => "right-dual-ii",
            SuiteId::RightDual2I => "right-dual2-i",
            SuiteId::RightDual2II => "right-dual2-ii",
            SuiteId::LCdual => "lCdual",
            SuiteId::RCdual => "rCdual",
            SuiteId::QDeltaSum => "q-delta-sum",
            SuiteId::QDeltaCaputo => "q-delta-caputo",
            SuiteId::QDeltaRiemann => "q-delta-riemann",
            SuiteId::QNablaSum => "q-nabla-sum",
            SuiteId::QNablaCaputo => "q-nabla-caputo",
            SuiteId::QNablaRiemann => "q-nabla-riemann",
            SuiteId::BypartsNablaSum => "byparts-nabla-sum",
            SuiteId::BypartsNablaRiemann => "byparts-nabla-riemann",
            SuiteId::BypartsDeltaSum => "byparts-delta-sum",
            SuiteId::BypartsDeltaRiemann => "byparts-delta-riemann",
            SuiteId::BypartsCaputoNabla => "byparts-caputo-nabla",
            SuiteId::BypartsCaputoDelta => "byparts-caputo-delta",
            SuiteId::Lbsdandds => "lbsdandds",
            SuiteId::Bsdandds => "bsdandds",
        }
    }

    /// The tolerance the suite is judged against by default.
    pub fn default_tol(&self) -> f64 {
        match self {
            SuiteId::BypartsNablaSum
            | SuiteId::BypartsNablaRiemann
            | SuiteId::BypartsDeltaSum
            | SuiteId::BypartsDeltaRiemann
            | SuiteId::BypartsCaputoNabla
            | SuiteId::BypartsCaputoDelta => 1e-9,
            _ => 1e-10,
        }
    }

    /// Whether an order satisfies the identity's hypotheses.
    pub fn accepts_order(&self, alpha: &Rat) -> bool {
        if !alpha.is_positive() {
            return false;
        }
        match self {
            SuiteId::BypartsCaputoNabla | SuiteId::BypartsCaputoDelta => alpha < &Rat::one(),
            SuiteId::BypartsNablaRiemann
            | SuiteId::BypartsDeltaRiemann
            | SuiteId::RightDual2I
            | SuiteId::RightDual2II => !alpha.is_integer(),
            _ => true,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite id {s:?}")))
    }
}

fn value_at(g: &GridFn, p: &Rat) -> Result<f64> {
    g.grid()
        .index_of(p)
        .map(|k| g.value(k))
        .ok_or_else(|| Error::Domain(format!("point {p} not on the operator's output grid")))
}

fn sum_spec(calculus: Calculus, side: Side, order: &Rat, base: &Rat) -> OpSpec {
    OpSpec::new(Family::Sum, calculus, side, order.clone(), base.clone())
}

fn op_spec(family: Family, calculus: Calculus, side: Side, order: &Rat, base: &Rat) -> OpSpec {
    OpSpec::new(family, calculus, side, order.clone(), base.clone())
}

/// Evaluates one identity suite at order α on the supplied grid function(s)
/// and reports the maximum absolute residual. See the module docs for the
/// per-suite input conventions; hypothesis violations surface as domain
/// errors naming the violated clause.
pub fn check_identity(
    suite: SuiteId,
    alpha: &Rat,
    f: &GridFn,
    g: Option<&GridFn>,
) -> Result<IdentityReport> {
    if !suite.accepts_order(alpha) {
        return Err(Error::Domain(format!(
            "suite {suite} does not accept order α = {alpha} (hypothesis violated)"
        )));
    }
    let needs_g = matches!(
        suite,
        SuiteId::BypartsNablaSum
            | SuiteId::BypartsNablaRiemann
            | SuiteId::BypartsDeltaSum
            | SuiteId::BypartsDeltaRiemann
            | SuiteId::BypartsCaputoNabla
            | SuiteId::BypartsCaputoDelta
    );
    if needs_g && g.is_none() {
        return Err(Error::Domain(format!(
            "suite {suite} needs the second grid function g"
        )));
    }
    let residual = match suite {
        SuiteId::LeftDualI => left_dual_i(alpha, f)?,
        SuiteId::LeftDualII => left_dual_ii(alpha, f)?,
        SuiteId::RightDualI => right_dual_i(alpha, f)?,
        SuiteId::RightDualII => right_dual_ii(alpha, f)?,
        SuiteId::RightDual2I => right_dual2(alpha, f, true)?,
        SuiteId::RightDual2II => right_dual2(alpha, f, false)?,
        SuiteId::LCdual => caputo_dual(alpha, f, Side::Left)?,
        SuiteId::RCdual => caputo_dual(alpha, f, Side::Right)?,
        SuiteId::QDeltaSum => q_suite(alpha, f, Calculus::Delta, Family::Sum)?,
        SuiteId::QDeltaCaputo => q_suite(alpha, f, Calculus::Delta, Family::Caputo)?,
        SuiteId::QDeltaRiemann => q_suite(alpha, f, Calculus::Delta, Family::Riemann)?,
        SuiteId::QNablaSum => q_suite(alpha, f, Calculus::Nabla, Family::Sum)?,
        SuiteId::QNablaCaputo => q_suite(alpha, f, Calculus::Nabla, Family::Caputo)?,
        SuiteId::QNablaRiemann => q_suite(alpha, f, Calculus::Nabla, Family::Riemann)?,
        SuiteId::BypartsNablaSum => byparts_nabla_sum(alpha, f, g.unwrap())?,
        SuiteId::BypartsNablaRiemann => byparts_nabla_riemann(alpha, f, g.unwrap())?,
        SuiteId::BypartsDeltaSum => byparts_delta_sum(alpha, f, g.unwrap())?,
        SuiteId::BypartsDeltaRiemann => byparts_delta_riemann(alpha, f, g.unwrap())?,
        SuiteId::BypartsCaputoNabla => byparts_caputo_nabla(alpha, f, g.unwrap())?,
        SuiteId::BypartsCaputoDelta => byparts_caputo_delta(alpha, f, g.unwrap())?,
        SuiteId::Lbsdandds => sum_diff_round_trip(alpha, f, Side::Left)?,
        SuiteId::Bsdandds => sum_diff_round_trip(alpha, f, Side::Right)?,
    };
    Ok(IdentityReport::new(
        suite.name(),
        format!("alpha={alpha} len={}", f.len()),
        residual,
        suite.default_tol(),
    ))
}

/// (Δ_a^α y)(t−α) = ∇_{a−1}^α y(t) on N_{a+n} — the delta/nabla left dual
/// in the form consistent with the nabla sum that starts past its base.
fn left_dual_i(alpha: &Rat, y: &GridFn) -> Result<f64> {
    let a = y.offset().clone();
    let n = floor_order(alpha)?;
    let lhs = riemann_diff(
        &op_spec(Family::Riemann, Calculus::Delta, Side::Left, alpha, &a),
        y,
    )?;
    let (rhs, shift) = if alpha.is_integer() {
        // Δ^n y(t−n) = ∇^n y(t): pure integer calculus.
        (
            riemann_diff(
                &op_spec(Family::Riemann, Calculus::Nabla, Side::Left, alpha, &a),
                y,
            )?,
            Rat::from_int(n),
        )
    } else {
        (
            riemann_diff(
                &op_spec(Family::Riemann, Calculus::Nabla, Side::Left, alpha, &(&a - 1)),
                y,
            )?,
            alpha.clone(),
        )
    };
    let mut worst = 0.0f64;
    for j in 0..lhs.len() {
        let t = &(&a + n) + j as i64;
        let l = value_at(&lhs, &(&t - &shift))?;
        let r = value_at(&rhs, &t)?;
        worst = worst.max((l - r).abs());
    }
    Ok(worst)
}

/// (Δ_a^{−α} y)(t+α) = ∇_{a−1}^{−α} y(t) on N_a.
fn left_dual_ii(alpha: &Rat, y: &GridFn) -> Result<f64> {
    let a = y.offset().clone();
    let lhs = frac_sum(&sum_spec(Calculus::Delta, Side::Left, alpha, &a), y)?;
    let rhs = frac_sum(&sum_spec(Calculus::Nabla, Side::Left, alpha, &(&a - 1)), y)?;
    let mut worst = 0.0f64;
    for j in 0..y.len() {
        let t = &a + j as i64;
        let l = value_at(&lhs, &(&t + alpha))?;
        let r = value_at(&rhs, &t)?;
        worst = worst.max((l - r).abs());
    }
    Ok(worst)
}

/// (_bΔ^α y)(t+α) = _{b+1}∇^α y(t) on {b−n}N, with y given on {b+1}N.
fn right_dual_i(alpha: &Rat, y: &GridFn) -> Result<f64> {
    let cap = y.offset().clone(); // b+1
    let b = &cap - 1;
    let n = floor_order(alpha)?;
    let yb = y.restrict(&b, y.len() - 1)?;
    let lhs = riemann_diff(
        &op_spec(Family::Riemann, Calculus::Delta, Side::Right, alpha, &b),
        &yb,
    )?;
    let (rhs, shift) = if alpha.is_integer() {
        (
            riemann_diff(
                &op_spec(Family::Riemann, Calculus::Nabla, Side::Right, alpha, &cap),
                y,
            )?,
            Rat::from_int(n),
        )
    } else {
        (
            riemann_diff(
                &op_spec(Family::Riemann, Calculus::Nabla, Side::Right, alpha, &cap),
                y,
            )?,
            alpha.clone(),
        )
    };
    let mut worst = 0.0f64;
    for j in 0..lhs.len() {
        let t = &(&b - n) - j as i64;
        let l = value_at(&lhs, &(&t + &shift))?;
        let r = value_at(&rhs, &t)?;
        worst = worst.max((l - r).abs());
    }
    Ok(worst)
}

/// (_bΔ^{−α} y)(t−α) = _{b+1}∇^{−α} y(t) on bN.
fn right_dual_ii(alpha: &Rat, y: &GridFn) -> Result<f64> {
    let cap = y.offset().clone();
    let b = &cap - 1;
    let yb = y.restrict(&b, y.len() - 1)?;
    let lhs = frac_sum(&sum_spec(Calculus::Delta, Side::Right, alpha, &b), &yb)?;
    let rhs = frac_sum(&sum_spec(Calculus::Nabla, Side::Right, alpha, &cap), y)?;
    let mut worst = 0.0f64;
    for j in 0..yb.len() {
        let t = &b - j as i64;
        let l = value_at(&lhs, &(&t - alpha))?;
        let r = value_at(&rhs, &t)?;
        worst = worst.max((l - r).abs());
    }
    Ok(worst)
}

/// The right dual at the special bases n−α and n−α+1:
/// (i)  _{n−α}Δ^α y(t) = _{n−α+1}∇^α y(t−α),
/// (ii) _{n−α}Δ^{−(n−α)} y(t) = _{n−α+1}∇^{−(n−α)} y(t+n−α).
fn right_dual2(alpha: &Rat, y: &GridFn, difference: bool) -> Result<f64> {
    let n = floor_order(alpha)?;
    let base = &Rat::from_int(n) - alpha; // n−α
    if y.offset() != &base {
        return Err(Error::Domain(format!(
            "the special-base right dual expects y on the grid ending at n−α = {base}, got {}",
            y.offset()
        )));
    }
    let shifted = &base + 1;
    let mut worst = 0.0f64;
    if difference {
        let lhs = riemann_diff(
            &op_spec(Family::Riemann, Calculus::Delta, Side::Right, alpha, &base),
            y,
        )?;
        let rhs = riemann_diff(
            &op_spec(Family::Riemann, Calculus::Nabla, Side::Right, alpha, &shifted),
            y,
        )?;
        for j in 0..lhs.len() {
            let t = Rat::from_int(-(j as i64));
            let l = value_at(&lhs, &t)?;
            let r = value_at(&rhs, &(&t - alpha))?;
            worst = worst.max((l - r).abs());
        }
    } else {
        let order = &base;
        let lhs = frac_sum(&sum_spec(Calculus::Delta, Side::Right, order, &base), y)?;
        let rhs = frac_sum(&sum_spec(Calculus::Nabla, Side::Right, order, &shifted), y)?;
        for j in 0..y.len() {
            let t = Rat::from_int(-(j as i64));
            let l = value_at(&lhs, &t)?;
            let r = value_at(&rhs, &(&t + order))?;
            worst = worst.max((l - r).abs());
        }
    }
    Ok(worst)
}

/// (^CΔ_a^α f)(t−α) = (^C∇_{a(α)}^α f)(t) on N_{a+n}, and the right mirror
/// (^C_bΔ^α f)(t+α) = (_{b(α)}^C∇^α f)(t) on {b−n}N.
fn caputo_dual(alpha: &Rat, f: &GridFn, side: Side) -> Result<f64> {
    let base = f.offset().clone();
    let n = floor_order(alpha)?;
    let lhs = caputo_diff(
        &op_spec(Family::Caputo, Calculus::Delta, side, alpha, &base),
        f,
    )?;
    let rhs = dual_caputo_diff(
        &op_spec(Family::DualCaputo, Calculus::Nabla, side, alpha, &base),
        f,
    )?;
    let mut worst = 0.0f64;
    for j in 0..lhs.len() {
        let (t, lp) = match side {
            Side::Left => {
                let t = &(&base + n) + j as i64;
                let lp = &t - alpha;
                (t, lp)
            }
            Side::Right => {
                let t = &(&base - n) - j as i64;
                let lp = &t + alpha;
                (t, lp)
            }
        };
        let l = value_at(&lhs, &lp)?;
        let r = value_at(&rhs, &t)?;
        worst = worst.max((l - r).abs());
    }
    Ok(worst)
}

/// Q-duality: the left operator applied to the reflection equals the
/// reflection of the right operator, for sums, Caputo, and Riemann
/// differences in both calculi. The input carries wide samples; the margin
/// m = n−1 feeds the nabla Caputo extensions on both sides.
fn q_suite(alpha: &Rat, wide: &GridFn, calculus: Calculus, family: Family) -> Result<f64> {
    if wide.direction() != Direction::Forward {
        return Err(Error::Domain("q suites take wide forward samples".into()));
    }
    let n = floor_order(alpha)?;
    let margin = if calculus == Calculus::Nabla && family == Family::Caputo {
        (n - 1) as usize
    } else {
        0
    };
    if wide.len() <= 2 * margin + n as usize {
        return Err(Error::Domain("q suite grid too short for the margin".into()));
    }
    let len = wide.len() - 2 * margin;
    let a = wide.offset() + margin as i64;
    let b = &a + (len as i64 - 1);
    // Forward representation of Qf on [a..b]: (Qf)(a+k) = f(b−k), and its
    // extension below a is f above b. The backward representation of f on
    // the same window carries the identical arrays — that is the reflection
    // geometry the suite exercises.
    let vals: Vec<f64> = (0..len).rev().map(|k| wide.value(margin + k)).collect();
    let ext: Vec<f64> = (0..margin).map(|j| wide.value(margin + len + j)).collect();
    let qf = GridFn::with_ext(Grid::forward(a.clone(), len), vals.clone(), ext.clone())?;
    let fb = GridFn::with_ext(Grid::backward(b.clone(), len), vals, ext)?;

    let apply = |side: Side, h: &GridFn| -> Result<GridFn> {
        let base = match side {
            Side::Left => a.clone(),
            Side::Right => b.clone(),
        };
        match family {
            Family::Sum => frac_sum(&sum_spec(calculus, side, alpha, &base), h),
            Family::Caputo => {
                caputo_diff(&op_spec(Family::Caputo, calculus, side, alpha, &base), h)
            }
            Family::Riemann => {
                riemann_diff(&op_spec(Family::Riemann, calculus, side, alpha, &base), h)
            }
            Family::DualCaputo => Err(Error::Domain("no dual-Caputo q suite".into())),
        }
    };
    let lhs = apply(Side::Left, &qf)?;
    let rhs = apply(Side::Right, &fb)?;
    // Q maps the right output point x to a+b−x on the left output grid.
    let mut worst = 0.0f64;
    for j in 0..rhs.len() {
        let x = rhs.grid().point(j);
        let l = value_at(&lhs, &(&(&a + &b) - &x))?;
        worst = worst.max((l - rhs.value(j)).abs());
    }
    Ok(worst)
}

fn byparts_span(f: &GridFn, g: &GridFn) -> Result<(Rat, Rat, usize)> {
    if f.direction() != Direction::Forward || g.direction() != Direction::Backward {
        return Err(Error::Domain(
            "by-parts suites take a forward factor f and a backward factor g".into(),
        ));
    }
    if f.len() != g.len() || f.len() < 4 {
        return Err(Error::Domain(
            "by-parts factors must share a span of at least 4 points".into(),
        ));
    }
    let a = f.offset().clone();
    let b = g.offset().clone();
    if &a + (f.len() as i64 - 1) != b {
        return Err(Error::Domain(format!(
            "by-parts factors must cover one window: forward from {a} vs backward from {b}"
        )));
    }
    Ok((a, b, f.len()))
}

/// Σ_{s=a+1}^{b−1} g(s) ∇_a^{−α} f(s) = Σ_{s=a+1}^{b−1} f(s) _b∇^{−α} g(s).
fn byparts_nabla_sum(alpha: &Rat, f: &GridFn, g: &GridFn) -> Result<f64> {
    let (a, b, len) = byparts_span(f, g)?;
    let u = frac_sum(&sum_spec(Calculus::Nabla, Side::Left, alpha, &a), f)?;
    let v = frac_sum(&sum_spec(Calculus::Nabla, Side::Right, alpha, &b), g)?;
    let mut s1 = 0.0f64;
    let mut s2 = 0.0f64;
    for i in 1..=(len - 2) {
        // s = a+i has backward index len−1−i
        s1 += g.value(len - 1 - i) * u.value(i);
        s2 += f.value(i) * v.value(len - 1 - i);
    }
    Ok((s1 - s2).abs())
}

/// Σ F(s) ∇_a^α G(s) = Σ G(s) _b∇^α F(s) over s = a+1..b−1 for non-integer
/// α, with G the forward factor and F the backward one.
fn byparts_nabla_riemann(alpha: &Rat, fwd: &GridFn, bwd: &GridFn) -> Result<f64> {
    let (a, b, len) = byparts_span(fwd, bwd)?;
    let left = riemann_diff(
        &op_spec(Family::Riemann, Calculus::Nabla, Side::Left, alpha, &a),
        fwd,
    )?;
    let right = riemann_diff(
        &op_spec(Family::Riemann, Calculus::Nabla, Side::Right, alpha, &b),
        bwd,
    )?;
    let mut s1 = 0.0f64;
    let mut s2 = 0.0f64;
    for i in 1..=(len - 2) {
        let s = &a + i as i64;
        s1 += bwd.value(len - 1 - i) * value_at(&left, &s)?;
        s2 += fwd.value(i) * value_at(&right, &s)?;
    }
    Ok((s1 - s2).abs())
}

/// Σ g(s) (Δ_{a+1}^{−α} f)(s+α) = Σ f(s) (_{b−1}Δ^{−α} g)(s−α).
fn byparts_delta_sum(alpha: &Rat, f: &GridFn, g: &GridFn) -> Result<f64> {
    let (a, b, len) = byparts_span(f, g)?;
    let f1 = f.restrict(&(&a + 1), len - 1)?;
    let g1 = g.restrict(&(&b - 1), len - 1)?;
    let u = frac_sum(&sum_spec(Calculus::Delta, Side::Left, alpha, &(&a + 1)), &f1)?;
    let v = frac_sum(&sum_spec(Calculus::Delta, Side::Right, alpha, &(&b - 1)), &g1)?;
    let mut s1 = 0.0f64;
    let mut s2 = 0.0f64;
    for i in 1..=(len - 2) {
        let s = &a + i as i64;
        s1 += g.value(len - 1 - i) * value_at(&u, &(&s + alpha))?;
        s2 += f.value(i) * value_at(&v, &(&s - alpha))?;
    }
    Ok((s1 - s2).abs())
}

/// Σ F(s) Δ_{a+1}^α G(s−α) = Σ G(s) _{b−1}Δ^α F(s+α) for non-integer α,
/// with G the forward factor and F the backward one. The shifted arguments
/// reach one inner-difference step past the operators' standard grids, so
/// the windowed evaluators supply the empty-sum extension there.
fn byparts_delta_riemann(alpha: &Rat, fwd: &GridFn, bwd: &GridFn) -> Result<f64> {
    let (a, b, len) = byparts_span(fwd, bwd)?;
    let n = floor_order(alpha)?;
    let g1 = fwd.restrict(&(&a + 1), len - 1)?;
    let f1 = bwd.restrict(&(&b - 1), len - 1)?;
    // values at the points (a+1)+(n−α)+k and (b−1)−(n−α)−k, k = −n..len−3−n
    let left = crate::ops::riemann_delta_left_window(alpha, &g1, -n, len - 2)?;
    let right = crate::ops::riemann_delta_right_window(alpha, &f1, -n, len - 2)?;
    let mut s1 = 0.0f64;
    let mut s2 = 0.0f64;
    for i in 1..=(len - 2) {
        // s = a+i: (s−α) sits at window slot i−1; (s+α) at len−2−i.
        s1 += bwd.value(len - 1 - i) * left[i - 1];
        s2 += fwd.value(i) * right[len - 2 - i];
    }
    Ok((s1 - s2).abs())
}

/// Σ_{s=a+1}^{b−1} g(s) ^C∇_a^α f(s)
///   = f(s) _b∇^{−(1−α)} g(s) |_a^{b−1} + Σ_{s=a}^{b−2} f(s) _b∇^α g(s),
/// for 0 < α < 1.
fn byparts_caputo_nabla(alpha: &Rat, f: &GridFn, g: &GridFn) -> Result<f64> {
    let (a, b, len) = byparts_span(f, g)?;
    let c = caputo_diff(
        &op_spec(Family::Caputo, Calculus::Nabla, Side::Left, alpha, &a),
        f,
    )?;
    let one_minus = &Rat::one() - alpha;
    let h = frac_sum(&sum_spec(Calculus::Nabla, Side::Right, &one_minus, &b), g)?;
    let rr = riemann_diff(
        &op_spec(Family::Riemann, Calculus::Nabla, Side::Right, alpha, &b),
        g,
    )?;
    let mut lhs = 0.0f64;
    for i in 1..=(len - 2) {
        lhs += g.value(len - 1 - i) * c.value(i - 1);
    }
    // f(s) h(s) at s = b−1 minus at s = a
    let mut rhs = f.value(len - 2) * h.value(1) - f.value(0) * h.value(len - 1);
    for i in 0..=(len - 3) {
        let s = &a + i as i64;
        rhs += f.value(i) * value_at(&rr, &s)?;
    }
    Ok((lhs - rhs).abs())
}

/// Σ_{s=a+1}^{b−1} g(s) ^CΔ_a^α f(s−α)
///   = f(s) _{b−1}Δ^{−(1−α)} g(s−(1−α)) |_a^{b−1}
///     + Σ_{s=a}^{b−2} f(s) _{b−1}Δ^α g(s+α),
/// for 0 < α < 1.
fn byparts_caputo_delta(alpha: &Rat, f: &GridFn, g: &GridFn) -> Result<f64> {
    let (a, b, len) = byparts_span(f, g)?;
    let c = caputo_diff(
        &op_spec(Family::Caputo, Calculus::Delta, Side::Left, alpha, &a),
        f,
    )?;
    let one_minus = &Rat::one() - alpha;
    let g1 = g.restrict(&(&b - 1), len - 1)?;
    let h = frac_sum(
        &sum_spec(Calculus::Delta, Side::Right, &one_minus, &(&b - 1)),
        &g1,
    )?;
    let rr = riemann_diff(
        &op_spec(Family::Riemann, Calculus::Delta, Side::Right, alpha, &(&b - 1)),
        &g1,
    )?;
    let mut lhs = 0.0f64;
    for i in 1..=(len - 2) {
        let s = &a + i as i64;
        lhs += g.value(len - 1 - i) * value_at(&c, &(&s - alpha))?;
    }
    let h_at = |s: &Rat| value_at(&h, &(s - &one_minus));
    let mut rhs = f.value(len - 2) * h_at(&(&b - 1))? - f.value(0) * h_at(&a)?;
    for i in 0..=(len - 3) {
        let s = &a + i as i64;
        rhs += f.value(i) * value_at(&rr, &(&s + alpha))?;
    }
    Ok((lhs - rhs).abs())
}

/// The sum/difference round trips on one side (nabla calculus):
/// difference-of-sum reproduces f always; sum-of-difference reproduces f
/// for non-integer α, and f minus its Taylor boundary sum at integer α.
fn sum_diff_round_trip(alpha: &Rat, f: &GridFn, side: Side) -> Result<f64> {
    let base = f.offset().clone();
    let n = floor_order(alpha)?;
    let calculus = Calculus::Nabla;
    let mut worst = 0.0f64;

    // difference of sum
    let u = frac_sum(&sum_spec(calculus, side, alpha, &base), f)?;
    let r_of_u = riemann_diff(&op_spec(Family::Riemann, calculus, side, alpha, &base), &u)?;
    let start = if alpha.is_integer() { n as usize } else { 1 };
    for k in 0..r_of_u.len() {
        worst = worst.max((r_of_u.value(k) - f.value(k + start)).abs());
    }

    if !alpha.is_integer() {
        // sum of difference reproduces f past the base
        let r = riemann_diff(&op_spec(Family::Riemann, calculus, side, alpha, &base), f)?;
        let s = frac_sum(&sum_spec(calculus, side, alpha, &base), &r)?;
        for k in 1..s.len() {
            worst = worst.max((s.value(k) - f.value(k)).abs());
        }
    } else {
        // integer order: the n-th difference next to the base reaches the
        // extension samples, and the Taylor boundary sum corrects the trip
        let dvals = crate::ops::nabla_n_with_ext(f, n, "integer-order round trip")?;
        let d = match side {
            Side::Left => GridFn::new(Grid::forward(&base + 1, dvals.len()), dvals)?,
            Side::Right => GridFn::new(Grid::backward(&base - 1, dvals.len()), dvals)?,
        };
        let s = frac_sum(&sum_spec(calculus, side, alpha, &base), &d)?;
        let bd = crate::ops::BoundaryData::extract(calculus, side, f, &base, n)?;
        for m in 0..s.len() {
            let mut rhs = f.value(m);
            for k in 0..n {
                let mut rise = 1.0; // m(m+1)…(m+k−1)
                for j in 0..k {
                    rise *= (m as i64 + j) as f64;
                }
                rhs -= rise / crate::gamma::factorial(k as u64) * bd.values[k as usize];
            }
            worst = worst.max((s.value(m) - rhs).abs());
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// batch harness
// ---------------------------------------------------------------------------

/// Sweep configuration for [`run_all_suites`].
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub orders: Vec<Rat>,
    pub lengths: Vec<usize>,
    pub seed: u64,
    /// Overrides every suite's default tolerance when set.
    pub tol: Option<f64>,
    /// Restricts the run to the named suites when non-empty ("all" matches
    /// everything).
    pub only: Vec<String>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            orders: ["1/4", "1/2", "4/3", "5/2"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect(),
            lengths: vec![8, 16, 32],
            seed: 42,
            tol: None,
            only: Vec::new(),
        }
    }
}

impl SweepConfig {
    fn wants(&self, name: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|s| s == name || s == "all")
    }
}

/// A function sampled on a wide unit-step lattice, from which grid
/// functions in either direction (with extensions) are cut. Values are
/// seeded uniform draws from [−1, 1].
struct Sampled {
    lo: Rat,
    vals: Vec<f64>,
}

impl Sampled {
    fn random(seed: u64, lo: Rat, count: usize) -> Sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vals = (0..count).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Sampled { lo, vals }
    }

    fn at(&self, t: &Rat) -> f64 {
        let k = (t - &self.lo)
            .as_i64()
            .expect("point off the sample lattice");
        self.vals[k as usize]
    }

    fn forward(&self, offset: &Rat, len: usize, ext: usize) -> GridFn {
        GridFn::sample(Grid::forward(offset.clone(), len), ext, |t| self.at(t))
    }

    fn backward(&self, offset: &Rat, len: usize, ext: usize) -> GridFn {
        GridFn::sample(Grid::backward(offset.clone(), len), ext, |t| self.at(t))
    }
}

fn subseed(seed: u64, salt: u64) -> u64 {
    // one splitmix64 step keyed by the salt
    let mut z = seed ^ salt.wrapping_mul(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn suite_inputs(
    suite: SuiteId,
    alpha: &Rat,
    len: usize,
    seed: u64,
) -> Result<(GridFn, Option<GridFn>)> {
    let n = floor_order(alpha)? as usize;
    let margin = n.saturating_sub(1);
    Ok(match suite {
        SuiteId::LeftDualI | SuiteId::LeftDualII | SuiteId::LCdual => {
            let s = Sampled::random(seed, Rat::zero(), len);
            (s.forward(&Rat::zero(), len, 0), None)
        }
        SuiteId::RightDualI | SuiteId::RightDualII => {
            let s = Sampled::random(seed, Rat::zero(), len + 1);
            (s.backward(&Rat::from_int(len as i64), len + 1, 0), None)
        }
        SuiteId::RCdual => {
            let s = Sampled::random(seed, Rat::zero(), len);
            (s.backward(&Rat::from_int(len as i64 - 1), len, 0), None)
        }
        SuiteId::RightDual2I | SuiteId::RightDual2II => {
            let top = &Rat::from_int(n as i64) - alpha;
            let lo = &top - (len as i64 - 1);
            let s = Sampled::random(seed, lo, len);
            (s.backward(&top, len, 0), None)
        }
        SuiteId::QDeltaSum
        | SuiteId::QDeltaCaputo
        | SuiteId::QDeltaRiemann
        | SuiteId::QNablaSum
        | SuiteId::QNablaCaputo
        | SuiteId::QNablaRiemann => {
            let wide = len + 2 * margin;
            let s = Sampled::random(seed, Rat::zero(), wide);
            (s.forward(&Rat::zero(), wide, 0), None)
        }
        SuiteId::BypartsNablaSum
        | SuiteId::BypartsNablaRiemann
        | SuiteId::BypartsDeltaSum
        | SuiteId::BypartsDeltaRiemann
        | SuiteId::BypartsCaputoNabla
        | SuiteId::BypartsCaputoDelta => {
            let sf = Sampled::random(seed, Rat::zero(), len);
            let sg = Sampled::random(subseed(seed, 0xB), Rat::zero(), len);
            (
                sf.forward(&Rat::zero(), len, 0),
                Some(sg.backward(&Rat::from_int(len as i64 - 1), len, 0)),
            )
        }
        SuiteId::Lbsdandds => {
            let s = Sampled::random(seed, Rat::from_int(-4), len + 4);
            (s.forward(&Rat::zero(), len, margin.max(1)), None)
        }
        SuiteId::Bsdandds => {
            let s = Sampled::random(seed, Rat::zero(), len + 4);
            (
                s.backward(&Rat::from_int(len as i64 - 1), len, margin.max(1)),
                None,
            )
        }
    })
}

/// Runs one table suite across the configured sweep, folding the worst case
/// into a single report.
pub fn run_suite(suite: SuiteId, cfg: &SweepConfig) -> Result<IdentityReport> {
    let mut orders: Vec<Rat> = cfg
        .orders
        .iter()
        .filter(|a| suite.accepts_order(a))
        .cloned()
        .collect();
    if matches!(
        suite,
        SuiteId::BypartsCaputoNabla | SuiteId::BypartsCaputoDelta
    ) && orders.is_empty()
    {
        orders = ["1/4", "1/2", "3/4"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
    }
    if matches!(suite, SuiteId::Lbsdandds | SuiteId::Bsdandds) {
        // exercise the integer-order Taylor-corrected round trip too
        orders.push(Rat::from_int(1));
        orders.push(Rat::from_int(2));
    }
    if orders.is_empty() {
        return Err(Error::Domain(format!(
            "no configured order satisfies the hypotheses of suite {suite}"
        )));
    }
    let tol = cfg.tol.unwrap_or_else(|| suite.default_tol());
    let mut merged: Option<IdentityReport> = None;
    for (oi, alpha) in orders.iter().enumerate() {
        for (li, len) in cfg.lengths.iter().enumerate() {
            let len = (*len).max(floor_order(alpha)? as usize + 4);
            let seed = subseed(cfg.seed, ((oi as u64) << 8) | li as u64);
            let (f, g) = suite_inputs(suite, alpha, len, seed)?;
            let rep = check_identity(suite, alpha, &f, g.as_ref())?.with_tol(tol);
            merge_into(&mut merged, rep);
        }
    }
    Ok(merged.unwrap().with_seed(cfg.seed).with_tol(tol))
}

/// Extra verifier suites beyond the dual/Q/by-parts table: semigroup laws,
/// commutation identities (including the arbitrary-real-order extension),
/// Riemann–Caputo relations, inversion formulas, power rules, closed forms
/// on constants, the Mittag-Leffler exponentials, and the solver checks.
pub const EXTRA_SUITES: [&str; 27] = [
    "semigroup-delta-right",
    "semigroup-nabla-left",
    "semigroup-nabla-right",
    "commute-delta-left",
    "commute-delta-right",
    "commute-nabla-left",
    "commute-nabla-right",
    "commute-mod-left",
    "commute-mod-right",
    "commute-ext-left",
    "commute-ext-right",
    "relate-delta-left",
    "relate-delta-right",
    "relate-nabla-left",
    "relate-nabla-right",
    "relate-dual-left",
    "relate-dual-right",
    "inversion-delta-left",
    "inversion-delta-right",
    "inversion-nabla-left",
    "inversion-nabla-right",
    "inversion-dual-left",
    "inversion-dual-right",
    "power-rules",
    "const-closed-forms",
    "ml-exponential",
    "fde-solvers",
];

fn merge_into(acc: &mut Option<IdentityReport>, rep: IdentityReport) {
    match acc {
        None => *acc = Some(rep),
        Some(a) => a.merge(&rep),
    }
}

fn run_extra(name: &str, cfg: &SweepConfig) -> Result<IdentityReport> {
    let seed = cfg.seed;
    let mut acc: Option<IdentityReport> = None;
    match name {
        "semigroup-delta-right" | "semigroup-nabla-left" | "semigroup-nabla-right" => {
            let (calculus, side) = match name {
                "semigroup-delta-right" => (Calculus::Delta, Side::Right),
                "semigroup-nabla-left" => (Calculus::Nabla, Side::Left),
                _ => (Calculus::Nabla, Side::Right),
            };
            let pairs: [(&str, &str); 6] = [
                ("1/4", "1/2"),
                ("1/2", "1/2"),
                ("1/3", "2/3"),
                ("1", "1"),
                ("4/3", "1/2"),
                ("4/3", "4/3"),
            ];
            for (pi, (al, be)) in pairs.iter().enumerate() {
                let (al, be): (Rat, Rat) = (al.parse().unwrap(), be.parse().unwrap());
                for (li, len) in cfg.lengths.iter().enumerate() {
                    let s = Sampled::random(
                        subseed(seed, 0x5E00 | ((pi as u64) << 4) | li as u64),
                        Rat::zero(),
                        *len,
                    );
                    let f = match side {
                        Side::Left => s.forward(&Rat::zero(), *len, 0),
                        Side::Right => s.backward(&Rat::from_int(*len as i64 - 1), *len, 0),
                    };
                    merge_into(&mut acc, semigroup_residual(calculus, side, &al, &be, &f)?);
                }
            }
        }
        "commute-delta-left" | "commute-delta-right" | "commute-nabla-left"
        | "commute-nabla-right" | "commute-mod-left" | "commute-mod-right" | "commute-ext-left"
        | "commute-ext-right" => {
            for (oi, alpha) in cfg.orders.iter().enumerate() {
                for (li, len) in cfg.lengths.iter().enumerate() {
                    let sd = subseed(seed, 0xC000 | ((oi as u64) << 4) | li as u64);
                    let s_left = Sampled::random(sd, Rat::from_int(-4), len + 4);
                    let f_left = s_left.forward(&Rat::zero(), *len, 3);
                    let s_right = Sampled::random(subseed(sd, 0xD), Rat::zero(), len + 4);
                    let f_right = s_right.backward(&Rat::from_int(*len as i64 - 1), *len, 3);
                    match name {
                        "commute-delta-left" => merge_into(
                            &mut acc,
                            sum_diff_commutation_residual(
                                Calculus::Delta,
                                Side::Left,
                                alpha,
                                1,
                                &f_left,
                            )?,
                        ),
                        "commute-delta-right" => merge_into(
                            &mut acc,
                            sum_diff_commutation_residual(
                                Calculus::Delta,
                                Side::Right,
                                alpha,
                                1,
                                &f_right,
                            )?,
                        ),
                        "commute-nabla-left" => {
                            for p in 1..=3 {
                                merge_into(
                                    &mut acc,
                                    sum_diff_commutation_residual(
                                        Calculus::Nabla,
                                        Side::Left,
                                        alpha,
                                        p,
                                        &f_left,
                                    )?,
                                );
                            }
                        }
                        "commute-nabla-right" => {
                            for p in 1..=3 {
                                merge_into(
                                    &mut acc,
                                    sum_diff_commutation_residual(
                                        Calculus::Nabla,
                                        Side::Right,
                                        alpha,
                                        p,
                                        &f_right,
                                    )?,
                                );
                            }
                        }
                        "commute-mod-left" => {
                            for p in 1..=3 {
                                merge_into(
                                    &mut acc,
                                    mod_commutation_residual(Side::Left, alpha, p, &f_left)?,
                                );
                            }
                        }
                        "commute-mod-right" => {
                            for p in 1..=3 {
                                merge_into(
                                    &mut acc,
                                    mod_commutation_residual(Side::Right, alpha, p, &f_right)?,
                                );
                            }
                        }
                        "commute-ext-left" | "commute-ext-right" => {
                            // arbitrary-real-order extension: order α−n < 0
                            if alpha.is_integer() {
                                continue;
                            }
                            let neg = alpha - floor_order(alpha)?;
                            let (side, h) = if name.ends_with("left") {
                                (Side::Left, &f_left)
                            } else {
                                (Side::Right, &f_right)
                            };
                            merge_into(
                                &mut acc,
                                sum_diff_commutation_residual(Calculus::Nabla, side, &neg, 1, h)?,
                            );
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        "relate-delta-left" | "relate-delta-right" | "relate-nabla-left" | "relate-nabla-right"
        | "relate-dual-left" | "relate-dual-right" | "inversion-delta-left"
        | "inversion-delta-right" | "inversion-nabla-left" | "inversion-nabla-right"
        | "inversion-dual-left" | "inversion-dual-right" => {
            let relate = name.starts_with("relate");
            let (family, calculus, side) = if name.contains("delta-left") {
                (Family::Caputo, Calculus::Delta, Side::Left)
            } else if name.contains("delta-right") {
                (Family::Caputo, Calculus::Delta, Side::Right)
            } else if name.contains("nabla-left") {
                (Family::Caputo, Calculus::Nabla, Side::Left)
            } else if name.contains("nabla-right") {
                (Family::Caputo, Calculus::Nabla, Side::Right)
            } else if name.contains("dual-left") {
                (Family::DualCaputo, Calculus::Nabla, Side::Left)
            } else {
                (Family::DualCaputo, Calculus::Nabla, Side::Right)
            };
            for (oi, alpha) in cfg.orders.iter().enumerate() {
                for (li, len) in cfg.lengths.iter().enumerate() {
                    let sd = subseed(seed, 0xAE00 | ((oi as u64) << 4) | li as u64);
                    let (f, base) = match side {
                        Side::Left => (
                            Sampled::random(sd, Rat::from_int(-4), len + 4).forward(
                                &Rat::zero(),
                                *len,
                                3,
                            ),
                            Rat::zero(),
                        ),
                        Side::Right => (
                            Sampled::random(sd, Rat::zero(), len + 4).backward(
                                &Rat::from_int(*len as i64 - 1),
                                *len,
                                3,
                            ),
                            Rat::from_int(*len as i64 - 1),
                        ),
                    };
                    let spec = OpSpec::new(family, calculus, side, alpha.clone(), base);
                    let rep = if relate {
                        relate_residual(&spec, &f)?
                    } else {
                        inversion_residual(&spec, &f)?
                    };
                    merge_into(&mut acc, rep);
                }
            }
        }
        "power-rules" => {
            let mus: Vec<Rat> = ["1/4", "1/2", "3/2", "5/2"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect();
            let len = *cfg.lengths.iter().max().unwrap_or(&24);
            for alpha in &cfg.orders {
                for mu in &mus {
                    merge_into(&mut acc, power_rule_residual(alpha, mu, len)?);
                }
            }
        }
        "const-closed-forms" => {
            let len = *cfg.lengths.iter().max().unwrap_or(&24);
            for alpha in cfg.orders.iter().filter(|a| !a.is_integer()) {
                merge_into(&mut acc, const_closed_forms_residual(alpha, len)?);
            }
        }
        "ml-exponential" => {
            for lambda in [0.25, -0.25, 0.5, -0.5] {
                let mut worst = 0.0f64;
                for m in 0..=10i64 {
                    let nab = ml_eval(
                        &MlSpec::new(MlFamily::Nabla, Rat::one(), Rat::one(), lambda),
                        &Rat::from_int(m),
                    )?;
                    let want = (1.0 - lambda).powi(-m as i32);
                    worst = worst.max(((nab.value - want) / want).abs());
                    let del = ml_eval(
                        &MlSpec::new(MlFamily::Delta, Rat::one(), Rat::one(), lambda),
                        &Rat::from_int(m),
                    )?;
                    let want = (1.0 + lambda).powi(m as i32);
                    worst = worst.max(((del.value - want) / want).abs());
                    if !del.pole_terminated || del.terms != m as usize + 1 {
                        worst = f64::INFINITY;
                    }
                }
                merge_into(
                    &mut acc,
                    IdentityReport::new("ml-exponential", format!("lambda={lambda}"), worst, 1e-10),
                );
            }
        }
        "fde-solvers" => {
            for calculus in [Calculus::Delta, Calculus::Nabla] {
                for alpha in ["1/4", "1/2", "3/4", "1"] {
                    for lambda in [0.25, -0.25, 0.5, -0.5] {
                        let alpha_r: Rat = alpha.parse().unwrap();
                        let a = match calculus {
                            Calculus::Delta => &alpha_r - 1,
                            Calculus::Nabla => Rat::zero(),
                        };
                        let forcing = fde::builtin_forcing("one", calculus, &a, 24)?;
                        let p =
                            fde::FdeProblem::new(calculus, alpha_r, lambda, a, 1.0, forcing, 24)?;
                        let ml = fde::solve_ml(&p)?;
                        let march = fde::solve_march(&p)?;
                        let gap = ml
                            .solution
                            .values()
                            .iter()
                            .zip(march.solution.values())
                            .map(|(x, y)| (x - y).abs())
                            .fold(0.0f64, f64::max);
                        // tolerances are stated for unit-scale data; growing
                        // solutions (|y| ~ (1−λ)^{−N}) scale them linearly
                        let scale = march
                            .solution
                            .values()
                            .iter()
                            .fold(1.0f64, |m, v| m.max(v.abs()));
                        let worst = gap.max(ml.residual).max(march.residual) / scale;
                        merge_into(
                            &mut acc,
                            IdentityReport::new(
                                "fde-solvers",
                                format!(
                                    "calculus={} alpha={alpha} lambda={lambda}",
                                    match calculus {
                                        Calculus::Delta => "delta",
                                        Calculus::Nabla => "nabla",
                                    }
                                ),
                                worst,
                                1e-8,
                            ),
                        );
                    }
                }
            }
            // and the Q-transform of the delta problem
            let alpha: Rat = "1/2".parse().unwrap();
            let a = &alpha - 1;
            let forcing = fde::builtin_forcing("one", Calculus::Delta, &a, 12)?;
            let p = fde::FdeProblem::new(Calculus::Delta, alpha, 0.3, a, 1.0, forcing, 12)?;
            merge_into(&mut acc, fde::q_transform_check(&p)?);
        }
        other => {
            return Err(Error::Parse(format!("unknown suite id {other:?}")));
        }
    }
    let mut rep = acc.ok_or_else(|| Error::Domain(format!("suite {name} had an empty sweep")))?;
    rep.suite = name.to_string();
    if let Some(t) = cfg.tol {
        rep = rep.with_tol(t);
    }
    Ok(rep.with_seed(seed))
}

/// frac_sum of the power-rule monomial against the closed form, as a
/// relative residual (the monomials grow like gamma ratios).
fn power_rule_residual(alpha: &Rat, mu: &Rat, len: usize) -> Result<IdentityReport> {
    let mut worst = 0.0f64;
    let mut fold = |got: &GridFn, want: &GridFn| {
        for k in 0..got.len() {
            let (g, w) = (got.value(k), want.value(k));
            worst = worst.max((g - w).abs() / g.abs().max(w.abs()).max(1.0));
        }
    };
    // nabla left on N_0
    let s = sum_spec(Calculus::Nabla, Side::Left, alpha, &Rat::zero());
    let f = GridFn::sample(Grid::forward(Rat::zero(), len), 0, |t| {
        rising(t, mu).unwrap()
    });
    fold(&frac_sum(&s, &f)?, &power_rule(&s, mu, len)?);
    // nabla right ending at b = len−1
    let b = Rat::from_int(len as i64 - 1);
    let s = sum_spec(Calculus::Nabla, Side::Right, alpha, &b);
    let f = GridFn::sample(Grid::backward(b.clone(), len), 0, |t| {
        rising(&(&b - t), mu).unwrap()
    });
    fold(&frac_sum(&s, &f)?, &power_rule(&s, mu, len)?);
    // delta right based at 0, monomial referenced to b = μ
    let s = sum_spec(Calculus::Delta, Side::Right, alpha, &Rat::zero());
    let f = GridFn::sample(Grid::backward(Rat::zero(), len), 0, |t| {
        falling(&(mu - t), mu).unwrap()
    });
    fold(&frac_sum(&s, &f)?, &power_rule(&s, mu, len)?);
    Ok(IdentityReport::new(
        "power-rules",
        format!("alpha={alpha} mu={mu} len={len}"),
        worst,
        1e-10,
    ))
}

/// Riemann of the constant 1 against (t−a)^{−α bar}/Γ(1−α) (and the right
/// mirror), the Caputo power rules including their vanishing cases, and the
/// exact-zero Caputo difference of constants.
fn const_closed_forms_residual(alpha: &Rat, len: usize) -> Result<IdentityReport> {
    let n = floor_order(alpha)?;
    let mut worst = 0.0f64;
    let ones_f = GridFn::with_ext(
        Grid::forward(Rat::zero(), len),
        vec![1.0; len],
        vec![1.0; 4],
    )?;
    let b = Rat::from_int(len as i64 - 1);
    let ones_b = GridFn::with_ext(Grid::backward(b.clone(), len), vec![1.0; len], vec![1.0; 4])?;

    // Riemann of 1 against the closed form
    let gamma_c = gamma(&(&Rat::one() - alpha))?;
    let r = riemann_diff(
        &op_spec(
            Family::Riemann,
            Calculus::Nabla,
            Side::Left,
            alpha,
            &Rat::zero(),
        ),
        &ones_f,
    )?;
    for k in 0..r.len() {
        let m = Rat::from_int(k as i64 + 1);
        let want = rising(&m, &-alpha)? / gamma_c;
        worst = worst.max((r.value(k) - want).abs());
    }
    let r = riemann_diff(
        &op_spec(Family::Riemann, Calculus::Nabla, Side::Right, alpha, &b),
        &ones_b,
    )?;
    for k in 0..r.len() {
        let m = Rat::from_int(k as i64 + 1);
        let want = rising(&m, &-alpha)? / gamma_c;
        worst = worst.max((r.value(k) - want).abs());
    }

    // Caputo of 1 is exactly zero
    for (side, h, base) in [
        (Side::Left, &ones_f, Rat::zero()),
        (Side::Right, &ones_b, b.clone()),
    ] {
        let c = caputo_diff(&op_spec(Family::Caputo, Calculus::Nabla, side, alpha, &base), h)?;
        for v in c.values() {
            worst = worst.max(v.abs());
        }
    }

    // Caputo power rules ^C∇_a^α (t−a)^{β−1 bar} = Γ(β)/Γ(β−α)(t−a)^{β−α−1 bar},
    // including the vanishing cases β−1 = α−j where Γ(β−α) sits at a pole.
    let mut betas: Vec<Rat> = vec!["1/2".parse().unwrap(), "3/2".parse().unwrap()];
    for j in 1..=n {
        let beta = &(alpha - j) + 1;
        if beta.is_positive() && beta != Rat::one() {
            betas.push(beta);
        }
    }
    let ext = (n - 1).max(0) as usize;
    for beta in &betas {
        // Grouped as Γ(β) · [Γ(m+β−α−1)/Γ(β−α)] / Γ(m): the bracketed
        // ratio has integer spacing m−1, so the vanishing cases β−1 = α−j
        // resolve through the both-poles limit — zero for m > j and the
        // finite limit values on the first j points.
        let gb = gamma(beta)?;
        let want_at = |m: &Rat| -> Result<f64> {
            let p = &(&(m + beta) - alpha) - 1;
            let ratio = crate::gamma::gamma_ratio(&p, &(beta - alpha))?;
            Ok(gb * ratio / crate::gamma::factorial((m.as_i64().unwrap() - 1) as u64))
        };
        let f = GridFn::sample(Grid::forward(Rat::zero(), len), ext, |t| {
            rising(t, &(beta - 1)).unwrap()
        });
        let c = caputo_diff(
            &op_spec(Family::Caputo, Calculus::Nabla, Side::Left, alpha, &Rat::zero()),
            &f,
        )?;
        for k in 0..c.len() {
            let m = Rat::from_int(k as i64 + 1);
            worst = worst.max((c.value(k) - want_at(&m)?).abs());
        }
        let f = GridFn::sample(Grid::backward(b.clone(), len), ext, |t| {
            rising(&(&b - t), &(beta - 1)).unwrap()
        });
        let c = caputo_diff(
            &op_spec(Family::Caputo, Calculus::Nabla, Side::Right, alpha, &b),
            &f,
        )?;
        for k in 0..c.len() {
            let m = Rat::from_int(k as i64 + 1);
            worst = worst.max((c.value(k) - want_at(&m)?).abs());
        }
    }
    Ok(IdentityReport::new(
        "const-closed-forms",
        format!("alpha={alpha} len={len}"),
        worst,
        1e-10,
    ))
}

/// Runs every identity suite (the dual/Q/by-parts table plus the extra
/// verifier suites) as a deterministic seeded sweep, one report per suite.
pub fn run_all_suites(cfg: &SweepConfig) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for suite in SuiteId::ALL {
        if cfg.wants(suite.name()) {
            out.push(run_suite(suite, cfg)?);
        }
    }
    for name in EXTRA_SUITES {
        if cfg.wants(name) {
            out.push(run_extra(name, cfg)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!(
            "no suite matches the filter {:?}",
            cfg.only
        )));
    }
    Ok(out)
}

/// All suite names the harness understands, in run order.
pub fn suite_names() -> Vec<&'static str> {
    SuiteId::ALL
        .iter()
        .map(|s| s.name())
        .chain(EXTRA_SUITES)
        .collect()
}
