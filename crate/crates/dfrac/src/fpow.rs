//! Falling and rising factorial powers and the integer difference operators.
//!
//! The falling power is t^(α) = Γ(t+1)/Γ(t+1−α), the rising power is
//! t^{ᾱ} = Γ(t+α)/Γ(t), both under the pole-aware ratio semantics of
//! [`crate::gamma::gamma_ratio`]. In particular 0^{ᾱ} = 0 for regular α,
//! and t^{0̄} = 1 for every t.

use crate::error::{Error, Result};
use crate::gamma::{classify, gamma_ratio, PoleClass};
use crate::grid::{Direction, Grid, GridFn};
use crate::scalar::Rat;

/// Falling factorial power t^(α) = Γ(t+1)/Γ(t+1−α).
///
/// Division at a denominator pole yields zero; a numerator-only pole
/// propagates the infinite-value error. When both gamma arguments sit at
/// poles the limit value is returned, which extends the classical
/// convention to every rational pair.
pub fn falling(t: &Rat, alpha: &Rat) -> Result<f64> {
    gamma_ratio(&(t + 1), &(&(t + 1) - alpha))
}

/// Falling power under the strict division-at-pole convention: whenever the
/// denominator argument t+1−α is a non-positive integer the value is zero,
/// even if the numerator argument is a pole too. The zero-order power is
/// the empty product 1 for every t. The delta Mittag-Leffler series relies
/// on the strict rule to terminate exactly.
pub fn falling_strict(t: &Rat, alpha: &Rat) -> Result<f64> {
    if alpha.is_zero() {
        return Ok(1.0);
    }
    let den = &(t + 1) - alpha;
    if let PoleClass::Pole(_) = classify(&den) {
        return Ok(0.0);
    }
    falling(t, alpha)
}

/// Rising factorial power t^{ᾱ} = Γ(t+α)/Γ(t), with t^{0̄} = 1.
pub fn rising(t: &Rat, alpha: &Rat) -> Result<f64> {
    if alpha.is_zero() {
        return Ok(1.0);
    }
    gamma_ratio(&(t + alpha), t)
}

/// Integer difference operators of [`diff_n`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOp {
    /// Δf(t) = f(t+1) − f(t)
    Delta,
    /// ∇f(t) = f(t) − f(t−1)
    Nabla,
    /// (−1)^n Δ^n
    CircledDelta,
    /// (−1)^n ∇^n
    CircledNabla,
}

/// C(n, k) as f64 for small n.
pub(crate) fn binom(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// Δ^n f(t) = Σ_r (−1)^(n−r) C(n,r) f(t+r) on raw sample vectors.
#[allow(clippy::manual_is_multiple_of)]
fn delta_n(values: &[f64], n: usize) -> Vec<f64> {
    let len = values.len() - n;
    (0..len)
        .map(|k| {
            (0..=n)
                .map(|r| {
                    let s = if (n - r) % 2 == 0 { 1.0 } else { -1.0 };
                    s * binom(n as i64, r as i64) * values[k + r]
                })
                .sum()
        })
        .collect()
}

/// Iterated forward/backward difference of a grid function. The result
/// shrinks by n points on the side the operator consumes; circled variants
/// carry the (−1)^n sign.
pub fn diff_n(f: &GridFn, n: usize, op: DiffOp) -> Result<GridFn> {
    if f.len() <= n {
        return Err(Error::Domain(format!(
            "difference of order {n} needs more than {n} points, grid has {}",
            f.len()
        )));
    }
    let circled = matches!(op, DiffOp::CircledDelta | DiffOp::CircledNabla);
    let sign = if circled && n % 2 == 1 { -1.0 } else { 1.0 };
    let forward_kind = matches!(op, DiffOp::Delta | DiffOp::CircledDelta);

    // In storage order, Δ on a forward grid and ∇ on a backward grid both
    // combine samples at k..k+n; the mirrored pairs reverse first.
    let natural = forward_kind == (f.direction() == Direction::Forward);
    let mut vals = f.values().to_vec();
    if !natural {
        vals.reverse();
    }
    let mut out = delta_n(&vals, n);
    if !natural {
        out.reverse();
    }
    // ∇ on a backward grid is Σ (−1)^r C(n,r) u(t−r) = storage-order Δ^n
    // up to the overall sign (−1)^n.
    #[allow(clippy::manual_is_multiple_of)]
    let parity = if forward_kind || n % 2 == 0 { 1.0 } else { -1.0 };
    for v in &mut out {
        *v *= sign * parity;
    }

    let out_offset = match (f.direction(), forward_kind) {
        (Direction::Forward, true) => f.offset().clone(),
        (Direction::Forward, false) => f.offset() + n as i64,
        (Direction::Backward, true) => f.offset() - n as i64,
        (Direction::Backward, false) => f.offset().clone(),
    };
    let grid = match f.direction() {
        Direction::Forward => Grid::forward(out_offset, f.len() - n),
        Direction::Backward => Grid::backward(out_offset, f.len() - n),
    };
    GridFn::new(grid, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[allow(clippy::excessive_precision)]
    const SQRT_PI: f64 = 1.772453850905516027298167483341145182;

    fn rat(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling(&rat("3"), &rat("2")).unwrap(), 6.0);
        // Γ(2)/Γ(0): division at pole yields zero.
        assert_eq!(falling(&rat("1"), &rat("2")).unwrap(), 0.0);
        // μ^(μ) = Γ(μ+1): Γ(7/2) = 15√π/8.
        let v = falling(&rat("5/2"), &rat("5/2")).unwrap();
        assert!(close(v, 15.0 / 8.0 * SQRT_PI, 1e-13), "got {v}");
    }

    #[test]
    fn rising_examples() {
        assert_eq!(rising(&rat("2"), &rat("3")).unwrap(), 24.0);
        assert_eq!(rising(&rat("0"), &rat("1/2")).unwrap(), 0.0);
        // Γ(5/2)/Γ(2)
        let v = rising(&rat("2"), &rat("1/2")).unwrap();
        assert!(close(v, 0.75 * SQRT_PI, 1e-13), "got {v}");
        // t^{0̄} = 1 for every t, including t = 0.
        assert_eq!(rising(&rat("0"), &rat("0")).unwrap(), 1.0);
        assert_eq!(rising(&rat("-3"), &rat("0")).unwrap(), 1.0);
    }

    #[test]
    fn rising_is_shifted_falling() {
        // t^{ᾱ} = (t+α−1)^(α) wherever both are finite.
        for t in ["1/4", "3/4", "2", "7/2", "5"] {
            for a in ["1/4", "1/2", "3/2", "5/2", "3"] {
                let (t, a) = (rat(t), rat(a));
                let r = rising(&t, &a).unwrap();
                let f = falling(&(&(&t + &a) - 1), &a).unwrap();
                assert!(close(r, f, 1e-12), "t={t} α={a}: {r} vs {f}");
            }
        }
    }

    #[test]
    fn falling_strict_zeroes_double_poles() {
        // t = −1, α = 2: Γ(0)/Γ(−2) has the limit value 2, but the strict
        // convention takes the denominator pole first.
        assert_eq!(falling(&rat("-1"), &rat("2")).unwrap(), 2.0);
        assert_eq!(falling_strict(&rat("-1"), &rat("2")).unwrap(), 0.0);
        // Regular value untouched.
        assert_eq!(falling_strict(&rat("3"), &rat("2")).unwrap(), 6.0);
        // The zero-order power is the empty product even at a pole.
        assert_eq!(falling_strict(&rat("-2"), &rat("0")).unwrap(), 1.0);
        assert_eq!(falling(&rat("-2"), &rat("0")).unwrap(), 1.0);
    }

    #[test]
    fn cauchy_function_vanishes() {
        // (t−σ(s))^(n−1) = 0 for s = t−(n−1), …, t−1.
        let n = 4i64;
        let t = rat("10");
        for s in (t.as_i64().unwrap() - (n - 1))..t.as_i64().unwrap() {
            let arg = &t - &sigma_of(s);
            let v = falling(&arg, &rat(&(n - 1).to_string())).unwrap();
            assert_eq!(v, 0.0, "s = {s}");
        }
    }

    fn sigma_of(s: i64) -> Rat {
        Rat::from_int(s + 1)
    }

    #[test]
    fn diff_examples() {
        // Δ of t² on N_0 is 2t+1.
        let f = GridFn::new(
            Grid::forward(rat("0"), 6),
            (0..6).map(|k| (k * k) as f64).collect(),
        )
        .unwrap();
        let d = diff_n(&f, 1, DiffOp::Delta).unwrap();
        assert_eq!(d.values(), &[1.0, 3.0, 5.0, 7.0, 9.0]);
        assert_eq!(d.offset(), &rat("0"));

        // ∇² of a linear function is zero; output starts at a+2.
        let g = GridFn::new(Grid::forward(rat("0"), 6), (0..6).map(|k| k as f64).collect())
            .unwrap();
        let d2 = diff_n(&g, 2, DiffOp::Nabla).unwrap();
        assert_eq!(d2.values(), &[0.0, 0.0, 0.0, 0.0]);
        assert_eq!(d2.offset(), &rat("2"));

        // circled nabla: −(f(t) − f(t−1)).
        let d1 = diff_n(&g, 1, DiffOp::CircledNabla).unwrap();
        assert_eq!(d1.values(), &[-1.0, -1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn diff_backward_grids() {
        // f(t) = t on 5N: values 5,4,3,2,1 at indices 0..5.
        let f = GridFn::new(
            Grid::backward(rat("5"), 5),
            (0..5).map(|k| (5 - k) as f64).collect(),
        )
        .unwrap();
        // Δf = 1 everywhere; consumes the top point.
        let d = diff_n(&f, 1, DiffOp::Delta).unwrap();
        assert_eq!(d.values(), &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(d.offset(), &rat("4"));
        assert_eq!(d.direction(), Direction::Backward);
        // ∇f = 1; consumes the bottom point, offset unchanged.
        let d = diff_n(&f, 1, DiffOp::Nabla).unwrap();
        assert_eq!(d.values(), &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(d.offset(), &rat("5"));
        // circled delta of t² on a backward grid: −(2t+1).
        let q = GridFn::new(
            Grid::backward(rat("5"), 5),
            (0..5).map(|k| ((5 - k) * (5 - k)) as f64).collect(),
        )
        .unwrap();
        let d = diff_n(&q, 1, DiffOp::CircledDelta).unwrap();
        assert_eq!(d.values(), &[-9.0, -7.0, -5.0, -3.0]);
    }

    #[test]
    fn diff_needs_enough_points() {
        let f = GridFn::new(Grid::forward(rat("0"), 3), vec![1.0, 2.0, 3.0]).unwrap();
        assert!(diff_n(&f, 3, DiffOp::Delta).is_err());
        assert!(diff_n(&f, 2, DiffOp::Delta).is_ok());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn rational(num: i64, den: i64) -> Rat {
            Rat::new(num, den)
        }

        proptest! {
            /// Monotonicity of the falling power: t <= r gives
            /// t^(α) <= r^(α) on the branch where every gamma argument is
            /// positive (α−1 < t <= r < α).
            #[test]
            fn falling_power_monotone(den in 3i64..40, dt in 1i64..20, dr in 0i64..15, an in 5i64..200) {
                let alpha = rational(an, 40); // (0.125, 5)
                let t = &alpha - &rational(dt, den.max(dt + 1));
                let r = &t + &rational(dr, 64); // t <= r
                prop_assume!(t > &alpha - 1 && r < alpha && t.is_positive());
                prop_assume!(!t.is_integer() && !r.is_integer());
                let ft = falling(&t, &alpha).unwrap();
                let fr = falling(&r, &alpha).unwrap();
                prop_assert!(
                    ft <= fr * (1.0 + 1e-12) + 1e-12,
                    "t={t} r={r} α={alpha}: {ft} vs {fr}"
                );
            }

            /// Power-of-a-power inequality: for 0 < α < 1 and t > ν,
            /// t^(αν) >= (t^(ν))^α.
            #[test]
            fn falling_power_interpolation(an in 1i64..16, nun in 1i64..48, extra in 1i64..64) {
                let alpha = rational(an, 16); // (0, 1)
                let nu = rational(nun, 16); // (0, 3)
                let t = &nu + &rational(extra, 16);
                prop_assume!(!(&t - &nu).is_integer() || true);
                let lhs = falling(&t, &(&alpha * &nu)).unwrap();
                let rhs = falling(&t, &nu).unwrap().powf(alpha.to_f64());
                prop_assert!(
                    lhs >= rhs * (1.0 - 1e-12) - 1e-12,
                    "t={t} α={alpha} ν={nu}: {lhs} vs {rhs}"
                );
            }

            /// The rising power is the shifted falling power wherever both
            /// are finite: t^{α bar} = (t+α−1)^(α).
            #[test]
            fn rising_equals_shifted_falling(tn in -40i64..40, td in 1i64..6, an in 0i64..40, ad in 1i64..6) {
                let t = rational(tn, td);
                let alpha = rational(an, ad);
                let r = rising(&t, &alpha);
                let f = falling(&(&(&t + &alpha) - 1), &alpha);
                match (r, f) {
                    (Ok(rv), Ok(fv)) => {
                        let scale = rv.abs().max(fv.abs()).max(1.0);
                        prop_assert!((rv - fv).abs() <= 1e-11 * scale, "t={t} α={alpha}");
                    }
                    // the infinite-value error must strike both routes or
                    // neither: they name the same gamma ratio
                    (Err(_), Err(_)) => {}
                    (a, b) => prop_assert!(false, "mixed outcomes at t={t} α={alpha}: {a:?} vs {b:?}"),
                }
            }

            /// Integer-order difference operators telescope: Δ^n = Δ(Δ^(n−1)).
            #[test]
            fn diff_iterates(vals in proptest::collection::vec(-10.0f64..10.0, 6..14), n in 1usize..4) {
                let f = GridFn::new(Grid::forward(Rat::zero(), vals.len()), vals).unwrap();
                prop_assume!(f.len() > n);
                let all_at_once = diff_n(&f, n, DiffOp::Delta).unwrap();
                let mut step = f.clone();
                for _ in 0..n {
                    step = diff_n(&step, 1, DiffOp::Delta).unwrap();
                }
                for k in 0..all_at_once.len() {
                    prop_assert!((all_at_once.value(k) - step.value(k)).abs() < 1e-9);
                }
            }
        }
    }
}
