//! Pole-aware gamma ratios on exact rational arguments.
//!
//! Every factorial power in the crate reduces to Γ(p)/Γ(q) with rational p
//! and q. The ratio is computed with limit semantics:
//!
//! * both arguments regular: `exp(lnΓ(p) − lnΓ(q))` with sign handling for
//!   negative non-integer arguments — but whenever p − q is an integer the
//!   ratio collapses to the exact rational product q(q+1)⋯(p−1) and no
//!   floating gamma is evaluated at all;
//! * q at a pole, p regular: 0 (the "division at pole yields zero"
//!   convention);
//! * both at poles p = −m, q = −n: the limit value (−1)^(n−m) n!/m!;
//! * p at a pole, q regular: an [`Error::InfiniteValue`] — never a sentinel
//!   float.
//!
//! Pole classification is exact rational arithmetic; no epsilon appears
//! anywhere in it.

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Whether a gamma argument sits at a pole of Γ (a non-positive integer).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleClass {
    Regular,
    /// The argument equals −m for this m >= 0.
    Pole(u64),
}

/// Exact pole classification of a rational gamma argument.
pub fn classify(x: &Rat) -> PoleClass {
    match x.as_i64() {
        Some(n) if n <= 0 => PoleClass::Pole((-n) as u64),
        _ => PoleClass::Regular,
    }
}

/// n = `[α] + 1` where `[α]` is the greatest integer strictly less than
/// α. For integer α this makes n = α (e.g. α = 2 gives `[α]` = 1, n = 2).
pub fn floor_order(alpha: &Rat) -> Result<i64> {
    if !alpha.is_positive() {
        return Err(Error::Domain(format!(
            "order must be positive, got {alpha}"
        )));
    }
    if let Some(n) = alpha.as_i64() {
        Ok(n)
    } else {
        Ok(alpha.floor_i64() + 1)
    }
}

/// Γ(p)/Γ(q) with the limit semantics described in the module docs.
pub fn gamma_ratio(p: &Rat, q: &Rat) -> Result<f64> {
    let diff = p - q;
    if diff.is_integer() {
        let d = diff
            .as_i64()
            .ok_or_else(|| Error::Domain("gamma argument difference overflows i64".into()))?;
        if d >= 0 {
            // Γ(p)/Γ(q) = q (q+1) ⋯ (p−1), an exact rational.
            // A zero factor appears exactly when q is at a pole and p is
            // past it, which is the "division at pole yields zero" case;
            // when both arguments are poles the product is the limit value.
            let mut acc = Rat::one();
            for j in 0..d {
                acc = acc * (q + j);
            }
            Ok(acc.to_f64())
        } else {
            let mut acc = Rat::one();
            for j in 0..-d {
                acc = acc * (p + j);
            }
            if acc.is_zero() {
                return Err(Error::InfiniteValue(format!(
                    "gamma ratio Γ({p})/Γ({q}) has a pole in the numerator only"
                )));
            }
            Ok(acc.recip().to_f64())
        }
    } else {
        // Non-integer difference: at most one argument can be a pole.
        match (classify(p), classify(q)) {
            (PoleClass::Pole(_), _) => Err(Error::InfiniteValue(format!(
                "gamma ratio Γ({p})/Γ({q}) has a pole in the numerator only"
            ))),
            (_, PoleClass::Pole(_)) => Ok(0.0),
            (PoleClass::Regular, PoleClass::Regular) => {
                let (lp, sp) = ln_abs_gamma(p);
                let (lq, sq) = ln_abs_gamma(q);
                Ok(sp * sq * (lp - lq).exp())
            }
        }
    }
}

/// Γ(x) as a float; errors at poles. Equivalent to `gamma_ratio(x, 1)`.
pub fn gamma(x: &Rat) -> Result<f64> {
    gamma_ratio(x, &Rat::one())
}

/// (ln|Γ(x)|, sign of Γ(x)) for a regular rational argument.
///
/// Arguments below 1/2 go through the reflection formula; the fractional
/// part of the reflection sine is reduced exactly before any float touches
/// it, so accuracy does not degrade near the poles.
pub fn ln_abs_gamma(x: &Rat) -> (f64, f64) {
    debug_assert!(classify(x) == PoleClass::Regular, "ln_abs_gamma at a pole");
    if x >= &Rat::new(1, 2) {
        (lanczos_ln_gamma(x.to_f64()), 1.0)
    } else {
        // Γ(x) Γ(1−x) = π / sin(πx). Reduce x mod 1 exactly: with
        // x = m + r, |r| <= 1/2, sin(πx) = (−1)^m sin(πr).
        let m = (x + Rat::new(1, 2)).floor_i64();
        let r = x - Rat::from_int(m);
        let sin_pi_r = (std::f64::consts::PI * r.to_f64()).sin();
        let sign_sin = if (m % 2 == 0) == (sin_pi_r >= 0.0) {
            1.0
        } else {
            -1.0
        };
        let one_minus = &Rat::one() - x;
        let ln = std::f64::consts::PI.ln()
            - sin_pi_r.abs().ln()
            - lanczos_ln_gamma(one_minus.to_f64());
        // Γ(1−x) > 0 since 1−x > 1/2, so the sign is the sine's.
        (ln, sign_sin)
    }
}

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
// Relative accuracy ~1e-15 for x >= 1/2.
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

fn lanczos_ln_gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let z = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// n! as f64 (exact for n <= 20, correctly rounded beyond).
pub fn factorial(n: u64) -> f64 {
    let mut acc = 1.0f64;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}
