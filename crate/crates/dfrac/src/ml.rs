//! Delta and nabla discrete Mittag-Leffler functions.
//!
//! The delta family is
//!
//! ```text
//! E_(α,β)(λ, z) = Σ_k λ^k (z+(k−1)(α−1))^(kα) (z+k(α−1))^(β−1) / Γ(αk+β)
//! ```
//!
//! and the nabla family
//!
//! ```text
//! E_{α,β bar}(λ, z) = Σ_k λ^k z^{kα+β−1 bar} / Γ(αk+β).
//! ```
//!
//! On the grids where these functions solve fractional difference
//! equations, the first falling power of the delta family hits a
//! denominator pole at every k past some index, so the series terminates
//! exactly (the term's denominator argument is (z+2−α)−k, which marches
//! down through the non-positive integers whenever z+2−α is an integer).
//! Inside the series the strict division-at-pole-yields-zero rule applies:
//! a denominator pole makes the term zero even when the numerator is at a
//! pole too, otherwise the terms past the termination index would resurrect
//! through the both-poles limit and the sum would no longer terminate.

use crate::error::{Error, Result};
use crate::fpow::{falling_strict, rising};
use crate::gamma::{classify, gamma_ratio, PoleClass};
use crate::scalar::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlFamily {
    Delta,
    Nabla,
}

/// Mittag-Leffler parameters plus the truncation policy.
#[derive(Debug, Clone)]
pub struct MlSpec {
    pub family: MlFamily,
    pub alpha: Rat,
    pub beta: Rat,
    pub lambda: f64,
    /// Relative tail tolerance of the truncation policy.
    pub tol: f64,
    /// Hard cap on the number of series terms.
    pub k_max: usize,
}

impl MlSpec {
    pub fn new(family: MlFamily, alpha: Rat, beta: Rat, lambda: f64) -> MlSpec {
        MlSpec {
            family,
            alpha,
            beta,
            lambda,
            tol: 1e-13,
            k_max: 5_000,
        }
    }

    pub fn with_truncation(mut self, tol: f64, k_max: usize) -> MlSpec {
        self.tol = tol;
        self.k_max = k_max;
        self
    }
}

/// An evaluated Mittag-Leffler partial sum: the value, the truncation index
/// K (terms 0..=K entered the sum), and how the series stopped.
#[derive(Debug, Clone, Copy)]
pub struct MlValue {
    pub value: f64,
    pub terms: usize,
    pub last_term: f64,
    pub pole_terminated: bool,
}

/// Evaluates the series at rational z.
///
/// The sum stops at the first index K where either the term is exactly zero
/// with all later terms provably zero (pole termination), or |term| <
/// tol·(1+|partial|) has held for three consecutive k with k ≥ ⌈|z|⌉+2.
/// The three-in-a-row guard protects against the early-growth regime where
/// the factorial powers still outgrow λ^k.
///
/// The nabla family requires |λ| < 1 (no convergence region is claimed
/// beyond that); the delta family requires either a pole-terminating z
/// (z+2−α an integer) or |λ| < 1.
pub fn ml_eval(spec: &MlSpec, z: &Rat) -> Result<MlValue> {
    if !spec.alpha.is_positive() {
        return Err(Error::Domain(format!(
            "Mittag-Leffler needs α > 0, got {}",
            spec.alpha
        )));
    }
    if spec.tol <= 0.0 || spec.k_max < 1 {
        return Err(Error::Domain(
            "truncation policy needs tol > 0 and k_max >= 1".into(),
        ));
    }
    match spec.family {
        MlFamily::Delta => ml_delta(spec, z),
        MlFamily::Nabla => ml_nabla(spec, z),
    }
}

fn tail_floor(z: &Rat) -> usize {
    z.abs().ceil_i64().max(0) as usize + 2
}

fn ml_delta(spec: &MlSpec, z: &Rat) -> Result<MlValue> {
    let alpha = &spec.alpha;
    let terminator = &(z + 2) - alpha; // denominator argument at k = 0
    if !terminator.is_integer() && spec.lambda.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "delta Mittag-Leffler at z = {z} does not pole-terminate and |λ| = {} >= 1",
            spec.lambda.abs()
        )));
    }
    let k_min = tail_floor(z);
    let mut partial = 0.0f64;
    let mut lam_pow = 1.0f64;
    let mut streak = 0usize;
    let mut last_term = 0.0f64;
    for k in 0..spec.k_max {
        let kr = Rat::from_int(k as i64);
        let den_arg = &terminator - &kr;
        // At k = 0 the leading power has exponent 0 and is the empty
        // product 1 whatever its argument; from k = 1 on, a denominator
        // pole zeroes this and every later term.
        if k >= 1 && matches!(classify(&den_arg), PoleClass::Pole(_)) {
            return Ok(MlValue {
                value: partial,
                terms: k,
                last_term,
                pole_terminated: true,
            });
        }
        let x1 = z + &(&(&kr - 1) * &(alpha - 1));
        let x2 = z + &(&kr * &(alpha - 1));
        let t1 = falling_strict(&x1, &(&kr * alpha))?;
        let t2 = falling_strict(&x2, &(&spec.beta - 1))?;
        let inv_gamma = gamma_ratio(&Rat::one(), &(&(&kr * alpha) + &spec.beta))?;
        let term = lam_pow * t1 * t2 * inv_gamma;
        partial += term;
        last_term = term;
        if k >= k_min && term.abs() < spec.tol * (1.0 + partial.abs()) {
            streak += 1;
            if streak == 3 {
                return Ok(MlValue {
                    value: partial,
                    terms: k,
                    last_term,
                    pole_terminated: false,
                });
            }
        } else {
            streak = 0;
        }
        lam_pow *= spec.lambda;
    }
    Err(Error::NonConvergence {
        partial,
        last_term,
        k_max: spec.k_max,
    })
}

fn ml_nabla(spec: &MlSpec, z: &Rat) -> Result<MlValue> {
    let alpha = &spec.alpha;
    if let PoleClass::Pole(_) = classify(z) {
        // z^{γ bar} = 0 for every k >= 1 (and for k = 0 unless β = 1, where
        // the exponent is 0 and z^{0 bar} = 1).
        let gamma0 = &spec.beta - 1;
        let value = if gamma0.is_zero() {
            gamma_ratio(&Rat::one(), &spec.beta)?
        } else {
            rising(z, &gamma0)? * gamma_ratio(&Rat::one(), &spec.beta)?
        };
        return Ok(MlValue {
            value,
            terms: 1,
            last_term: 0.0,
            pole_terminated: true,
        });
    }
    if spec.lambda.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "nabla Mittag-Leffler needs |λ| < 1, got {}",
            spec.lambda.abs()
        )));
    }
    let z_int = z.as_i64().filter(|m| *m >= 1);
    let k_min = tail_floor(z);
    let mut partial = 0.0f64;
    let mut lam_pow = 1.0f64;
    let mut streak = 0usize;
    let mut last_term = 0.0f64;
    for k in 0..spec.k_max {
        let kr = Rat::from_int(k as i64);
        let gamma_exp = &(&(&kr * alpha) + &spec.beta) - 1; // kα+β−1
        let gamma_arg = &gamma_exp + 1; // kα+β
        let factor = if gamma_exp.is_zero() {
            gamma_ratio(&Rat::one(), &gamma_arg)?
        } else if let Some(m) = z_int {
            // Γ(m+kα+β−1)/Γ(kα+β) has integer spacing m−1: exact product.
            gamma_ratio(&(z + &gamma_exp), &gamma_arg)? / crate::gamma::factorial((m - 1) as u64)
        } else {
            rising(z, &gamma_exp)? * gamma_ratio(&Rat::one(), &gamma_arg)?
        };
        let term = lam_pow * factor;
        partial += term;
        last_term = term;
        if k >= k_min && term.abs() < spec.tol * (1.0 + partial.abs()) {
            streak += 1;
            if streak == 3 {
                return Ok(MlValue {
                    value: partial,
                    terms: k,
                    last_term,
                    pole_terminated: false,
                });
            }
        } else {
            streak = 0;
        }
        lam_pow *= spec.lambda;
    }
    Err(Error::NonConvergence {
        partial,
        last_term,
        k_max: spec.k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn nabla(alpha: &str, beta: &str, lambda: f64) -> MlSpec {
        MlSpec::new(MlFamily::Nabla, rat(alpha), rat(beta), lambda)
    }

    fn delta(alpha: &str, beta: &str, lambda: f64) -> MlSpec {
        MlSpec::new(MlFamily::Delta, rat(alpha), rat(beta), lambda)
    }

    #[test]
    fn nabla_exponential_closed_form() {
        // E_{1 bar}(λ, m) = (1−λ)^{−m}
        for lambda in [0.25, -0.25, 0.5, -0.5] {
            for m in 0..=10i64 {
                let got = ml_eval(&nabla("1", "1", lambda), &Rat::from_int(m)).unwrap();
                let want = (1.0 - lambda).powi(-m as i32);
                assert!(
                    (got.value - want).abs() <= 1e-10 * want.abs(),
                    "λ={lambda} m={m}: {} vs {want}",
                    got.value
                );
            }
        }
        // z = 2, λ = 1/2 → 4
        let got = ml_eval(&nabla("1", "1", 0.5), &rat("2")).unwrap();
        assert!((got.value - 4.0).abs() < 1e-10);
    }

    #[test]
    fn nabla_lambda_zero_is_one() {
        for alpha in ["1/4", "1", "5/2"] {
            let got = ml_eval(&nabla(alpha, "1", 0.0), &rat("3")).unwrap();
            assert!((got.value - 1.0).abs() < 1e-15, "alpha={alpha}");
        }
    }

    #[test]
    fn nabla_at_zero_argument() {
        // z = 0: only the k = 0 term survives; it is 1 for β = 1 and 0 otherwise.
        let got = ml_eval(&nabla("1/2", "1", 0.3), &rat("0")).unwrap();
        assert_eq!(got.value, 1.0);
        assert!(got.pole_terminated);
        let got = ml_eval(&nabla("1/2", "1/2", 0.3), &rat("0")).unwrap();
        assert_eq!(got.value, 0.0);
    }

    #[test]
    fn delta_binomial_closed_form() {
        // E_(1)(λ, m) = (1+λ)^m with exact pole termination at k = m+1.
        for lambda in [1.0, 0.5, -0.25, 2.0] {
            for m in 0..=10i64 {
                let got = ml_eval(&delta("1", "1", lambda), &Rat::from_int(m)).unwrap();
                let want = (1.0 + lambda).powi(m as i32);
                assert!(
                    (got.value - want).abs() <= 1e-12 * want.abs().max(1.0),
                    "λ={lambda} m={m}: {} vs {want}",
                    got.value
                );
                assert!(got.pole_terminated);
                assert_eq!(got.terms, m as usize + 1);
            }
        }
        let got = ml_eval(&delta("1", "1", 1.0), &rat("3")).unwrap();
        assert_eq!(got.value, 8.0);
        assert_eq!(got.terms, 4);
    }

    #[test]
    fn delta_term_zero_survives_leading_pole() {
        // z = α−2 makes the k=0 denominator argument a pole, but the
        // zero-order leading power is still the empty product: the value is
        // z^(β−1)/Γ(β), independent of λ, and the series stops at k = 1.
        let got = ml_eval(&delta("1/2", "1", 0.7), &rat("-3/2")).unwrap();
        assert_eq!(got.value, 1.0); // β = 1: z^(0)/Γ(1) = 1
        assert!(got.pole_terminated);
        assert_eq!(got.terms, 1);
    }

    #[test]
    fn delta_pole_termination_on_solution_grid() {
        // z = (α−1)+m: the falling power's denominator argument is m+1−k,
        // so terms vanish for all k >= m+1 — exactly, not approximately.
        for alpha in ["1/2", "1/4", "3/4"] {
            let alpha_r = rat(alpha);
            for m in 0..6i64 {
                let z = &(&alpha_r - 1) + m;
                let got = ml_eval(&delta(alpha, alpha, 0.3), &z).unwrap();
                assert!(got.pole_terminated, "alpha={alpha} m={m}");
                assert_eq!(got.terms, m as usize + 1, "alpha={alpha} m={m}");
            }
        }
    }

    #[test]
    fn nabla_tail_truncation() {
        // 0 < λ < 1, integer z: term ratio tends to λ; the last accepted
        // term sits below the tolerance.
        let spec = nabla("3/4", "1", 0.6);
        let got = ml_eval(&spec, &rat("5")).unwrap();
        assert!(!got.pole_terminated);
        assert!(got.last_term.abs() < spec.tol * (1.0 + got.value.abs()));
        // tighter tolerance gives the same value to that accuracy
        let tight = ml_eval(&spec.clone().with_truncation(1e-15, 20_000), &rat("5")).unwrap();
        assert!((got.value - tight.value).abs() < 1e-11 * tight.value.abs());
    }

    #[test]
    fn non_convergence_is_an_error() {
        let spec = nabla("1/2", "1", 0.9).with_truncation(1e-13, 8);
        assert!(matches!(
            ml_eval(&spec, &rat("6")),
            Err(Error::NonConvergence { .. })
        ));
        // |λ| >= 1 is rejected outright in the nabla family.
        assert!(ml_eval(&nabla("1/2", "1", 1.0), &rat("2")).is_err());
        // ... and in the delta family when z does not pole-terminate.
        assert!(ml_eval(&delta("1/2", "1", 1.5), &rat("1/3")).is_err());
    }
}
