//! The four fractional sums, their power rules, and the semigroup laws.

use crate::error::{Error, Result};
use crate::gamma::gamma_ratio;
use crate::grid::{Direction, Grid, GridFn};
use crate::report::IdentityReport;
use crate::scalar::Rat;

use super::{Calculus, Family, OpSpec, Side};

/// Kernel weights w_d = Γ(β+d)/(Γ(β) d!), computed by the exact rational
/// recurrence w_0 = 1, w_d = w_{d−1}(β+d−1)/d and rounded once at the end.
/// Valid for any rational β (negative non-integer orders evaluate the
/// unified difference kernel; β = 0 degenerates to the identity kernel).
pub(crate) fn sum_weights(order: &Rat, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(1.0);
    let mut acc = Rat::one();
    for d in 1..count as i64 {
        acc = acc * (order + (d - 1)) / d;
        out.push(acc.to_f64());
    }
    out
}

fn check_direction(f: &GridFn, want: Direction, what: &str) -> Result<()> {
    if f.direction() != want {
        return Err(Error::Domain(format!(
            "{what} needs a {} grid",
            match want {
                Direction::Forward => "forward",
                Direction::Backward => "backward",
            }
        )));
    }
    Ok(())
}

/// Delta left sum of order β based at f's offset a:
/// u(a+β+j) = (1/Γ(β)) Σ_{s=a}^{a+j} (t−σ(s))^(β−1) f(s).
/// Values are produced for j = j_lo .. j_lo+out_len−1; j < 0 is the empty
/// sum (0), j beyond the data is an error.
pub(crate) fn delta_left_sum_window(
    order: &Rat,
    f: &GridFn,
    j_lo: i64,
    out_len: usize,
) -> Result<Vec<f64>> {
    check_direction(f, Direction::Forward, "delta left sum")?;
    let j_hi = j_lo + out_len as i64 - 1;
    if j_hi >= f.len() as i64 {
        return Err(Error::Domain(
            "delta left sum window extends past the data".into(),
        ));
    }
    let w = sum_weights(order, (j_hi.max(0) + 1) as usize);
    let vals = f.values();
    Ok((j_lo..=j_hi)
        .map(|j| {
            if j < 0 {
                0.0
            } else {
                (0..=j as usize).map(|i| w[j as usize - i] * vals[i]).sum()
            }
        })
        .collect())
}

/// Delta right sum of order β ending at f's offset b:
/// u(b−β−j) = (1/Γ(β)) Σ_{s=t+β}^{b} (s−σ(t))^(β−1) f(s).
/// Terms accumulate in the definition's order (s ascending), which also
/// keeps this code path numerically distinct from the left kernel.
pub(crate) fn delta_right_sum_window(
    order: &Rat,
    f: &GridFn,
    j_lo: i64,
    out_len: usize,
) -> Result<Vec<f64>> {
    check_direction(f, Direction::Backward, "delta right sum")?;
    let j_hi = j_lo + out_len as i64 - 1;
    if j_hi >= f.len() as i64 {
        return Err(Error::Domain(
            "delta right sum window extends past the data".into(),
        ));
    }
    let w = sum_weights(order, (j_hi.max(0) + 1) as usize);
    let vals = f.values();
    Ok((j_lo..=j_hi)
        .map(|j| {
            if j < 0 {
                0.0
            } else {
                (0..=j as usize)
                    .rev()
                    .map(|i| w[j as usize - i] * vals[i])
                    .sum()
            }
        })
        .collect())
}

/// Nabla left sum of order β based at `base`:
/// u(base+m) = (1/Γ(β)) Σ_{s=base+1}^{base+m} (t−ρ(s))^{β−1 bar} f(s),
/// empty (0) for m <= 0. The base may sit up to one point before f's grid
/// (base = a−1 sums from s = a) or anywhere inside it (the sum then skips
/// the samples at and before the base).
pub(crate) fn nabla_left_sum_window(
    order: &Rat,
    f: &GridFn,
    base: &Rat,
    m_lo: i64,
    out_len: usize,
) -> Result<Vec<f64>> {
    check_direction(f, Direction::Forward, "nabla left sum")?;
    let d0 = (f.offset() - base).as_i64().ok_or_else(|| {
        Error::Domain(format!(
            "nabla left base {base} is not congruent to the grid offset {} mod 1",
            f.offset()
        ))
    })?;
    if d0 > 1 {
        return Err(Error::Domain(format!(
            "nabla left base {base} lies more than one point before the grid"
        )));
    }
    let m_hi = m_lo + out_len as i64 - 1;
    if m_hi - d0 >= f.len() as i64 {
        return Err(Error::Domain(
            "nabla left sum window extends past the data".into(),
        ));
    }
    let w = sum_weights(order, m_hi.max(1) as usize);
    let vals = f.values();
    Ok((m_lo..=m_hi)
        .map(|m| {
            let mut acc = 0.0;
            let mut i = 1.max(d0);
            while i <= m {
                acc += w[(m - i) as usize] * vals[(i - d0) as usize];
                i += 1;
            }
            acc
        })
        .collect())
}

/// Nabla right sum of order β based at `base`:
/// u(base−m) = (1/Γ(β)) Σ_{s=base−m}^{base−1} (s−ρ(t))^{β−1 bar} f(s),
/// empty (0) for m <= 0. The base may sit up to one point after f's grid.
pub(crate) fn nabla_right_sum_window(
    order: &Rat,
    f: &GridFn,
    base: &Rat,
    m_lo: i64,
    out_len: usize,
) -> Result<Vec<f64>> {
    check_direction(f, Direction::Backward, "nabla right sum")?;
    let e0 = (base - f.offset()).as_i64().ok_or_else(|| {
        Error::Domain(format!(
            "nabla right base {base} is not congruent to the grid offset {} mod 1",
            f.offset()
        ))
    })?;
    if e0 > 1 {
        return Err(Error::Domain(format!(
            "nabla right base {base} lies more than one point after the grid"
        )));
    }
    let m_hi = m_lo + out_len as i64 - 1;
    if m_hi - e0 >= f.len() as i64 {
        return Err(Error::Domain(
            "nabla right sum window extends past the data".into(),
        ));
    }
    let w = sum_weights(order, m_hi.max(1) as usize);
    let vals = f.values();
    // terms in the definition's order: s ascending from base−m to base−1
    Ok((m_lo..=m_hi)
        .map(|m| {
            let mut acc = 0.0;
            let mut i = m;
            while i >= 1.max(e0) {
                acc += w[(m - i) as usize] * vals[(i - e0) as usize];
                i -= 1;
            }
            acc
        })
        .collect())
}

/// Applies a fractional sum. Order 0 is the identity (needed by the
/// integer-order difference reductions); negative orders are rejected here
/// (they belong to the difference families).
///
/// Output domains: the delta left sum maps N_a to N_{a+α}; the delta right
/// sum lands on {b−α}N; the nabla sums keep their base point, whose value is
/// the empty sum 0.
pub fn frac_sum(spec: &OpSpec, f: &GridFn) -> Result<GridFn> {
    spec.expect_family(Family::Sum, "frac_sum")?;
    if spec.order.is_negative() {
        return Err(Error::Domain(format!(
            "fractional sum of negative order {} (differences are a separate family)",
            spec.order
        )));
    }
    let n = f.len();
    match (spec.calculus, spec.side) {
        (Calculus::Delta, Side::Left) => {
            check_direction(f, Direction::Forward, "delta left sum")?;
            if &spec.base != f.offset() {
                return Err(Error::Domain(format!(
                    "delta left sum base {} must equal the grid offset {}",
                    spec.base,
                    f.offset()
                )));
            }
            if spec.order.is_zero() {
                return GridFn::new(f.grid().clone(), f.values().to_vec());
            }
            let vals = delta_left_sum_window(&spec.order, f, 0, n)?;
            GridFn::new(Grid::forward(f.offset() + &spec.order, n), vals)
        }
        (Calculus::Delta, Side::Right) => {
            check_direction(f, Direction::Backward, "delta right sum")?;
            if &spec.base != f.offset() {
                return Err(Error::Domain(format!(
                    "delta right sum base {} must equal the grid offset {}",
                    spec.base,
                    f.offset()
                )));
            }
            if spec.order.is_zero() {
                return GridFn::new(f.grid().clone(), f.values().to_vec());
            }
            let vals = delta_right_sum_window(&spec.order, f, 0, n)?;
            GridFn::new(Grid::backward(f.offset() - &spec.order, n), vals)
        }
        (Calculus::Nabla, Side::Left) => {
            let d0 = (f.offset() - &spec.base).as_i64();
            let d0 = match d0 {
                Some(d) if (0..=1).contains(&d) => d,
                _ => {
                    return Err(Error::Domain(format!(
                        "nabla left sum base {} must be the grid offset {} or the point before it",
                        spec.base,
                        f.offset()
                    )))
                }
            };
            if spec.order.is_zero() {
                return GridFn::new(f.grid().clone(), f.values().to_vec());
            }
            let out_len = n + d0 as usize;
            let vals = nabla_left_sum_window(&spec.order, f, &spec.base, 0, out_len)?;
            GridFn::new(Grid::forward(spec.base.clone(), out_len), vals)
        }
        (Calculus::Nabla, Side::Right) => {
            let e0 = (&spec.base - f.offset()).as_i64();
            let e0 = match e0 {
                Some(e) if (0..=1).contains(&e) => e,
                _ => {
                    return Err(Error::Domain(format!(
                        "nabla right sum base {} must be the grid offset {} or the point after it",
                        spec.base,
                        f.offset()
                    )))
                }
            };
            if spec.order.is_zero() {
                return GridFn::new(f.grid().clone(), f.values().to_vec());
            }
            let out_len = n + e0 as usize;
            let vals = nabla_right_sum_window(&spec.order, f, &spec.base, 0, out_len)?;
            GridFn::new(Grid::backward(spec.base.clone(), out_len), vals)
        }
    }
}

/// The closed-form right-hand side of the power rules, sampled on the
/// output grid of the corresponding fractional sum:
///
/// * delta right (base c = b−μ): sum of (b−t)^(μ) is
///   Γ(μ+1)/Γ(μ+α+1) (b−t)^(μ+α) on {c−α}N, for μ > 0;
/// * nabla left: sum of (t−a)^{μ bar} is Γ(μ+1)/Γ(α+μ+1) (t−a)^{α+μ bar}
///   on N_a, for μ > −1;
/// * nabla right: sum of (b−t)^{μ bar} is Γ(μ+1)/Γ(α+μ+1) (b−t)^{α+μ bar}
///   on bN, for μ > −1.
///
/// Used as the oracle target against `frac_sum` applied to the monomial.
pub fn power_rule(spec: &OpSpec, mu: &Rat, len: usize) -> Result<GridFn> {
    spec.expect_family(Family::Sum, "power_rule")?;
    if !spec.order.is_positive() {
        return Err(Error::Domain("power rule needs order α > 0".into()));
    }
    if len == 0 {
        return Err(Error::Domain("power rule needs a nonempty grid".into()));
    }
    let coef = gamma_ratio(&(mu + 1), &(&(&spec.order + mu) + 1))?;
    let total = &spec.order + mu;
    match (spec.calculus, spec.side) {
        (Calculus::Delta, Side::Right) => {
            if !mu.is_positive() {
                return Err(Error::Domain(format!(
                    "delta right power rule needs μ > 0, got {mu}"
                )));
            }
            let grid = Grid::backward(&spec.base - &spec.order, len);
            let vals = (0..len)
                .map(|j| {
                    // b − t = μ + α + j relative to the monomial reference b = base + μ.
                    Ok(coef * crate::fpow::falling(&(&total + j as i64), &total)?)
                })
                .collect::<Result<Vec<_>>>()?;
            GridFn::new(grid, vals)
        }
        (Calculus::Nabla, Side::Left) => {
            if mu <= &Rat::from_int(-1) {
                return Err(Error::Domain(format!(
                    "nabla power rule needs μ > −1, got {mu}"
                )));
            }
            let grid = Grid::forward(spec.base.clone(), len);
            let vals = (0..len)
                .map(|m| Ok(coef * crate::fpow::rising(&Rat::from_int(m as i64), &total)?))
                .collect::<Result<Vec<_>>>()?;
            GridFn::new(grid, vals)
        }
        (Calculus::Nabla, Side::Right) => {
            if mu <= &Rat::from_int(-1) {
                return Err(Error::Domain(format!(
                    "nabla power rule needs μ > −1, got {mu}"
                )));
            }
            let grid = Grid::backward(spec.base.clone(), len);
            let vals = (0..len)
                .map(|m| Ok(coef * crate::fpow::rising(&Rat::from_int(m as i64), &total)?))
                .collect::<Result<Vec<_>>>()?;
            GridFn::new(grid, vals)
        }
        (Calculus::Delta, Side::Left) => Err(Error::Domain(
            "no delta left power rule in the verified identity set".into(),
        )),
    }
}

fn sum_spec(calculus: Calculus, side: Side, order: &Rat, base: &Rat) -> OpSpec {
    OpSpec::new(Family::Sum, calculus, side, order.clone(), base.clone())
}

/// Residual of the semigroup law: composing sums of order α and β (in both
/// orders) against the single sum of order α+β. Verified combinations are
/// the delta right, nabla left, and nabla right sums.
pub fn semigroup_residual(
    calculus: Calculus,
    side: Side,
    alpha: &Rat,
    beta: &Rat,
    f: &GridFn,
) -> Result<IdentityReport> {
    if !alpha.is_positive() || !beta.is_positive() {
        return Err(Error::Domain("semigroup law needs α, β > 0".into()));
    }
    if calculus == Calculus::Delta && side == Side::Left {
        return Err(Error::Domain(
            "delta left semigroup composition is outside the verified identity set".into(),
        ));
    }
    let base = f.offset().clone();
    let both = &(alpha + beta);
    let direct = frac_sum(&sum_spec(calculus, side, both, &base), f)?;

    let mut residual = 0.0f64;
    for (first, second) in [(alpha, beta), (beta, alpha)] {
        let inner = frac_sum(&sum_spec(calculus, side, first, &base), f)?;
        // Delta sums shift the grid, so the outer operator is based at the
        // inner output's end point; nabla sums keep their base.
        let outer_base = inner.offset().clone();
        let composed = frac_sum(&sum_spec(calculus, side, second, &outer_base), &inner)?;
        debug_assert_eq!(composed.offset(), direct.offset());
        for (c, d) in composed.values().iter().zip(direct.values()) {
            residual = residual.max((c - d).abs());
        }
    }
    let name = format!(
        "semigroup-{}-{}",
        match calculus {
            Calculus::Delta => "delta",
            Calculus::Nabla => "nabla",
        },
        match side {
            Side::Left => "left",
            Side::Right => "right",
        }
    );
    Ok(IdentityReport::new(
        name,
        format!("alpha={alpha} beta={beta} len={}", f.len()),
        residual,
        1e-10,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpow::{falling, rising};
    use crate::gamma::gamma;
    use crate::grid::{Grid, GridFn};

    fn rat(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn fwd(offset: &str, values: Vec<f64>) -> GridFn {
        GridFn::new(Grid::forward(rat(offset), values.len()), values).unwrap()
    }

    fn bwd(offset: &str, values: Vec<f64>) -> GridFn {
        GridFn::new(Grid::backward(rat(offset), values.len()), values).unwrap()
    }

    fn spec(calculus: Calculus, side: Side, order: &str, base: &str) -> OpSpec {
        OpSpec::new(Family::Sum, calculus, side, rat(order), rat(base))
    }

    /// Pseudo-random values in [−1, 1] from a tiny deterministic generator
    /// (tests only; the verify module uses the seeded ChaCha stream).
    fn noise(n: usize, seed: u64) -> Vec<f64> {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
            })
            .collect()
    }

    #[test]
    fn nabla_left_first_order_is_cumulative_sum() {
        let f = fwd("0", vec![99.0, 1.0, 2.0, 3.0]);
        let u = frac_sum(&spec(Calculus::Nabla, Side::Left, "1", "0"), &f).unwrap();
        assert_eq!(u.values(), &[0.0, 1.0, 3.0, 6.0]);
        assert_eq!(u.offset(), &rat("0"));
    }

    #[test]
    fn nabla_left_half_order_of_one() {
        let f = fwd("0", vec![1.0, 1.0, 1.0]);
        let u = frac_sum(&spec(Calculus::Nabla, Side::Left, "1/2", "0"), &f).unwrap();
        assert!((u.value(2) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn delta_left_half_order_of_one() {
        let f = fwd("0", vec![1.0, 1.0, 1.0]);
        let u = frac_sum(&spec(Calculus::Delta, Side::Left, "1/2", "0"), &f).unwrap();
        // output grid N_{1/2}; t = 3/2 is index 1
        assert_eq!(u.offset(), &rat("1/2"));
        assert!((u.value(1) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn nabla_right_first_order_counts() {
        let f = bwd("4", vec![1.0, 1.0, 1.0, 1.0]);
        let u = frac_sum(&spec(Calculus::Nabla, Side::Right, "1", "4"), &f).unwrap();
        // t = 1 is index 3; Σ_{s=1}^{3} 1 = 3
        assert_eq!(u.value(3), 3.0);
        assert_eq!(u.value(0), 0.0);
    }

    #[test]
    fn zero_order_is_identity() {
        let f = fwd("0", vec![1.0, -2.0, 0.5]);
        let u = frac_sum(&spec(Calculus::Nabla, Side::Left, "0", "0"), &f).unwrap();
        assert_eq!(u.values(), f.values());
        let b = bwd("2", vec![1.0, -2.0, 0.5]);
        let u = frac_sum(&spec(Calculus::Delta, Side::Right, "0", "2"), &b).unwrap();
        assert_eq!(u.values(), b.values());
    }

    #[test]
    fn negative_order_rejected() {
        let f = fwd("0", vec![1.0, 1.0]);
        assert!(frac_sum(&spec(Calculus::Nabla, Side::Left, "-1/2", "0"), &f).is_err());
    }

    #[test]
    fn base_validation() {
        let f = fwd("0", vec![1.0; 4]);
        assert!(frac_sum(&spec(Calculus::Delta, Side::Left, "1/2", "1"), &f).is_err());
        assert!(frac_sum(&spec(Calculus::Nabla, Side::Left, "1/2", "-1"), &f).is_ok());
        assert!(frac_sum(&spec(Calculus::Nabla, Side::Left, "1/2", "-2"), &f).is_err());
        assert!(frac_sum(&spec(Calculus::Nabla, Side::Left, "1/2", "1/3"), &f).is_err());
    }

    /// Direct per-point evaluation of the defining sums through the
    /// falling/rising power API (log-gamma route) — numerically independent
    /// of the exact weight recurrence the implementation uses.
    fn oracle_nabla_left(order: &Rat, f: &GridFn, base: &Rat, m: i64) -> f64 {
        let g = gamma(order).unwrap();
        let mut acc = 0.0;
        let a_shift = (f.offset() - base).as_i64().unwrap();
        for i in 1..=m {
            let lag = Rat::from_int(m - i + 1);
            acc += rising(&lag, &(order - 1)).unwrap() * f.value((i - a_shift) as usize);
        }
        acc / g
    }

    fn oracle_delta_left(order: &Rat, f: &GridFn, j: i64) -> f64 {
        let g = gamma(order).unwrap();
        let mut acc = 0.0;
        for i in 0..=j {
            let lag = &(order - 1) + (j - i);
            acc += falling(&lag, &(order - 1)).unwrap() * f.value(i as usize);
        }
        acc / g
    }

    #[test]
    fn sums_match_direct_summation_oracle() {
        for order in ["1/4", "4/3", "5/2"] {
            let order = rat(order);
            let f = fwd("0", noise(20, 7));
            let u = frac_sum(
                &OpSpec::new(Family::Sum, Calculus::Nabla, Side::Left, order.clone(), rat("0")),
                &f,
            )
            .unwrap();
            for m in 0..20 {
                let want = oracle_nabla_left(&order, &f, &rat("0"), m);
                assert!(
                    (u.value(m as usize) - want).abs() < 1e-11,
                    "nabla left order {order} at m={m}"
                );
            }
            let u = frac_sum(
                &OpSpec::new(Family::Sum, Calculus::Delta, Side::Left, order.clone(), rat("0")),
                &f,
            )
            .unwrap();
            for j in 0..20 {
                let want = oracle_delta_left(&order, &f, j);
                assert!(
                    (u.value(j as usize) - want).abs() < 1e-11,
                    "delta left order {order} at j={j}"
                );
            }
        }
    }

    #[test]
    fn right_sums_mirror_left_sums() {
        // With mirrored data the left/right kernels produce mirrored values.
        let vals = noise(16, 3);
        let f_fwd = fwd("0", vals.clone());
        let f_bwd = bwd("15", vals);
        let order = rat("4/3");
        let l = frac_sum(
            &OpSpec::new(Family::Sum, Calculus::Nabla, Side::Left, order.clone(), rat("0")),
            &f_fwd,
        )
        .unwrap();
        let r = frac_sum(
            &OpSpec::new(Family::Sum, Calculus::Nabla, Side::Right, order.clone(), rat("15")),
            &f_bwd,
        )
        .unwrap();
        for k in 0..16 {
            assert!((l.value(k) - r.value(k)).abs() < 1e-14);
        }
    }

    #[test]
    fn power_rule_examples() {
        // nabla left, α = 1/2, μ = 0: Γ(1)/Γ(3/2) (t)^{1/2 bar} = 3/2 at t = 2.
        let p = power_rule(&spec(Calculus::Nabla, Side::Left, "1/2", "0"), &rat("0"), 4).unwrap();
        assert!((p.value(2) - 1.5).abs() < 1e-13);
        // nabla right, α = 1/2, μ = 0, b = 5: value 3/2 at t = 3 (index 2).
        let p = power_rule(&spec(Calculus::Nabla, Side::Right, "1/2", "5"), &rat("0"), 4).unwrap();
        assert!((p.value(2) - 1.5).abs() < 1e-13);
        // μ = 0, α = 1: linear ramp.
        let p = power_rule(&spec(Calculus::Nabla, Side::Left, "1", "0"), &rat("0"), 5).unwrap();
        assert_eq!(p.values(), &[0.0, 1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn frac_sum_of_monomial_matches_power_rule() {
        let len = 24usize;
        for alpha in ["1/4", "1/2", "3/4", "3/2"] {
            for mu in ["1/4", "1/2", "3/4", "3/2"] {
                let (alpha, mu) = (rat(alpha), rat(mu));
                // nabla left on N_0
                let f = GridFn::sample(Grid::forward(rat("0"), len), 0, |t| {
                    rising(t, &mu).unwrap()
                });
                let s = spec(Calculus::Nabla, Side::Left, &alpha.to_string(), "0");
                let got = frac_sum(&s, &f).unwrap();
                let want = power_rule(&s, &mu, len).unwrap();
                for k in 0..len {
                    let (g, w) = (got.value(k), want.value(k));
                    assert!(
                        (g - w).abs() <= 1e-10 * g.abs().max(w.abs()).max(1.0),
                        "pnl α={alpha} μ={mu} k={k}: {g} vs {w}"
                    );
                }
                // nabla right ending at b = len−1
                let b = Rat::from_int(len as i64 - 1);
                let f = GridFn::sample(Grid::backward(b.clone(), len), 0, |t| {
                    rising(&(&b - t), &mu).unwrap()
                });
                let s = spec(Calculus::Nabla, Side::Right, &alpha.to_string(), &b.to_string());
                let got = frac_sum(&s, &f).unwrap();
                let want = power_rule(&s, &mu, len).unwrap();
                for k in 0..len {
                    let (g, w) = (got.value(k), want.value(k));
                    assert!(
                        (g - w).abs() <= 1e-10 * g.abs().max(w.abs()).max(1.0),
                        "pnr α={alpha} μ={mu} k={k}: {g} vs {w}"
                    );
                }
                // delta right based at c; monomial reference b = c + μ.
                let c = rat("0");
                let f = GridFn::sample(Grid::backward(c.clone(), len), 0, |t| {
                    falling(&(&mu - t), &mu).unwrap()
                });
                let s = spec(Calculus::Delta, Side::Right, &alpha.to_string(), "0");
                let got = frac_sum(&s, &f).unwrap();
                let want = power_rule(&s, &mu, len).unwrap();
                for k in 0..len {
                    let (g, w) = (got.value(k), want.value(k));
                    assert!(
                        (g - w).abs() <= 1e-10 * g.abs().max(w.abs()).max(1.0),
                        "delta-right α={alpha} μ={mu} k={k}: {g} vs {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn semigroup_examples() {
        let f = fwd("0", noise(16, 11));
        let r = semigroup_residual(Calculus::Nabla, Side::Left, &rat("1/2"), &rat("1/2"), &f)
            .unwrap();
        assert!(r.pass, "residual {}", r.residual);

        // integer case: double cumulative sum equals the order-2 sum
        let r = semigroup_residual(Calculus::Nabla, Side::Left, &rat("1"), &rat("1"), &f).unwrap();
        assert!(r.residual < 1e-12);

        let g = bwd("15", noise(16, 12));
        let r = semigroup_residual(Calculus::Delta, Side::Right, &rat("1/3"), &rat("2/3"), &g)
            .unwrap();
        assert!(r.pass, "residual {}", r.residual);

        let r = semigroup_residual(Calculus::Nabla, Side::Right, &rat("1/4"), &rat("4/3"), &g)
            .unwrap();
        assert!(r.pass, "residual {}", r.residual);

        assert!(
            semigroup_residual(Calculus::Delta, Side::Left, &rat("1/2"), &rat("1/2"), &f).is_err()
        );
    }

    #[test]
    fn integer_sum_initial_value_problems() {
        // u = Δ_a^{−n} f vanishes at the n points before a+n and Δ^n u = f on N_a.
        let f = fwd("0", noise(14, 5));
        for n in 1..=3usize {
            let order = Rat::from_int(n as i64);
            let zeros = delta_left_sum_window(&order, &f, -(n as i64), n).unwrap();
            assert!(zeros.iter().all(|v| *v == 0.0), "empty sums must be exact zeros");
            let u = delta_left_sum_window(&order, &f, -(n as i64), f.len() + n).unwrap();
            // Δ^n over the extended vector reproduces f on N_a.
            for k in 0..f.len() {
                let mut acc = 0.0;
                for r in 0..=n {
                    let sign = if (n - r) % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * crate::fpow::binom(n as i64, r as i64) * u[k + r];
                }
                assert!(
                    (acc - f.value(k)).abs() < 1e-11,
                    "ivp delta-left n={n} k={k}"
                );
            }
        }

        // nabla left: ∇^i u(a) = 0 and ∇^n u = f on N_{a+1}.
        for n in 1..=3usize {
            let order = Rat::from_int(n as i64);
            let u = nabla_left_sum_window(&order, &f, &rat("0"), -(n as i64), f.len() + n)
                .unwrap();
            for (i, v) in u.iter().enumerate().take(n) {
                // values at t <= a are empty sums
                assert_eq!(*v, 0.0, "index {i}");
            }
            for k in 1..f.len() {
                let mut acc = 0.0;
                for r in 0..=n {
                    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * crate::fpow::binom(n as i64, r as i64) * u[n + k - r];
                }
                assert!(
                    (acc - f.value(k)).abs() < 1e-11,
                    "ivp nabla-left n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn integer_sum_initial_value_problems_right_side() {
        let f = bwd("0", noise(14, 6));
        // delta right: u = _bΔ^{−n} f vanishes at the n points past b−n and
        // ∇_⊖^n u = f on bN.
        for n in 1..=3usize {
            let order = Rat::from_int(n as i64);
            let zeros = delta_right_sum_window(&order, &f, -(n as i64), n).unwrap();
            assert!(zeros.iter().all(|v| *v == 0.0));
            let u = delta_right_sum_window(&order, &f, -(n as i64), f.len() + n).unwrap();
            for k in 0..f.len() {
                // ∇_⊖^n in backward storage combines u[k..k+n] like Δ^n
                let mut acc = 0.0;
                for r in 0..=n {
                    let sign = if (n - r) % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * crate::fpow::binom(n as i64, r as i64) * u[k + r];
                }
                assert!(
                    (acc - f.value(k)).abs() < 1e-11,
                    "ivp delta-right n={n} k={k}"
                );
            }
        }
        // nabla right: ⊖Δ^i u(b) = 0 and ⊖Δ^n u = f on {b−1}N.
        for n in 1..=3usize {
            let order = Rat::from_int(n as i64);
            let u = nabla_right_sum_window(&order, &f, &rat("0"), -(n as i64), f.len() + n)
                .unwrap();
            for (i, v) in u.iter().enumerate().take(n) {
                assert_eq!(*v, 0.0, "index {i}");
            }
            for k in 1..f.len() {
                let mut acc = 0.0;
                for r in 0..=n {
                    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * crate::fpow::binom(n as i64, r as i64) * u[n + k - r];
                }
                assert!(
                    (acc - f.value(k)).abs() < 1e-11,
                    "ivp nabla-right n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn window_overrun_is_an_error() {
        let f = fwd("0", vec![1.0; 4]);
        assert!(delta_left_sum_window(&rat("1/2"), &f, 0, 5).is_err());
        assert!(nabla_left_sum_window(&rat("1/2"), &f, &rat("0"), 0, 5).is_err());
    }
}
