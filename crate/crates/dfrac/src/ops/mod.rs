//! Fractional sums and differences.
//!
//! Index conventions used throughout: a grid function on N_a stores
//! `f[k] = f(a+k)`; one on bN stores `f[k] = f(b−k)`. The four fractional sums
//! then share one weight sequence
//!
//! ```text
//! w_d = Γ(β+d) / (Γ(β) d!)          (d = 0, 1, …; w_0 = 1)
//! ```
//!
//! which is exactly the kernel factorial power at lag d over Γ(β):
//! (β−1+d)^(β−1)/Γ(β) in the delta calculus and (d+1)^{β−1 bar}/Γ(β) in the
//! nabla calculus. The weights are rational for rational β and are computed
//! exactly, so the only floating error in a sum is the final accumulation.
//!
//! Sums of negative non-integer order β evaluate the same kernel; that is
//! the unified form of the Riemann difference of order −β used by the
//! arbitrary-real-order identities.

mod diffs;
mod sums;

pub use diffs::{
    caputo_diff, dual_caputo_diff, inversion_residual, mod_commutation_residual, relate_residual,
    riemann_diff, sum_diff_commutation_residual, BoundaryData,
};
pub use sums::{frac_sum, power_rule, semigroup_residual};

pub(crate) use diffs::{
    nabla_n_with_ext, riemann_delta_left_window, riemann_delta_right_window,
};
pub(crate) use sums::sum_weights;

use crate::error::{Error, Result};
use crate::gamma::floor_order;
use crate::scalar::Rat;

/// Which operator family an [`OpSpec`] names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Fractional sum of order α > 0 (order 0 is the identity).
    Sum,
    /// Riemann difference: integer difference of the (n−α)-order sum.
    Riemann,
    /// Caputo difference: (n−α)-order sum of the n-th integer difference.
    Caputo,
    /// Dual Caputo difference, based at a+n−1 / b−n+1; needs no samples
    /// outside the base grid.
    DualCaputo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Calculus {
    Delta,
    Nabla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Descriptor of a fractional operator: family, calculus, side, order α,
/// and base point (a for left operators, b for right ones).
#[derive(Debug, Clone)]
pub struct OpSpec {
    pub family: Family,
    pub calculus: Calculus,
    pub side: Side,
    pub order: Rat,
    pub base: Rat,
}

impl OpSpec {
    pub fn new(family: Family, calculus: Calculus, side: Side, order: Rat, base: Rat) -> OpSpec {
        OpSpec {
            family,
            calculus,
            side,
            order,
            base,
        }
    }

    /// n = `[α] + 1` (equal to α for integer α).
    pub fn n(&self) -> Result<i64> {
        floor_order(&self.order)
    }

    /// Inner sum order n − α of the difference compositions.
    pub fn inner_order(&self) -> Result<Rat> {
        Ok(&Rat::from_int(self.n()?) - &self.order)
    }

    /// The shifted base of the dual Caputo difference:
    /// a(α) = a + n − 1 on the left, b(α) = b − n + 1 on the right.
    pub fn shifted_base(&self) -> Result<Rat> {
        let n = self.n()?;
        Ok(match self.side {
            Side::Left => &self.base + (n - 1),
            Side::Right => &self.base - (n - 1),
        })
    }

    pub(crate) fn expect_family(&self, family: Family, what: &str) -> Result<()> {
        if self.family != family {
            return Err(Error::Domain(format!(
                "{what} requires family {family:?}, spec has {:?}",
                self.family
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_derived_fields() {
        let spec = OpSpec::new(
            Family::DualCaputo,
            Calculus::Nabla,
            Side::Left,
            "5/2".parse().unwrap(),
            Rat::from_int(0),
        );
        assert_eq!(spec.n().unwrap(), 3);
        assert_eq!(spec.inner_order().unwrap(), "1/2".parse::<Rat>().unwrap());
        assert_eq!(spec.shifted_base().unwrap(), Rat::from_int(2));

        let right = OpSpec::new(
            Family::DualCaputo,
            Calculus::Nabla,
            Side::Right,
            "5/2".parse().unwrap(),
            Rat::from_int(10),
        );
        assert_eq!(right.shifted_base().unwrap(), Rat::from_int(8));
    }
}
