//! Precision budgets and the floating-point working context.
//!
//! Every analytic routine in this crate takes a [`PrecisionBudget`]: the
//! number of decimal digits the caller wants certified, the guard digits
//! used to absorb rounding, and the absolute tolerance allowed for series
//! truncation. Values are computed at `target + guard` digits and returned
//! with an explicit error bound; [`PrecisionBudget::certify`] enforces the
//! contract that the bound fits the target.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::error::{Error, Result};

/// Default guard digits absorbing accumulated rounding.
pub const DEFAULT_GUARD_DIGITS: u32 = 20;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Run `f` with the thread-local constants cache (pi, ln 2, ...).
pub(crate) fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Decimal digits -> working precision in bits, with fixed headroom.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32
}

/// Governs one evaluation: certified decimal digits, guard digits, and the
/// absolute truncation tolerance for infinite series.
#[derive(Debug, Clone)]
pub struct PrecisionBudget {
    target_digits: u32,
    guard_digits: u32,
    /// Absolute bound allowed for a truncation remainder. Upper bound,
    /// stored at low precision.
    tail_tolerance: BigFloat,
}

impl PrecisionBudget {
    /// Budget with `target` certified digits, default guards, and tail
    /// tolerance `10^-(target+5)`.
    pub fn new(target_digits: u32) -> Result<Self> {
        if target_digits < 1 {
            return Err(Error::Argument("target_digits must be >= 1".into()));
        }
        Ok(Self {
            target_digits,
            guard_digits: DEFAULT_GUARD_DIGITS,
            tail_tolerance: pow10(-(target_digits as i64) - 5, RoundingMode::Down),
        })
    }

    pub fn with_guard_digits(mut self, guard: u32) -> Self {
        self.guard_digits = guard;
        self
    }

    pub fn with_tail_tolerance(mut self, tol: BigFloat) -> Result<Self> {
        if tol.is_negative() || tol.is_zero() || tol.is_nan() || tol.is_inf() {
            return Err(Error::Argument("tail_tolerance must be positive".into()));
        }
        self.tail_tolerance = tol;
        Ok(self)
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn tail_tolerance(&self) -> &BigFloat {
        &self.tail_tolerance
    }

    /// Working decimal digits: target + guard.
    pub fn work_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Working precision in bits.
    pub fn work_bits(&self) -> usize {
        bits_for_digits(self.work_digits())
    }

    /// Same target with `extra` more guard digits; used internally where an
    /// algorithm needs headroom (cancellation, amplification) beyond the
    /// caller's guards.
    pub(crate) fn padded(&self, extra: u32) -> Self {
        let mut b = self.clone();
        b.guard_digits += extra;
        b
    }

    /// Enforce the budget contract: the value's error bound must not exceed
    /// `10^-target * max(1, |value|)`.
    pub fn certify(&self, value: crate::bounded::BoundedValue) -> Result<crate::bounded::BoundedValue> {
        let scale = value.value().abs();
        let one = BigFloat::from_i64(1, 64);
        let m = if scale.cmp(&one).unwrap_or(0) > 0 { scale } else { one };
        let thresh = pow10(-(self.target_digits as i64), RoundingMode::Down)
            .mul(&m, 64, RoundingMode::Down);
        if value.bound().cmp(&thresh).unwrap_or(1) > 0 {
            return Err(Error::InsufficientPrecision(format!(
                "bound {} exceeds 10^-{} * max(1,|value|)",
                crate::bounded::bound_string(value.bound()),
                self.target_digits
            )));
        }
        Ok(value)
    }
}

/// `10^k` rounded in the requested direction, at low precision.
pub fn pow10(k: i64, rm: RoundingMode) -> BigFloat {
    let ten = BigFloat::from_i64(10, 64);
    if k >= 0 {
        ten.powi(k as usize, 64, rm)
    } else {
        let inv_rm = match rm {
            RoundingMode::Up => RoundingMode::Down,
            RoundingMode::Down => RoundingMode::Up,
            other => other,
        };
        BigFloat::from_i64(1, 64).div(&ten.powi((-k) as usize, 64, inv_rm), 64, rm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_rejects_zero_target() {
        assert!(PrecisionBudget::new(0).is_err());
    }

    #[test]
    fn work_bits_scale_with_digits() {
        let b10 = PrecisionBudget::new(10).unwrap();
        let b100 = PrecisionBudget::new(100).unwrap();
        assert!(b100.work_bits() > b10.work_bits() + 250);
    }

    #[test]
    fn pow10_directions_bracket() {
        let up = pow10(-7, RoundingMode::Up);
        let down = pow10(-7, RoundingMode::Down);
        assert!(down.cmp(&up).unwrap() <= 0);
    }
}
