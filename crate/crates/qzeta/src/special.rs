//! Digamma at rational arguments and cotangent at rational multiples of pi,
//! both with certified bounds.

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::bounded::{bf_from_bigint, pi, BoundedValue};
use crate::error::{Error, Result};
use crate::exact::bernoulli_number;
use crate::precision::{pow10, PrecisionBudget};

/// Number of asymptotic terms used by [`digamma`]; the shift distance is
/// then chosen so the first omitted term fits the budget.
const DIGAMMA_ASYMPTOTIC_TERMS: u32 = 30;

/// psi(r) for rational r in (0, 1], by upward recurrence to a large
/// argument followed by the asymptotic expansion
/// `psi(z) ~ ln z - 1/(2z) - sum B_{2k}/(2k z^{2k})`,
/// whose remainder after m terms is dominated by twice the first omitted
/// term for real positive z.
pub fn digamma(r: &BigRational, budget: &PrecisionBudget) -> Result<BoundedValue> {
    if !r.is_positive() {
        return Err(Error::Domain(
            "digamma evaluated only on (0,1]; poles at non-positive integers".into(),
        ));
    }
    if r > &BigRational::from_integer(BigInt::from(1)) {
        return Err(Error::Domain("digamma argument must satisfy 0 < r <= 1".into()));
    }
    let p = budget.work_bits() + 32;
    let m = DIGAMMA_ASYMPTOTIC_TERMS;
    let b_next = bernoulli_number(2 * m + 2);
    let b_next_abs = BoundedValue::from_rational(&b_next.abs(), 64).value().abs();

    // smallest M with 2 |B_{2m+2}| / ((2m+2) M^(2m+2)) below the tolerance
    let tol = budget
        .tail_tolerance()
        .mul(&BigFloat::from_f64(0.25, 64), 64, RoundingMode::Down);
    let mut shift: u64 = 16;
    loop {
        let z = BigFloat::from_i64(shift as i64, 64);
        let zpow = z.powi((2 * m + 2) as usize, 64, RoundingMode::Down);
        let rem = b_next_abs
            .mul(&BigFloat::from_i64(2, 64), 64, RoundingMode::Up)
            .div(
                &zpow.mul(&BigFloat::from_i64((2 * m + 2) as i64, 64), 64, RoundingMode::Down),
                64,
                RoundingMode::Up,
            );
        if rem.cmp(&tol).unwrap_or(1) <= 0 {
            break;
        }
        shift *= 2;
        if shift > 1 << 26 {
            return Err(Error::InsufficientPrecision("digamma shift overflow".into()));
        }
    }

    // z = r + shift
    let z = BoundedValue::from_rational(&(r + BigRational::from_integer(BigInt::from(shift))), p);
    let ln_z = z.ln(p)?;
    let inv_z = z.recip(p)?;
    let inv_z2 = inv_z.mul(&inv_z, p);

    let mut asym = ln_z.sub(&inv_z.scale(&BigRational::new(BigInt::from(1), BigInt::from(2)), p), p);
    let mut wk = inv_z2.clone();
    for k in 1..=m {
        let coeff = bernoulli_number(2 * k) / BigRational::from_integer(BigInt::from(2 * k));
        asym = asym.sub(&wk.scale(&coeff, p), p);
        wk = wk.mul(&inv_z2, p);
    }
    // enveloping remainder, padded by a factor of two
    let z_low = z.value().sub(z.bound(), 64, RoundingMode::Down);
    let rem = b_next_abs
        .mul(&BigFloat::from_i64(2, 64), 64, RoundingMode::Up)
        .div(
            &z_low
                .powi((2 * m + 2) as usize, 64, RoundingMode::Down)
                .mul(&BigFloat::from_i64((2 * m + 2) as i64, 64), 64, RoundingMode::Down),
            64,
            RoundingMode::Up,
        );
    asym = asym.widened(&rem);

    // psi(r) = psi(r + M) - sum_{j=0}^{M-1} 1/(r+j);  1/(r+j) = b/(a+jb)
    let a = bf_from_bigint(r.numer(), p);
    let b = bf_from_bigint(r.denom(), p);
    let mut den = a.clone();
    let mut sum = BigFloat::from_i64(0, p);
    let mut term_err = BigFloat::from_i64(0, 64);
    for _ in 0..shift {
        let t = b.div(&den, p, RoundingMode::ToEven);
        sum = sum.add(&t, p, RoundingMode::ToEven);
        term_err = term_err.add(&crate::bounded::ulp(&t, p), 64, RoundingMode::Up);
        den = den.add(&b, p, RoundingMode::ToEven);
    }
    let recurrence = BoundedValue::new(sum, term_err)?;
    budget.certify(asym.sub(&recurrence, p))
}

/// Euler's constant, as `-psi(1)`.
pub fn euler_gamma(budget: &PrecisionBudget) -> Result<BoundedValue> {
    Ok(digamma(&BigRational::from_integer(BigInt::from(1)), budget)?.neg())
}

/// cot(pi a / b) with a certified bound. Requires `b >= 3`, `1 <= a < b`,
/// `gcd(a,b) = 1`.
pub fn cot_value(a: i64, b: i64, budget: &PrecisionBudget) -> Result<BoundedValue> {
    check_cot_args(a, b)?;
    let p = budget.work_bits() + 16;
    let theta = pi(p).scale(&BigRational::new(BigInt::from(a), BigInt::from(b)), p);
    let s = theta.sin(p);
    let c = theta.cos(p);
    // theta in (0, pi) with theta != pi/2 possible only away from poles;
    // sin(theta) >= sin(pi/b) > 0 keeps the division well-posed
    budget.certify(c.div(&s, p)?)
}

pub(crate) fn check_cot_args(a: i64, b: i64) -> Result<()> {
    if b < 3 {
        return Err(Error::Argument("cotangent denominator must satisfy b >= 3".into()));
    }
    if a % b == 0 {
        return Err(Error::Domain("cot(pi a/b) has a pole at integer a/b".into()));
    }
    if a < 1 || a >= b {
        return Err(Error::Argument("cotangent numerator must satisfy 1 <= a < b".into()));
    }
    if BigInt::from(a).gcd(&BigInt::from(b)) != BigInt::from(1) {
        return Err(Error::Argument("cotangent arguments must be coprime".into()));
    }
    Ok(())
}

/// Convenience: `10^-d` as a comparison threshold (lower bound).
pub fn tol(d: i64) -> BigFloat {
    pow10(-d, RoundingMode::Down)
}
