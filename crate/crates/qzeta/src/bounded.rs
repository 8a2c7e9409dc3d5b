//! Values carrying certified absolute error bounds.
//!
//! [`BoundedValue`] pairs an arbitrary-precision real with a non-negative
//! absolute bound on its distance from the mathematically exact quantity.
//! Arithmetic propagates bounds conservatively: sums of bounds for
//! addition, first-order propagation (plus the cross term) for products
//! and quotients. Bound arithmetic runs at 64 bits rounded toward +inf,
//! so a bound can only ever be pessimistic.

use astro_float::{BigFloat, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::precision::with_consts;

const BP: usize = 64; // bound precision
const UP: RoundingMode = RoundingMode::Up;
const RM: RoundingMode = RoundingMode::ToEven;

/// Reduce to bound precision, rounding away from zero as an upper bound.
pub(crate) fn as_bound(x: &BigFloat) -> BigFloat {
    let mut b = x.abs();
    b.set_precision(BP, UP).expect("bound precision");
    b
}

/// Upper bound on one ulp of `v` at precision `p` (covers a rounding step).
pub(crate) fn ulp(v: &BigFloat, p: usize) -> BigFloat {
    if v.is_zero() {
        return BigFloat::from_i64(0, BP);
    }
    let e = v.exponent().unwrap_or(0) as i64;
    exp2(e - p as i64 + 1)
}

/// 2^k at bound precision.
pub(crate) fn exp2(k: i64) -> BigFloat {
    let mut one = BigFloat::from_i64(1, BP);
    one.set_exponent((k + 1).clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    one
}

fn badd(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, BP, UP)
}

fn bmul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, BP, UP)
}

/// An arbitrary-precision real together with a certified absolute error
/// bound: the exact quantity lies in `[value - bound, value + bound]`.
#[derive(Debug, Clone)]
pub struct BoundedValue {
    value: BigFloat,
    bound: BigFloat,
}

impl BoundedValue {
    pub fn new(value: BigFloat, bound: BigFloat) -> Result<Self> {
        if value.is_nan() || value.is_inf() {
            return Err(Error::Evaluation("non-finite value".into()));
        }
        if bound.is_nan() || bound.is_inf() || bound.is_negative() {
            return Err(Error::Evaluation("error bound must be finite and non-negative".into()));
        }
        Ok(Self { value, bound: as_bound(&bound) })
    }

    /// Exact value (zero bound).
    pub fn exact(value: BigFloat) -> Self {
        Self { value, bound: BigFloat::from_i64(0, BP) }
    }

    pub fn zero() -> Self {
        Self::exact(BigFloat::from_i64(0, BP))
    }

    pub fn from_i64(v: i64, p: usize) -> Self {
        Self::exact(BigFloat::from_i64(v, p))
    }

    /// Rational converted at precision `p`; the bound covers the rounding.
    /// Integers that fit the mantissa convert exactly.
    pub fn from_rational(r: &BigRational, p: usize) -> Self {
        use num_traits::One;
        let v = bf_from_rational(r, p);
        if r.denom().is_one() && r.numer().bits() + 2 < p as u64 {
            return Self::exact(v);
        }
        let b = ulp(&v, p);
        Self { value: v, bound: b }
    }

    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    pub fn bound(&self) -> &BigFloat {
        &self.bound
    }

    pub fn is_exact(&self) -> bool {
        self.bound.is_zero()
    }

    /// Widen the bound by an extra amount.
    pub fn widened(mut self, extra: &BigFloat) -> Self {
        self.bound = badd(&self.bound, &as_bound(extra));
        self
    }

    pub fn neg(&self) -> Self {
        Self { value: self.value.neg(), bound: self.bound.clone() }
    }

    pub fn abs(&self) -> Self {
        Self { value: self.value.abs(), bound: self.bound.clone() }
    }

    pub fn add(&self, rhs: &Self, p: usize) -> Self {
        let v = self.value.add(&rhs.value, p, RM);
        let b = badd(&badd(&self.bound, &rhs.bound), &ulp(&v, p));
        Self { value: v, bound: b }
    }

    pub fn sub(&self, rhs: &Self, p: usize) -> Self {
        let v = self.value.sub(&rhs.value, p, RM);
        let b = badd(&badd(&self.bound, &rhs.bound), &ulp(&v, p));
        Self { value: v, bound: b }
    }

    pub fn mul(&self, rhs: &Self, p: usize) -> Self {
        let v = self.value.mul(&rhs.value, p, RM);
        let b = badd(
            &badd(
                &badd(&bmul(&as_bound(&self.value), &rhs.bound), &bmul(&as_bound(&rhs.value), &self.bound)),
                &bmul(&self.bound, &rhs.bound),
            ),
            &ulp(&v, p),
        );
        Self { value: v, bound: b }
    }

    /// Division; the divisor interval must stay away from zero.
    pub fn div(&self, rhs: &Self, p: usize) -> Result<Self> {
        let den_low = as_bound(&rhs.value).sub(&rhs.bound, BP, RoundingMode::Down);
        if den_low.is_negative() || den_low.is_zero() {
            return Err(Error::Evaluation("division by an interval containing zero".into()));
        }
        let v = self.value.div(&rhs.value, p, RM);
        // |a/b - a'/b'| <= (|a| e_b / |b| + e_a) / (|b| - e_b)
        let num = badd(
            &bmul(&as_bound(&v), &rhs.bound),
            &self.bound,
        );
        let b = badd(&num.div(&den_low, BP, UP), &ulp(&v, p));
        Ok(Self { value: v, bound: b })
    }

    pub fn recip(&self, p: usize) -> Result<Self> {
        BoundedValue::from_i64(1, p).div(self, p)
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, c: &BigRational, p: usize) -> Self {
        self.mul(&BoundedValue::from_rational(c, p + 32), p)
    }

    pub fn exp(&self, p: usize) -> Result<Self> {
        if as_bound(&self.bound).cmp(&BigFloat::from_f64(0.5, BP)).unwrap_or(1) > 0 {
            return Err(Error::Evaluation("input bound too large for exp propagation".into()));
        }
        let v = with_consts(|cc| self.value.exp(p, RM, cc));
        // |e^(x+d) - e^x| <= e^x (e^d - 1) <= 2 e^x d  for d <= 1/2
        let b = badd(
            &bmul(&bmul(&as_bound(&v), &self.bound), &BigFloat::from_i64(2, BP)),
            &ulp(&v, p),
        );
        Ok(Self { value: v, bound: b })
    }

    /// Natural log; requires the interval strictly positive.
    pub fn ln(&self, p: usize) -> Result<Self> {
        let low = self.value.sub(&self.bound, BP, RoundingMode::Down);
        if low.is_negative() || low.is_zero() {
            return Err(Error::Domain("log of a non-positive interval".into()));
        }
        let v = with_consts(|cc| self.value.ln(p, RM, cc));
        let b = badd(&self.bound.div(&low, BP, UP), &ulp(&v, p));
        Ok(Self { value: v, bound: b })
    }

    pub fn sqrt(&self, p: usize) -> Result<Self> {
        let low = self.value.sub(&self.bound, BP, RoundingMode::Down);
        if low.is_negative() {
            return Err(Error::Domain("sqrt of a possibly-negative interval".into()));
        }
        let v = self.value.sqrt(p, RM);
        let b = if low.is_zero() {
            // fall back: |sqrt(x+d)-sqrt(x)| <= sqrt(d)
            badd(&self.bound.sqrt(BP, UP), &ulp(&v, p))
        } else {
            let denom = low.sqrt(BP, RoundingMode::Down).mul(&BigFloat::from_i64(2, BP), BP, RoundingMode::Down);
            badd(&self.bound.div(&denom, BP, UP), &ulp(&v, p))
        };
        Ok(Self { value: v, bound: b })
    }

    /// Raise to an exact rational power via exp(r ln x); base must be positive.
    pub fn pow_rational(&self, r: &BigRational, p: usize) -> Result<Self> {
        if self.value.is_negative() || self.value.is_zero() {
            return Err(Error::Domain("rational power of a non-positive base".into()));
        }
        let pe = p + 32;
        let l = self.ln(pe)?;
        l.scale(r, pe).exp(p)
    }

    pub fn sin(&self, p: usize) -> Self {
        let v = with_consts(|cc| self.value.sin(p, RM, cc));
        // |sin'| <= 1
        let b = badd(&self.bound, &ulp(&v, p));
        Self { value: v, bound: b }
    }

    pub fn cos(&self, p: usize) -> Self {
        let v = with_consts(|cc| self.value.cos(p, RM, cc));
        let b = badd(&self.bound, &ulp(&v, p));
        Self { value: v, bound: b }
    }

    pub fn cosh(&self, p: usize) -> Result<Self> {
        let v = with_consts(|cc| self.value.cosh(p, RM, cc));
        // |cosh'| = |sinh| <= cosh; relative style bound
        let b = badd(
            &bmul(&bmul(&as_bound(&v), &self.bound), &BigFloat::from_i64(2, BP)),
            &ulp(&v, p),
        );
        if as_bound(&self.bound).cmp(&BigFloat::from_f64(0.5, BP)).unwrap_or(1) > 0 {
            return Err(Error::Evaluation("input bound too large for cosh propagation".into()));
        }
        Ok(Self { value: v, bound: b })
    }

    /// Signed upper/lower endpoints, at bound precision.
    pub fn upper_abs(&self) -> BigFloat {
        badd(&as_bound(&self.value), &self.bound)
    }

    /// True if the interval certainly lies within `eps` of zero.
    pub fn within_of_zero(&self, eps: &BigFloat) -> bool {
        self.upper_abs().cmp(&as_bound(eps)).unwrap_or(1) <= 0
    }

    /// Distance between two intervals' centers, plus both bounds: a bound on
    /// the difference of the exact quantities.
    pub fn distance_bound(&self, rhs: &Self, p: usize) -> BigFloat {
        self.sub(rhs, p).upper_abs()
    }
}

/// pi with an ulp bound.
pub fn pi(p: usize) -> BoundedValue {
    let v = with_consts(|cc| cc.pi(p, RM));
    let b = ulp(&v, p);
    BoundedValue { value: v, bound: b }
}

/// Convert a big integer at precision `p` (round to even).
pub(crate) fn bf_from_bigint(n: &BigInt, p: usize) -> BigFloat {
    // Through the decimal string: integers of desk-scale size only.
    let s = n.to_string();
    with_consts(|cc| BigFloat::parse(&s, astro_float::Radix::Dec, p, RM, cc))
}

/// Convert a rational at precision `p`.
pub(crate) fn bf_from_rational(r: &BigRational, p: usize) -> BigFloat {
    let pe = p + 8;
    let num = bf_from_bigint(r.numer(), pe);
    let den = bf_from_bigint(r.denom(), pe);
    num.div(&den, p, RM)
}

/// Render `v` with `sig` significant decimal digits, deterministically:
/// `d.dddd...e+k` (round half away from zero at the cut).
pub fn decimal_string(v: &BigFloat, sig: usize) -> String {
    if v.is_zero() {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_inf() {
        return if v.is_negative() { "-inf".into() } else { "inf".into() };
    }
    let (sign, digits, e) = with_consts(|cc| v.convert_to_radix(astro_float::Radix::Dec, RM, cc))
        .expect("radix conversion");
    let mut ds: Vec<u8> = digits;
    // strip leading zeros that convert_to_radix may emit
    let mut lead = 0;
    while lead < ds.len() && ds[lead] == 0 {
        lead += 1;
    }
    ds.drain(..lead);
    let mut exp10 = e as i64 - lead as i64; // value = 0.d1 d2 ... * 10^exp10
    if ds.is_empty() {
        return "0".into();
    }
    // round to `sig` digits
    if ds.len() > sig {
        let roundup = ds[sig] >= 5;
        ds.truncate(sig);
        if roundup {
            let mut i = sig;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
            ds.truncate(sig);
        }
    }
    while ds.len() > 1 && *ds.last().unwrap() == 0 {
        ds.pop();
    }
    let mut out = String::new();
    if sign == Sign::Neg {
        out.push('-');
    }
    out.push((b'0' + ds[0]) as char);
    if ds.len() > 1 {
        out.push('.');
        for d in &ds[1..] {
            out.push((b'0' + d) as char);
        }
    }
    out.push('e');
    let k = exp10 - 1; // d.ddd * 10^k
    if k >= 0 {
        out.push('+');
    }
    out.push_str(&k.to_string());
    out
}

/// Two-digit upper rendering of an error bound.
pub fn bound_string(b: &BigFloat) -> String {
    if b.is_zero() {
        return "0".into();
    }
    // round the 2-digit cut upward so the printed bound stays a bound
    let s = decimal_string(b, 20);
    let (mant, exp) = s.split_once('e').unwrap_or((s.as_str(), "+0"));
    let digits: Vec<u8> = mant
        .chars()
        .filter(|c| c.is_ascii_digit())
        .map(|c| c as u8 - b'0')
        .collect();
    let mut d0 = digits[0];
    let mut d1 = *digits.get(1).unwrap_or(&0);
    if digits.len() > 2 && digits[2..].iter().any(|&d| d > 0) {
        d1 += 1;
    }
    let mut k: i64 = exp.parse().unwrap_or(0);
    if d1 == 10 {
        d1 = 0;
        d0 += 1;
    }
    if d0 == 10 {
        d0 = 1;
        d1 = 0;
        k += 1;
    }
    format!("{}.{}e{}{}", d0, d1, if k >= 0 { "+" } else { "" }, k)
}
