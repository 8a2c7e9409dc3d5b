//! The q-bracket machinery, the q-Hurwitz zeta series for Re(s) > 1, the
//! closed-form Laurent coefficients at s = 1, and an independent
//! Laurent-extraction oracle (one-sided dyadic extrapolation from s -> 1+).

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bounded::{as_bound, exp2, BoundedValue};
use crate::complex::ComplexBounded;
use crate::error::{Error, Result};
use crate::precision::{bits_for_digits, PrecisionBudget};
use crate::series::{richardson_limit, sum_geometric_tail, SeriesTerms};

/// The base q as given by the caller: an exact rational, or a decimal
/// literal treated as exact to its stated precision (algebraic q given
/// numerically), with the uncertainty folded into every error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QValue {
    Rational(BigRational),
    Decimal { value: BigRational, sig_digits: u32, frac_digits: u32 },
}

impl QValue {
    pub fn rational(&self) -> &BigRational {
        match self {
            QValue::Rational(r) => r,
            QValue::Decimal { value, .. } => value,
        }
    }

    /// Exact rational if q was given as one.
    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            QValue::Rational(r) => Some(r),
            QValue::Decimal { .. } => None,
        }
    }

    pub fn is_exactly_int(&self, n: i64) -> bool {
        matches!(self, QValue::Rational(r) if r == &BigRational::from_integer(BigInt::from(n)))
    }

    /// Half a unit in the last given decimal place; zero for exact rationals.
    pub fn uncertainty(&self) -> BigFloat {
        match self {
            QValue::Rational(_) => BigFloat::from_i64(0, 64),
            QValue::Decimal { frac_digits, .. } => crate::precision::pow10(-(*frac_digits as i64), RoundingMode::Up)
                .mul(&BigFloat::from_f64(0.5, 64), 64, RoundingMode::Up),
        }
    }

    pub fn to_bounded(&self, p: usize) -> BoundedValue {
        BoundedValue::from_rational(self.rational(), p).widened(&self.uncertainty())
    }
}

impl std::fmt::Display for QValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QValue::Rational(r) => write!(f, "{}", crate::input::rational_string(r)),
            QValue::Decimal { value, frac_digits, .. } => {
                // reprint with the stated number of fractional digits
                let scaled = value * BigRational::from_integer(BigInt::from(10u32).pow(*frac_digits));
                let int = scaled.to_integer();
                let s = int.abs().to_string();
                let fd = *frac_digits as usize;
                let sgn = if value.is_negative() { "-" } else { "" };
                if fd == 0 {
                    write!(f, "{}{}.", sgn, s)
                } else if s.len() > fd {
                    write!(f, "{}{}.{}", sgn, &s[..s.len() - fd], &s[s.len() - fd..])
                } else {
                    write!(f, "{}0.{}{}", sgn, "0".repeat(fd - s.len()), s)
                }
            }
        }
    }
}

/// The parameter pair (q, x): q > 1 strictly, x rational in (0, 1].
#[derive(Debug, Clone)]
pub struct QPoint {
    q: QValue,
    x: BigRational,
}

impl QPoint {
    pub fn new(q: QValue, x: BigRational) -> Result<Self> {
        let one = BigRational::one();
        match &q {
            QValue::Rational(r) => {
                if r <= &one {
                    return Err(Error::Domain("q must exceed 1".into()));
                }
            }
            QValue::Decimal { value, .. } => {
                // the whole uncertainty interval must stay above 1
                let u = q.uncertainty();
                let v = BoundedValue::from_rational(value, 128).widened(&u);
                let low = v.value().sub(v.bound(), 64, RoundingMode::Down);
                if low.cmp(&BigFloat::from_i64(1, 64)).unwrap_or(-1) <= 0 {
                    return Err(Error::Domain("q must exceed 1".into()));
                }
            }
        }
        if !x.is_positive() {
            return Err(Error::Domain("x must be positive".into()));
        }
        if x > one {
            return Err(Error::Domain("x must satisfy 0 < x <= 1".into()));
        }
        Ok(Self { q, x })
    }

    pub fn from_rationals(q: BigRational, x: BigRational) -> Result<Self> {
        Self::new(QValue::Rational(q), x)
    }

    /// The coprime pair (a, b) with x = a/b in lowest terms.
    pub fn coprime_pair(q: QValue, a: i64, b: i64) -> Result<Self> {
        if b < 1 || a < 1 || a >= b {
            return Err(Error::Argument("need 1 <= a < b".into()));
        }
        Self::new(q, BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn q(&self) -> &QValue {
        &self.q
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }
}

/// [a]_q = (q^a - 1)/(q - 1). Exact when both a (integer) and q are exact.
pub fn q_bracket(a: &BigRational, q: &QValue, budget: &PrecisionBudget) -> Result<BoundedValue> {
    let one = BigRational::one();
    if q.rational() == &one && q.uncertainty().is_zero() {
        return Err(Error::Domain("q-bracket undefined at q = 1".into()));
    }
    let p = budget.work_bits();
    if let (Some(qr), true) = (q.as_exact(), a.is_integer()) {
        return Ok(BoundedValue::from_rational(&q_bracket_exact_int(&a.to_integer(), qr)?, p));
    }
    let qb = q.to_bounded(p);
    let qa = qb.pow_rational(a, p)?;
    let num = qa.sub(&BoundedValue::from_i64(1, p), p);
    let den = qb.sub(&BoundedValue::from_i64(1, p), p);
    num.div(&den, p)
}

/// Exact [n]_q for integer n and rational q != 1.
pub fn q_bracket_exact_int(n: &BigInt, q: &BigRational) -> Result<BigRational> {
    if q == &BigRational::one() {
        return Err(Error::Domain("q-bracket undefined at q = 1".into()));
    }
    let qn = pow_rational_int(q, n);
    Ok((qn - BigRational::one()) / (q - BigRational::one()))
}

fn pow_rational_int(q: &BigRational, n: &BigInt) -> BigRational {
    let mut e = n.magnitude().clone();
    let mut base = q.clone();
    let mut acc = BigRational::one();
    while !e.is_zero() {
        if e.bit(0) {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    if n.is_negative() {
        BigRational::one() / acc
    } else {
        acc
    }
}

/// Finite or infinite q-shifted factorial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochhammerOrder {
    Finite(u64),
    Infinite,
}

/// (a; q)_n = prod_{m=0}^{n-1} (1 - a q^m); the infinite product requires
/// |q| < 1 and carries a certified truncation bound.
pub fn q_shifted_factorial(
    a: &BigRational,
    q: &BigRational,
    order: PochhammerOrder,
    budget: &PrecisionBudget,
) -> Result<BoundedValue> {
    let p = budget.work_bits();
    match order {
        PochhammerOrder::Finite(n) => {
            if n > 100_000 {
                return Err(Error::Argument("q-shifted factorial order too large".into()));
            }
            let qb = BoundedValue::from_rational(q, p);
            let ab = BoundedValue::from_rational(a, p);
            let one = BoundedValue::from_i64(1, p);
            let mut pw = one.clone();
            let mut acc = one.clone();
            for _ in 0..n {
                acc = acc.mul(&one.sub(&ab.mul(&pw, p), p), p);
                pw = pw.mul(&qb, p);
            }
            Ok(acc)
        }
        PochhammerOrder::Infinite => {
            if q.abs() >= BigRational::one() {
                return Err(Error::Domain("infinite q-shifted factorial needs |q| < 1".into()));
            }
            let qb = BoundedValue::from_rational(q, p);
            let ab = BoundedValue::from_rational(a, p);
            let one = BoundedValue::from_i64(1, p);
            let qabs = as_bound(qb.value());
            let geom = BigFloat::from_i64(1, 64).div(
                &BigFloat::from_i64(1, 64).sub(&qabs, 64, RoundingMode::Down),
                64,
                RoundingMode::Up,
            );
            let mut pw = one.clone();
            let mut acc = one.clone();
            let mut m = 0u64;
            loop {
                // exact zero factor ends the product
                if m <= 64
                    && &pow_rational_int(q, &BigInt::from(m)) * a == BigRational::one() {
                        return Ok(BoundedValue::zero());
                    }
                acc = acc.mul(&one.sub(&ab.mul(&pw, p), p), p);
                pw = pw.mul(&qb, p);
                m += 1;
                // tail: |log prod_{j>=m}| <= 2 |a| |q|^m / (1 - |q|)
                let tau = ab
                    .upper_abs()
                    .mul(&pw.upper_abs(), 64, RoundingMode::Up)
                    .mul(&geom, 64, RoundingMode::Up)
                    .mul(&BigFloat::from_i64(2, 64), 64, RoundingMode::Up);
                if tau.cmp(&BigFloat::from_f64(0.25, 64)).unwrap_or(1) <= 0 {
                    let err = acc
                        .upper_abs()
                        .mul(&tau, 64, RoundingMode::Up)
                        .mul(&BigFloat::from_i64(2, 64), 64, RoundingMode::Up);
                    if err.cmp(budget.tail_tolerance()).unwrap_or(1) <= 0 {
                        return Ok(acc.widened(&err));
                    }
                }
                if m > 10_000_000 {
                    return Err(Error::Evaluation("q-shifted factorial did not converge".into()));
                }
            }
        }
    }
}

/// Lambert-type series sum_{k>=1} k^s q^{kx} / (1 - q^k) for 0 < q < 1,
/// x > 0, complex s.
pub fn lambert_q(
    s: (&BigRational, &BigRational),
    x: &BigRational,
    q: &BigRational,
    budget: &PrecisionBudget,
) -> Result<ComplexBounded> {
    if !q.is_positive() || q >= &BigRational::one() {
        return Err(Error::Domain("lambert series needs q in (0,1)".into()));
    }
    if !x.is_positive() {
        return Err(Error::Domain("lambert series needs x > 0".into()));
    }
    let (sig, tau) = s;
    let p = budget.work_bits();
    let qb = BoundedValue::from_rational(q, p);
    let u = qb.pow_rational(x, p)?; // q^x
    let u_up = u.upper_abs();
    let one64 = BigFloat::from_i64(1, 64);
    if u_up.cmp(&one64).unwrap_or(1) >= 0 {
        return Err(Error::Evaluation("q^x did not certify below 1".into()));
    }
    // ratio (1+1/k)^sigma * u <= (1+u)/(2u) * u = (1+u)/2 for k >= k0
    let uf = f64_of(&u_up).min(0.999_999);
    let sigf = rat_f64(sig).max(0.0);
    let k0 = if sigf == 0.0 {
        1
    } else {
        let target = ((1.0 + uf) / (2.0 * uf)).powf(1.0 / sigf);
        (1.0 / (target - 1.0)).ceil().max(1.0) as u64 + 2
    };
    let r = one64
        .add(&u_up, 64, RoundingMode::Up)
        .mul(&BigFloat::from_f64(0.5, 64), 64, RoundingMode::Up);

    let one = BoundedValue::from_i64(1, p);
    let mut upow = u.clone(); // q^{kx}
    let mut qpow = qb.clone(); // q^k
    let mut acc = ComplexBounded::zero();
    let mut k: u64 = 1;
    let tail_factor = r.div(&one64.sub(&r, 64, RoundingMode::Down), 64, RoundingMode::Up);
    loop {
        // k^s = e^{sigma ln k} (cos(tau ln k) + i sin(tau ln k))
        let t = if k == 1 {
            ComplexBounded::from_real(one.clone())
        } else {
            let lnk = BoundedValue::from_i64(k as i64, p).ln(p)?;
            let mag = lnk.scale(sig, p).exp(p)?;
            if tau.is_zero() {
                ComplexBounded::from_real(mag)
            } else {
                let ang = lnk.scale(tau, p);
                ComplexBounded::from_angle(&ang, p).scale_real(&mag, p)
            }
        };
        let t = t
            .scale_real(&upow, p)
            .scale_real(&one.sub(&qpow, p).recip(p)?, p);
        acc = acc.add(&t, p);
        let t_abs = t.re.upper_abs().add(&t.im.upper_abs(), 64, RoundingMode::Up);
        if k >= k0 {
            let tail = t_abs.mul(&tail_factor, 64, RoundingMode::Up);
            if tail.cmp(budget.tail_tolerance()).unwrap_or(1) <= 0 {
                return Ok(ComplexBounded::new(acc.re.widened(&tail), acc.im.widened(&tail)));
            }
        }
        upow = upow.mul(&u, p);
        qpow = qpow.mul(&qb, p);
        k += 1;
        if k > 10_000_000 {
            return Err(Error::Evaluation("lambert series did not converge".into()));
        }
    }
}

fn f64_of(x: &BigFloat) -> f64 {
    // coarse magnitude conversions for loop-sizing only
    let s = crate::bounded::decimal_string(x, 17);
    s.parse::<f64>().unwrap_or(f64::NAN)
}

fn rat_f64(r: &BigRational) -> f64 {
    let n = f64_of(&crate::bounded::bf_from_rational(r, 64));
    if n.is_nan() {
        0.0
    } else {
        n
    }
}

/// zeta_q(s, x) = sum_{n>=0} q^{n+x} / [n+x]_q^s for Re(s) > 1, by direct
/// summation of the defining series with the geometric tail certificate
/// (terms decay at ratio q^{1-Re(s)}).
pub fn zeta_q(
    s: (&BigRational, &BigRational),
    point: &QPoint,
    budget: &PrecisionBudget,
) -> Result<ComplexBounded> {
    let (sig, tau) = s;
    if sig <= &BigRational::one() {
        return Err(Error::Domain(
            "zeta_q series requires Re(s) > 1; the continuation is not implemented".into(),
        ));
    }
    let p = budget.work_bits();
    let qb = point.q().to_bounded(p);
    let x = point.x();
    // ratio bound q^{1-sigma} valid for every n >= 0
    let one_minus_sig = BigRational::one() - sig;
    let r_bv = qb.pow_rational(&one_minus_sig, 64 + 32)?;
    let r = r_bv.upper_abs();
    if r.cmp(&BigFloat::from_i64(1, 64)).unwrap_or(1) >= 0 {
        return Err(Error::Evaluation("tail ratio did not certify below 1".into()));
    }
    let one = BoundedValue::from_i64(1, p);
    let qm1 = qb.sub(&one, p);
    let mut qpow = qb.pow_rational(x, p)?; // q^{n+x}
    let mut acc = ComplexBounded::zero();
    let tail_factor =
        r.div(&BigFloat::from_i64(1, 64).sub(&r, 64, RoundingMode::Down), 64, RoundingMode::Up);
    let mut n: u64 = 0;
    loop {
        let bracket = qpow.sub(&one, p).div(&qm1, p)?;
        let lnb = bracket.ln(p)?;
        let mag = lnb.scale(sig, p).neg().exp(p)?; // [n+x]^-sigma
        let t = if tau.is_zero() {
            ComplexBounded::from_real(qpow.mul(&mag, p))
        } else {
            let ang = lnb.scale(tau, p).neg();
            ComplexBounded::from_angle(&ang, p).scale_real(&mag.mul(&qpow, p), p)
        };
        acc = acc.add(&t, p);
        let t_abs = t.re.upper_abs().add(&t.im.upper_abs(), 64, RoundingMode::Up);
        let tail = t_abs.mul(&tail_factor, 64, RoundingMode::Up);
        if tail.cmp(budget.tail_tolerance()).unwrap_or(1) <= 0 {
            return Ok(ComplexBounded::new(acc.re.widened(&tail), acc.im.widened(&tail)));
        }
        qpow = qpow.mul(&qb, p);
        n += 1;
        if n > 20_000_000 {
            return Err(Error::Evaluation("zeta_q series did not converge".into()));
        }
    }
}

/// Same series summed through the exact binomial rearrangement
///   zeta_q(s,x) = (q-1)^s sum_{k>=0} C(s+k-1, k) q^{x(1-s-k)} / (1 - q^{1-s-k}),
/// absolutely convergent for Re(s) > 1, where the cost is independent of
/// how close s is to 1. This is the evaluator behind the extraction
/// oracle; it is tested against the direct summation where both run.
pub(crate) fn zeta_q_near_one(h: &BigFloat, point: &QPoint, work_digits: u32) -> Result<BoundedValue> {
    // s = 1 + h, h > 0 exact dyadic
    if h.is_negative() || h.is_zero() {
        return Err(Error::Domain("zeta_q series requires Re(s) > 1".into()));
    }
    let p = bits_for_digits(work_digits);
    let budget = PrecisionBudget::new(work_digits)?.with_guard_digits(0);
    let qb = point.q().to_bounded(p);
    let x = point.x();
    let one = BoundedValue::from_i64(1, p);
    let s = one.add(&BoundedValue::exact(h.clone()), p);

    let ln_q = qb.ln(p)?;
    let u = qb.pow_rational(&(-x.clone()), p)?; // q^{-x}
    let u_up = u.upper_abs();
    let uf = f64_of(&u_up).min(0.999_999);
    let hf = f64_of(h);
    let k0 = ((2.0 * uf * hf) / (1.0 - uf)).ceil() as u64 + 2;
    let r = BigFloat::from_i64(1, 64)
        .add(&u_up, 64, RoundingMode::Up)
        .mul(&BigFloat::from_f64(0.5, 64), 64, RoundingMode::Up);

    // prefactor (q-1)^s = e^{s ln(q-1)}
    let qm1 = qb.sub(&one, p);
    let pref = if point.q().is_exactly_int(2) {
        one.clone()
    } else {
        qm1.ln(p)?.mul(&s, p).exp(p)?
    };

    // alpha_k = q^{-x(h+k)}, beta_k = q^{-(h+k)}, binom_k
    let neg_xh = ln_q.mul(&BoundedValue::exact(h.clone()), p).scale(&(-x.clone()), p);
    let mut alpha = neg_xh.exp(p)?;
    let mut beta = ln_q.mul(&BoundedValue::exact(h.neg()), p).exp(p)?;
    let qinv = qb.recip(p)?;
    let mut binom = one.clone();
    let mut acc = BoundedValue::zero();
    let mut k: u64 = 0;
    let tail_factor = r.div(
        &BigFloat::from_i64(1, 64).sub(&r, 64, RoundingMode::Down),
        64,
        RoundingMode::Up,
    );
    loop {
        let t = binom.mul(&alpha, p).div(&one.sub(&beta, p), p)?;
        acc = acc.add(&t, p);
        if k >= k0 {
            let tail = t.upper_abs().mul(&tail_factor, 64, RoundingMode::Up);
            if tail.cmp(budget.tail_tolerance()).unwrap_or(1) <= 0 {
                acc = acc.widened(&tail);
                break;
            }
        }
        k += 1;
        // binom *= (s + k - 1) / k
        let num = s.add(&BoundedValue::from_i64(k as i64 - 1, p), p);
        binom = binom.mul(&num, p).div(&BoundedValue::from_i64(k as i64, p), p)?;
        alpha = alpha.mul(&u, p);
        beta = beta.mul(&qinv, p);
        if k > 20_000_000 {
            return Err(Error::Evaluation("accelerated zeta series did not converge".into()));
        }
    }
    Ok(pref.mul(&acc, p))
}

/// Which printed form of the gamma_1 closed formula to evaluate: the
/// log(q-1)-bracket coefficient as printed, (q-1)log(q-1)/(2 log q), or
/// the un-halved variant. The extraction oracle adjudicates between them;
/// both coincide at q = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gamma1Form {
    #[default]
    AsPrinted,
    UnhalvedLogTerm,
}

/// The shared series S = sum_{n>=1} q^{n(1-x)} / [n]_q.
fn gamma0_series(point: &QPoint, budget: &PrecisionBudget) -> Result<BoundedValue> {
    let p = budget.work_bits();
    let qb = point.q().to_bounded(p);
    let x = point.x();
    let one = BoundedValue::from_i64(1, p);
    let qm1 = qb.sub(&one, p);
    let u = qb.pow_rational(&(-x.clone()), p)?;
    let r = u.upper_abs();
    if r.cmp(&BigFloat::from_i64(1, 64)).unwrap_or(1) >= 0 {
        return Err(Error::Domain("tail certificate requires q^-x < 1".into()));
    }
    let step = qb.pow_rational(&(BigRational::one() - x), p)?;
    let mut qn = qb.clone();
    let mut qpow = step.clone();
    let terms = SeriesTerms::new(1, move |_| {
        let t = qpow.mul(&qm1, p).div(&qn.sub(&one, p), p)?;
        qn = qn.mul(&qb, p);
        qpow = qpow.mul(&step, p);
        Ok(t)
    });
    sum_geometric_tail(terms, &r, budget)
}

/// gamma_0(q, x): closed form
/// `S + (q-1) log(q-1)/log q - (q-1)/2 + (q-1)(1-x)`.
pub fn gamma0(point: &QPoint, budget: &PrecisionBudget) -> Result<BoundedValue> {
    let inner = budget.padded(8);
    let p = inner.work_bits();
    let s = gamma0_series(point, &inner)?;
    let qb = point.q().to_bounded(p);
    let one = BoundedValue::from_i64(1, p);
    let qm1 = qb.sub(&one, p);
    let x = point.x();
    let mut acc = s;
    if !point.q().is_exactly_int(2) {
        let t = qm1.mul(&qm1.ln(p)?, p).div(&qb.ln(p)?, p)?;
        acc = acc.add(&t, p);
    }
    let affine = BigRational::one() - x - BigRational::new(BigInt::one(), BigInt::from(2));
    acc = acc.add(&qm1.scale(&affine, p), p);
    budget.certify(acc)
}

/// gamma_1(q, x): the three-part closed form. `form` selects the printed
/// halved log(q-1) coefficient or the un-halved variant.
pub fn gamma1(point: &QPoint, budget: &PrecisionBudget, form: Gamma1Form) -> Result<BoundedValue> {
    let inner = budget.padded(10);
    let p = inner.work_bits();
    let qb = point.q().to_bounded(p);
    let one = BoundedValue::from_i64(1, p);
    let qm1 = qb.sub(&one, p);
    let x = point.x();
    let ln_q = qb.ln(p)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));

    let s = gamma0_series(point, &inner)?;

    // bracket multiplied by log(q-1); identically zero at q = 2
    let mut acc = if point.q().is_exactly_int(2) {
        BoundedValue::zero()
    } else {
        let ln_qm1 = qm1.ln(p)?;
        let coeff = match form {
            Gamma1Form::AsPrinted => qm1.mul(&ln_qm1, p).div(&ln_q.scale(&BigRational::from_integer(BigInt::from(2)), p), p)?,
            Gamma1Form::UnhalvedLogTerm => qm1.mul(&ln_qm1, p).div(&ln_q, p)?,
        };
        let affine = BigRational::one() - x - half.clone();
        s.add(&coeff, p).add(&qm1.scale(&affine, p), p).mul(&ln_qm1, p)
    };

    // bracket multiplied by log q
    let t2 = double_factor_series(point, &inner)?;
    let c12 = BigRational::new(BigInt::one(), BigInt::from(12));
    let cx = (BigRational::one() - x) * x * &half;
    let mid = qm1.scale(&c12, p).sub(&t2, p).sub(&qm1.scale(&cx, p), p).mul(&ln_q, p);
    acc = acc.add(&mid, p);

    // harmonic series sum q^{n(1-x)} H_n / [n]_q
    let t3 = harmonic_series(point, &inner)?;
    acc = acc.add(&t3, p);
    budget.certify(acc)
}

/// sum_{n>=1} (1 + (q^n - 1) x) q^{n(1-x)} / ([n]_q (q^n - 1)).
fn double_factor_series(point: &QPoint, budget: &PrecisionBudget) -> Result<BoundedValue> {
    let p = budget.work_bits();
    let qb = point.q().to_bounded(p);
    let x = point.x();
    let one = BoundedValue::from_i64(1, p);
    let qm1 = qb.sub(&one, p);
    let u = qb.pow_rational(&(-x.clone()), p)?;
    let r = u.upper_abs();
    let step = qb.pow_rational(&(BigRational::one() - x), p)?;
    let xc = x.clone();
    let mut qn = qb.clone();
    let mut qpow = step.clone();
    let terms = SeriesTerms::new(1, move |_| {
        let qn1 = qn.sub(&one, p);
        let num = one.add(&qn1.scale(&xc, p), p).mul(&qpow, p).mul(&qm1, p);
        let t = num.div(&qn1.mul(&qn1, p), p)?;
        qn = qn.mul(&qb, p);
        qpow = qpow.mul(&step, p);
        Ok(t)
    });
    sum_geometric_tail(terms, &r, budget)
}

/// sum_{n>=1} q^{n(1-x)} H_n / [n]_q; the harmonic growth is absorbed into
/// the ratio bound (1 + 1/(n+1)) q^-x, valid from n0 = 2u/(1-u).
fn harmonic_series(point: &QPoint, budget: &PrecisionBudget) -> Result<BoundedValue> {
    let p = budget.work_bits();
    let qb = point.q().to_bounded(p);
    let x = point.x();
    let one = BoundedValue::from_i64(1, p);
    let qm1 = qb.sub(&one, p);
    let u = qb.pow_rational(&(-x.clone()), p)?;
    let u_up = u.upper_abs();
    let uf = f64_of(&u_up).min(0.999_999);
    let n0 = ((2.0 * uf) / (1.0 - uf)).ceil() as u64 + 2;
    let r = BigFloat::from_i64(1, 64)
        .add(&u_up, 64, RoundingMode::Up)
        .mul(&BigFloat::from_f64(0.5, 64), 64, RoundingMode::Up);
    let step = qb.pow_rational(&(BigRational::one() - x), p)?;
    let mut qn = qb.clone();
    let mut qpow = step.clone();
    let mut h = BoundedValue::zero();
    let terms = SeriesTerms::new(1, move |n| {
        h = h.add(&BoundedValue::from_i64(n as i64, p).recip(p)?, p);
        let t = qpow.mul(&h, p).mul(&qm1, p).div(&qn.sub(&one, p), p)?;
        qn = qn.mul(&qb, p);
        qpow = qpow.mul(&step, p);
        Ok(t)
    })
    .ratio_valid_from(n0);
    sum_geometric_tail(terms, &r, budget)
}

/// Where a Laurent datum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentSource {
    ClosedForm,
    Extrapolated,
}

/// Residue and the first two regular Laurent coefficients at s = 1.
#[derive(Debug, Clone)]
pub struct LaurentData {
    pub residue: BoundedValue,
    pub gamma0: BoundedValue,
    pub gamma1: BoundedValue,
    pub source: LaurentSource,
}

/// (q - 1)/log q, the residue of the simple pole at s = 1.
pub fn residue_closed_form(q: &QValue, budget: &PrecisionBudget) -> Result<BoundedValue> {
    let p = budget.work_bits();
    let qb = q.to_bounded(p);
    let one = BoundedValue::from_i64(1, p);
    qb.sub(&one, p).div(&qb.ln(p)?, p)
}

/// Laurent coefficients by one-sided extrapolation: evaluate
/// g(s) = zeta_q(s,x) - rho/(s-1) at s_j = 1 + 2^-(j+2) (so h_0 = 1/4),
/// Richardson-extrapolate g -> gamma_0 and (g - gamma_0)/(s-1) -> gamma_1,
/// and h zeta(1+h) -> residue.
pub fn extract_laurent(point: &QPoint, budget: &PrecisionBudget) -> Result<LaurentData> {
    let d = budget.target_digits();
    // smallest J with the dyadic Richardson model error below the target:
    // 0.301 J(J+1)/2 + 0.602 (J+1) >= d + 8
    let mut levels: u32 = 4;
    while 0.301 * (levels as f64) * (levels as f64 + 1.0) / 2.0 + 0.602 * (levels as f64 + 1.0)
        < d as f64 + 8.0
    {
        levels += 1;
        if levels > 48 {
            return Err(Error::InsufficientPrecision(
                "extraction would need more dyadic levels than supported".into(),
            ));
        }
    }
    // cancellation headroom: rho/h at the finest step plus tableau slack
    let pad = (0.302 * (levels as f64 + 3.0)).ceil() as u32 + 12;
    let work = d + budget.guard_digits() + pad;
    let p = bits_for_digits(work);

    let rho = residue_closed_form(point.q(), &PrecisionBudget::new(work)?.with_guard_digits(0))?;

    let mut g_samples = Vec::with_capacity(levels as usize + 1);
    let mut r_samples = Vec::with_capacity(levels as usize + 1);
    for j in 0..=levels {
        let h = exp2(-(j as i64) - 2);
        let zeta = zeta_q_near_one(&h, point, work)?;
        let pole = rho.mul_exp2((j as i64) + 2);
        g_samples.push((h.clone(), zeta.sub(&pole, p)));
        r_samples.push((h.clone(), zeta.mul_exp2(-(j as i64) - 2)));
    }

    let gamma0 = richardson_limit(&g_samples, levels, p)?;
    let residue = richardson_limit(&r_samples, levels, p)?;

    let g1_samples: Vec<(BigFloat, BoundedValue)> = g_samples
        .iter()
        .enumerate()
        .map(|(j, (h, g))| (h.clone(), g.sub(&gamma0, p).mul_exp2(j as i64 + 2)))
        .collect();
    let gamma1 = richardson_limit(&g1_samples, levels, p)?;

    Ok(LaurentData {
        residue: budget.certify(residue)?,
        gamma0: budget.certify(gamma0)?,
        gamma1: budget.certify(gamma1)?,
        source: LaurentSource::Extrapolated,
    })
}

impl BoundedValue {
    /// Exact scaling by 2^k (mantissa untouched).
    pub fn mul_exp2(&self, k: i64) -> Self {
        let f = exp2(k);
        let v = self.value().mul(&f, self.value().mantissa_max_bit_len().unwrap_or(64), RoundingMode::ToEven);
        let b = self.bound().mul(&f, 64, RoundingMode::Up);
        BoundedValue::new(v, b).expect("scaling by power of two")
    }
}
