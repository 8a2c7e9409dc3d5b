//! Parsers for the textual input forms accepted on the command line:
//! exact rationals (`3/2`, `-7`, `2.5`), q literals (rational or decimal
//! with stated precision), complex exponents (`2`, `1.5+0.25i`), and
//! integer-coefficient minimal polynomials (`x^2-2`).
//!
//! These run on untrusted input; they must never panic. Each entry point
//! has a matching fuzz target under `fuzz/fuzz_targets/`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qzeta::QValue;

/// Upper limit on accepted token length; desk-scale inputs are tiny and a
/// cap keeps adversarial inputs from driving huge bignum work.
const MAX_LEN: usize = 4096;

fn check_len(s: &str) -> Result<()> {
    if s.len() > MAX_LEN {
        return Err(Error::Parse("input too long".into()));
    }
    Ok(())
}

/// Parse an exact rational: `p/r`, an integer, or a decimal literal.
/// No binary floating point is involved at any stage.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    check_len(s)?;
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_int(num.trim())?;
        let d = parse_int(den.trim())?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if s.contains('.') {
        let (v, _, _) = parse_decimal(s)?;
        return Ok(v);
    }
    Ok(BigRational::from_integer(parse_int(s)?))
}

/// Parse `q` as given: a rational stays exact; a decimal literal records
/// how many significant digits were supplied so downstream error bounds
/// can carry the stated uncertainty.
pub fn parse_q_literal(s: &str) -> Result<QValue> {
    check_len(s)?;
    let s = s.trim();
    if s.contains('.') {
        let (value, sig, frac) = parse_decimal(s)?;
        return Ok(QValue::Decimal { value, sig_digits: sig, frac_digits: frac });
    }
    Ok(QValue::Rational(parse_rational(s)?))
}

/// Parse a complex number with rational parts: `a`, `bi`, `a+bi`, `a-bi`.
pub fn parse_complex(s: &str) -> Result<(BigRational, BigRational)> {
    check_len(s)?;
    let s: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    if let Some(body) = s.strip_suffix('i') {
        // pure imaginary or full form; find the sign separating re and im
        let indices: Vec<(usize, char)> = body.char_indices().skip(1).collect();
        for (idx, ch) in indices.into_iter().rev() {
            if (ch == '+' || ch == '-') && !matches!(&body[idx - 1..idx], "e" | "E") {
                let re = parse_rational(&body[..idx])?;
                let im_str = &body[idx..];
                let im = if im_str == "+" || im_str == "-" {
                    let one = BigRational::one();
                    if im_str == "-" { -one } else { one }
                } else {
                    parse_rational(im_str)?
                };
                return Ok((re, im));
            }
        }
        let im = match body {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            "+" => BigRational::one(),
            other => parse_rational(other)?,
        };
        return Ok((BigRational::zero(), im));
    }
    Ok((parse_rational(&s)?, BigRational::zero()))
}

/// Parse an integer-coefficient polynomial in `x`, lowest degree first.
/// Rational coefficients are accepted and cleared to a primitive integer
/// polynomial. The zero polynomial and degree 0 are rejected.
pub fn parse_minpoly(s: &str) -> Result<Vec<BigInt>> {
    check_len(s)?;
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    const MAX_DEG: usize = 64;
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); MAX_DEG + 1];
    let bytes = compact.as_bytes();
    let mut i = 0usize;
    let mut any = false;
    while i < bytes.len() {
        let mut sign = BigRational::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(Error::Parse("dangling sign".into()));
        }
        // coefficient
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.' || bytes[i] == b'/') {
            i += 1;
        }
        let mut coeff = if start == i {
            BigRational::one()
        } else {
            parse_rational(&compact[start..i])?
        };
        // optional '*'
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        // variable part
        let mut deg = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            deg = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::Parse("missing exponent after '^'".into()));
                }
                deg = compact[ds..i]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse("exponent out of range".into()))?;
                if deg > MAX_DEG {
                    return Err(Error::Parse(format!("degree exceeds cap {}", MAX_DEG)));
                }
            }
            // trailing divisor: x^2/2
            if i < bytes.len() && bytes[i] == b'/' {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::Parse("missing divisor after '/'".into()));
                }
                let den = parse_int(&compact[ds..i])?;
                if den.is_zero() {
                    return Err(Error::Parse("zero divisor".into()));
                }
                coeff /= BigRational::from_integer(den);
            }
        } else if start == i {
            return Err(Error::Parse(format!("unexpected character at position {}", i)));
        }
        coeffs[deg] += sign * coeff;
        any = true;
    }
    if !any {
        return Err(Error::Parse("no terms".into()));
    }
    while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()) == Some(true) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(Error::Parse("polynomial must have degree >= 1".into()));
    }
    // clear denominators, divide by content
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num_integer::gcd(content, c.clone());
    }
    if content.is_zero() {
        return Err(Error::Parse("zero polynomial".into()));
    }
    for c in &mut ints {
        *c /= &content;
    }
    if ints.last().map(|c| c.is_negative()) == Some(true) {
        for c in &mut ints {
            *c = -c.clone();
        }
    }
    Ok(ints)
}

/// Parse a coefficient bound: plain integer, `1e8`, or `10^8`.
pub fn parse_coefficient_bound(s: &str) -> Result<u64> {
    check_len(s)?;
    let s = s.trim();
    let make = |mant: u64, exp: u32| -> Result<u64> {
        mant.checked_mul(10u64.checked_pow(exp).ok_or_else(|| Error::Parse("bound too large".into()))?)
            .ok_or_else(|| Error::Parse("bound too large".into()))
    };
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let mant: u64 = m.parse().map_err(|_| Error::Parse("bad bound mantissa".into()))?;
        let exp: u32 = e.parse().map_err(|_| Error::Parse("bad bound exponent".into()))?;
        return make(mant, exp);
    }
    if let Some(e) = s.strip_prefix("10^") {
        let exp: u32 = e.parse().map_err(|_| Error::Parse("bad bound exponent".into()))?;
        return make(1, exp);
    }
    s.parse().map_err(|_| Error::Parse("bad coefficient bound".into()))
}

fn parse_int(s: &str) -> Result<BigInt> {
    if s.is_empty() || s.len() > MAX_LEN {
        return Err(Error::Parse("bad integer".into()));
    }
    s.parse::<BigInt>().map_err(|e| Error::Parse(format!("bad integer: {}", e)))
}

/// Decimal literal -> (exact rational, significant digits, fractional digits).
fn parse_decimal(s: &str) -> Result<(BigRational, u32, u32)> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body
        .split_once('.')
        .ok_or_else(|| Error::Parse("not a decimal".into()))?;
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse("bare decimal point".into()));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse("bad decimal digits".into()));
    }
    let digits = format!("{}{}", int_part, frac_part);
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| Error::Parse("bad decimal".into()))?
    };
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = BigRational::new(n * BigInt::from(sign), den);
    // significant digits: total digits ignoring leading zeros
    let sig = digits.trim_start_matches('0').len().max(1) as u32;
    Ok((value, sig, frac_part.len() as u32))
}

/// Render a rational as the exact `p/r` (or integer) string form.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
