//! Exact arithmetic in the cyclotomic fields Q(zeta_b).
//!
//! Elements are rational-coefficient polynomials in zeta_b reduced modulo
//! the b-th cyclotomic polynomial Phi_b, so the representation is
//! canonical: two elements are equal iff their coefficient vectors are.
//! Phi_b itself is obtained by exact division of x^b - 1 by the lower
//! cyclotomic factors, with no integer factorization involved.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bounded::pi;
use crate::complex::ComplexBounded;
use crate::error::{Error, Result};
use crate::precision::PrecisionBudget;

/// Euler's totient, by trial factorization (desk scale).
pub fn euler_phi(b: u64) -> u64 {
    let mut n = b;
    let mut phi = b;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            phi -= phi / p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Phi_b, constant term first, monic.
pub fn cyclotomic_polynomial(b: u64) -> Arc<Vec<BigInt>> {
    if let Some(hit) = phi_cache().lock().expect("phi cache").get(&b) {
        return hit.clone();
    }
    let result = Arc::new(compute_cyclotomic(b));
    phi_cache().lock().expect("phi cache").insert(b, result.clone());
    result
}

fn compute_cyclotomic(b: u64) -> Vec<BigInt> {
    // x^b - 1 divided by prod of Phi_d over proper divisors d | b
    let mut num = vec![BigInt::zero(); b as usize + 1];
    num[0] = -BigInt::one();
    num[b as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in 1..b {
        if b.is_multiple_of(d) {
            den = int_poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    int_poly_div_exact(&num, &den)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials (divisor monic up to sign of its
/// leading +-1 coefficient); panics on a nonzero remainder, which cannot
/// happen for cyclotomic factors.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quo = vec![BigInt::zero(); num.len() - dn];
    let lead = den[dn].clone();
    for i in (0..quo.len()).rev() {
        let c = &rem[i + dn] / &lead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                let sub = dj * &c;
                rem[i + j] -= sub;
            }
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact cyclotomic division");
    quo
}

/// An exact element of Q(zeta_b): coefficients of 1, zeta, ..., zeta^(phi-1)
/// modulo Phi_b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    level: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicElement {
    pub fn zero(level: u64) -> Self {
        Self { level, coeffs: vec![BigRational::zero(); euler_phi(level) as usize] }
    }

    pub fn one(level: u64) -> Self {
        Self::from_rational(level, BigRational::one())
    }

    pub fn from_rational(level: u64, c: BigRational) -> Self {
        let mut e = Self::zero(level);
        if !e.coeffs.is_empty() {
            e.coeffs[0] = c;
        }
        e
    }

    /// zeta_level^k (k may be any integer; reduced mod level).
    pub fn root_power(level: u64, k: i64) -> Self {
        let kk = k.rem_euclid(level as i64) as usize;
        let mut poly = vec![BigRational::zero(); kk + 1];
        poly[kk] = BigRational::one();
        Self::from_poly(level, poly)
    }

    /// Reduce an arbitrary-degree polynomial in zeta_level.
    pub fn from_poly(level: u64, mut poly: Vec<BigRational>) -> Self {
        // exponent fold mod level first (zeta^level = 1), then reduce mod Phi
        let lvl = level as usize;
        if poly.len() > lvl {
            let mut folded = vec![BigRational::zero(); lvl];
            for (i, c) in poly.into_iter().enumerate() {
                folded[i % lvl] += c;
            }
            poly = folded;
        }
        let phi = cyclotomic_polynomial(level);
        let deg = phi.len() - 1;
        // long division remainder by the monic Phi
        while poly.len() > deg {
            let top = poly.len() - 1;
            let c = poly[top].clone();
            if !c.is_zero() {
                let shift = top - deg;
                for (j, pj) in phi.iter().enumerate() {
                    if !pj.is_zero() {
                        let sub = BigRational::from_integer(pj.clone()) * &c;
                        poly[shift + j] -= sub;
                    }
                }
            }
            poly.pop();
        }
        poly.resize(deg, BigRational::zero());
        Self { level, coeffs: poly }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_level(&self, rhs: &Self) -> Result<()> {
        if self.level != rhs.level {
            return Err(Error::Argument(format!(
                "cyclotomic level mismatch: {} vs {}",
                self.level, rhs.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_level(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { level: self.level, coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_level(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { level: self.level, coeffs })
    }

    pub fn neg(&self) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_level(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.level));
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_poly(self.level, out))
    }

    /// Field inverse via the extended Euclidean algorithm against Phi_b.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero in Q(zeta_b)".into()));
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.level)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // xgcd(self, Phi) = (g, s, _) with deg g = 0 since Phi is irreducible
        let (g, s) = poly_half_xgcd(&self.coeffs, &phi);
        let g0 = g
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|i| (i, g[i].clone()))
            .ok_or_else(|| Error::Evaluation("xgcd returned zero gcd".into()))?;
        if g0.0 != 0 {
            return Err(Error::Evaluation("element shares a factor with Phi_b".into()));
        }
        let inv_g = BigRational::one() / g0.1;
        let coeffs: Vec<BigRational> = s.iter().map(|c| c * &inv_g).collect();
        Ok(Self::from_poly(self.level, coeffs))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.mul(&rhs.inv()?)
    }

    /// The Galois automorphism induced by zeta -> zeta^r, applied exactly.
    pub fn galois_apply(&self, r: i64) -> Result<Self> {
        let b = self.level as i64;
        if BigInt::from(r).gcd(&BigInt::from(b)) != BigInt::one() {
            return Err(Error::Argument(format!("galois index {} not coprime to level {}", r, b)));
        }
        let mut poly = vec![BigRational::zero(); self.level as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((i as i64) * r).rem_euclid(b) as usize;
                poly[e] += c;
            }
        }
        Ok(Self::from_poly(self.level, poly))
    }

    /// Re-express in Q(zeta_target) where `level | target`.
    pub fn lift_to_level(&self, target: u64) -> Result<Self> {
        if !target.is_multiple_of(self.level) {
            return Err(Error::Argument(format!(
                "cannot lift level {} into level {}",
                self.level, target
            )));
        }
        let m = (target / self.level) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * m] = c.clone();
            }
        }
        Ok(Self::from_poly(target, poly))
    }

    /// Numeric embedding at zeta_b = exp(2 pi i / b), with certified bounds.
    pub fn embed_numeric(&self, budget: &PrecisionBudget) -> Result<ComplexBounded> {
        let p = budget.work_bits() + 16;
        let b = self.level;
        let mut acc = ComplexBounded::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = pi(p).scale(
                &BigRational::new(BigInt::from(2 * k as u64), BigInt::from(b)),
                p,
            );
            let root = ComplexBounded::from_angle(&theta, p);
            acc = acc.add(&root.scale(c, p), p);
        }
        Ok(acc)
    }
}

/// Extended Euclid on polynomials over Q, tracking only the first Bezout
/// coefficient: returns (gcd, s) with s*a = gcd (mod m).
fn poly_half_xgcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0: Vec<BigRational> = m.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![BigRational::zero()];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !is_zero_poly(&r1) {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s_next;
    }
    (r0, s0)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()) == Some(true) {
        p.pop();
    }
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if is_zero_poly(a) || is_zero_poly(b) {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = num.to_vec();
    trim(&mut rem);
    let mut d = den.to_vec();
    trim(&mut d);
    let dn = d.len() - 1;
    if rem.len() <= dn && !(rem.len() == d.len()) {
        return (vec![BigRational::zero()], rem);
    }
    let lead = d[dn].clone();
    let mut quo = vec![BigRational::zero(); rem.len().saturating_sub(dn).max(1)];
    while rem.len() > dn || (rem.len() == d.len() && !is_zero_poly(&rem)) {
        let top = rem.len() - 1;
        if top < dn {
            break;
        }
        let c = &rem[top] / &lead;
        let shift = top - dn;
        if !c.is_zero() {
            for (j, dj) in d.iter().enumerate() {
                let sub = dj * &c;
                rem[shift + j] -= sub;
            }
        }
        quo[shift] = c;
        rem.pop();
        trim(&mut rem);
        if rem.len() <= dn && rem.len() < d.len() {
            break;
        }
    }
    trim(&mut quo);
    (quo, rem)
}

/// i cot(pi a / b) = (1 + zeta_b^a) / (1 - zeta_b^a), exactly in Q(zeta_b).
pub fn icot_exact(a: i64, b: i64) -> Result<CyclotomicElement> {
    crate::special::check_cot_args(a, b)?;
    let level = b as u64;
    let za = CyclotomicElement::root_power(level, a);
    let one = CyclotomicElement::one(level);
    one.add(&za)?.div(&one.sub(&za)?)
}

/// The coprime residue classes mod b, split into the half system
/// `{a : 1 <= a < b/2}` and the full system `{a : 1 <= a < b}`.
#[derive(Debug, Clone)]
pub struct ResidueSystem {
    modulus: u64,
    half_system: Vec<u64>,
    full_system: Vec<u64>,
}

impl ResidueSystem {
    pub fn new(b: u64) -> Result<Self> {
        if b < 3 {
            return Err(Error::Argument("residue system needs modulus b >= 3".into()));
        }
        let full: Vec<u64> = (1..b).filter(|a| a.gcd(&b) == 1).collect();
        let half: Vec<u64> = full.iter().copied().filter(|&a| 2 * a < b).collect();
        Ok(Self { modulus: b, half_system: half, full_system: full })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn half_system(&self) -> &[u64] {
        &self.half_system
    }

    pub fn full_system(&self) -> &[u64] {
        &self.full_system
    }
}
