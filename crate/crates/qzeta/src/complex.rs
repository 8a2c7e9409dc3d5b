//! Complex values with per-component certified bounds.

use astro_float::BigFloat;
use num_rational::BigRational;

use crate::bounded::BoundedValue;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct ComplexBounded {
    pub re: BoundedValue,
    pub im: BoundedValue,
}

impl ComplexBounded {
    pub fn new(re: BoundedValue, im: BoundedValue) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BoundedValue) -> Self {
        Self { re, im: BoundedValue::zero() }
    }

    pub fn zero() -> Self {
        Self { re: BoundedValue::zero(), im: BoundedValue::zero() }
    }

    /// cos(theta) + i sin(theta).
    pub fn from_angle(theta: &BoundedValue, p: usize) -> Self {
        Self { re: theta.cos(p), im: theta.sin(p) }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        Self { re: self.re.neg(), im: self.im.neg() }
    }

    /// Multiply by i.
    pub fn times_i(&self) -> Self {
        Self { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn add(&self, rhs: &Self, p: usize) -> Self {
        Self { re: self.re.add(&rhs.re, p), im: self.im.add(&rhs.im, p) }
    }

    pub fn sub(&self, rhs: &Self, p: usize) -> Self {
        Self { re: self.re.sub(&rhs.re, p), im: self.im.sub(&rhs.im, p) }
    }

    pub fn mul(&self, rhs: &Self, p: usize) -> Self {
        let re = self.re.mul(&rhs.re, p).sub(&self.im.mul(&rhs.im, p), p);
        let im = self.re.mul(&rhs.im, p).add(&self.im.mul(&rhs.re, p), p);
        Self { re, im }
    }

    pub fn div(&self, rhs: &Self, p: usize) -> Result<Self> {
        let norm = rhs.re.mul(&rhs.re, p).add(&rhs.im.mul(&rhs.im, p), p);
        let num = self.mul(&rhs.conj(), p);
        Ok(Self { re: num.re.div(&norm, p)?, im: num.im.div(&norm, p)? })
    }

    pub fn scale_real(&self, c: &BoundedValue, p: usize) -> Self {
        Self { re: self.re.mul(c, p), im: self.im.mul(c, p) }
    }

    pub fn scale(&self, c: &BigRational, p: usize) -> Self {
        Self { re: self.re.scale(c, p), im: self.im.scale(c, p) }
    }

    /// Both components within `eps` of zero.
    pub fn within_of_zero(&self, eps: &BigFloat) -> bool {
        self.re.within_of_zero(eps) && self.im.within_of_zero(eps)
    }

    /// Componentwise distance bound to another complex interval.
    pub fn distance_bound(&self, rhs: &Self, p: usize) -> BigFloat {
        let dr = self.re.distance_bound(&rhs.re, p);
        let di = self.im.distance_bound(&rhs.im, p);
        if dr.cmp(&di).unwrap_or(0) >= 0 {
            dr
        } else {
            di
        }
    }
}
