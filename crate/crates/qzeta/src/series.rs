//! Certified series summation and Richardson extrapolation.

use astro_float::{BigFloat, RoundingMode};

use crate::bounded::{as_bound, BoundedValue};
use crate::error::{Error, Result};
use crate::precision::PrecisionBudget;

const BP: usize = 64;
const UP: RoundingMode = RoundingMode::Up;

/// Hard cap on summed terms; hitting it is an evaluation error, never a
/// silently truncated result.
const MAX_TERMS: u64 = 20_000_000;

/// Indexed term evaluator for [`sum_geometric_tail`].
///
/// `eval` is called once per index, in increasing order starting at
/// `start`, so callers may keep incremental state (running powers) inside
/// the closure. The caller asserts `|t(n+1)| <= ratio_bound * |t(n)|` for
/// every `n >= ratio_valid_from`.
pub struct SeriesTerms<F: FnMut(u64) -> Result<BoundedValue>> {
    pub start: u64,
    pub ratio_valid_from: u64,
    pub eval: F,
}

impl<F: FnMut(u64) -> Result<BoundedValue>> SeriesTerms<F> {
    pub fn new(start: u64, eval: F) -> Self {
        Self { start, ratio_valid_from: start, eval }
    }

    pub fn ratio_valid_from(mut self, n: u64) -> Self {
        self.ratio_valid_from = n;
        self
    }
}

/// Sum `t(start) + t(start+1) + ...` where the terms eventually decay at
/// least geometrically with the caller-supplied ratio bound `r`.
///
/// Stops after term `N` once `|t(N)| * r / (1 - r)` fits the budget's tail
/// tolerance (and `N >= ratio_valid_from`); that quantity dominates the
/// discarded remainder and is folded into the returned bound.
pub fn sum_geometric_tail<F: FnMut(u64) -> Result<BoundedValue>>(
    mut terms: SeriesTerms<F>,
    ratio_bound: &BigFloat,
    budget: &PrecisionBudget,
) -> Result<BoundedValue> {
    let one = BigFloat::from_i64(1, BP);
    if ratio_bound.is_nan()
        || ratio_bound.is_negative()
        || ratio_bound.is_zero()
        || ratio_bound.cmp(&one).unwrap_or(0) >= 0
    {
        return Err(Error::Domain("ratio_bound must lie in (0,1)".into()));
    }
    let p = budget.work_bits();
    let r = as_bound(ratio_bound);
    let tail_factor = r.div(&one.sub(&r, BP, RoundingMode::Down), BP, UP);
    let tol = budget.tail_tolerance();

    let mut acc = BoundedValue::zero();
    let mut n = terms.start;
    loop {
        let t = (terms.eval)(n)?;
        acc = acc.add(&t, p);
        if n >= terms.ratio_valid_from {
            let tail = t.upper_abs().mul(&tail_factor, BP, UP);
            if tail.cmp(tol).unwrap_or(1) <= 0 {
                return Ok(acc.widened(&tail));
            }
        }
        n += 1;
        if n - terms.start > MAX_TERMS {
            return Err(Error::Evaluation(format!(
                "series did not reach tail tolerance within {} terms",
                MAX_TERMS
            )));
        }
    }
}

/// Richardson extrapolation of samples `(h_j, v_j)` with `h_j = h_0 2^-j`,
/// assuming `v(h) = L + c1 h + c2 h^2 + ...`.
///
/// Applies `order` elimination levels and returns the entry built from the
/// finest samples. The returned bound includes the propagated sample
/// bounds plus the magnitude of the last extrapolation increment.
pub fn richardson_limit(
    samples: &[(BigFloat, BoundedValue)],
    order: u32,
    p: usize,
) -> Result<BoundedValue> {
    if samples.len() < order as usize + 1 {
        return Err(Error::Argument(format!(
            "richardson_limit needs at least order+1 = {} samples, got {}",
            order + 1,
            samples.len()
        )));
    }
    if order == 0 {
        return Err(Error::Argument("order must be positive".into()));
    }
    // steps must halve
    let two = BigFloat::from_i64(2, BP);
    for w in samples.windows(2) {
        let (h0, h1) = (&w[0].0, &w[1].0);
        let back = h1.mul(&two, BP, RoundingMode::ToEven);
        let rel = back.sub(h0, BP, RoundingMode::ToEven).abs();
        let tol = h0.abs().mul(&BigFloat::from_f64(1e-12, BP), BP, UP);
        if rel.cmp(&tol).unwrap_or(1) > 0 {
            return Err(Error::Argument("sample steps must decrease by exact factors of 2".into()));
        }
    }

    let mut cur: Vec<BoundedValue> = samples.iter().map(|(_, v)| v.clone()).collect();
    let mut prev_last = cur.last().unwrap().clone();
    for k in 1..=order {
        let f = BoundedValue::exact(crate::bounded::exp2(k as i64));
        let fm1 = f.sub(&BoundedValue::from_i64(1, p), p);
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let num = cur[j + 1].mul(&f, p).sub(&cur[j], p);
            next.push(num.div(&fm1, p)?);
        }
        if k == order {
            prev_last = cur.last().unwrap().clone();
        }
        cur = next;
    }
    let result = cur.last().unwrap().clone();
    let increment = result.sub(&prev_last, p).upper_abs();
    Ok(result.widened(&increment))
}
