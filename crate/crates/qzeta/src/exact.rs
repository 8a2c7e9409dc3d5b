//! Exact integer and rational combinatorics: Bernoulli numbers and
//! polynomials, unsigned Stirling numbers of the first kind, harmonic
//! numbers.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient blow-up guard for Bernoulli polynomials.
pub const BERNOULLI_CAP: u32 = 60;
/// Desk-scale guard for Stirling rows.
pub const STIRLING_CAP: u64 = 10_000;

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Bernoulli number B_k (B_1 = -1/2 convention), memoized.
pub fn bernoulli_number(k: u32) -> BigRational {
    let mut table = BERNOULLI.lock().expect("bernoulli table");
    while table.len() <= k as usize {
        let m = table.len();
        let b = if m == 0 {
            BigRational::one()
        } else {
            // sum_{j<m} C(m+1, j) B_j = 0  =>  B_m = -1/(m+1) * sum
            let mut acc = BigRational::zero();
            for (j, bj) in table.iter().enumerate() {
                acc += BigRational::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
            }
            -acc / BigRational::from_integer(BigInt::from(m as u64 + 1))
        };
        table.push(b);
    }
    table[k as usize].clone()
}

/// Bernoulli polynomial B_k(x), exact. `k` capped at [`BERNOULLI_CAP`].
pub fn bernoulli_polynomial(k: u32, x: &BigRational) -> Result<BigRational> {
    if k > BERNOULLI_CAP {
        return Err(Error::Argument(format!(
            "bernoulli_polynomial degree {} exceeds cap {}",
            k, BERNOULLI_CAP
        )));
    }
    // B_k(x) = sum_j C(k,j) B_j x^(k-j)
    let mut acc = BigRational::zero();
    let mut xpow = BigRational::one();
    // iterate j = k down to 0 so x powers build up incrementally
    for j in (0..=k).rev() {
        let term = BigRational::from_integer(binomial(k as u64, j as u64)) * bernoulli_number(j) * &xpow;
        acc += term;
        xpow *= x;
    }
    Ok(acc)
}

/// Unsigned Stirling number of the first kind `s(n+1, k)`, computed by the
/// row recurrence `c(m+1, k) = c(m, k-1) + m c(m, k)` from `c(1,1) = 1`.
pub fn stirling_first_unsigned(n: u64, k: u64) -> Result<BigInt> {
    if n < 1 || k < 1 || k > n + 1 {
        return Err(Error::Argument(format!(
            "stirling_first_unsigned requires 1 <= k <= n+1, got n={} k={}",
            n, k
        )));
    }
    if n > STIRLING_CAP {
        return Err(Error::Argument(format!("stirling n={} exceeds cap {}", n, STIRLING_CAP)));
    }
    // row m holds c(m, 1..=m)
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        let mf = BigInt::from(m);
        for (j, c) in row.iter().enumerate() {
            // c = c(m, j+1)
            next[j + 1] += c;
            next[j] += c * &mf;
        }
        row = next;
    }
    Ok(row[(k - 1) as usize].clone())
}

/// Exact harmonic number H_n.
pub fn harmonic(n: u64) -> BigRational {
    let mut acc = BigRational::zero();
    for j in 1..=n {
        acc += BigRational::new(BigInt::one(), BigInt::from(j));
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn b1_values() {
        assert_eq!(bernoulli_polynomial(1, &rat(1, 3)).unwrap(), rat(-1, 6));
        assert_eq!(bernoulli_polynomial(1, &rat(1, 1)).unwrap(), rat(1, 2));
    }

    #[test]
    fn b2_at_zero_against_recurrence_oracle() {
        // oracle: B_k(0) = B_k where sum_{j<k} C(k,j) B_j = 0 pins B_2 = 1/6
        let oracle = {
            let b0 = rat(1, 1);
            let b1 = rat(-1, 2);
            // C(3,0) B0 + C(3,1) B1 + C(3,2) B2 = 0
            -(b0 + rat(3, 1) * b1) / rat(3, 1)
        };
        assert_eq!(oracle, rat(1, 6));
        assert_eq!(bernoulli_polynomial(2, &rat(0, 1)).unwrap(), oracle);
    }

    #[test]
    fn bernoulli_cap_enforced() {
        assert!(bernoulli_polynomial(61, &rat(0, 1)).is_err());
        assert!(bernoulli_polynomial(60, &rat(0, 1)).is_ok());
    }

    #[test]
    fn raabe_multiplication_at_k1() {
        // sum_{d=0}^{b-1} B_1((x+d)/b) = B_1(x) for all b <= 20
        let x = rat(3, 7);
        for b in 1..=20i64 {
            let mut acc = BigRational::zero();
            for d in 0..b {
                let arg = (&x + rat(d, 1)) / rat(b, 1);
                acc += bernoulli_polynomial(1, &arg).unwrap();
            }
            assert_eq!(acc, bernoulli_polynomial(1, &x).unwrap(), "b={}", b);
        }
    }

    #[test]
    fn stirling_base_and_small() {
        assert_eq!(stirling_first_unsigned(1, 2).unwrap(), BigInt::from(1)); // s(2,2)
        assert_eq!(stirling_first_unsigned(3, 2).unwrap(), BigInt::from(11)); // s(4,2)
    }

    #[test]
    fn stirling_matches_rising_factorial_expansion() {
        // oracle: x(x+1)(x+2)(x+3) expanded by brute force
        // coefficients of x^k are s(4, k)
        let mut poly = vec![BigInt::zero(), BigInt::one()]; // x
        for a in 1..=3i64 {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] += c * BigInt::from(a);
            }
            poly = next;
        }
        assert_eq!(poly[2], BigInt::from(11));
        for k in 1..=4u64 {
            assert_eq!(stirling_first_unsigned(3, k).unwrap(), poly[k as usize], "k={}", k);
        }
    }

    #[test]
    fn stirling_second_column_is_scaled_harmonic() {
        for n in 1..=50u64 {
            let lhs = stirling_first_unsigned(n, 2).unwrap();
            let rhs = BigRational::from_integer(factorial(n)) * harmonic(n);
            assert_eq!(BigRational::from_integer(lhs), rhs, "n={}", n);
        }
    }

    #[test]
    fn stirling_range_checks() {
        assert!(stirling_first_unsigned(0, 1).is_err());
        assert!(stirling_first_unsigned(3, 5).is_err());
        assert!(stirling_first_unsigned(10_001, 2).is_err());
    }
}
