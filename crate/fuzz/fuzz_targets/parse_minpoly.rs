#![no_main]

use libfuzzer_sys::fuzz_target;
use num_traits::{Signed, Zero};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else { return };
    // parsing must never panic; accepted polynomials are primitive with a
    // positive leading coefficient and degree >= 1
    if let Ok(coeffs) = qzeta::parse_minpoly(input) {
        assert!(coeffs.len() >= 2);
        let lead = coeffs.last().unwrap();
        assert!(lead.is_positive(), "leading coefficient must be positive");
        let mut g = num_bigint::BigInt::zero();
        for c in &coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        assert_eq!(g, num_bigint::BigInt::from(1), "coefficients must be primitive");
    }
});
