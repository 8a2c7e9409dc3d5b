//! Cross-module flows and property tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qzeta::precision::pow10;
use qzeta::{
    gamma0, parse_q_literal, parse_rational, rational_string, AffineForm, PrecisionBudget,
    QPoint, QValue,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Rendering an accepted rational re-parses to the same value.
    #[test]
    fn rational_roundtrip(n in -100_000i64..100_000, d in 1i64..100_000) {
        let r = rat(n, d);
        let s = rational_string(&r);
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }

    /// Decimal q literals keep both value and stated precision through
    /// their display form.
    #[test]
    fn q_literal_roundtrip(int_part in 1u32..100, frac in 0u64..1_000_000, frac_len in 1usize..7) {
        let frac = frac % 10u64.pow(frac_len as u32);
        let s = format!("{}.{:0width$}", int_part, frac, width = frac_len);
        let q = parse_q_literal(&s).unwrap();
        let q2 = parse_q_literal(&q.to_string()).unwrap();
        prop_assert_eq!(q, q2);
    }

    /// Parsers never panic on arbitrary input.
    #[test]
    fn parsers_total(s in "\\PC{0,40}") {
        let _ = qzeta::parse_rational(&s);
        let _ = qzeta::parse_q_literal(&s);
        let _ = qzeta::parse_complex(&s);
        let _ = qzeta::parse_minpoly(&s);
        let _ = qzeta::parse_coefficient_bound(&s);
    }
}

/// The whole analytic chain at modest precision: gamma_0 values feed the
/// reflection check; with the corrected affine term and theta series the
/// identity closes; the kappa candidate matches through the exact
/// cyclotomic route.
#[test]
fn reflection_chain_end_to_end() {
    let budget = PrecisionBudget::new(35).unwrap();
    let p = budget.work_bits();
    let q = rat(5, 2);
    let qv = QValue::Rational(q.clone());
    let tol = pow10(-25, astro_float::RoundingMode::Down);

    let rep = qzeta::verify_t2(&qv, 1, 5, &budget, &tol, AffineForm::Corrected, true).unwrap();
    assert_eq!(rep.verdict, qzeta::Verdict::Pass);

    let k = qzeta::kappa(&q, 1, 5, &budget, AffineForm::Corrected, true).unwrap();
    let emb = k.exact_candidate.embed_numeric(&budget).unwrap();
    assert!(k.numeric.distance_bound(&emb, p).cmp(&tol).unwrap() <= 0);

    let orbits = qzeta::galois_orbit_check(&q, 5).unwrap();
    assert!(orbits.iter().all(|r| r.verdict == qzeta::Verdict::Pass));
}

/// gamma_0 at a decimal q literal carries the stated-precision
/// uncertainty through to the result bound.
#[test]
fn decimal_q_uncertainty_propagates() {
    let budget = PrecisionBudget::new(12).unwrap();
    // 16 fractional digits: uncertainty 5e-17
    let q = parse_q_literal("2.5000000000000000").unwrap();
    let pt = QPoint::new(q, rat(1, 2)).unwrap();
    let v = gamma0(&pt, &budget).unwrap();
    // the bound must dominate the stated uncertainty (amplified a little
    // by the series) yet certify 12 digits
    let lo = pow10(-17, astro_float::RoundingMode::Down);
    let hi = pow10(-13, astro_float::RoundingMode::Down);
    assert!(v.bound().cmp(&lo).unwrap() > 0, "bound too small: {}", qzeta::bound_string(v.bound()));
    assert!(v.bound().cmp(&hi).unwrap() < 0, "bound too large: {}", qzeta::bound_string(v.bound()));
    // against the exact-rational evaluation of the same point
    let exact_pt = QPoint::from_rationals(rat(5, 2), rat(1, 2)).unwrap();
    let w = gamma0(&exact_pt, &budget).unwrap();
    let p = budget.work_bits();
    assert!(v.distance_bound(&w, p).cmp(&pow10(-12, astro_float::RoundingMode::Down)).unwrap() <= 0);
}

/// Certification refuses when a budget demands more digits than the
/// decimal-q uncertainty can support.
#[test]
fn decimal_q_cannot_certify_beyond_its_precision() {
    let budget = PrecisionBudget::new(30).unwrap();
    let q = parse_q_literal("2.50").unwrap();
    let pt = QPoint::new(q, rat(1, 2)).unwrap();
    assert!(matches!(
        gamma0(&pt, &budget),
        Err(qzeta::Error::InsufficientPrecision(_))
    ));
}
