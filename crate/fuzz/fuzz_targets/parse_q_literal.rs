#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else { return };
    if let Ok(q) = qzeta::parse_q_literal(input) {
        // the display form re-parses to the same literal (same exact
        // value and, for decimals, the same stated precision)
        let rendered = q.to_string();
        let back = qzeta::parse_q_literal(&rendered).expect("display form must re-parse");
        match (&q, &back) {
            (
                qzeta::QValue::Decimal { value: v1, frac_digits: f1, .. },
                qzeta::QValue::Decimal { value: v2, frac_digits: f2, .. },
            ) => {
                assert_eq!(v1, v2, "decimal value through {rendered}");
                assert_eq!(f1, f2, "stated precision through {rendered}");
            }
            (qzeta::QValue::Rational(r1), qzeta::QValue::Rational(r2)) => {
                assert_eq!(r1, r2, "rational through {rendered}");
            }
            _ => panic!("literal kind changed through {rendered}"),
        }
    }
});
