#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else { return };
    // must never panic; on success the canonical rendering re-parses to
    // the same value
    if let Ok(r) = qzeta::parse_rational(input) {
        let rendered = qzeta::rational_string(&r);
        let back = qzeta::parse_rational(&rendered).expect("canonical form must re-parse");
        assert_eq!(back, r, "round trip through {rendered}");
    }
});
