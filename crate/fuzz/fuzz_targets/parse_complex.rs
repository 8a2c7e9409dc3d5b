#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else { return };
    // parsing must never panic; accepted values rebuild from parts
    if let Ok((re, im)) = qzeta::parse_complex(input) {
        let rendered = if num_traits::Zero::is_zero(&im) {
            qzeta::rational_string(&re)
        } else if num_traits::Signed::is_negative(&im) {
            format!("{}-{}i", qzeta::rational_string(&re), qzeta::rational_string(&-im.clone()))
        } else {
            format!("{}+{}i", qzeta::rational_string(&re), qzeta::rational_string(&im))
        };
        let (re2, im2) = qzeta::parse_complex(&rendered).expect("canonical form must re-parse");
        assert_eq!((re, im), (re2, im2), "round trip through {rendered}");
    }
});
