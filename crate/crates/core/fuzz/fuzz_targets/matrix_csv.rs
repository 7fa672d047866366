#![no_main]

use libfuzzer_sys::fuzz_target;
use octogauss::algebra::matrix::Matrix8;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = Matrix8::from_csv(text) {
        let again = Matrix8::from_csv(&m.to_csv()).expect("round trip");
        assert_eq!(again.to_csv(), m.to_csv());
    }
});
