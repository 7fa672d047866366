#![no_main]

use libfuzzer_sys::fuzz_target;
use octogauss::s7::topology::SimplicialComplex;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = SimplicialComplex::parse(text) {
        let _ = c.euler_characteristic();
        let again = SimplicialComplex::parse(&c.to_text()).expect("listing parses");
        assert_eq!(again, c);
    }
});
