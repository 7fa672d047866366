#![no_main]

use libfuzzer_sys::fuzz_target;
use octogauss::geometry::catalog::ChartId;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(id) = text.parse::<ChartId>() {
        let again: ChartId = id.to_string().parse().expect("display output parses");
        assert_eq!(again, id);
        let _ = id.build();
    }
});
