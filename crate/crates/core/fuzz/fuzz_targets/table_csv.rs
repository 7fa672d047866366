#![no_main]

use libfuzzer_sys::fuzz_target;
use octogauss::algebra::table::{table_from_csv, table_to_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = table_from_csv(text) {
        assert_eq!(table_from_csv(&table_to_csv(&t)).expect("round trip"), t);
    }
});
