#![no_main]

use libfuzzer_sys::fuzz_target;
use octogauss::report::{ConfigMap, ScenarioConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(map) = ConfigMap::parse(text) {
        let _ = map.steps();
        let _ = ScenarioConfig::from_map(&map);
    }
});
