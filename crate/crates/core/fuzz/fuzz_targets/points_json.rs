#![no_main]

use libfuzzer_sys::fuzz_target;
use polyannulus::io::{read_points_json, write_points_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cloud) = read_points_json(text) else { return };
    assert_eq!(read_points_json(&write_points_json(&cloud)).expect("written JSON parses"), cloud);
});
