#![no_main]

use libfuzzer_sys::fuzz_target;
use polyannulus::io::{read_points_csv, write_points_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cloud) = read_points_csv(text, None) else { return };
    let again = read_points_csv(&write_points_csv(&cloud), Some(cloud.dim())).expect("written CSV parses");
    assert_eq!(again, cloud);
});
