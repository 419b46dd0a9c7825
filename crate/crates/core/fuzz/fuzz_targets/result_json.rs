#![no_main]

use libfuzzer_sys::fuzz_target;
use polyannulus::io::ResultRecord;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(record) = ResultRecord::from_json(text) else { return };
    assert_eq!(ResultRecord::from_json(&record.to_json()).expect("written result parses"), record);
});
