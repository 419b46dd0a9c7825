#![no_main]

use libfuzzer_sys::fuzz_target;
use polyannulus::io::{polytope_to_json, read_polytope_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(c) = read_polytope_json(text) else { return };
    let again = read_polytope_json(&polytope_to_json(&c)).expect("written polytope parses");
    assert_eq!(again.vertices(), c.vertices());
    assert_eq!(again.facets(), c.facets());
});
