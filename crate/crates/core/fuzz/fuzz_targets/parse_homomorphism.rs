#![no_main]

use std::collections::BTreeMap;

use libfuzzer_sys::fuzz_target;
use prolongation::fixtures;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let groups: BTreeMap<String, _> = fixtures::all().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    let _ = prolongation::io::parse_homomorphism(s, &groups);
});
