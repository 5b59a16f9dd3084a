#![no_main]
use libfuzzer_sys::fuzz_target;
use orbit_atlas::io::parse_hasse_json;

fuzz_target!(|data: &[u8]| {
    let _ = parse_hasse_json(data);
});
