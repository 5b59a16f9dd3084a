#![no_main]
use libfuzzer_sys::fuzz_target;
use orbit_atlas::io::parse_tangent_json;

fuzz_target!(|data: &[u8]| {
    let _ = parse_tangent_json(data);
});
