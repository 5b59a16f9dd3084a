#![no_main]
use libfuzzer_sys::fuzz_target;
use orbit_atlas::exactla::ExtVector;

fuzz_target!(|data: &[u8]| {
    let _ = serde_json::from_slice::<ExtVector>(data);
});
