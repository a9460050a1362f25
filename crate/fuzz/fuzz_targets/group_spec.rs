#![no_main]

use libfuzzer_sys::fuzz_target;
use mckay::group::spec::parse_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(mut spec) = parse_spec(text) else { return };
    // closure is exhaustive; keep each run short
    spec.bound = spec.bound.min(256);
    if let Ok(g) = spec.build() {
        let _ = g.conjugacy_classes();
        let _ = mckay::age::age_census(&g);
    }
});
