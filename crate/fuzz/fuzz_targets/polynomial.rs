#![no_main]

use libfuzzer_sys::fuzz_target;
use mckay::invariants::parse_polynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polynomial(text, 4) {
        let _ = p.to_string();
    }
});
