#![no_main]

use libfuzzer_sys::fuzz_target;
use mckay::arith::MotiveExpr;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<MotiveExpr>() {
        let back: MotiveExpr = m.to_string().parse().expect("canonical text reparses");
        assert_eq!(back, m);
    }
});
