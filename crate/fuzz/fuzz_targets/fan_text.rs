#![no_main]

use libfuzzer_sys::fuzz_target;
use mckay::toric::SimplicialFan;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(fan) = text.parse::<SimplicialFan>() {
        let back: SimplicialFan = fan.to_string().parse().expect("printed fan reparses");
        assert_eq!(back, fan);
        let _ = fan.is_smooth();
    }
});
