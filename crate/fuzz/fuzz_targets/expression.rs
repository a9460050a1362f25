#![no_main]

use libfuzzer_sys::fuzz_target;
use mckay::expr;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(e) = expr::parse(text) else { return };
    // printing and reparsing must give the same tree
    let again = expr::parse(&e.to_string()).expect("printed expression reparses");
    assert_eq!(again, e);
    let _ = expr::eval_cyclotomic(&e, 12, "z");
    let _ = expr::eval_motive(&e);
});
