#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_dp::json::{decode_aelem, encode_aelem, parse};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse(s) else { return };
    if let Ok(x) = decode_aelem(&v) {
        let again = decode_aelem(&encode_aelem(&x)).expect("encoded form decodes");
        assert_eq!(again, x);
    }
});
