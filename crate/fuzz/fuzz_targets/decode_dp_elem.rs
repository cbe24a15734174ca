#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_dp::json::{decode_dp_elem, encode_dp_elem, parse};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse(s) else { return };
    if let Ok(x) = decode_dp_elem(&v) {
        let again = decode_dp_elem(&encode_dp_elem(&x)).expect("encoded form decodes");
        assert_eq!(again, x);
    }
});
