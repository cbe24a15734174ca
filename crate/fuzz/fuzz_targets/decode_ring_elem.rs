#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_dp::json::{decode_ring_elem, encode_ring_elem, parse};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse(s) else { return };
    if let Ok(x) = decode_ring_elem(&v) {
        let again = decode_ring_elem(&encode_ring_elem(&x)).expect("encoded form decodes");
        assert_eq!(again, x);
    }
});
