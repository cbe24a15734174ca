#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_dp::json::{decode_higgs, encode_higgs, parse};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse(s) else { return };
    if let Ok(x) = decode_higgs(&v) {
        let again = decode_higgs(&encode_higgs(&x)).expect("encoded form decodes");
        assert_eq!(again, x);
    }
});
