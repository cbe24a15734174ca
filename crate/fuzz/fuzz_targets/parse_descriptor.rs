#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_dp::ring::RingDescriptor;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = s.parse::<RingDescriptor>() {
        let again: RingDescriptor = d.to_string().parse().expect("display form parses");
        assert_eq!(again, d);
    }
});
