//! Replays the fuzz corpus seeds: `ok-*` must decode and roundtrip, `bad-*` must be rejected.

use std::fs;
use std::path::PathBuf;

use twisted_dp::json::{
    decode_aelem, decode_dp_elem, decode_higgs, decode_ring_elem, encode_aelem, encode_dp_elem, encode_higgs,
    encode_ring_elem, parse,
};
use twisted_dp::ring::RingDescriptor;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

macro_rules! replay {
    ($name:ident, $target:literal, $decode:ident, $encode:ident) => {
        #[test]
        fn $name() {
            for (file, text) in seeds($target) {
                let got = parse(&text).and_then(|v| $decode(&v));
                if file.starts_with("ok-") {
                    let x = got.unwrap_or_else(|e| panic!("{file}: {e}"));
                    assert_eq!($decode(&$encode(&x)).unwrap(), x, "{file}");
                } else {
                    assert!(got.is_err(), "{file} should be rejected");
                }
            }
        }
    };
}

replay!(ring_elem_seeds, "decode_ring_elem", decode_ring_elem, encode_ring_elem);
replay!(aelem_seeds, "decode_aelem", decode_aelem, encode_aelem);
replay!(dp_elem_seeds, "decode_dp_elem", decode_dp_elem, encode_dp_elem);
replay!(higgs_seeds, "decode_higgs", decode_higgs, encode_higgs);

#[test]
fn descriptor_seeds() {
    for (file, text) in seeds("parse_descriptor") {
        let got = text.parse::<RingDescriptor>();
        if file.starts_with("ok-") {
            let d = got.unwrap_or_else(|e| panic!("{file}: {e}"));
            assert_eq!(d.to_string().parse::<RingDescriptor>().unwrap(), d);
        } else {
            assert!(got.is_err(), "{file} should be rejected");
        }
    }
}
