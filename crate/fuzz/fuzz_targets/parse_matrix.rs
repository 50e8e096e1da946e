#![no_main]

use libfuzzer_sys::fuzz_target;
use pic2ha::text::{parse_matrix, write_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(s) {
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }
});
