#![no_main]

use libfuzzer_sys::fuzz_target;
use pic2ha::text::parse_complex;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_complex(s) {
        let _ = c.check();
    }
});
