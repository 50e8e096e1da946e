#![no_main]

use libfuzzer_sys::fuzz_target;
use pic2ha::text::parse_extension;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_extension(s);
});
