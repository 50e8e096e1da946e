#![no_main]

use libfuzzer_sys::fuzz_target;
use pic2ha::text::parse_resolution;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_resolution(s) {
        let text = r.to_text();
        assert_eq!(parse_resolution(&text).unwrap().to_text(), text);
        if let Ok(c) = r.augmented() {
            let _ = c.check();
        }
    }
});
