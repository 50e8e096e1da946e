#![no_main]

use libfuzzer_sys::fuzz_target;
use pic2ha::text::{parse_pic2, write_pic2};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_pic2(s) {
        assert_eq!(parse_pic2(&write_pic2(&p)).unwrap(), p);
        let _ = (p.pi0().canonical(), p.pi1().canonical());
    }
});
