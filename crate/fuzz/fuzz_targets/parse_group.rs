#![no_main]

use libfuzzer_sys::fuzz_target;

// functor and group arguments of the command line
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = pic2ha_cli::parse_group(s) {
        let _ = g.canonical();
    }
    let _ = s.parse::<pic2ha_cli::FunctorSpec>();
});
