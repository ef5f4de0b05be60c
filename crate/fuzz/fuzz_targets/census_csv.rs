#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = ellpair_core::census::parse_csv(text) {
        for r in rows {
            assert_eq!(r.d % 8, 3);
            assert!(r.h > 0);
        }
    }
});
