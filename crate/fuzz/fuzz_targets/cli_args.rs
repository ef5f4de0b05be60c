#![no_main]

use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated so the corpus stays readable.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("ellpair").chain(text.split('\0'));
    let _ = ellpair_cli::parse_args(args);
});
