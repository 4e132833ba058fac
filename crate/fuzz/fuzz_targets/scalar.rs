#![no_main]

use leeform::dsl::{parse_scalar, print_scalar};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let coords: Vec<String> = ["t", "x", "y"].iter().map(|s| s.to_string()).collect();
    if let Ok(s) = parse_scalar(&coords, text) {
        let printed = print_scalar(&s, &coords);
        assert_eq!(parse_scalar(&coords, &printed).as_ref(), Ok(&s), "{printed}");
    }
});
