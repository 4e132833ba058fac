#![no_main]

use leeform::dsl::{parse_form, print_form, FormSource};
use libfuzzer_sys::fuzz_target;

// first line: comma-separated coordinates, rest: the expression
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (coords, body) = text.split_once('\n').unwrap_or(("x,y,z", text));
    let src = FormSource {
        coords: coords.split(',').map(|s| s.trim().to_string()).collect(),
        body: body.to_string(),
    };
    if let Ok(form) = parse_form(&src) {
        let printed = print_form(&form);
        let again = parse_form(&FormSource {
            coords: src.coords.clone(),
            body: printed.clone(),
        })
        .expect("printed form parses");
        if !form.is_zero() {
            assert_eq!(again, form, "{printed}");
        }
        assert_eq!(print_form(&again), printed);
    }
});
