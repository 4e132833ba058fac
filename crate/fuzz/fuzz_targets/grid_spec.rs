#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else {
        return;
    };
    let coords: Vec<String> = ["t", "x1", "y1"].iter().map(|s| s.to_string()).collect();
    if let Ok(grid) = leeform::dsl::parse_grid(&coords, spec, &[0]) {
        assert!(grid.len() <= leeform::dsl::MAX_GRID_POINTS);
    }
});
