#![no_main]

use libfuzzer_sys::fuzz_target;
use liecat::Field;

// Scalar literals: no panics, and accepted values reprint canonically.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for field in [Field::Rational, Field::quad_ext(2).unwrap()] {
        if let Ok(s) = liecat::text::parse_scalar(text, field) {
            let canonical = s.canonical_text();
            let back = liecat::text::parse_scalar(&canonical, field)
                .expect("canonical output must reparse");
            assert_eq!(back, s, "round trip changed the scalar");
        }
    }
});
