#![no_main]

use libfuzzer_sys::fuzz_target;
use liecat::hall::BasisTable;
use liecat::Field;
use std::sync::{Arc, OnceLock};

fn table() -> &'static Arc<BasisTable> {
    static TABLE: OnceLock<Arc<BasisTable>> = OnceLock::new();
    TABLE.get_or_init(|| BasisTable::generate(2, 5, Field::Rational, None).unwrap())
}

// Generator-assignment maps: no panics, and accepted maps round-trip.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let ctx = table();
    if let Ok(images) = liecat::text::parse_endo_map(text, ctx) {
        let canonical = liecat::text::format_endo_map(&images, ctx);
        let back = liecat::text::parse_endo_map(&canonical, ctx)
            .expect("canonical output must reparse");
        assert_eq!(back, images, "round trip changed the map");
    }
});
