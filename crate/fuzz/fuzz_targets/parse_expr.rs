#![no_main]

use libfuzzer_sys::fuzz_target;
use liecat::hall::BasisTable;
use liecat::Field;
use std::sync::{Arc, OnceLock};

fn tables() -> &'static [Arc<BasisTable>; 2] {
    static TABLES: OnceLock<[Arc<BasisTable>; 2]> = OnceLock::new();
    TABLES.get_or_init(|| {
        [
            BasisTable::generate(2, 5, Field::Rational, None).unwrap(),
            BasisTable::generate(3, 4, Field::quad_ext(2).unwrap(), None).unwrap(),
        ]
    })
}

// The expression parser must never panic on untrusted text, and anything it
// accepts must round-trip through the canonical printer.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for table in tables() {
        if let Ok(poly) = liecat::text::parse_poly(text, table) {
            let canonical = poly.canonical_text();
            let back = liecat::text::parse_poly(&canonical, table)
                .expect("canonical output must reparse");
            assert_eq!(back, poly, "round trip changed the polynomial");
        }
    }
});
