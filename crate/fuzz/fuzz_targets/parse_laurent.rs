#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;
use tadic_core::arith::FieldCtx;
use tadic_core::parse::parse_laurent;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for (p, a) in [(2, 1), (3, 2), (7, 1)] {
        let ctx = Arc::new(FieldCtx::new(p, a).unwrap());
        if let Ok(f) = parse_laurent(text, &ctx, None) {
            assert!(!f.is_empty());
            assert!(f.terms().values().all(|c| *c != ctx.zero()));
        }
    }
});
