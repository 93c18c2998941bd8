#![no_main]

use libfuzzer_sys::fuzz_target;

// The cache decoder must never panic, and accepted documents must contain
// only valid numeric records.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = polybound::pnumbers::parse_cache_json(text) {
        for (rec, abs_tol) in records {
            assert!(rec.state.validate().is_ok());
            assert!(rec.q.is_finite() && rec.p.is_finite() && abs_tol.is_finite());
            assert!(rec.epsilon.is_some());
        }
    }
});
