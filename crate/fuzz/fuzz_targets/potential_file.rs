#![no_main]

use libfuzzer_sys::fuzz_target;

// The potential-spec file parser must never panic on arbitrary bytes, and
// whatever it accepts must satisfy the type invariants (so evaluation and
// confinement probes are safe to call).
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = polybound::PotentialSpecFile::parse(text) {
        assert!(spec.validate().is_ok());
        let _ = spec.is_confining();
        let _ = spec.eval(1.0);
    }
});
