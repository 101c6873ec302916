#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((m, c)) = prolongation::io::parse_cocycle(s) {
            if c.degree() < 3 {
                let _ = m.is_cocycle(&c);
            }
        }
    }
});
