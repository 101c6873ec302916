#![no_main]

use libfuzzer_sys::fuzz_target;
use prolongation::fixtures;

// θ over G = Z/2 acting on E₀ = D₄.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = prolongation::io::parse_theta(s, &fixtures::dihedral(4), &fixtures::cyclic(2));
    }
});
