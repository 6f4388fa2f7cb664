#![no_main]

use bfs_core::functions::parse_poly;
use bfs_core::Domain;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_poly(text) {
        let _ = p.eval(0.5, -0.25);
        let _ = p.derivative(1, 1);
        let _ = p.exact_integrals(&p, &Domain::symmetric_unit());
    }
});
