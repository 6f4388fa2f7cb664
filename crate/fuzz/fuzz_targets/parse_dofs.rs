#![no_main]

use bfs_core::field::parse_dofs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(dofs) = parse_dofs(text) {
            assert_eq!(dofs.ncols(), 4);
            assert!(dofs.iter().all(|v| v.is_finite()));
        }
    }
});
