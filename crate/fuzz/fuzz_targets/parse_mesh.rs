#![no_main]

use bfs_core::mesh::{parse_mesh, write_mesh};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mesh) = parse_mesh(text) {
        let mut out = Vec::new();
        write_mesh(&mut out, &mesh).unwrap();
        let again = parse_mesh(std::str::from_utf8(&out).unwrap()).expect("written mesh parses");
        assert_eq!(mesh.nodes(), again.nodes());
        assert_eq!(mesh.elements(), again.elements());
        let _ = mesh.edges().len();
        let _ = mesh.refine();
    }
});
