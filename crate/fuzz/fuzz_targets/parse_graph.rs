#![no_main]

use libfuzzer_sys::fuzz_target;
use lpa_core::parse_graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_graph(text) {
        // Anything accepted must survive a trip through its own document.
        let again = parse_graph(&g.to_json()).expect("serialized graph reparses");
        assert_eq!(g, again);
    }
});
