#![no_main]

use libfuzzer_sys::fuzz_target;
use lpa_core::engine::{Algebra, Rationals};
use lpa_core::fixtures;

// First byte picks the graph, the rest is element text.
fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let (_, doc) = fixtures::ALL[pick as usize % fixtures::ALL.len()];
    let alg = Algebra::new(lpa_core::parse_graph(doc).expect("fixture"), Rationals);
    if let Ok(x) = alg.parse(text) {
        let rendered = x.render();
        let y = alg.parse(&rendered).expect("rendered element reparses");
        assert_eq!(x, y);
        assert_eq!(y.render(), rendered);
    }
});
