//! Small named graphs used throughout the tests and documentation.

use crate::graph::{parse_graph, Graph};

pub const LOOP: &str = include_str!("../fixtures/loop.json");
pub const LINE3: &str = include_str!("../fixtures/line3.json");
pub const TOEPLITZ: &str = include_str!("../fixtures/toeplitz.json");
pub const R2: &str = include_str!("../fixtures/r2.json");
pub const EXT2: &str = include_str!("../fixtures/ext2.json");
pub const CWE: &str = include_str!("../fixtures/cwe.json");
pub const LOOP_LOOP: &str = include_str!("../fixtures/loop_loop.json");
pub const LOOP_LINE3: &str = include_str!("../fixtures/loop_line3.json");
pub const EXT2_EXT2: &str = include_str!("../fixtures/ext2_ext2.json");

/// Every fixture as `(name, document)`.
pub const ALL: &[(&str, &str)] = &[
    ("loop", LOOP),
    ("line3", LINE3),
    ("toeplitz", TOEPLITZ),
    ("r2", R2),
    ("ext2", EXT2),
    ("cwe", CWE),
    ("loop_loop", LOOP_LOOP),
    ("loop_line3", LOOP_LINE3),
    ("ext2_ext2", EXT2_EXT2),
];

fn load(doc: &str) -> Graph {
    parse_graph(doc).expect("fixture documents are valid")
}

/// One vertex `v` with a loop `c`.
pub fn loop_graph() -> Graph {
    load(LOOP)
}

/// `v1 → v2 → v3`.
pub fn line3() -> Graph {
    load(LINE3)
}

/// Loop `e` at `u`, edge `f: u → v`, `v` a sink.
pub fn toeplitz() -> Graph {
    load(TOEPLITZ)
}

/// Two loops at one vertex.
pub fn r2() -> Graph {
    load(R2)
}

/// `e: u → u`, `f: u → w`, `g: w → u`.
pub fn ext2() -> Graph {
    load(EXT2)
}

/// `e: w → w`, `g: w → z`, `h: z → z`.
pub fn cwe() -> Graph {
    load(CWE)
}

pub fn loop_loop() -> Graph {
    load(LOOP_LOOP)
}

pub fn loop_line3() -> Graph {
    load(LOOP_LINE3)
}

pub fn ext2_ext2() -> Graph {
    load(EXT2_EXT2)
}
