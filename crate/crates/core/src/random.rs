//! Seeded random multigraphs for property campaigns.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_VERTICES_CAP: usize = 16;
pub const MAX_EDGES_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub seed: u64,
    pub count: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl RandomConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_vertices == 0 || self.max_vertices > MAX_VERTICES_CAP {
            return Err(Error::Config(format!(
                "max vertices must be between 1 and {MAX_VERTICES_CAP}, got {}",
                self.max_vertices
            )));
        }
        if self.max_edges > MAX_EDGES_CAP {
            return Err(Error::Config(format!(
                "max edges must be at most {MAX_EDGES_CAP}, got {}",
                self.max_edges
            )));
        }
        Ok(())
    }
}

/// One graph: vertex count uniform in `1..=max_vertices`, edge count uniform
/// in `0..=max_edges`, endpoints uniform with replacement.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (1..=m)
        .map(|i| {
            let s = rng.gen_range(0..n);
            let d = rng.gen_range(0..n);
            (format!("e{i}"), vertices[s].clone(), vertices[d].clone())
        })
        .collect();
    Graph::new(&vertices, &edges).expect("generated ids are valid and distinct")
}

pub fn random_graphs(cfg: &RandomConfig) -> Result<Vec<Graph>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok((0..cfg.count)
        .map(|_| random_graph(&mut rng, cfg.max_vertices, cfg.max_edges))
        .collect())
}
