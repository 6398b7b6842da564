//! Shared fixtures for the pipeline benchmarks.

use radonpoly::{
    nodes_u_zeros_even, synthesize_grid, NodeSet, ProjectionGrid, RidgeRepresentation,
};

/// A degree-`n` polynomial with its exact projection grid over the even
/// u-zeros scheme.
pub fn fixture(n: usize) -> (RidgeRepresentation, NodeSet, ProjectionGrid) {
    assert!(n.is_multiple_of(2));
    let nodes = nodes_u_zeros_even(n / 2, 0.95).expect("valid t0");
    let rep = RidgeRepresentation::random(n, 2024);
    let grid = synthesize_grid(&rep, &nodes).expect("consistent geometry");
    (rep, nodes, grid)
}
