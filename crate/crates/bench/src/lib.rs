//! Shared inputs for the benchmarks.

use hypersym::{fixtures, Hypergraph, NCPoly};
use hypersym::nc::Generator;

/// Fixtures ordered by `|V|! · |E|!`, the size of the brute-force search.
pub fn by_search_size() -> Vec<(&'static str, Hypergraph)> {
    let size = |h: &Hypergraph| -> u128 { (1..=h.n_vertices() as u128).product::<u128>() * (1..=h.n_edges() as u128).product::<u128>() };
    let mut all = fixtures::all();
    all.sort_by_key(|(_, h)| size(h));
    all
}

/// `[u_ii, u_jj]` in the vertex unitary.
pub fn diagonal_commutator(i: u32, j: u32) -> NCPoly {
    NCPoly::commutator(&NCPoly::gen(Generator::UV(i, i)), &NCPoly::gen(Generator::UV(j, j)))
}
