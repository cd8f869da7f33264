//! Benchmark inputs shared by the criterion targets in `benches/`.

use lpgst_core::{laplacian, Graph, RealMatrix};

/// Circulant-like test graph: `i ~ i+1` and `i ~ i+3` modulo `n`.
pub fn chorded_cycle(n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("n >= 1");
    for i in 0..n {
        for step in [1, 3] {
            let j = (i + step) % n;
            if i != j && !g.has_edge(i + 1, j + 1) {
                g.add_edge(i + 1, j + 1).expect("fresh edge");
            }
        }
    }
    g
}

pub fn laplacian_matrix(g: &Graph) -> RealMatrix {
    RealMatrix::from(&laplacian(g))
}
