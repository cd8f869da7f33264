//! Laplacian pair-state transfer on graphs, with an exact decision procedure
//! for mirror edges on paths.
//!
//! The numeric side ([`spectra`], [`pair_states`]) builds eigenprojectors,
//! the transition matrix `U(t) = exp(-itL)` and pair fidelities. The exact
//! side ([`cyclotomic`], [`lattice`], [`decision`]) works in `ℤ[x]/Φ_{2n}`
//! and decides transfer by a parity test on the integer relation lattice.

pub mod cyclotomic;
pub mod decision;
pub mod graph;
pub mod lattice;
pub mod pair_states;
pub mod spectra;

pub use num_bigint::BigInt;

pub use decision::{
    classify_path, cross_verify, decide_path_lpgst, decide_path_lpgst_with_scope, decide_path_pairs,
    verify_lemma_identity, verify_witness, witness_relation, Certificate, CrossVerification, DecisionError, PathClass,
    Provenance, Rule, Verdict, Witness, WitnessCase, WitnessCheck,
};
pub use graph::{laplacian, make_path, parse_graph, Graph, GraphError, LaplacianMatrix, VertexPair};
pub use lattice::{RelationLattice, RelationScope};
pub use pair_states::{
    fidelity_sweep, pair_fidelity, path_support_partition, strong_cospectrality, support, Cospectrality, FidelityTrace,
    PairError, SupportPartition,
};
pub use spectra::{
    eigendecompose, laplacian_spectrum, path_spectrum, transition_matrix, EigenOptions, RealMatrix, SpectraError,
    Spectrum, TransitionMatrix,
};
