//! Graphs, graph diagnostics and the codes built on them.

pub mod codes;
pub mod decode;
pub mod expansion;
pub mod girth;
pub mod library;
pub mod spectral;
pub mod types;

pub use codes::{edge_code, unbalanced_expander_code, zemor_code, ConstraintCode, LocalConstraint, Side};
pub use decode::{check_trace, lemma2_epsilon, local_iterative_repair, zemor_decode, DecodeTrace, TraceCheck, ZemorRound};
pub use expansion::{expander_distance_bound, expansion_check, mixing_check, tanner_bound, DistanceBound, ExpansionCertificate, MixingReport};
pub use girth::{bipartite_girth, girth};
pub use library::{complete_bipartite, even_cycle, heawood, high_girth_search, named, projective_plane, GirthSearch};
pub use spectral::{lambda2, SpectralData};
pub use types::{double_cover, BipartiteGraph, Graph, GraphFile};
