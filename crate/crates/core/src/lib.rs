//! Root posets of Dynkin diagrams: generation, antichains, level tables,
//! interval models, chain-cover certificates and symmetry.

pub mod antichain;
pub mod dynkin;
pub mod error;
pub mod export;
pub mod lemma;
pub mod levels;
pub mod models;
pub mod poset;
pub mod report;
pub mod root_poset;
pub mod symmetry;

pub use antichain::{
    dominated_by, enumerate_antichains, is_antichain, maximal_antichains_of_size, size_distribution,
    verify_main_theorem, width, Antichain, SizeDistribution, TheoremReport,
};
pub use dynkin::{
    cartan_matrix, coxeter_number, default_diagrams, generate_positive_roots, height, DynkinDiagram,
    Family, Root,
};
pub use error::{Error, Result};
pub use export::{export_dot, export_json, export_tikz, import_json, PosetDocument};
pub use lemma::{check_witness, find_witness, lemma_conclusion, min_chain_cover, ChainCover, LemmaWitness};
pub use levels::{level_decomposition, LevelDecomposition};
pub use poset::Poset;
pub use report::{full_report, Section, VerificationReport};
pub use root_poset::{build_poset, CoverEdge, LevelProfile, RootPoset};
pub use symmetry::{automorphism_group, induced_antichain_action, AutomorphismGroup};
