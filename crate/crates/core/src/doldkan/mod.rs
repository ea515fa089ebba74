//! Chain complexes of free modules over `ℤ`, `ℤ/m` and `𝔽_p`, simplicial
//! abelian groups, normalized chains, the inverse `Γ` and homology.

mod complex;
mod format;
mod group;
mod simplicial;

pub use complex::{homology, ChainComplex, DegreeHomology, Ring};
pub use format::{entries_to_json, ChainComplexDoc, Indexing, IntEntry};
pub use group::FGAbGroup;

pub(crate) use format::{int_vec, int_vecs, matrix_from_json, matrix_to_json};
pub use simplicial::{dold_kan_gamma, normalized_chains, simplicial_group_kan_fill, SimplicialAbGroup};
