//! Horn filling, homotopy categories, mapping spaces and homotopy groups of
//! finite simplicial sets.

mod ho;
mod homotopy;
mod homspace;
mod horns;

pub(crate) use ho::UnionFind;
pub use ho::{equivalences, homotopy_category, homotopy_classes, max_kan_subset, HomotopyCategory, HomotopyConvention};
pub use homotopy::{
    components, homotopy_group, homotopy_group_with_budget, GroupPresentation, HomotopyInvariant, Recognized, DEFAULT_BUDGET,
};
pub use homspace::{hom_space, right_cone, HomSide};
pub use horns::{
    classify, is_kan, is_quasicategory, require_fillers, spine_check, HornCount, HornMode, HornReport, HornWitness, SpineReport,
};

#[cfg(test)]
mod tests;
