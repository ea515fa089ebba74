//! Simplicial categories, `𝔠^n`, homotopy-coherent nerves and `π_0`
//! homotopy categories.

mod category;
mod coherent;
mod format;
mod frak;
mod pi0;

pub use category::SimplicialCategory;
pub use coherent::coherent_nerve;
pub use format::{MapSpaceDoc, SimplicialCategoryDoc, VertexComposite};
pub use frak::{frak_c, horn_mapspace};
pub use pi0::pi0_category;

#[cfg(test)]
mod tests;
