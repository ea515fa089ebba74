//! Finite categories, functors, nerves, deloopings and localization.

mod builder;
mod category;
mod format;
mod functor;
mod groups;
mod localize;
mod nerve;

pub use builder::{random_category, CategoryBuilder, SetMap};
pub use category::{Arrow, FinCategory};
pub use format::{ArrowDoc, CategoryDoc, FunctorDoc};
pub(crate) use format::object_and_arrow_maps;
pub use functor::Functor;
pub use groups::{bg, bg_functor, Monoid};
pub use localize::{localize, Localization, RelativeCategory};
pub use nerve::{nerve, nerve_map, Nerve};

#[cfg(test)]
mod tests;
