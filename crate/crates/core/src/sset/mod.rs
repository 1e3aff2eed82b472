//! Truncated simplicial sets, nerves, integral homology in low degrees, and
//! the category of simplices with its last-vertex map.

mod homology;
mod nerve;
mod simplices;
mod simplicial;

pub use homology::{connected_components, homology, invariant_factors, Homology};
pub use nerve::{nerve_truncate, Nerve};
pub use simplices::{category_of_simplices, epsilon, epsilon_chain, Epsilon, SimplexCategory};
pub use simplicial::{epis, identity_epi, monotone_maps, Epi, EzForm, MarkedSSet, SSetError, TruncatedSSet};

#[cfg(test)]
mod tests;
