//! Finite categories as explicit tables, with functors, transformations and
//! the standard derived categories.

mod category;
mod constructions;
mod dot;
mod functor;
mod json;
mod probe;

pub use category::{CategoryBuilder, CategoryError, ComposeRule, FinCategory, MorId, ObjId};
pub use constructions::{
    arrow_category, fiber_product, full_subcategory, opposite, slice, terminal, to_terminal,
    twisted_arrow, twisted_arrow_map, ArrowCategory, FiberProduct, Product, Slice, Subcategory,
    TwistedArrow,
};
pub use dot::to_dot;
pub use functor::{Functor, NatTransformation, Violation};
pub use json::{parse_category, CategoryJson, MorphismJson};
pub(crate) use json::Labels;
pub use probe::{comma_category, comma_probe, ProbeResult};

#[cfg(test)]
mod tests;
