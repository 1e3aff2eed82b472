//! `F^Tw`, the relative Grothendieck construction, the permutative category
//! `Perm(F)`, the counit `Perm(Fact(C)) -> C`, the oplax unit
//! `eta: F => Fact(Perm(F))` and its strictification through path categories.

mod counit;
mod eta;
mod grothendieck;
mod perm;
mod segal;
mod tw;

pub use counit::{counit_functor, Counit};
pub use eta::{alpha_beta_check, eta, eta_algebra, path_of_oplax, AlphaBetaReport, Eta, OplaxTransformation, PathFunctor};
pub use grothendieck::{grothendieck, GrothendieckTotal};
pub use perm::{perm_build, pi0_unmaterialized, PermBounds, PermBuild, PermObject, Pi0Report};
pub use segal::TruncatedSegalFunctor;
pub use tw::{f_tw, leg, FTw, Fiber, TwTruncation};

use crate::fincat::Violation;

#[derive(Debug, thiserror::Error)]
pub enum PermConstrError {
    #[error("bound {needed} requested but the functor is only known up to {available}")]
    Bound { needed: usize, available: usize },
    #[error("transition functors are not strictly functorial: {}", first(.0))]
    Transition(Vec<Violation>),
    #[error("{}", first(.0))]
    Violations(Vec<Violation>),
    #[error("expected \"u = n m : table | X_1,..,X_m\", got {0:?}")]
    Syntax(String),
    #[error("object {0} does not match the arity of its map")]
    Arity(String),
}

fn first(vs: &[Violation]) -> String {
    match vs.first() {
        Some(v) if vs.len() > 1 => format!("{}: {} (and {} more)", v.kind, v.detail, vs.len() - 1),
        Some(v) => format!("{}: {}", v.kind, v.detail),
        None => "no details".into(),
    }
}

#[cfg(test)]
mod tests;
