//! Kernel checker for the Calculus of Dependent Lambda Eliminations.
//!
//! Terms are checked bidirectionally against types; equality between terms
//! is βη-equivalence of their erasures, decided under a step budget.

pub mod classifier;
pub mod conversion;
pub mod diagnostic;
pub mod erasure;
pub mod frontend;
pub mod lambda;
pub mod syntax;

pub use diagnostic::{Code, Diagnostic, SourceSpan};
pub use erasure::{embed, erase, PureTerm};
pub use lambda::{beta_eta_equal, normalize, Budget, Equality, NormResult};
pub use syntax::{AnnTerm, Context, KindExpr, Name, Namespace, TypeExpr};
