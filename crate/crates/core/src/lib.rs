//! Exact mutation engine for rooted cluster algebras over valued quivers.
//!
//! Vertices are 0-based inside the library and 1-based in every external
//! format. Mutation words are stored in written order and applied right to
//! left.

pub mod budget;
pub mod catalog;
pub mod class;
pub mod error;
pub mod laurent;
pub mod par;
pub mod quiver;
pub mod seed;

pub use error::{Error, LaurentError, Result, Violation};
pub use laurent::{LaurentPoly, Monomial, TermOrder, Vars};
pub use par::Exec;
pub use quiver::canon::{canonical_form, CanonKey};
pub use quiver::symmetry::find_symmetry;
pub use quiver::{EdgeSpec, ExchangeMatrix, MutationWord, Permutation, QuiverSpec, Sign, ValuedQuiver};

pub use seed::Seed;
