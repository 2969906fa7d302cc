pub mod embeddings;
pub mod error;
pub mod fixpoint;
pub mod goodstein;
pub mod notations;
pub mod order;
pub mod pathologies;
pub mod predilator;
pub mod sexp;
pub mod verify;

pub use error::{Error, Result};
pub use goodstein::{GTerm, WTerm};
pub use predilator::{Predilator, Value};
