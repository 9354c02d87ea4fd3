//! Hall algebras over prime fields and the Green-type identities among their structure constants.

mod algebra;
mod degenerate;
mod green;
mod scalar;
mod universe;

pub use algebra::{HallElement, Tensor};
pub use degenerate::{degenerated_green_check, degenerated_green_for, degenerated_green_sweep, split_stratum_check, split_stratum_sweep};
pub use green::{NonHereditary, Quad, Rewritten};
pub use scalar::TwistScalar;
pub use universe::{ClassInfo, Label, Universe};
