//! Exact Hall algebras, quiver Grassmannians and cluster characters over prime fields.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cc;
pub mod chi;
pub mod cluster;
pub mod error;
pub mod ff;
pub mod hall;
pub mod laurent;
pub mod limits;
pub mod object;
pub mod quiver;
pub mod report;
pub mod rep;
pub mod twocy;
pub mod uniform;

pub use error::{Error, Result};
pub use limits::Limits;
