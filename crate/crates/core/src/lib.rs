//! Exact arithmetic for the Temperley-Lieb algebra `TL_k(d)`.
//!
//! The dual diagram basis and the Jones-Wenzl projections are computed two
//! independent ways: by counting walks in the Weingarten graph (a Laurent
//! series in `1/d`) and by exact inversion of the Gram matrix.

pub mod algebra;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod jones_wenzl;
pub mod json;
pub mod nc2;
pub mod oracle;
mod union_find;

pub use error::{Error, Result};
pub use nc2::{PairVertex, Pairing};
