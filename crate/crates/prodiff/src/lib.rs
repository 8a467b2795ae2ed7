//! Exact-arithmetic toolkit for the local projective differential geometry of
//! parametrized varieties: fundamental forms and their higher variations,
//! osculating-hypersurface spaces, generalized Monge systems, syzygy analysis
//! of quadric systems, and local complete-intersection tests.
//!
//! Everything is computed over the rationals with no rounding, so every
//! reported dimension is exact.

pub mod catalog;
pub mod compalg;
pub mod jet;
pub mod linalg;
pub mod mpoly;
pub mod osculate;
pub mod quadsys;
pub mod rat;
pub mod report;
pub mod rng;
pub mod tensor;
pub mod variety;

pub use jet::Jet;
pub use linalg::MatQ;
pub use mpoly::MPoly;
pub use quadsys::QuadricSystem;
pub use rat::Rat;
pub use tensor::{SymForm, SymSpace};
pub use variety::{AdaptedChart, FundData, ParamVariety};
