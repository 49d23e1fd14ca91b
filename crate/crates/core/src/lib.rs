//! Exact symbolic engine for the three-colored operads of planar diagrams that
//! govern A∞-algebras with homotopy inner products.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! file system, the command line or JSON lives in the companion `pairahedra-cli`
//! crate.
//!
//! Layout:
//!
//! * [`diagram`]: planar diagrams of kind tree, module or inner, edge keys,
//!   contraction, expansion, grafting and enumeration of shape classes.
//! * [`orientation`]: signed wedges of edges and the contraction pairing.
//! * [`operad_c`] and [`operad_q`]: the cellular operad and its cubical
//!   subdivision, with boundaries, compositions and symmetric actions.
//! * [`tamari`]: the partial order on binary diagrams generated by six local moves.
//! * [`context`]: a cache-holding engine exposing standard orientations, the
//!   maps `q` and `p`, and the diagonals.
//! * [`endo`]: evaluation into endomorphism operads of small graded modules.
//! * [`homology`]: exact rank computations for the cellular chain complexes.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod context;
pub mod diagonal;
pub mod diagram;
pub mod endo;
pub mod error;
pub mod homology;
pub mod linear;
pub mod operad_c;
pub mod operad_q;
pub mod orientation;
pub mod perm;
pub mod tamari;
pub mod transfer;

pub use context::Context;
pub use diagram::{Color, Diagram, EdgeKey, Kind, Node, Shape, Vertex};
pub use error::Error;
pub use linear::LinComb;
pub use operad_c::{CBasis, CElement};
pub use operad_q::{QBasis, QElement};
pub use orientation::Orientation;
pub use perm::Perm;
