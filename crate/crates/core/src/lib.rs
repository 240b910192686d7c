//! Exact computations for groups acting simply transitively on the vertices
//! of a rank-two affine building, presented by triangle presentations over a
//! finite projective plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`plane`]: finite projective planes and point-line correspondences.
//! * [`presentation`]: triangle presentations, their file format and search.
//! * [`words`]: normal forms, the rewriting engine and group arithmetic.
//! * [`building`]: balls in the Cayley graph, vertex links and apartments.
//! * [`analysis`]: commuting generators, strips, line-central generators,
//!   conjugate chains and normalizer scans.
//! * [`cosets`]: double cosets of abelian subgroups, the freeness condition
//!   `g⁻¹ H g ∩ H = {e}` and the free-product fixture.

pub mod analysis;
pub mod building;
pub mod cosets;
mod error;
pub mod fixtures;
pub mod plane;
pub mod presentation;
mod union_find;
pub mod words;

pub use error::{Error, Result};
pub use plane::{LineId, Point, PointLineCorrespondence, ProjectivePlane};
pub use presentation::{TrianglePresentation, Triple};
pub use words::{A2Group, GroupElement, GroupOracle, Letter, Subgroup};
