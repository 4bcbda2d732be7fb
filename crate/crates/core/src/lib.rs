//! Finite combinatorial models of curve-complex spheres.
//!
//! The crate builds finite abstract simplicial complexes — tube complexes of
//! graphs (dual associahedra), interval-curve complexes, polygon chord
//! complexes, subset spheres — and verifies their structure mechanically:
//! simplicial isomorphisms, exact integer homology via Smith normal form,
//! degrees of simplicial sphere maps, and the non-rigidity witnesses built
//! from a curated intersection oracle.

pub mod complex;
pub mod error;
pub mod facet_file;
pub mod homology;
pub mod label;
pub mod surfaces;
pub mod tubings;
pub mod vmap;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use label::{Side, VertexLabel};
pub use vmap::VertexMap;
