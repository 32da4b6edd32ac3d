//! Dirichlet spectral problems on equilateral quantum trees.
//!
//! The crate computes the pencil determinant `det(z·D̂ − Â)` of a tree whose
//! Dirichlet pendant vertices have been removed (with `D̂` keeping the
//! original degrees), enumerates free trees, groups them into cospectral
//! classes, evaluates the zero-potential spectrum through both the factorized
//! characteristic function and the full `2g × 2g` vertex-condition matrix,
//! and inverts asymptotic branch data back to tree shape.
//!
//! Everything here is `no_std` with `alloc`; file formats and the CLI live in
//! the companion `qtree` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canon;
pub mod charpoly;
pub mod cospectral;
pub mod enumerate;
mod error;
pub mod graph;
pub mod inverse;
pub mod linalg;
pub mod poly;
pub mod spectrum;
pub mod sturm;

pub use canon::{canonical_code, is_isomorphic, CanonicalCode};
pub use charpoly::{dirichlet_poly, dirichlet_poly_interpolated, sine_exponent};
pub use cospectral::{find_classes, spectral_key, CospectralClass, SpectralKey};
pub use enumerate::{count_by_pendants, enumerate_trees, TreeCatalog};
pub use error::{Error, Result};
pub use graph::{BoundaryConfig, Graph, InteriorSubgraph, Tree};
pub use inverse::{build_dictionary, recover_trees, round_trip, ShapeDictionary};
pub use poly::{normalize, IntPoly, NormalizedPoly};
pub use spectrum::{
    build_char_matrix, closed_form_spectrum, direct_spectrum, extract_branches, BranchData,
    EdgeOrientation, SpectrumSample,
};
