//! Exact-arithmetic toolkit for line usage in GC_n interpolation node sets:
//! rational planar geometry, bivariate polynomials, poisedness and
//! fundamental polynomials, GC certification, lattice constructors, the
//! l-reduction calculus, and per-line usage verification.

pub mod geom;
pub mod matrix;
pub mod poly;

pub mod nodeset;

pub mod gc;

pub mod conjecture;
pub mod lattices;
pub mod io;
pub mod reduction;
pub mod suites;
pub mod svg;

pub use geom::{Line, Point, Rat};
pub use nodeset::NodeSet;
