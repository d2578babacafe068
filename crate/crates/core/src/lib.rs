//! Exact Fourier transforms of constant density over polygons and
//! closed polyhedral surfaces, evaluated as sums over boundary edges.
//!
//! The crate also carries closed-form references (rectangle, box, ball), a
//! voxel-grid baseline, mesh generators and readers, and batch evaluation
//! over wave-vector grids.

pub mod ft;
pub mod geometry;
pub mod mesh_io;
pub mod qfield;
pub mod voxel;

pub use num_complex::Complex64;
