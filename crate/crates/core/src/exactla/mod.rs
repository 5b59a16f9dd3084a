//! Exact linear and multilinear algebra over the rationals.

pub mod ext;
pub mod matrix;
pub mod rational;
pub mod symplectic;

pub use ext::{ExtVector, IndexSpace};
pub use matrix::QMatrix;
pub use rational::{format_rational, int, parse_rational, ratio, Rational};
pub use symplectic::{
    form_contraction, hamming_distance, intersection_dim, is_isotropic, is_primitive,
    is_symplectic, omega_matrix, primitive_dimension, psi_kernel, random_symplectic, span_dim,
    sum_dim, symplectic_perp,
};
