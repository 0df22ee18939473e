//! Spectral radius, Perron vectors, equitable partitions and the exact
//! characteristic polynomials that certify closed-form radii.

mod extremal;
mod partition;
mod poly;
mod power;
mod roots;

pub use extremal::{
    apex_cubic, eq_g1_discrepancy, paper_poly_f, paper_poly_g, paper_poly_g3,
    printed_f0_factorization, repaired_g, repaired_g3, EqG1Discrepancy,
};
pub use partition::{
    coarsest_equitable_partition, is_equitable, quotient_char_poly, quotient_matrix,
    quotient_spectral_radius, QuotientMatrix, VertexPartition, CHAR_POLY_MAX_DIM,
};
pub use poly::Polynomial;
pub use power::{
    perron_vector, perron_vector_with, rayleigh_lower_bound, rotation_test, spectral_radius,
    spectral_radius_with, PowerOptions, RotationOutcome, SpectralResult, VECTOR_JSON_LIMIT,
};
pub use roots::{largest_real_root, real_roots_in};
