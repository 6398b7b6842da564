//! Exact reconstruction of bivariate polynomials from their Radon
//! projections over parallel chords of the unit disk.
//!
//! A polynomial of degree `n` is determined by `(n+1)(n+2)/2` chord
//! integrals: `floor(n/2) + 1` parallel chords in each of
//! `2*floor((n+1)/2) + 1` equidistant directions. This crate provides
//!
//! - the ridge Chebyshev basis and its angular Fourier profile ([`ridge`]),
//! - closed-form and quadrature forward projections ([`radon`]),
//! - the radial node schemes and their validation ([`nodes`]),
//! - regularity certification of the block matrices that make the
//!   interpolation problem uniquely solvable ([`regularity`]),
//! - the reconstruction pipeline itself ([`mod@reconstruct`]),
//! - a small dense solver ([`solver`]) and text/CSV formats ([`io`]).

pub mod chebyshev;
mod dd;
pub mod error;
pub mod io;
pub mod nodes;
pub mod quadrature;
pub mod radon;
pub mod reconstruct;
pub mod regularity;
pub mod ridge;
pub mod solver;

pub use chebyshev::{eval_ridge, eval_u, ridge_angle, u_zeros, Angle, DiskPoint};
pub use error::{Error, Result};
pub use nodes::{
    check_asymmetric, nodes_chebyshev, nodes_chebyshev_odd, nodes_equidistant,
    nodes_equidistant_odd, nodes_for_degree, nodes_obrechkoff, nodes_obrechkoff_odd,
    nodes_u_zeros_even, nodes_u_zeros_odd, NodeSet, Parity, Scheme,
};
pub use radon::{
    default_chord_order, disk_orthogonality_oracle, marr_projection, project_quadrature,
    project_ridge_poly, Chord,
};
pub use reconstruct::{
    assemble_and_solve_even, assemble_and_solve_odd, normalize, reconstruct, reconstruct_even,
    reconstruct_odd, reprojection_residual, synthesize_grid, synthesize_grid_quadrature,
    trig_moments, BlockCondition, ProjectionGrid, Reconstruction, TrigMoments,
    ILL_CONDITIONING_WARN_THRESHOLD,
};
pub use regularity::{
    build_xi_even, build_xi_odd, build_y, certify, det_xi2_closed_form, BlockReport,
    CertifyReport, XiMatrix,
};
pub use ridge::{
    coefficient_count, coefficients_to_profile, profile_to_coefficients, FourierProfile,
    RidgeRepresentation,
};
pub use solver::{condition_1norm, lu_factor, DenseMatrix, LuFactorization};
