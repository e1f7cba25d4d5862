//! Exact truncated Witt-vector linear algebra for lifting finite-order
//! automorphisms of K3 surfaces from characteristic p to the Witt ring.

pub mod arith;
pub mod cli;
pub mod crystal;
pub mod error;
mod fp_poly;
pub mod hensel;
pub mod intmat;
pub mod lattice;
pub mod lift;
pub mod matrix;
pub mod period;
pub mod ring;
pub mod spectral;
pub mod synthetic;
pub mod wire;

pub use crystal::{
    divided_power, phi_invert, phi_map, transport, truncation_degree, ConnectionData, DeformationPoint, PhiInverse,
};
pub use error::{Error, Result};
pub use hensel::{hensel_root, isotropic_combination, orthogonalize_against, Polynomial};
pub use lattice::{standard_lattice, DiscriminantGroup, IntLattice, QuadLattice, StandardLattice, WittLattice};
pub use lift::{
    lift_finite_height, lift_ss_nonsymplectic, lift_ss_symplectic, transcendental_action, universal_line,
    verify_certificate, Branch, Claim, LiftingCertificate, SlopeDecomposition, SupersingularInput,
    TranscendentalReport, VerificationReport,
};
pub use matrix::{Matrix, Vector};
pub use period::{check_conditions, complete_period_line, coordinates_of, ConditionReport, PeriodFrame, PeriodLine};
pub use ring::{nth_roots_of_unity, teichmuller, PadicScalar, RingContext};
pub use spectral::{eigen_split, eigenprojector, lift_eigenvector, verify_isometry, EigenSplit, Isometry};
