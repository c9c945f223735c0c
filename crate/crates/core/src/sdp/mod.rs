//! Semidefinite machinery for the Lovász theta function.

mod eigen;
mod matrix;
mod representation;
mod theta;

pub use eigen::{
    psd_project, symmetric_eigendecomposition, symmetric_eigendecomposition_from, Eigen,
};
pub use matrix::SymmetricMatrix;
pub use representation::{dual_representation, primal_representation, OrthogonalRepresentation};
pub use theta::{lovasz_theta, lovasz_theta_with, SdpOptions, SdpSolution};
