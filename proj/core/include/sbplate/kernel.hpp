#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sbplate/material.hpp"
#include "sbplate/mesh.hpp"

namespace sbplate {

/// Strain decomposition factors for eps = b1 u,z + b2 u,eta + b3 u,zeta with
/// the displacement ordering [u_z, u_x, u_y]. b2 and b3 carry the Jacobian
/// partials divided by det J; b1 is the pure selection of the z-derivative
/// terms and carries no metric factor (z is not transformed by the in-plane
/// map).
struct StrainOperators {
    Eigen::Matrix<double, 6, 3> b1, b2, b3;
};

StrainOperators strain_operators(const ElementJacobian& jac);

/// Per-element coefficient matrices in the 3D displacement ordering
/// [u_z, u_x, u_y] per node. Under GLL nodal quadrature E0 is block-diagonal
/// and is stored as one 3x3 block per local node.
struct ElementOperators {
    std::vector<Eigen::Matrix3d> E0;
    Eigen::MatrixXd E1;
    Eigen::MatrixXd E2;
};

ElementOperators element_coefficient_matrices(const SpectralMesh& mesh, int e,
                                              const MaterialPair& material);

/// Nodal mass scalars m_i = w_i rho(s_i) |J|; the plate-DOF mass block of
/// node i is m_i * diag(h^3/12, h^3/12, h).
Eigen::VectorXd element_mass_scalars(const SpectralMesh& mesh, int e, const MaterialPair& material);

/// Diagonal mass blocks in plate DOF order (theta_ux, theta_uy, w).
std::vector<Eigen::Vector3d> element_mass(const SpectralMesh& mesh, int e,
                                          const MaterialPair& material, double h);

/// Geometric stiffness variants: the default couples the in-plane resultants
/// to deflection gradients only; the all-dof variant adds the
/// rotation-gradient terms scaled by h^2/12.
enum class KgMode { DeflectionOnly, AllDof };

/// Element geometric stiffness in plate DOF order (theta_ux, theta_uy, w) for
/// the symmetric in-plane resultant matrix Ncirc = [[N_x, N_xy], [N_xy, N_y]].
Eigen::MatrixXd element_geometric_stiffness(const SpectralMesh& mesh, int e,
                                            const Eigen::Matrix2d& Ncirc,
                                            KgMode mode = KgMode::DeflectionOnly, double h = 0.0);

} // namespace sbplate
