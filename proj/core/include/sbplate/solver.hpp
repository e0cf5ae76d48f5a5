#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "sbplate/eigensolve.hpp"
#include "sbplate/kernel.hpp"
#include "sbplate/material.hpp"
#include "sbplate/mesh.hpp"

namespace sbplate {

/// Assembled coefficient matrices in the 3D displacement ordering
/// [u_z, u_x, u_y] per node (3N square). E0 stays block-diagonal globally and
/// is stored as one 3x3 block per node; `mass` holds the nodal scalars
/// m_i = sum_e w_i rho(s_i) |J|.
struct GlobalOperators {
    std::vector<Eigen::Matrix3d> E0;
    Eigen::MatrixXd E1;
    Eigen::MatrixXd E2;
    Eigen::VectorXd mass;

    int num_dofs() const { return static_cast<int>(E1.rows()); }
};

GlobalOperators assemble(const SpectralMesh& mesh, const MaterialPair& material);

/// Blockwise inverse of the lumped E0. Throws with the offending node id if a
/// block is singular.
std::vector<Eigen::Matrix3d> block_inverse(const std::vector<Eigen::Matrix3d>& blocks);

/// Coefficient matrix blocks: A11 = E0^-1 E1^T and A21 = -E2 + E1 E0^-1 E1^T.
/// A12 = -E0^-1 and A22 = -A11^T follow from the stored data and are never
/// materialized.
struct CoefficientMatrix {
    Eigen::MatrixXd A11;
    Eigen::MatrixXd A21;
};

CoefficientMatrix build_A(const GlobalOperators& ops);

/// Through-thickness expansion correction terms:
/// V11 = (A11^2 + A12 A21) / 12, V21 = (A21 A11 - A11^T A21) / 12.
struct PadeCorrection {
    Eigen::MatrixXd V11;
    Eigen::MatrixXd V21;
};

PadeCorrection pade_correction(const GlobalOperators& ops, const CoefficientMatrix& A);

/// Plate stiffness after eliminating theta_z, u_x, u_y, split by thickness
/// power: K(h) = h * (Ka + h^2 * Kb) in plate DOF order (theta_ux, theta_uy, w).
///
/// The cubic coefficient is the series-consistent O(h^3) term of the
/// (2,2)-Pade two-surface relation. With Delta = E1 - E1^T it reads
///   (1/12) [[E2 + Delta E0^-1 Delta, Delta E0^-1 E2],
///           [(Delta E0^-1 E2)^T,     -E2 E0^-1 E2  ]]
/// and is symmetric by construction; the remaining asymmetry of the
/// assembled K is a pure roundoff diagnostic.
struct PlateStiffness {
    Eigen::MatrixXd Ka;
    Eigen::MatrixXd Kb;
};

PlateStiffness reduce_to_plate(const GlobalOperators& ops);

/// One mesh + material analysis system. The thickness enters only at
/// evaluation time, so b/h sweeps reuse the expensive build.
class GlobalSystem {
public:
    GlobalSystem(std::shared_ptr<const SpectralMesh> mesh, MaterialPair material);

    const SpectralMesh& mesh() const { return *mesh_; }
    std::shared_ptr<const SpectralMesh> mesh_ptr() const { return mesh_; }
    const MaterialPair& material() const { return material_; }

    /// Symmetrized reduced plate stiffness at thickness h. The relative
    /// asymmetry norm prior to symmetrization is reported through
    /// `asymmetry` and must stay below 1e-6.
    Eigen::MatrixXd plate_stiffness(double h, double* asymmetry = nullptr) const;

    /// Diagonal mass in plate DOF order: (m h^3/12, m h^3/12, m h) per node.
    Eigen::VectorXd mass_diagonal(double h) const;

    /// Assembled geometric stiffness for the given in-plane resultants.
    Eigen::MatrixXd geometric_stiffness(const Eigen::Matrix2d& Ncirc,
                                        KgMode mode = KgMode::DeflectionOnly,
                                        double h = 0.0) const;

    /// Total translational mass per unit thickness: integral of rho over the
    /// plate area (diagnostic used by the mass-conservation checks).
    double mass_per_thickness() const { return mass_.sum(); }

private:
    std::shared_ptr<const SpectralMesh> mesh_;
    MaterialPair material_;
    Eigen::MatrixXd Ka_, Kb_;
    Eigen::VectorXd mass_;
};

/// Applies the oblique-edge nodal rotations (theta_x, theta_y) ->
/// (theta_t, theta_n) as a symmetric congruence on a plate-DOF matrix.
void apply_node_rotations(Eigen::MatrixXd& K, const ConstraintSet& constraints);

/// Scatters a reduced mode to the full plate DOF vector: constrained slots
/// become zero and oblique-edge (theta_t, theta_n) pairs are rotated back to
/// Cartesian (theta_ux, theta_uy).
Eigen::VectorXd expand_mode(const Eigen::VectorXd& reduced, const ConstraintSet& constraints,
                            const std::vector<int>& free_ids);

Eigen::MatrixXd select_free(const Eigen::MatrixXd& m, const std::vector<int>& free_ids);
Eigen::VectorXd select_free(const Eigen::VectorXd& v, const std::vector<int>& free_ids);

/// Sorted eigen-solution of a reduced pencil; `values` are omega^2 for
/// vibration and load multipliers lambda for buckling.
struct Solution {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// K v = omega^2 M v for the k smallest omega >= 0. Falls back to a shifted
/// factorization when K is only semi-definite (free plates).
Solution solve_vibration(const Eigen::MatrixXd& K, const Eigen::VectorXd& M_diagonal, int k,
                         const Eigen::LLT<Eigen::MatrixXd>* prefactored = nullptr);

/// K d = lambda KG d for the k smallest positive multipliers of the unit
/// compressive resultants baked into KG.
Solution solve_buckling(const Eigen::MatrixXd& K, const Eigen::MatrixXd& KG, int k,
                        const Eigen::LLT<Eigen::MatrixXd>* prefactored = nullptr);

/// Fixes the sign convention: the largest-magnitude w entry of each mode is
/// made positive. `free_ids` maps reduced rows to plate DOF ids.
void normalize_mode_signs(Eigen::MatrixXd& modes, const std::vector<int>& free_ids);

/// Flexural rigidity of the ceramic phase, E_c h^3 / (12 (1 - nu_c^2)).
double flexural_rigidity(const PhaseProperties& ceramic, double h);

/// omega * (L/pi)^2 * sqrt(rho_c h / D_c); L is the reference in-plane length.
double omega_bar(double omega, double L, double h, const PhaseProperties& ceramic);

/// N_cr b^2 / (pi^2 D_c).
double lambda_bar(double n_cr, double b, double h, const PhaseProperties& ceramic);

/// Unit in-plane resultants of the two reference load cases.
Eigen::Matrix2d unit_resultants(bool biaxial);

} // namespace sbplate
