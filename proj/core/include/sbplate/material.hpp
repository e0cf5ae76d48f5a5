#pragma once

#include <Eigen/Dense>

#include "sbplate/errors.hpp"

namespace sbplate {

/// Properties of one constituent phase, SI units.
struct PhaseProperties {
    double E;   ///< Young's modulus [Pa]
    double nu;  ///< Poisson's ratio
    double rho; ///< mass density [kg/m^3]

    void validate() const;
};

/// Ceramic/metal pair graded in-plane by the power law V_c = (x/a)^n.
struct MaterialPair {
    PhaseProperties ceramic;
    PhaseProperties metal;
    double gradient_index = 0.0; ///< power-law exponent n >= 0

    void validate() const;

    /// Si3N4 / SUS304 constants used by the reference studies.
    static MaterialPair si3n4_sus304(double gradient_index = 0.0);
};

/// Ceramic volume fraction (x/a)^n. The convention 0^0 = 1 makes n = 0
/// exactly homogeneous ceramic.
double volume_fraction_ceramic(double x, double a, double n);

/// Rule-of-mixtures effective properties at in-plane coordinate x.
PhaseProperties effective_properties(const MaterialPair& pair, double x, double a);

/// Full 3D isotropic Hooke matrix in the stress order
/// [sigma_z, sigma_x, sigma_y, tau_xy, tau_yz, tau_xz].
Eigen::Matrix<double, 6, 6> elasticity_matrix_3d(double E, double nu);

} // namespace sbplate
