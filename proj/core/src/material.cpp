#include "sbplate/material.hpp"

#include <cmath>
#include <string>

namespace sbplate {

void PhaseProperties::validate() const {
    if (!(E > 0.0))
        throw ConfigError("material: Young's modulus must be positive");
    if (!(rho > 0.0))
        throw ConfigError("material: mass density must be positive");
    if (!(nu > -1.0 && nu < 0.5))
        throw ConfigError("material: Poisson's ratio must lie in (-1, 0.5)");
}

void MaterialPair::validate() const {
    ceramic.validate();
    metal.validate();
    if (!(gradient_index >= 0.0))
        throw ConfigError("material: gradient_index must be >= 0");
}

MaterialPair MaterialPair::si3n4_sus304(double gradient_index) {
    MaterialPair pair;
    pair.ceramic = PhaseProperties{348.43e9, 0.24, 2370.0};
    pair.metal = PhaseProperties{201.04e9, 0.3262, 8166.0};
    pair.gradient_index = gradient_index;
    pair.validate();
    return pair;
}

double volume_fraction_ceramic(double x, double a, double n) {
    if (!(a > 0.0))
        throw ConfigError("volume_fraction_ceramic: plate length must be positive");
    if (!(n >= 0.0))
        throw ConfigError("volume_fraction_ceramic: gradient index must be >= 0");
    if (x < 0.0 || x > a)
        throw DomainError("volume_fraction_ceramic: coordinate outside [0, a]");
    if (n == 0.0)
        return 1.0; // 0^0 = 1 so n = 0 is pure ceramic everywhere
    return std::pow(x / a, n);
}

PhaseProperties effective_properties(const MaterialPair& pair, double x, double a) {
    const double vc = volume_fraction_ceramic(x, a, pair.gradient_index);
    const double vm = 1.0 - vc;
    return PhaseProperties{
        vm * pair.metal.E + vc * pair.ceramic.E,
        vm * pair.metal.nu + vc * pair.ceramic.nu,
        vm * pair.metal.rho + vc * pair.ceramic.rho,
    };
}

Eigen::Matrix<double, 6, 6> elasticity_matrix_3d(double E, double nu) {
    if (!(E > 0.0))
        throw DomainError("elasticity_matrix_3d: Young's modulus must be positive");
    if (!(nu > -1.0 && nu < 0.5))
        throw DomainError("elasticity_matrix_3d: Poisson's ratio " + std::to_string(nu) +
                          " gives a singular material");

    const double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    const double mu = E / (2.0 * (1.0 + nu));

    Eigen::Matrix<double, 6, 6> D = Eigen::Matrix<double, 6, 6>::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            D(i, j) = (i == j) ? lambda + 2.0 * mu : lambda;
    }
    D(3, 3) = mu;
    D(4, 4) = mu;
    D(5, 5) = mu;
    return D;
}

} // namespace sbplate
