#include "sbplate/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace sbplate {

namespace {

// Effective properties at a node. The gradation runs along global x
// normalized by the plate length; on skew plates the overhang x > a is
// clamped to the pure-ceramic end of the law (V_c capped at 1).
PhaseProperties properties_at(const SpectralMesh& mesh, int node, const MaterialPair& material) {
    const double a = mesh.geometry().a;
    const double x = std::clamp(mesh.node_x(node), 0.0, a);
    return effective_properties(material, x, a);
}

struct QuadPoint {
    double eta, zeta, weight;
    int local; // collocated local node
};

// GLL nodal quadrature: points collocate with the element nodes.
std::vector<QuadPoint> nodal_quadrature(const SpectralBasis2D& basis) {
    std::vector<QuadPoint> pts;
    pts.reserve(static_cast<std::size_t>(basis.num_nodes()));
    for (int q = 0; q < basis.num_nodes(); ++q) {
        int ie, iz;
        basis.grid_index(q, ie, iz);
        pts.push_back({basis.eta().nodes()(ie), basis.zeta().nodes()(iz), basis.weight(q), q});
    }
    return pts;
}

} // namespace

StrainOperators strain_operators(const ElementJacobian& jac) {
    if (!(jac.det > 0.0))
        throw NumericalError("strain_operators: non-positive Jacobian determinant");

    StrainOperators ops;
    ops.b1.setZero();
    ops.b2.setZero();
    ops.b3.setZero();

    // Strain rows: [eps_z, eps_x, eps_y, gamma_xy, gamma_yz, gamma_xz];
    // displacement columns: [u_z, u_x, u_y].
    ops.b1(0, 0) = 1.0; // eps_z      <- u_z,z
    ops.b1(4, 2) = 1.0; // gamma_yz   <- u_y,z
    ops.b1(5, 1) = 1.0; // gamma_xz   <- u_x,z

    const double inv = 1.0 / jac.det;
    ops.b2(1, 1) = jac.y_zeta * inv;
    ops.b2(2, 2) = -jac.x_zeta * inv;
    ops.b2(3, 1) = -jac.x_zeta * inv;
    ops.b2(3, 2) = jac.y_zeta * inv;
    ops.b2(4, 0) = -jac.x_zeta * inv;
    ops.b2(5, 0) = jac.y_zeta * inv;

    ops.b3(1, 1) = -jac.y_eta * inv;
    ops.b3(2, 2) = jac.x_eta * inv;
    ops.b3(3, 1) = jac.x_eta * inv;
    ops.b3(3, 2) = -jac.y_eta * inv;
    ops.b3(4, 0) = jac.x_eta * inv;
    ops.b3(5, 0) = -jac.y_eta * inv;

    return ops;
}

ElementOperators element_coefficient_matrices(const SpectralMesh& mesh, int e,
                                              const MaterialPair& material) {
    const SpectralBasis2D& basis = mesh.basis();
    const int nd = basis.num_nodes();
    const std::vector<int>& conn = mesh.element_nodes(e);

    ElementOperators out;
    out.E0.assign(static_cast<std::size_t>(nd), Eigen::Matrix3d::Zero());
    out.E1 = Eigen::MatrixXd::Zero(3 * nd, 3 * nd);
    out.E2 = Eigen::MatrixXd::Zero(3 * nd, 3 * nd);

    Eigen::VectorXd N, dNe, dNz;
    Eigen::MatrixXd B2(6, 3 * nd);

    for (const QuadPoint& q : nodal_quadrature(basis)) {
        const ElementJacobian jac = mesh.jacobian(e, q.eta, q.zeta);
        const StrainOperators ops = strain_operators(jac);
        basis.eval(q.eta, q.zeta, N, dNe, dNz);

        const PhaseProperties props = properties_at(mesh, conn[static_cast<std::size_t>(q.local)], material);
        const Eigen::Matrix<double, 6, 6> D = elasticity_matrix_3d(props.E, props.nu);
        const double scale = q.weight * jac.det;

        for (int j = 0; j < nd; ++j)
            B2.middleCols(3 * j, 3) = ops.b2 * dNe(j) + ops.b3 * dNz(j);

        // At a GLL point B1 collapses to the collocated node's b1 block, so
        // E0 stays block-diagonal and E1 only receives columns of that node.
        out.E0[static_cast<std::size_t>(q.local)] += scale * ops.b1.transpose() * D * ops.b1;
        out.E1.middleCols(3 * q.local, 3) += scale * B2.transpose() * (D * ops.b1);
        out.E2 += scale * B2.transpose() * D * B2;
    }
    return out;
}

Eigen::VectorXd element_mass_scalars(const SpectralMesh& mesh, int e, const MaterialPair& material) {
    const SpectralBasis2D& basis = mesh.basis();
    const std::vector<int>& conn = mesh.element_nodes(e);

    Eigen::VectorXd m(basis.num_nodes());
    for (const QuadPoint& q : nodal_quadrature(basis)) {
        const ElementJacobian jac = mesh.jacobian(e, q.eta, q.zeta);
        const PhaseProperties props = properties_at(mesh, conn[static_cast<std::size_t>(q.local)], material);
        m(q.local) = q.weight * props.rho * jac.det;
    }
    return m;
}

std::vector<Eigen::Vector3d> element_mass(const SpectralMesh& mesh, int e,
                                          const MaterialPair& material, double h) {
    if (!(h > 0.0))
        throw ConfigError("element_mass: thickness must be positive");
    const Eigen::VectorXd m = element_mass_scalars(mesh, e, material);
    std::vector<Eigen::Vector3d> blocks(static_cast<std::size_t>(m.size()));
    const double rot = h * h * h / 12.0;
    for (int i = 0; i < m.size(); ++i)
        blocks[static_cast<std::size_t>(i)] = Eigen::Vector3d(m(i) * rot, m(i) * rot, m(i) * h);
    return blocks;
}

Eigen::MatrixXd element_geometric_stiffness(const SpectralMesh& mesh, int e,
                                            const Eigen::Matrix2d& Ncirc, KgMode mode, double h) {
    if ((Ncirc - Ncirc.transpose()).norm() > 1e-12 * (1.0 + Ncirc.norm()))
        throw ConfigError("element_geometric_stiffness: in-plane resultant matrix must be symmetric");
    if (mode == KgMode::AllDof && !(h > 0.0))
        throw ConfigError("element_geometric_stiffness: all-dof mode requires the thickness");

    const SpectralBasis2D& basis = mesh.basis();
    const int nd = basis.num_nodes();

    Eigen::MatrixXd KG = Eigen::MatrixXd::Zero(3 * nd, 3 * nd);
    Eigen::VectorXd N, dNe, dNz;
    Eigen::MatrixXd G(2, nd);

    for (const QuadPoint& q : nodal_quadrature(basis)) {
        const ElementJacobian jac = mesh.jacobian(e, q.eta, q.zeta);
        basis.eval(q.eta, q.zeta, N, dNe, dNz);

        const double inv = 1.0 / jac.det;
        for (int j = 0; j < nd; ++j) {
            G(0, j) = (jac.y_zeta * dNe(j) - jac.y_eta * dNz(j)) * inv;  // dN/dx
            G(1, j) = (-jac.x_zeta * dNe(j) + jac.x_eta * dNz(j)) * inv; // dN/dy
        }

        const Eigen::MatrixXd block = (q.weight * jac.det) * (G.transpose() * Ncirc * G);
        for (int i = 0; i < nd; ++i) {
            for (int j = 0; j < nd; ++j) {
                KG(3 * i + 2, 3 * j + 2) += block(i, j);
                if (mode == KgMode::AllDof) {
                    const double rot = block(i, j) * h * h / 12.0;
                    KG(3 * i + 0, 3 * j + 0) += rot;
                    KG(3 * i + 1, 3 * j + 1) += rot;
                }
            }
        }
    }
    return KG;
}

} // namespace sbplate
