#include "sbplate/mesh.hpp"

#include <cmath>

namespace sbplate {

namespace {
constexpr double kParallelTol = 1e-12;
}

void PlateGeometry::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(h > 0.0))
        throw ConfigError("geometry: a, b, h must all be positive");
    if (!(std::abs(psi) < std::acos(-1.0) / 2.0))
        throw ConfigError("geometry: skew angle must satisfy |psi| < pi/2");
}

BoundarySpec BoundarySpec::parse(const std::string& letters) {
    if (letters.size() != 4)
        throw ConfigError("bc: expected exactly four letters from {S, C, F}, got '" + letters + "'");
    BoundarySpec spec;
    for (int k = 0; k < 4; ++k) {
        const char c = letters[static_cast<std::size_t>(k)];
        if (c != 'S' && c != 'C' && c != 'F')
            throw ConfigError("bc: invalid letter '" + std::string(1, c) + "' in '" + letters + "'");
        spec.letters_[static_cast<std::size_t>(k)] = c;
    }
    return spec;
}

BoundarySpec BoundarySpec::shifted() const {
    BoundarySpec out;
    for (int k = 0; k < 4; ++k)
        out.letters_[static_cast<std::size_t>(k)] = letters_[static_cast<std::size_t>((k + 1) % 4)];
    return out;
}

SpectralMesh::SpectralMesh(const PlateGeometry& geom, int nex, int nez, int order)
    : geom_(geom), nex_(nex), nez_(nez), order_(order), basis_(order, order) {
    geom_.validate();
    if (nex < 1 || nez < 1)
        throw ConfigError("mesh: element counts must be >= 1");
    if (order < 2)
        throw ConfigError("mesh: element order must be >= 2 to represent constant curvature");

    const int p = order;
    const int nsx = nex * p + 1;
    const int nst = nez * p + 1;
    const Eigen::VectorXd& xi = basis_.eta().nodes();

    // Parent grid coordinates: GLL points mapped into each element span.
    Eigen::VectorXd sgrid(nsx), tgrid(nst);
    const double ds = geom.a / nex, dt = geom.b / nez;
    for (int e = 0; e < nex; ++e)
        for (int i = 0; i <= p; ++i)
            sgrid(e * p + i) = e * ds + 0.5 * (xi(i) + 1.0) * ds;
    for (int e = 0; e < nez; ++e)
        for (int i = 0; i <= p; ++i)
            tgrid(e * p + i) = e * dt + 0.5 * (xi(i) + 1.0) * dt;
    sgrid(0) = 0.0;
    sgrid(nsx - 1) = geom.a;
    tgrid(0) = 0.0;
    tgrid(nst - 1) = geom.b;

    const int n = nsx * nst;
    node_s_.resize(n);
    node_t_.resize(n);
    node_x_.resize(n);
    node_y_.resize(n);
    const double sp = std::sin(geom.psi), cp = std::cos(geom.psi);
    for (int it = 0; it < nst; ++it) {
        for (int is = 0; is < nsx; ++is) {
            const int g = it * nsx + is;
            node_s_(g) = sgrid(is);
            node_t_(g) = tgrid(it);
            node_x_(g) = sgrid(is) + tgrid(it) * sp;
            node_y_(g) = tgrid(it) * cp;
        }
    }

    connectivity_.resize(static_cast<std::size_t>(num_elements()));
    for (int et = 0; et < nez; ++et) {
        for (int es = 0; es < nex; ++es) {
            std::vector<int>& conn = connectivity_[static_cast<std::size_t>(et * nex + es)];
            conn.resize(static_cast<std::size_t>(basis_.num_nodes()));
            for (int iz = 0; iz <= p; ++iz)
                for (int ie = 0; ie <= p; ++ie)
                    conn[static_cast<std::size_t>(basis_.flat_index(ie, iz))] =
                        (et * p + iz) * nsx + (es * p + ie);
        }
    }

    for (int is = 0; is < nsx; ++is) {
        edges_[0].push_back(is);                       // t = 0
        edges_[2].push_back((nst - 1) * nsx + is);     // t = b
    }
    for (int it = 0; it < nst; ++it) {
        edges_[1].push_back(it * nsx + (nsx - 1));     // s = a
        edges_[3].push_back(it * nsx);                 // s = 0
    }
    tangents_[0] = Eigen::Vector2d(1.0, 0.0);
    tangents_[2] = Eigen::Vector2d(1.0, 0.0);
    tangents_[1] = Eigen::Vector2d(sp, cp);
    tangents_[3] = Eigen::Vector2d(sp, cp);
}

ElementJacobian SpectralMesh::jacobian(int e, double eta, double zeta) const {
    Eigen::VectorXd N, dNe, dNz;
    basis_.eval(eta, zeta, N, dNe, dNz);

    const std::vector<int>& conn = element_nodes(e);
    ElementJacobian J{0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < conn.size(); ++i) {
        const double x = node_x_(conn[i]);
        const double y = node_y_(conn[i]);
        J.x_eta += dNe(static_cast<int>(i)) * x;
        J.x_zeta += dNz(static_cast<int>(i)) * x;
        J.y_eta += dNe(static_cast<int>(i)) * y;
        J.y_zeta += dNz(static_cast<int>(i)) * y;
    }
    J.det = J.x_eta * J.y_zeta - J.x_zeta * J.y_eta;
    if (!(J.det > 0.0))
        throw NumericalError("element " + std::to_string(e) + ": degenerate Jacobian, det = " +
                             std::to_string(J.det));
    return J;
}

SpectralMesh build_mesh(const PlateGeometry& geom, int nex, int nez, int order) {
    return SpectralMesh(geom, nex, nez, order);
}

int ConstraintSet::count_constrained() const {
    int c = 0;
    for (const NodeConstraint& nc : nodes) {
        if (nc.rotated)
            ++c;
        if (nc.fix_theta_x)
            ++c;
        if (nc.fix_theta_y)
            ++c;
        if (nc.fix_w)
            ++c;
    }
    return c;
}

std::vector<bool> ConstraintSet::fixed_mask() const {
    std::vector<bool> mask(nodes.size() * 3, false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodeConstraint& nc = nodes[i];
        if (nc.rotated || nc.fix_theta_x)
            mask[3 * i + 0] = true;
        if (nc.fix_theta_y)
            mask[3 * i + 1] = true;
        if (nc.fix_w)
            mask[3 * i + 2] = true;
    }
    return mask;
}

std::vector<int> ConstraintSet::free_dofs() const {
    const std::vector<bool> mask = fixed_mask();
    std::vector<int> free;
    free.reserve(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i])
            free.push_back(static_cast<int>(i));
    }
    return free;
}

ConstraintSet constrained_dofs(const SpectralMesh& mesh, const BoundarySpec& bc) {
    const int n = mesh.num_nodes();
    std::vector<char> clamped(static_cast<std::size_t>(n), 0);
    std::vector<char> supported(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Eigen::Vector2d>> tangents(static_cast<std::size_t>(n));

    for (int k = 0; k < 4; ++k) {
        const char letter = bc.edge(k);
        if (letter == 'F')
            continue;
        for (int node : mesh.edge_nodes(k)) {
            const std::size_t u = static_cast<std::size_t>(node);
            if (letter == 'C') {
                clamped[u] = 1;
            } else { // hard simple support
                supported[u] = 1;
                std::vector<Eigen::Vector2d>& ts = tangents[u];
                const Eigen::Vector2d& t = mesh.edge_tangent(k);
                bool duplicate = false;
                for (const Eigen::Vector2d& prev : ts) {
                    if (std::abs(prev.x() * t.y() - prev.y() * t.x()) < kParallelTol)
                        duplicate = true;
                }
                if (!duplicate)
                    ts.push_back(t);
            }
        }
    }

    ConstraintSet cs;
    cs.nodes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        NodeConstraint& nc = cs.nodes[u];
        if (clamped[u]) {
            nc.fix_w = nc.fix_theta_x = nc.fix_theta_y = true;
            continue;
        }
        if (!supported[u])
            continue;
        nc.fix_w = true;
        const std::vector<Eigen::Vector2d>& ts = tangents[u];
        if (ts.size() >= 2) {
            // Two independent tangential constraints pin both rotations.
            nc.fix_theta_x = nc.fix_theta_y = true;
        } else if (ts.size() == 1) {
            const Eigen::Vector2d& t = ts.front();
            if (std::abs(t.y()) < kParallelTol) {
                nc.fix_theta_x = true;
            } else if (std::abs(t.x()) < kParallelTol) {
                nc.fix_theta_y = true;
            } else {
                nc.rotated = true;
                nc.tx = t.x();
                nc.ty = t.y();
            }
        }
    }
    return cs;
}

} // namespace sbplate
