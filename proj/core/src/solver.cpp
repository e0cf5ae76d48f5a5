#include "sbplate/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace sbplate {

namespace {

constexpr double kAsymmetryLimit = 1e-6;

// Left-multiplies a node-block-diagonal matrix into a dense one.
Eigen::MatrixXd block_times(const std::vector<Eigen::Matrix3d>& blocks, const Eigen::MatrixXd& M) {
    Eigen::MatrixXd out(M.rows(), M.cols());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        out.middleRows(3 * static_cast<Eigen::Index>(i), 3).noalias() =
            blocks[i] * M.middleRows(3 * static_cast<Eigen::Index>(i), 3);
    return out;
}

} // namespace

GlobalOperators assemble(const SpectralMesh& mesh, const MaterialPair& material) {
    const int n = mesh.num_nodes();
    GlobalOperators g;
    g.E0.assign(static_cast<std::size_t>(n), Eigen::Matrix3d::Zero());
    g.E1 = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    g.E2 = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    g.mass = Eigen::VectorXd::Zero(n);

    for (int e = 0; e < mesh.num_elements(); ++e) {
        const std::vector<int>& conn = mesh.element_nodes(e);
        const ElementOperators ops = element_coefficient_matrices(mesh, e, material);
        const Eigen::VectorXd m = element_mass_scalars(mesh, e, material);

        for (std::size_t i = 0; i < conn.size(); ++i) {
            g.E0[static_cast<std::size_t>(conn[i])] += ops.E0[i];
            g.mass(conn[i]) += m(static_cast<Eigen::Index>(i));
            for (std::size_t j = 0; j < conn.size(); ++j) {
                g.E1.block<3, 3>(3 * conn[i], 3 * conn[j]) +=
                    ops.E1.block<3, 3>(3 * static_cast<int>(i), 3 * static_cast<int>(j));
                g.E2.block<3, 3>(3 * conn[i], 3 * conn[j]) +=
                    ops.E2.block<3, 3>(3 * static_cast<int>(i), 3 * static_cast<int>(j));
            }
        }
    }
    return g;
}

std::vector<Eigen::Matrix3d> block_inverse(const std::vector<Eigen::Matrix3d>& blocks) {
    std::vector<Eigen::Matrix3d> inv(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const double det = blocks[i].determinant();
        const double scale = blocks[i].cwiseAbs().maxCoeff();
        if (!(std::abs(det) > 1e-14 * scale * scale * scale))
            throw NumericalError("E0 block singular at node " + std::to_string(i));
        inv[i] = blocks[i].inverse();
    }
    return inv;
}

CoefficientMatrix build_A(const GlobalOperators& ops) {
    const std::vector<Eigen::Matrix3d> inv = block_inverse(ops.E0);
    CoefficientMatrix A;
    A.A11 = block_times(inv, ops.E1.transpose());
    A.A21.noalias() = ops.E1 * A.A11;
    A.A21 -= ops.E2;
    return A;
}

PadeCorrection pade_correction(const GlobalOperators& ops, const CoefficientMatrix& A) {
    const std::vector<Eigen::Matrix3d> inv = block_inverse(ops.E0);
    PadeCorrection p;
    p.V11.noalias() = A.A11 * A.A11;
    p.V11 -= block_times(inv, A.A21); // A12 A21 = -E0^-1 A21
    p.V11 /= 12.0;

    p.V21.noalias() = A.A21 * A.A11;
    p.V21.noalias() -= A.A11.transpose() * A.A21;
    p.V21 /= 12.0;
    return p;
}

PlateStiffness reduce_to_plate(const GlobalOperators& ops) {
    const int n = ops.num_dofs() / 3;
    const std::vector<Eigen::Matrix3d> inv = block_inverse(ops.E0);

    const Eigen::MatrixXd delta = ops.E1 - ops.E1.transpose();
    const Eigen::MatrixXd b_delta = block_times(inv, delta);
    const Eigen::MatrixXd b_e2 = block_times(inv, ops.E2);

    Eigen::MatrixXd t_tt; // E2 + Delta E0^-1 Delta
    t_tt.noalias() = delta * b_delta;
    t_tt += ops.E2;
    Eigen::MatrixXd t_tu; // Delta E0^-1 E2
    t_tu.noalias() = delta * b_e2;
    Eigen::MatrixXd t_uu; // -E2 E0^-1 E2
    t_uu.noalias() = -ops.E2 * b_e2;

    PlateStiffness k;
    k.Ka = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    k.Kb = Eigen::MatrixXd::Zero(3 * n, 3 * n);

    // Full-block DOF order per node is [u_z, u_x, u_y]; the retained plate
    // DOFs are theta_ux, theta_uy (rows 1, 2 of the theta block) and w
    // (row 0 of the displacement block).
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int r3 = 3 * i, c3 = 3 * j;
            if (i == j) {
                const Eigen::Matrix3d& e0 = ops.E0[static_cast<std::size_t>(i)];
                k.Ka.block<2, 2>(r3, c3) = e0.block<2, 2>(1, 1);
            }
            k.Kb.block<2, 2>(r3, c3) = t_tt.block<2, 2>(r3 + 1, c3 + 1) / 12.0;
            // theta-w
            k.Ka(r3 + 0, c3 + 2) = ops.E1(c3 + 0, r3 + 1);
            k.Ka(r3 + 1, c3 + 2) = ops.E1(c3 + 0, r3 + 2);
            k.Kb(r3 + 0, c3 + 2) = t_tu(r3 + 1, c3 + 0) / 12.0;
            k.Kb(r3 + 1, c3 + 2) = t_tu(r3 + 2, c3 + 0) / 12.0;
            // w-theta (transpose of theta-w by construction)
            k.Ka(r3 + 2, c3 + 0) = ops.E1(r3 + 0, c3 + 1);
            k.Ka(r3 + 2, c3 + 1) = ops.E1(r3 + 0, c3 + 2);
            k.Kb(r3 + 2, c3 + 0) = t_tu(c3 + 1, r3 + 0) / 12.0;
            k.Kb(r3 + 2, c3 + 1) = t_tu(c3 + 2, r3 + 0) / 12.0;
            // w-w
            k.Ka(r3 + 2, c3 + 2) = ops.E2(r3 + 0, c3 + 0);
            k.Kb(r3 + 2, c3 + 2) = t_uu(r3 + 0, c3 + 0) / 12.0;
        }
    }
    return k;
}

GlobalSystem::GlobalSystem(std::shared_ptr<const SpectralMesh> mesh, MaterialPair material)
    : mesh_(std::move(mesh)), material_(material) {
    material_.validate();
    const GlobalOperators ops = assemble(*mesh_, material_);
    mass_ = ops.mass;
    PlateStiffness k = reduce_to_plate(ops);
    Ka_ = std::move(k.Ka);
    Kb_ = std::move(k.Kb);
}

Eigen::MatrixXd GlobalSystem::plate_stiffness(double h, double* asymmetry) const {
    if (!(h > 0.0))
        throw ConfigError("plate_stiffness: thickness must be positive");
    Eigen::MatrixXd K = h * (Ka_ + (h * h) * Kb_);
    const double norm = K.norm();
    const double asym = norm > 0.0 ? (K - K.transpose()).norm() / norm : 0.0;
    if (asymmetry != nullptr)
        *asymmetry = asym;
    if (!(asym < kAsymmetryLimit))
        throw NumericalError("plate stiffness asymmetry " + std::to_string(asym) +
                             " exceeds 1e-6; formulation or assembly is inconsistent");
    K = 0.5 * (K + K.transpose()).eval();
    return K;
}

Eigen::VectorXd GlobalSystem::mass_diagonal(double h) const {
    if (!(h > 0.0))
        throw ConfigError("mass_diagonal: thickness must be positive");
    const int n = mesh_->num_nodes();
    Eigen::VectorXd M(3 * n);
    const double rot = h * h * h / 12.0;
    for (int i = 0; i < n; ++i) {
        M(3 * i + 0) = mass_(i) * rot;
        M(3 * i + 1) = mass_(i) * rot;
        M(3 * i + 2) = mass_(i) * h;
    }
    return M;
}

Eigen::MatrixXd GlobalSystem::geometric_stiffness(const Eigen::Matrix2d& Ncirc, KgMode mode,
                                                  double h) const {
    const int n = mesh_->num_nodes();
    Eigen::MatrixXd KG = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    for (int e = 0; e < mesh_->num_elements(); ++e) {
        const std::vector<int>& conn = mesh_->element_nodes(e);
        const Eigen::MatrixXd kg = element_geometric_stiffness(*mesh_, e, Ncirc, mode, h);
        for (std::size_t i = 0; i < conn.size(); ++i)
            for (std::size_t j = 0; j < conn.size(); ++j)
                KG.block<3, 3>(3 * conn[i], 3 * conn[j]) +=
                    kg.block<3, 3>(3 * static_cast<int>(i), 3 * static_cast<int>(j));
    }
    return KG;
}

void apply_node_rotations(Eigen::MatrixXd& K, const ConstraintSet& constraints) {
    for (std::size_t i = 0; i < constraints.nodes.size(); ++i) {
        const NodeConstraint& nc = constraints.nodes[i];
        if (!nc.rotated)
            continue;
        const Eigen::Index r0 = 3 * static_cast<Eigen::Index>(i);
        const Eigen::Index r1 = r0 + 1;
        // Row pair, then column pair: K <- R K R^T with R = [[tx, ty], [-ty, tx]].
        const Eigen::RowVectorXd rt = nc.tx * K.row(r0) + nc.ty * K.row(r1);
        const Eigen::RowVectorXd rn = -nc.ty * K.row(r0) + nc.tx * K.row(r1);
        K.row(r0) = rt;
        K.row(r1) = rn;
        const Eigen::VectorXd ct = nc.tx * K.col(r0) + nc.ty * K.col(r1);
        const Eigen::VectorXd cn = -nc.ty * K.col(r0) + nc.tx * K.col(r1);
        K.col(r0) = ct;
        K.col(r1) = cn;
    }
}

Eigen::VectorXd expand_mode(const Eigen::VectorXd& reduced, const ConstraintSet& constraints,
                            const std::vector<int>& free_ids) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(3 * static_cast<Eigen::Index>(constraints.nodes.size()));
    for (std::size_t r = 0; r < free_ids.size(); ++r)
        full(free_ids[r]) = reduced(static_cast<Eigen::Index>(r));

    for (std::size_t i = 0; i < constraints.nodes.size(); ++i) {
        const NodeConstraint& nc = constraints.nodes[i];
        if (!nc.rotated)
            continue;
        // Slot 0 holds theta_t (fixed to zero), slot 1 theta_n; back to
        // Cartesian via R^T.
        const Eigen::Index r0 = 3 * static_cast<Eigen::Index>(i);
        const double tt = full(r0 + 0), tn = full(r0 + 1);
        full(r0 + 0) = nc.tx * tt - nc.ty * tn;
        full(r0 + 1) = nc.ty * tt + nc.tx * tn;
    }
    return full;
}

Eigen::MatrixXd select_free(const Eigen::MatrixXd& m, const std::vector<int>& free_ids) {
    const Eigen::Index n = static_cast<Eigen::Index>(free_ids.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = m(free_ids[static_cast<std::size_t>(i)], free_ids[static_cast<std::size_t>(j)]);
    return out;
}

Eigen::VectorXd select_free(const Eigen::VectorXd& v, const std::vector<int>& free_ids) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(free_ids.size()));
    for (std::size_t i = 0; i < free_ids.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = v(free_ids[i]);
    return out;
}

Solution solve_vibration(const Eigen::MatrixXd& K, const Eigen::VectorXd& M_diagonal, int k,
                         const Eigen::LLT<Eigen::MatrixXd>* prefactored) {
    if (M_diagonal.minCoeff() <= 0.0)
        throw NumericalError("solve_vibration: mass diagonal must be positive");
    const int kk = std::min<int>(k, static_cast<int>(K.rows()));

    EigenPairs pairs;
    double sigma = 0.0;
    if (prefactored != nullptr) {
        pairs = smallest_generalized_prefactored(*prefactored, M_diagonal, kk);
    } else {
        Eigen::LLT<Eigen::MatrixXd> llt(K);
        if (llt.info() == Eigen::Success) {
            pairs = K.rows() <= EigenOptions{}.dense_cutoff
                        ? smallest_generalized(K, M_diagonal, kk)
                        : smallest_generalized_prefactored(llt, M_diagonal, kk);
        } else {
            // Semi-definite K (free plate): shift by sigma M, solve the
            // shifted pencil exactly, shift back.
            sigma = 1e-8 * K.diagonal().cwiseAbs().mean() / M_diagonal.mean();
            Eigen::MatrixXd Ks = K;
            Ks.diagonal() += sigma * M_diagonal;
            if (Ks.rows() <= EigenOptions{}.dense_cutoff) {
                pairs = smallest_generalized(Ks, M_diagonal, kk);
            } else {
                llt.compute(Ks);
                if (llt.info() != Eigen::Success)
                    throw NumericalError("solve_vibration: stiffness factorization failed");
                pairs = smallest_generalized_prefactored(llt, M_diagonal, kk);
            }
        }
    }

    Solution sol;
    sol.values = pairs.values.array() - sigma;
    sol.values = sol.values.cwiseMax(0.0); // clip factorization-shift roundoff
    sol.vectors = pairs.vectors;
    return sol;
}

Solution solve_buckling(const Eigen::MatrixXd& K, const Eigen::MatrixXd& KG, int k,
                        const Eigen::LLT<Eigen::MatrixXd>* prefactored) {
    EigenPairs pairs;
    if (prefactored != nullptr) {
        pairs = smallest_generalized_prefactored(*prefactored, KG, k);
    } else {
        pairs = smallest_generalized(K, KG, k);
    }
    if (pairs.values.size() == 0)
        throw NumericalError("solve_buckling: no positive buckling multiplier found");
    Solution sol;
    sol.values = pairs.values;
    sol.vectors = pairs.vectors;
    return sol;
}

void normalize_mode_signs(Eigen::MatrixXd& modes, const std::vector<int>& free_ids) {
    for (Eigen::Index c = 0; c < modes.cols(); ++c) {
        double best = 0.0;
        double value = 0.0;
        for (std::size_t r = 0; r < free_ids.size(); ++r) {
            if (free_ids[r] % 3 != 2)
                continue;
            const double w = modes(static_cast<Eigen::Index>(r), c);
            if (std::abs(w) > best) {
                best = std::abs(w);
                value = w;
            }
        }
        if (value < 0.0)
            modes.col(c) *= -1.0;
    }
}

double flexural_rigidity(const PhaseProperties& ceramic, double h) {
    return ceramic.E * h * h * h / (12.0 * (1.0 - ceramic.nu * ceramic.nu));
}

double omega_bar(double omega, double L, double h, const PhaseProperties& ceramic) {
    const double pi = std::acos(-1.0);
    const double dc = flexural_rigidity(ceramic, h);
    return omega * (L / pi) * (L / pi) * std::sqrt(ceramic.rho * h / dc);
}

double lambda_bar(double n_cr, double b, double h, const PhaseProperties& ceramic) {
    const double pi = std::acos(-1.0);
    return n_cr * b * b / (pi * pi * flexural_rigidity(ceramic, h));
}

Eigen::Matrix2d unit_resultants(bool biaxial) {
    Eigen::Matrix2d n = Eigen::Matrix2d::Zero();
    n(0, 0) = 1.0;
    if (biaxial)
        n(1, 1) = 1.0;
    return n;
}

} // namespace sbplate
