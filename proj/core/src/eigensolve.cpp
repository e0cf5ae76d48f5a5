#include "sbplate/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace sbplate {

namespace {

Eigen::MatrixXd random_block(int n, int m, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd X(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i)
            X(i, j) = dist(rng);
    return X;
}

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& X) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    return qr.householderQ() * Eigen::MatrixXd::Identity(X.rows(), X.cols());
}

// Accept the leading Ritz values as finite eigenvalues 1/mu. For a singular
// B, directions with mu at roundoff level relative to the top of the
// spectrum belong to its null space and are dropped (floor_scale 1e-12); a
// positive definite B keeps every positive mu (floor_scale 0).
EigenPairs collect(const Eigen::VectorXd& mu, const Eigen::MatrixXd& X, int k,
                   double floor_scale) {
    const double floor = std::max(mu.size() > 0 ? mu(0) : 0.0, 0.0) * floor_scale;
    int count = 0;
    while (count < k && count < mu.size() && mu(count) > floor && std::isfinite(mu(count)))
        ++count;
    EigenPairs out;
    out.values.resize(count);
    out.vectors.resize(X.rows(), count);
    for (int j = 0; j < count; ++j) {
        out.values(j) = 1.0 / mu(j);
        out.vectors.col(j) = X.col(j);
    }
    return out;
}

// Orthonormal subspace iteration on C = L^-1 B L^-T for the largest mu of
// B x = mu A x (A = L L^T); the smallest lambda = 1/mu follow. Rank
// deficiency of B is harmless: the defective directions settle at mu ~ 0 and
// are filtered out.
template <class ApplyB>
EigenPairs subspace_smallest(const Eigen::LLT<Eigen::MatrixXd>& allt, ApplyB&& applyB, int n,
                             int k, const EigenOptions& opts, double floor_scale) {
    const int m = std::min(n, std::max(2 * k, k + opts.min_extra));
    const int wanted = std::min(k, m);

    const auto apply_c = [&](const Eigen::MatrixXd& Z) -> Eigen::MatrixXd {
        const Eigen::MatrixXd X = allt.matrixU().solve(Z);
        const Eigen::MatrixXd BX = applyB(X);
        Eigen::MatrixXd W = allt.matrixL().solve(BX);
        return W;
    };

    Eigen::MatrixXd Z = thin_q(random_block(n, m, opts.seed));
    Eigen::VectorXd mu_prev = Eigen::VectorXd::Zero(wanted);
    Eigen::VectorXd mu;
    Eigen::MatrixXd small_vectors;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const Eigen::MatrixXd W = apply_c(Z);
        if (W.norm() == 0.0)
            return EigenPairs{Eigen::VectorXd(), Eigen::MatrixXd(n, 0)};

        Eigen::MatrixXd H = Z.transpose() * W;
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        if (es.info() != Eigen::Success || !es.eigenvalues().allFinite())
            throw NumericalError("eigensolver: subspace iteration breakdown");
        mu = es.eigenvalues().reverse();
        small_vectors = es.eigenvectors().rowwise().reverse();

        double change = 0.0;
        for (int j = 0; j < wanted; ++j)
            change = std::max(change, std::abs(mu(j) - mu_prev(j)));
        mu_prev = mu.head(wanted);
        const double scale = std::max(std::abs(mu(0)), 1e-300);
        const bool converged = iter > 0 && change <= opts.tolerance * scale;

        if (converged || iter + 1 == opts.max_iterations) {
            // Ritz vectors in the C-metric, mapped back through x = L^-T y.
            const Eigen::MatrixXd Y = Z * small_vectors;
            const Eigen::MatrixXd X = allt.matrixU().solve(Y);
            return collect(mu, X, k, floor_scale);
        }
        Z = thin_q(W * small_vectors);
    }
    return EigenPairs{Eigen::VectorXd(), Eigen::MatrixXd(n, 0)};
}

// Dense fallback: full solve of the reciprocal pencil B x = mu A x.
template <class ApplyB>
EigenPairs dense_smallest(const Eigen::MatrixXd& A, ApplyB&& applyB, int k,
                          const EigenOptions& opts, double floor_scale) {
    const int n = static_cast<int>(A.rows());
    const Eigen::MatrixXd B = applyB(Eigen::MatrixXd::Identity(n, n));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (B + B.transpose()),
                                                                 0.5 * (A + A.transpose()));
    if (es.info() != Eigen::Success)
        throw NumericalError("eigensolver: dense generalized solve failed");
    const Eigen::VectorXd mu = es.eigenvalues().reverse();
    const Eigen::MatrixXd X = es.eigenvectors().rowwise().reverse();
    (void)opts;
    return collect(mu, X, k, floor_scale);
}

struct DiagApply {
    const Eigen::VectorXd* d;
    Eigen::MatrixXd operator()(const Eigen::MatrixXd& X) const { return d->asDiagonal() * X; }
};

// Dense B restricted to the rows/columns that actually carry entries; the
// deflection-only geometric stiffness touches only the w slots.
struct SupportApply {
    const Eigen::MatrixXd* B;
    std::vector<int> support;
    Eigen::MatrixXd Bsub;

    explicit SupportApply(const Eigen::MatrixXd& mat) : B(&mat) {
        const int n = static_cast<int>(mat.rows());
        for (int i = 0; i < n; ++i) {
            if (mat.row(i).cwiseAbs().maxCoeff() > 0.0)
                support.push_back(i);
        }
        const int ns = static_cast<int>(support.size());
        Bsub.resize(ns, ns);
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j)
                Bsub(i, j) = mat(support[static_cast<std::size_t>(i)], support[static_cast<std::size_t>(j)]);
    }

    Eigen::MatrixXd operator()(const Eigen::MatrixXd& X) const {
        const int ns = static_cast<int>(support.size());
        Eigen::MatrixXd Xs(ns, X.cols());
        for (int i = 0; i < ns; ++i)
            Xs.row(i) = X.row(support[static_cast<std::size_t>(i)]);
        const Eigen::MatrixXd Ys = Bsub * Xs;
        Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(X.rows(), X.cols());
        for (int i = 0; i < ns; ++i)
            Y.row(support[static_cast<std::size_t>(i)]) = Ys.row(i);
        return Y;
    }
};

void check_inputs(int n, int k) {
    if (k < 1)
        throw ConfigError("eigensolver: at least one eigenpair must be requested");
    if (n < 1)
        throw NumericalError("eigensolver: empty system (all DOFs constrained?)");
}

} // namespace

EigenPairs smallest_generalized(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, int k,
                                const EigenOptions& opts) {
    check_inputs(static_cast<int>(A.rows()), k);
    SupportApply apply(B);
    if (A.rows() <= opts.dense_cutoff)
        return dense_smallest(A, apply, k, opts, 1e-12);
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericalError("eigensolver: left operator is not positive definite");
    return subspace_smallest(llt, apply, static_cast<int>(A.rows()), k, opts, 1e-12);
}

EigenPairs smallest_generalized(const Eigen::MatrixXd& A, const Eigen::VectorXd& B_diagonal, int k,
                                const EigenOptions& opts) {
    check_inputs(static_cast<int>(A.rows()), k);
    DiagApply apply{&B_diagonal};
    if (A.rows() <= opts.dense_cutoff)
        return dense_smallest(A, apply, k, opts, 0.0);
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericalError("eigensolver: left operator is not positive definite");
    return subspace_smallest(llt, apply, static_cast<int>(A.rows()), k, opts, 0.0);
}

EigenPairs smallest_generalized_prefactored(const Eigen::LLT<Eigen::MatrixXd>& A_llt,
                                            const Eigen::MatrixXd& B, int k,
                                            const EigenOptions& opts) {
    check_inputs(static_cast<int>(B.rows()), k);
    SupportApply apply(B);
    return subspace_smallest(A_llt, apply, static_cast<int>(B.rows()), k, opts, 1e-12);
}

EigenPairs smallest_generalized_prefactored(const Eigen::LLT<Eigen::MatrixXd>& A_llt,
                                            const Eigen::VectorXd& B_diagonal, int k,
                                            const EigenOptions& opts) {
    check_inputs(static_cast<int>(B_diagonal.size()), k);
    DiagApply apply{&B_diagonal};
    return subspace_smallest(A_llt, apply, static_cast<int>(B_diagonal.size()), k, opts, 0.0);
}

} // namespace sbplate
