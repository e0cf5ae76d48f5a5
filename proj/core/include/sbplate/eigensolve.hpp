#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "sbplate/errors.hpp"

namespace sbplate {

struct EigenOptions {
    int max_iterations = 400;
    double tolerance = 1e-11;  ///< relative stagnation of the wanted eigenvalues
    int min_extra = 8;         ///< subspace padding beyond the wanted count
    unsigned seed = 0x5b17a9e3u;
    int dense_cutoff = 260;    ///< below this size solve the full dense pencil
};

/// Eigenpairs of A x = lambda B x, ascending by lambda; vectors are
/// A-orthonormal columns.
struct EigenPairs {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// k smallest finite eigenvalues of A x = lambda B x with A symmetric
/// positive definite and B symmetric positive semi-definite. Directions in
/// the null space of B (infinite lambda) are discarded, so fewer than k pairs
/// may be returned when rank(B) < k.
EigenPairs smallest_generalized(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, int k,
                                const EigenOptions& opts = {});
EigenPairs smallest_generalized(const Eigen::MatrixXd& A, const Eigen::VectorXd& B_diagonal, int k,
                                const EigenOptions& opts = {});

/// Variants reusing an existing Cholesky factor of A (the matrix itself is
/// not needed). `n` is the system size.
EigenPairs smallest_generalized_prefactored(const Eigen::LLT<Eigen::MatrixXd>& A_llt,
                                            const Eigen::MatrixXd& B, int k,
                                            const EigenOptions& opts = {});
EigenPairs smallest_generalized_prefactored(const Eigen::LLT<Eigen::MatrixXd>& A_llt,
                                            const Eigen::VectorXd& B_diagonal, int k,
                                            const EigenOptions& opts = {});

} // namespace sbplate
