#pragma once

#include <Eigen/Dense>

#include "sbplate/errors.hpp"

namespace sbplate {

/// Gauss-Lobatto-Legendre rule of order p together with the Lagrange nodal
/// basis on its points. Nodes are +-1 plus the roots of L_p'; weights are
/// 2 / (p (p+1) L_p(x_i)^2).
class SpectralBasis1D {
public:
    explicit SpectralBasis1D(int order);

    int order() const { return order_; }
    int num_nodes() const { return order_ + 1; }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }

    /// Nodal differentiation matrix: diff()(i, j) = N_j'(node_i).
    const Eigen::MatrixXd& diff() const { return diff_; }

    /// Cardinal values and first derivatives at xi in [-1, 1], evaluated in
    /// barycentric form for stability at high order.
    void eval(double xi, Eigen::VectorXd& values, Eigen::VectorXd& derivatives) const;

private:
    int order_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd bary_;
    Eigen::MatrixXd diff_;
};

/// Convenience factory matching the quadrature-centric call sites.
SpectralBasis1D gll_rule(int order);

/// Flat 1-based node index from 1-based (i_eta, i_zeta); the numbering
/// ascends along eta first, then zeta.
int node_index_2d(int i_eta, int i_zeta, int p_eta);

/// Tensor-product spectral basis on [-1, 1]^2 with independent orders.
class SpectralBasis2D {
public:
    SpectralBasis2D(int p_eta, int p_zeta);

    const SpectralBasis1D& eta() const { return eta_; }
    const SpectralBasis1D& zeta() const { return zeta_; }
    int num_nodes() const { return eta_.num_nodes() * zeta_.num_nodes(); }

    /// 0-based flat index of the (i_eta, i_zeta) grid point (0-based inputs).
    int flat_index(int i_eta, int i_zeta) const;
    /// Inverse of flat_index.
    void grid_index(int flat, int& i_eta, int& i_zeta) const;

    /// Tensor weight of flat node i: w_{i_eta} * w_{i_zeta}.
    double weight(int flat) const;

    /// Shape values and parent-coordinate derivatives at (eta, zeta).
    void eval(double eta, double zeta, Eigen::VectorXd& N, Eigen::VectorXd& dN_deta,
              Eigen::VectorXd& dN_dzeta) const;

private:
    SpectralBasis1D eta_;
    SpectralBasis1D zeta_;
};

} // namespace sbplate
