#include "sbplate/basis.hpp"

#include <cmath>
#include <string>

namespace sbplate {

namespace {

// Legendre polynomial L_p and derivative L_p' by the three-term recurrence.
void legendre(int p, double x, double& L, double& dL) {
    double lm1 = 1.0, l = x;
    if (p == 0) {
        L = 1.0;
        dL = 0.0;
        return;
    }
    for (int k = 2; k <= p; ++k) {
        const double lk = ((2.0 * k - 1.0) * x * l - (k - 1.0) * lm1) / k;
        lm1 = l;
        l = lk;
    }
    L = l;
    // (1 - x^2) L_p' = p (L_{p-1} - x L_p)
    if (std::abs(x) < 1.0)
        dL = p * (lm1 - x * l) / (1.0 - x * x);
    else
        dL = 0.5 * p * (p + 1.0) * (x > 0 ? 1.0 : std::pow(-1.0, p + 1));
}

// Interior GLL nodes: roots of L_p', Newton iteration from Chebyshev-Lobatto
// initial guesses. Tolerance 1e-14 on the update.
Eigen::VectorXd gll_nodes(int p) {
    Eigen::VectorXd x(p + 1);
    x(0) = -1.0;
    x(p) = 1.0;
    const double pi = std::acos(-1.0);
    for (int j = 1; j < p; ++j) {
        double xi = -std::cos(pi * j / p);
        for (int it = 0; it < 100; ++it) {
            double L, dL;
            legendre(p, xi, L, dL);
            // f = L_p', f' = L_p'' = (2 x L_p' - p (p+1) L_p) / (1 - x^2)
            const double f = dL;
            const double fp = (2.0 * xi * dL - p * (p + 1.0) * L) / (1.0 - xi * xi);
            const double dx = f / fp;
            xi -= dx;
            if (std::abs(dx) < 1e-14)
                break;
        }
        x(j) = xi;
    }
    // Enforce exact symmetry about the origin.
    for (int j = 1; j <= p / 2; ++j) {
        const double v = 0.5 * (x(p - j) - x(j));
        x(j) = -v;
        x(p - j) = v;
    }
    if (p % 2 == 0)
        x(p / 2) = 0.0;
    return x;
}

} // namespace

SpectralBasis1D::SpectralBasis1D(int order) : order_(order) {
    if (order < 1)
        throw ConfigError("gll_rule: order must be >= 1");

    nodes_ = gll_nodes(order);

    const int n = order + 1;
    weights_.resize(n);
    for (int i = 0; i < n; ++i) {
        double L, dL;
        legendre(order, nodes_(i), L, dL);
        weights_(i) = 2.0 / (order * (order + 1.0) * L * L);
    }

    // Barycentric weights, normalized by the largest magnitude.
    bary_.resize(n);
    for (int j = 0; j < n; ++j) {
        double b = 1.0;
        for (int k = 0; k < n; ++k) {
            if (k != j)
                b *= nodes_(j) - nodes_(k);
        }
        bary_(j) = 1.0 / b;
    }
    bary_ /= bary_.cwiseAbs().maxCoeff();

    diff_.resize(n, n);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            diff_(i, j) = (bary_(j) / bary_(i)) / (nodes_(i) - nodes_(j));
            rowsum += diff_(i, j);
        }
        diff_(i, i) = -rowsum;
    }
}

void SpectralBasis1D::eval(double xi, Eigen::VectorXd& values, Eigen::VectorXd& derivatives) const {
    if (xi < -1.0 - 1e-12 || xi > 1.0 + 1e-12)
        throw DomainError("SpectralBasis1D::eval: coordinate outside [-1, 1]");

    const int n = num_nodes();
    values.setZero(n);
    derivatives.resize(n);

    for (int i = 0; i < n; ++i) {
        if (std::abs(xi - nodes_(i)) < 1e-13) {
            values(i) = 1.0;
            derivatives = diff_.row(i).transpose();
            return;
        }
    }

    double s = 0.0, t = 0.0;
    Eigen::VectorXd g(n);
    for (int j = 0; j < n; ++j) {
        g(j) = bary_(j) / (xi - nodes_(j));
        s += g(j);
        t += g(j) / (xi - nodes_(j));
    }
    for (int j = 0; j < n; ++j) {
        values(j) = g(j) / s;
        derivatives(j) = values(j) * (t / s - 1.0 / (xi - nodes_(j)));
    }
}

SpectralBasis1D gll_rule(int order) { return SpectralBasis1D(order); }

int node_index_2d(int i_eta, int i_zeta, int p_eta) {
    if (i_eta < 1 || i_eta > p_eta + 1 || i_zeta < 1)
        throw std::out_of_range("node_index_2d: index outside the element grid");
    return (i_zeta - 1) * (p_eta + 1) + i_eta;
}

SpectralBasis2D::SpectralBasis2D(int p_eta, int p_zeta) : eta_(p_eta), zeta_(p_zeta) {}

int SpectralBasis2D::flat_index(int i_eta, int i_zeta) const {
    if (i_zeta < 0 || i_zeta >= zeta_.num_nodes())
        throw std::out_of_range("SpectralBasis2D: zeta index outside the element grid");
    return node_index_2d(i_eta + 1, i_zeta + 1, eta_.order()) - 1;
}

void SpectralBasis2D::grid_index(int flat, int& i_eta, int& i_zeta) const {
    const int ne = eta_.num_nodes();
    if (flat < 0 || flat >= num_nodes())
        throw std::out_of_range("SpectralBasis2D: flat index outside the element grid");
    i_eta = flat % ne;
    i_zeta = flat / ne;
}

double SpectralBasis2D::weight(int flat) const {
    int ie, iz;
    grid_index(flat, ie, iz);
    return eta_.weights()(ie) * zeta_.weights()(iz);
}

void SpectralBasis2D::eval(double eta, double zeta, Eigen::VectorXd& N, Eigen::VectorXd& dN_deta,
                           Eigen::VectorXd& dN_dzeta) const {
    Eigen::VectorXd ne, dne, nz, dnz;
    eta_.eval(eta, ne, dne);
    zeta_.eval(zeta, nz, dnz);

    const int n = num_nodes();
    N.resize(n);
    dN_deta.resize(n);
    dN_dzeta.resize(n);
    for (int iz = 0; iz < zeta_.num_nodes(); ++iz) {
        for (int ie = 0; ie < eta_.num_nodes(); ++ie) {
            const int i = flat_index(ie, iz);
            N(i) = ne(ie) * nz(iz);
            dN_deta(i) = dne(ie) * nz(iz);
            dN_dzeta(i) = ne(ie) * dnz(iz);
        }
    }
}

} // namespace sbplate
