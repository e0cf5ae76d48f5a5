#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbplate/basis.hpp"
#include "sbplate/errors.hpp"

namespace sbplate {

/// Plate planform and thickness. psi is the skew angle in radians; the
/// physical map from the parent (s, t) in [0,a]x[0,b] is
/// x = s + t sin(psi), y = t cos(psi).
struct PlateGeometry {
    double a;   ///< length along the graded direction [m]
    double b;   ///< width [m]
    double h;   ///< thickness [m]
    double psi; ///< skew angle [rad]

    void validate() const;
};

/// Four boundary letters from {S, C, F} assigned to edges in the fixed
/// order [t=0, s=a, t=b, s=0] of the parent domain.
class BoundarySpec {
public:
    static BoundarySpec parse(const std::string& letters);

    char edge(int k) const { return letters_.at(static_cast<std::size_t>(k)); }
    std::string str() const { return std::string(letters_.begin(), letters_.end()); }

    /// Letters shifted by one edge, i.e. the alternative assignment of the
    /// same letter sequence to the plate edges (SCSC -> CSCS).
    BoundarySpec shifted() const;

private:
    std::array<char, 4> letters_{};
};

struct ElementJacobian {
    double x_eta, x_zeta, y_eta, y_zeta;
    double det;
};

/// Structured spectral mesh of a (possibly skew) plate. Nodes carry both the
/// parent coordinates (s, t) and the physical coordinates (x, y); plate DOFs
/// are (theta_ux, theta_uy, w) per node in that order.
class SpectralMesh {
public:
    SpectralMesh(const PlateGeometry& geom, int nex, int nez, int order);

    const PlateGeometry& geometry() const { return geom_; }
    int order() const { return order_; }
    int nex() const { return nex_; }
    int nez() const { return nez_; }
    int num_nodes() const { return static_cast<int>(node_s_.size()); }
    int num_elements() const { return nex_ * nez_; }
    int nodes_per_element() const { return basis_.num_nodes(); }

    double node_s(int i) const { return node_s_(i); }
    double node_t(int i) const { return node_t_(i); }
    double node_x(int i) const { return node_x_(i); }
    double node_y(int i) const { return node_y_(i); }

    const SpectralBasis2D& basis() const { return basis_; }

    /// Global node ids of element e, ordered by the local tensor numbering.
    const std::vector<int>& element_nodes(int e) const { return connectivity_.at(static_cast<std::size_t>(e)); }

    /// Isoparametric Jacobian at a parent point of element e.
    ElementJacobian jacobian(int e, double eta, double zeta) const;

    /// Node ids along edge k in the fixed edge order [t=0, s=a, t=b, s=0].
    const std::vector<int>& edge_nodes(int k) const { return edges_.at(static_cast<std::size_t>(k)); }
    /// Unit physical tangent of edge k.
    const Eigen::Vector2d& edge_tangent(int k) const { return tangents_.at(static_cast<std::size_t>(k)); }

private:
    PlateGeometry geom_;
    int nex_, nez_, order_;
    SpectralBasis2D basis_;
    Eigen::VectorXd node_s_, node_t_, node_x_, node_y_;
    std::vector<std::vector<int>> connectivity_;
    std::array<std::vector<int>, 4> edges_;
    std::array<Eigen::Vector2d, 4> tangents_;
};

SpectralMesh build_mesh(const PlateGeometry& geom, int nex, int nez, int order);

/// Resolved constraint state of one node. If `rotated` is set, the node's
/// (theta_ux, theta_uy) pair is re-expressed as (theta_t, theta_n) along the
/// stored unit tangent and the tangential slot is eliminated.
struct NodeConstraint {
    bool fix_w = false;
    bool fix_theta_x = false;
    bool fix_theta_y = false;
    bool rotated = false;
    double tx = 1.0, ty = 0.0;
};

struct ConstraintSet {
    std::vector<NodeConstraint> nodes;

    int count_constrained() const;
    /// Fixed mask over plate DOFs (3 per node; rotated nodes fix slot 0).
    std::vector<bool> fixed_mask() const;
    /// Plate DOF ids kept after elimination, ascending.
    std::vector<int> free_dofs() const;
};

/// Resolve boundary letters into nodal constraints. C clamps all three plate
/// DOFs; S (hard support) fixes w and the edge-tangential rotation; F leaves
/// the edge free. Corner nodes take the union of both adjoining edges.
ConstraintSet constrained_dofs(const SpectralMesh& mesh, const BoundarySpec& bc);

} // namespace sbplate
