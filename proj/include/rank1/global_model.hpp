#pragma once

#include <vector>

#include "rank1/ambient.hpp"

namespace rank1 {

// Dense curvature components R(b_a, b_b, b_c, b_d) in a fixed frame.
struct Curv4 {
    int dim = 0;
    std::vector<double> v;

    double operator()(int a, int b, int c, int d) const {
        return v[((static_cast<size_t>(a) * dim + b) * dim + c) * dim + d];
    }
    double& at(int a, int b, int c, int d) {
        return v[((static_cast<size_t>(a) * dim + b) * dim + c) * dim + d];
    }
    double contract(const VectorXd& X, const VectorXd& Y, const VectorXd& Z,
                    const VectorXd& W) const;
};

// Coordinate realizations of the C and H families, both signs: the quadric
// |z|^2 = +1 in F^{n+1} (resp. <z,z> = -1 for the noncompact duals) modulo
// the right scalar group, with horizontal-lift tangent representation.
// Internally the model is kept at c = 1; lengths scale by 1/sqrt(c) at the
// API boundary. The octonionic family has no coordinate model here.
class GlobalModel {
public:
    static GlobalModel create(const SpaceSpec& space);

    const SpaceSpec& space() const { return space_; }
    int dim() const { return space_.real_dim(); }
    int ambient_dim() const { return amb_dim_; }

    VectorXd base_point() const;
    VectorXd random_point(SampleRng& rng) const;
    // representative scaled to <z,z> = +-1
    VectorXd normalize(const VectorXd& z) const;
    bool same_point(const VectorXd& z, const VectorXd& w, double tol = 1e-9) const;

    // quotient metric on ambient velocities of curves through z (c-scaled)
    double metric(const VectorXd& z, const VectorXd& u, const VectorXd& v) const;
    // orthonormal (w.r.t. the c-scaled metric) horizontal basis at z
    MatrixXd horizontal_basis(const VectorXd& z) const;
    VectorXd horizontal_project(const VectorXd& z, const VectorXd& u) const;

    struct GeodesicEnd {
        VectorXd point;
        VectorXd velocity;  // ambient representative of the unit tangent
    };
    // unit-speed geodesic from z in horizontal direction v, arclength s
    GeodesicEnd geodesic(const VectorXd& z, const VectorXd& v, double s) const;
    double distance(const VectorXd& z, const VectorXd& w) const;

    // structure operators restricted to the horizontal space at z, expressed
    // in the supplied orthonormal horizontal basis
    std::vector<MatrixXd> induced_structure(const VectorXd& z, const MatrixXd& basis) const;

    // --- finite-difference machinery (unit scale, c = 1) ---
    // chart x -> [z + B x]; exact inverse available for points near z
    VectorXd chart_point(const VectorXd& z, const MatrixXd& basis, const VectorXd& x) const;
    VectorXd chart_coords(const VectorXd& z, const MatrixXd& basis, const VectorXd& p) const;
    MatrixXd metric_matrix(const VectorXd& z, const MatrixXd& basis, const VectorXd& x) const;
    // Christoffel symbols Gamma[k](i,j) at chart coordinates x, step h
    std::vector<MatrixXd> christoffel(const VectorXd& z, const MatrixXd& basis,
                                      const VectorXd& x, double h) const;
    // full lowered curvature tensor at chart coordinates x
    Curv4 fd_curvature(const VectorXd& z, const MatrixXd& basis, const VectorXd& x,
                       double h) const;
    // parallel transport of frame columns along the chart image of the
    // geodesic t -> geodesic(z, dir, t), t in [0, s]
    MatrixXd parallel_transport(const VectorXd& z, const MatrixXd& basis,
                                const VectorXd& dir, double s, int steps, double h) const;

    // scalar-field helpers (components of <.,.> over F)
    double re_form(const VectorXd& u, const VectorXd& v) const;
    VectorXd form(const VectorXd& u, const VectorXd& v) const;  // d components
    VectorXd scalar_mult(const VectorXd& z, const VectorXd& q) const;  // z * q

private:
    explicit GlobalModel(const SpaceSpec& space);

    SpaceSpec space_;
    int amb_dim_;                 // d * (n + 1)
    double sigma_;                // +1 compact, -1 noncompact
    std::vector<MatrixXd> Jamb_;  // right scalar multiplication on F^{n+1}
    VectorXd signs_;              // signature of the real form
};

}  // namespace rank1
