#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "rank1/rng.hpp"

namespace rank1 {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Family { C, H, O };

const char* family_name(Family f);

// Number of structure operators is dim_coeff - 1.
inline int dim_coeff(Family f) {
    switch (f) {
        case Family::C: return 2;
        case Family::H: return 4;
        case Family::O: return 8;
    }
    return 0;
}

// One of the six ambient families: CP^n/CH^n, HP^n/HH^n, OP^2/OH^2,
// normalized so the extreme sectional curvatures are +-c and +-4c.
struct SpaceSpec {
    Family family;
    int sign;     // +1 compact type, -1 noncompact type
    int n;        // complex/quaternionic/octonionic dimension
    double c;     // curvature scale

    int d() const { return dim_coeff(family); }
    int real_dim() const { return d() * n; }
    double einstein_const() const { return sign * c * (d() * n + 3 * d() - 4); }
    std::string name() const;
};

SpaceSpec make_space(Family family, int sign, int n, double c);
SpaceSpec parse_space(const std::string& token, int default_sign, int n, double c);

// Tangent-space model at a point: Euclidean R^{dn} with the structure
// operators J_1..J_{d-1} as matrices. All curvature evaluation is algebraic.
class PointAlgebra {
public:
    static PointAlgebra standard(const SpaceSpec& space);

    // Quaternionic family only: rotate the structure frame by g in SO(3).
    PointAlgebra regauged(const Eigen::Matrix3d& g) const;

    int dim() const { return dim_; }
    const SpaceSpec& space() const { return space_; }
    const std::vector<MatrixXd>& structure_ops() const { return J_; }

    // R(X,Y,Z,W) per the curvature formula of the ambient family.
    double curvature(const VectorXd& X, const VectorXd& Y, const VectorXd& Z,
                     const VectorXd& W) const;

    // K(X,Y) for the plane spanned by X, Y (internally orthonormalized).
    double sectional(const VectorXd& X, const VectorXd& Y) const;

    // sum_j R(X, e_j, e_j, X) for unit X; equals the Einstein constant.
    double ricci(const VectorXd& X) const;

    VectorXd random_vector(SampleRng& rng) const;
    VectorXd random_unit(SampleRng& rng) const;

private:
    PointAlgebra(SpaceSpec space, std::vector<MatrixXd> J);

    SpaceSpec space_;
    int dim_;
    std::vector<MatrixXd> J_;
};

// Octonion multiplication table helper (used by PointAlgebra and tests):
// left multiplication by the imaginary unit e_k on O = R^8.
Eigen::Matrix<double, 8, 8> octonion_left_mult(int k);

}  // namespace rank1
