#pragma once

#include <vector>

#include "rank1/ambient.hpp"

namespace rank1 {

// Orthogonal splitting of the model tangent space at a point of a
// submanifold: columns of `tangent` span the m-dimensional tangent space,
// columns of `normal` the k-dimensional normal space.
struct SubspacePair {
    MatrixXd tangent;
    MatrixXd normal;

    int dim() const { return static_cast<int>(tangent.rows()); }
    int m() const { return static_cast<int>(tangent.cols()); }
    int k() const { return static_cast<int>(normal.cols()); }
};

SubspacePair make_subspace_pair(MatrixXd tangent, MatrixXd normal);
SubspacePair random_subspace_pair(int dim, int m, SampleRng& rng);

// First adapted frame: an orthonormal normal frame whose first vector is
// H/||H||. Rows of `rotation` are the new normal frame in the input basis.
struct FrameTypeI {
    MatrixXd rotation;  // k x k orthogonal, row 0 = H direction
};

FrameTypeI build_type1(const VectorXd& H);

// Second adapted frame, per structure operator: tangent/normal frames with
// the canonical angle pairs (tau_r, nu_r).
struct FrameTypeII {
    MatrixXd tangent;  // dim x m, ambient coordinates
    MatrixXd normal;   // dim x k
    std::vector<double> tau;  // ceil(k/2) entries, incl. the odd-k slot
    std::vector<double> nu;
};

FrameTypeII build_type2(const PointAlgebra& alg, const SubspacePair& pair, int xi);

// Tangent/normal components of each structure operator, as matrices in the
// bases of the given SubspacePair, plus the derived norms and the curvature
// contraction omega.
struct SplitOperators {
    std::vector<MatrixXd> P;  // m x m, skew
    std::vector<MatrixXd> F;  // k x m
    std::vector<MatrixXd> t;  // m x k
    std::vector<MatrixXd> f;  // k x k, skew
    std::vector<double> P2;   // ||P_xi||^2
    std::vector<double> F2;
    std::vector<double> t2;
    std::vector<double> FP2;  // ||F_xi P_xi||^2
    MatrixXd omega;           // k x m: omega(alpha, i)
    double omega2 = 0.0;
    double bound310_rhs = 0.0;  // 9(d-1)c^2 sum_xi ||F_xi P_xi||^2
};

SplitOperators split_operators(const PointAlgebra& alg, const SubspacePair& pair);

}  // namespace rank1
