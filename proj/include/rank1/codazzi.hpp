#pragma once

#include "rank1/frames.hpp"

namespace rank1 {

// Normal-bundle-valued 3-tensor T(i; j, l)^alpha modelling the covariant
// derivative of a second fundamental form; symmetric in (j, l).
struct GradTensor {
    int m = 0, k = 0;
    std::vector<double> v;

    GradTensor() = default;
    GradTensor(int m_, int k_) : m(m_), k(k_), v(static_cast<size_t>(m_) * m_ * m_ * k_, 0.0) {}

    double& at(int i, int j, int l, int a) {
        return v[((static_cast<size_t>(i) * m + j) * m + l) * k + a];
    }
    double get(int i, int j, int l, int a) const {
        return v[((static_cast<size_t>(i) * m + j) * m + l) * k + a];
    }

    double norm2() const;
    MatrixXd grad_H() const;  // (i, alpha) -> sum_j T(i; j, j)^alpha
    double grad_H_norm2() const;
};

// antisymmetrized part D(i,j; l)^a = T(i;j,l)^a - T(j;i,l)^a
GradTensor codazzi_defect(const GradTensor& T);

// curvature-sourced defect A(i,j; l)^a = -R(e_i, e_j, e_l, e_a) and the
// particular solution E with defect(E) = A
GradTensor curvature_defect(const PointAlgebra& alg, const SubspacePair& pair);
GradTensor codazzi_particular(const GradTensor& A);

GradTensor random_symmetric3(int m, int k, SampleRng& rng);

// projection onto fully symmetric 3-tensors; subtracting it from the
// particular solution reaches the minimal-norm Codazzi tensor, where the
// gradient inequalities are closest to equality
GradTensor full_symmetrization(const GradTensor& T);

// random fully symmetric part + curvature particular solution
GradTensor sample_codazzi(const PointAlgebra& alg, const SubspacePair& pair, SampleRng& rng);

// margins of the gradient inequalities (>= 0 means the inequality holds)
double gradient_trace_bound_margin(const GradTensor& T, double omega2, double eta);
double gradient_omega_bound_margin(const GradTensor& T, double omega2, int d);
double gradient_mean_bound_margin(const GradTensor& T, int d);
// smallest dimension at which the mean-gradient bound applies, per family
int mean_gradient_threshold(int d);

}  // namespace rank1
