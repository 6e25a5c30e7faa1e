#include "rank1/codazzi.hpp"

#include <cmath>

namespace rank1 {

double GradTensor::norm2() const {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return acc;
}

MatrixXd GradTensor::grad_H() const {
    MatrixXd g = MatrixXd::Zero(m, k);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int a = 0; a < k; ++a) g(i, a) += get(i, j, j, a);
    return g;
}

double GradTensor::grad_H_norm2() const { return grad_H().squaredNorm(); }

GradTensor codazzi_defect(const GradTensor& T) {
    GradTensor D(T.m, T.k);
    for (int i = 0; i < T.m; ++i)
        for (int j = 0; j < T.m; ++j)
            for (int l = 0; l < T.m; ++l)
                for (int a = 0; a < T.k; ++a)
                    D.at(i, j, l, a) = T.get(i, j, l, a) - T.get(j, i, l, a);
    return D;
}

GradTensor curvature_defect(const PointAlgebra& alg, const SubspacePair& pair) {
    const int m = pair.m(), k = pair.k();
    const double epsc = alg.space().sign * alg.space().c;
    GradTensor A(m, k);
    // R(e_i, e_j, e_l, e_a) = eps c sum_xi (B_jl t_ia - B_il t_ja - 2 B_ij t_la)
    for (const auto& J : alg.structure_ops()) {
        const MatrixXd B = pair.tangent.transpose() * (J * pair.tangent);
        const MatrixXd t = pair.tangent.transpose() * (J * pair.normal);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int l = 0; l < m; ++l)
                    for (int a = 0; a < k; ++a)
                        A.at(i, j, l, a) -=
                            epsc * (B(j, l) * t(i, a) - B(i, l) * t(j, a) - 2.0 * B(i, j) * t(l, a));
    }
    return A;
}

GradTensor codazzi_particular(const GradTensor& A) {
    GradTensor E(A.m, A.k);
    for (int i = 0; i < A.m; ++i)
        for (int j = 0; j < A.m; ++j)
            for (int l = 0; l < A.m; ++l)
                for (int a = 0; a < A.k; ++a)
                    E.at(i, j, l, a) = (A.get(i, j, l, a) + A.get(i, l, j, a)) / 3.0;
    return E;
}

GradTensor random_symmetric3(int m, int k, SampleRng& rng) {
    GradTensor S(m, k);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            for (int l = j; l < m; ++l)
                for (int a = 0; a < k; ++a) {
                    const double x = rng.normal();
                    S.at(i, j, l, a) = x;
                    S.at(i, l, j, a) = x;
                    S.at(j, i, l, a) = x;
                    S.at(j, l, i, a) = x;
                    S.at(l, i, j, a) = x;
                    S.at(l, j, i, a) = x;
                }
    return S;
}

GradTensor full_symmetrization(const GradTensor& T) {
    GradTensor S(T.m, T.k);
    for (int i = 0; i < T.m; ++i)
        for (int j = 0; j < T.m; ++j)
            for (int l = 0; l < T.m; ++l)
                for (int a = 0; a < T.k; ++a)
                    S.at(i, j, l, a) =
                        (T.get(i, j, l, a) + T.get(j, l, i, a) + T.get(l, i, j, a) +
                         T.get(i, l, j, a) + T.get(j, i, l, a) + T.get(l, j, i, a)) /
                        6.0;
    return S;
}

GradTensor sample_codazzi(const PointAlgebra& alg, const SubspacePair& pair, SampleRng& rng) {
    GradTensor T = random_symmetric3(pair.m(), pair.k(), rng);
    const GradTensor E = codazzi_particular(curvature_defect(alg, pair));
    for (size_t i = 0; i < T.v.size(); ++i) T.v[i] += E.v[i];
    return T;
}

double gradient_trace_bound_margin(const GradTensor& T, double omega2, double eta) {
    const int m = T.m;
    const double lhs = T.norm2();
    const double rhs = (3.0 / (m + 2) - eta) * T.grad_H_norm2() -
                       2.0 / (m + 2) * (2.0 / ((m + 2) * eta) - static_cast<double>(m) / (m - 1)) *
                           omega2;
    return lhs - rhs;
}

double gradient_omega_bound_margin(const GradTensor& T, double omega2, int d) {
    return T.norm2() - 2.0 * (T.m + 1) / (9.0 * (d - 1.0) * (d - 1.0)) * omega2;
}

double gradient_mean_bound_margin(const GradTensor& T, int d) {
    return T.norm2() - 2.0 * (10.0 - d) / (9.0 * (T.m + 2)) * T.grad_H_norm2();
}

int mean_gradient_threshold(int d) {
    switch (d) {
        case 2: return 8;
        case 4: return 11;
        case 8: return 1;
    }
    throw std::invalid_argument("mean_gradient_threshold: d must be 2, 4 or 8");
}

}  // namespace rank1
