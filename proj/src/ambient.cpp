#include "rank1/ambient.hpp"

#include <cmath>

namespace rank1 {

const char* family_name(Family f) {
    switch (f) {
        case Family::C: return "C";
        case Family::H: return "H";
        case Family::O: return "O";
    }
    return "?";
}

std::string SpaceSpec::name() const {
    std::string s = family_name(family);
    s += (sign > 0) ? "P" : "H";
    s += std::to_string(n);
    s += "(";
    s += (sign > 0) ? "+" : "-";
    s += "4c=" + std::to_string(4.0 * c) + ")";
    return s;
}

SpaceSpec make_space(Family family, int sign, int n, double c) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("curvature sign must be +1 or -1");
    if (n < 1) throw std::invalid_argument("n must be a positive integer");
    if (!(c > 0.0)) throw std::invalid_argument("curvature scale c must be positive");
    if (family == Family::O && n != 2) throw std::invalid_argument("octonionic family requires n = 2");
    return SpaceSpec{family, sign, n, c};
}

SpaceSpec parse_space(const std::string& token, int default_sign, int n, double c) {
    Family fam;
    int sign = default_sign;
    std::string t = token;
    if (t.size() == 2 && (t[1] == 'P' || t[1] == 'H')) {
        sign = (t[1] == 'P') ? 1 : -1;
        t = t.substr(0, 1);
    }
    if (t == "C") fam = Family::C;
    else if (t == "H") fam = Family::H;
    else if (t == "O") fam = Family::O;
    else throw std::invalid_argument("unknown family token '" + token + "' (want C/H/O, optionally suffixed P or H)");
    return make_space(fam, sign, n, c);
}

Eigen::Matrix<double, 8, 8> octonion_left_mult(int k) {
    if (k < 1 || k > 7) throw std::invalid_argument("octonion unit index out of range");
    // Fano-plane lines, cyclic: e_a e_b = e_c for each listed (a,b,c).
    static const int lines[7][3] = {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7},
                                    {5, 6, 1}, {6, 7, 2}, {7, 1, 3}};
    int table[8][8] = {};   // table[a][b] = signed index of e_a * e_b (imaginary part)
    int sign[8][8] = {};
    for (int a = 1; a <= 7; ++a) {
        table[0][a] = table[a][0] = a;
        sign[0][a] = sign[a][0] = 1;
    }
    table[0][0] = 0;
    sign[0][0] = 1;
    for (auto& ln : lines) {
        const int a = ln[0], b = ln[1], cc = ln[2];
        auto put = [&](int x, int y, int z) {
            table[x][y] = z; sign[x][y] = 1;
            table[y][x] = z; sign[y][x] = -1;
        };
        put(a, b, cc);
        put(b, cc, a);
        put(cc, a, b);
    }
    Eigen::Matrix<double, 8, 8> L = Eigen::Matrix<double, 8, 8>::Zero();
    for (int j = 0; j < 8; ++j) {
        if (j == k) {  // e_k * e_k = -1
            L(0, j) = -1.0;
            continue;
        }
        if (j == 0) {
            L(k, 0) = 1.0;
            continue;
        }
        L(table[k][j], j) = static_cast<double>(sign[k][j]);
    }
    return L;
}

PointAlgebra::PointAlgebra(SpaceSpec space, std::vector<MatrixXd> J)
    : space_(space), dim_(space.real_dim()), J_(std::move(J)) {}

PointAlgebra PointAlgebra::standard(const SpaceSpec& space) {
    const int n = space.n;
    const int dim = space.real_dim();
    std::vector<MatrixXd> J;
    switch (space.family) {
        case Family::C: {
            // coordinates (x_a, y_a) per complex coordinate; J = mult by i
            MatrixXd J1 = MatrixXd::Zero(dim, dim);
            for (int a = 0; a < n; ++a) {
                J1(2 * a, 2 * a + 1) = -1.0;
                J1(2 * a + 1, 2 * a) = 1.0;
            }
            J.push_back(std::move(J1));
            break;
        }
        case Family::H: {
            // right multiplication by i, j, k on H^n; coordinates
            // (q0, q1, q2, q3) per quaternionic coordinate
            for (int u = 0; u < 3; ++u) {
                MatrixXd Ju = MatrixXd::Zero(dim, dim);
                for (int a = 0; a < n; ++a) {
                    const int o = 4 * a;
                    if (u == 0) {        // x -> x*i
                        Ju(o + 1, o) = 1;  Ju(o + 0, o + 1) = -1;
                        Ju(o + 3, o + 2) = -1; Ju(o + 2, o + 3) = 1;
                    } else if (u == 1) { // x -> x*j
                        Ju(o + 2, o) = 1;  Ju(o + 3, o + 1) = 1;
                        Ju(o + 0, o + 2) = -1; Ju(o + 1, o + 3) = -1;
                    } else {             // x -> x*k
                        Ju(o + 3, o) = 1;  Ju(o + 2, o + 1) = -1;
                        Ju(o + 1, o + 2) = 1;  Ju(o + 0, o + 3) = -1;
                    }
                }
                J.push_back(std::move(Ju));
            }
            break;
        }
        case Family::O: {
            for (int k = 1; k <= 7; ++k) {
                MatrixXd Jk = MatrixXd::Zero(16, 16);
                Jk.block<8, 8>(0, 0) = octonion_left_mult(k);
                Jk.block<8, 8>(8, 8) = octonion_left_mult(k);
                J.push_back(std::move(Jk));
            }
            break;
        }
    }
    return PointAlgebra(space, std::move(J));
}

PointAlgebra PointAlgebra::regauged(const Eigen::Matrix3d& g) const {
    if (space_.family != Family::H)
        throw std::invalid_argument("structure-frame re-gauging applies to the quaternionic family only");
    if ((g.transpose() * g - Eigen::Matrix3d::Identity()).norm() > 1e-10)
        throw std::invalid_argument("gauge must be orthogonal");
    std::vector<MatrixXd> J2(3);
    for (int a = 0; a < 3; ++a) {
        J2[a] = g(a, 0) * J_[0] + g(a, 1) * J_[1] + g(a, 2) * J_[2];
    }
    return PointAlgebra(space_, std::move(J2));
}

double PointAlgebra::curvature(const VectorXd& X, const VectorXd& Y, const VectorXd& Z,
                               const VectorXd& W) const {
    if (X.size() != dim_ || Y.size() != dim_ || Z.size() != dim_ || W.size() != dim_)
        throw std::invalid_argument("curvature: dimension mismatch");
    double acc = Y.dot(Z) * X.dot(W) - X.dot(Z) * Y.dot(W);
    for (const auto& J : J_) {
        const VectorXd JZ = J * Z;
        const VectorXd JW = J * W;
        const VectorXd JY = J * Y;
        acc += Y.dot(JZ) * X.dot(JW) - X.dot(JZ) * Y.dot(JW) - 2.0 * X.dot(JY) * Z.dot(JW);
    }
    return space_.sign * space_.c * acc;
}

double PointAlgebra::sectional(const VectorXd& X, const VectorXd& Y) const {
    if (X.size() != dim_ || Y.size() != dim_)
        throw std::invalid_argument("sectional: dimension mismatch");
    const double wedge2 = X.squaredNorm() * Y.squaredNorm() - std::pow(X.dot(Y), 2);
    if (!(wedge2 > 1e-24 * std::pow(X.squaredNorm() + Y.squaredNorm(), 2)))
        throw std::domain_error("sectional: degenerate plane");
    const VectorXd u = X.normalized();
    const VectorXd w = (Y - Y.dot(u) * u).normalized();
    double s = 0.0;
    for (const auto& J : J_) {
        const double p = u.dot(J * w);
        s += p * p;
    }
    return space_.sign * space_.c * (1.0 + 3.0 * s);
}

double PointAlgebra::ricci(const VectorXd& X) const {
    if (X.size() != dim_) throw std::invalid_argument("ricci: dimension mismatch");
    if (std::abs(X.norm() - 1.0) > 1e-8) throw std::invalid_argument("ricci: X must be a unit vector");
    double acc = 0.0;
    VectorXd e = VectorXd::Zero(dim_);
    for (int j = 0; j < dim_; ++j) {
        e.setZero();
        e(j) = 1.0;
        acc += curvature(X, e, e, X);
    }
    return acc;
}

VectorXd PointAlgebra::random_vector(SampleRng& rng) const {
    VectorXd v(dim_);
    for (int i = 0; i < dim_; ++i) v(i) = rng.normal();
    return v;
}

VectorXd PointAlgebra::random_unit(SampleRng& rng) const {
    VectorXd v = random_vector(rng);
    while (v.norm() < 1e-8) v = random_vector(rng);
    return v.normalized();
}

}  // namespace rank1
