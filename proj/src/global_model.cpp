#include "rank1/global_model.hpp"

#include <cmath>

namespace rank1 {

double Curv4::contract(const VectorXd& X, const VectorXd& Y, const VectorXd& Z,
                       const VectorXd& W) const {
    double acc = 0.0;
    for (int a = 0; a < dim; ++a) {
        if (X(a) == 0.0) continue;
        for (int b = 0; b < dim; ++b) {
            if (Y(b) == 0.0) continue;
            for (int c = 0; c < dim; ++c) {
                if (Z(c) == 0.0) continue;
                double inner = 0.0;
                for (int e = 0; e < dim; ++e) inner += (*this)(a, b, c, e) * W(e);
                acc += X(a) * Y(b) * Z(c) * inner;
            }
        }
    }
    return acc;
}

GlobalModel::GlobalModel(const SpaceSpec& space)
    : space_(space),
      amb_dim_(space.d() * (space.n + 1)),
      sigma_(space.sign > 0 ? 1.0 : -1.0) {
    const int d = space.d();
    const int nc = space.n + 1;
    // right scalar multiplication on F^{n+1}: same block pattern as the
    // pointwise structure operators, one block per F-coordinate
    SpaceSpec lifted = space;
    lifted.n = nc;
    lifted.c = 1.0;
    Jamb_ = PointAlgebra::standard(lifted).structure_ops();
    signs_ = VectorXd::Ones(amb_dim_);
    if (space.sign < 0) signs_.head(d).setConstant(-1.0);
}

GlobalModel GlobalModel::create(const SpaceSpec& space) {
    if (space.family == Family::O)
        throw std::domain_error("pointwise-only family: the octonionic plane has no coordinate model here");
    return GlobalModel(space);
}

double GlobalModel::re_form(const VectorXd& u, const VectorXd& v) const {
    return u.cwiseProduct(signs_).dot(v);
}

VectorXd GlobalModel::form(const VectorXd& u, const VectorXd& v) const {
    VectorXd q(space_.d());
    q(0) = re_form(u, v);
    for (size_t k = 0; k < Jamb_.size(); ++k) q(static_cast<int>(k) + 1) = -re_form(u, Jamb_[k] * v);
    return q;
}

VectorXd GlobalModel::scalar_mult(const VectorXd& z, const VectorXd& q) const {
    VectorXd out = q(0) * z;
    for (size_t k = 0; k < Jamb_.size(); ++k) out += q(static_cast<int>(k) + 1) * (Jamb_[k] * z);
    return out;
}

VectorXd GlobalModel::normalize(const VectorXd& z) const {
    const double s2 = sigma_ * re_form(z, z);
    if (!(s2 > 1e-14)) throw std::domain_error("point representative leaves the model quadric");
    return z / std::sqrt(s2);
}

VectorXd GlobalModel::horizontal_project(const VectorXd& z, const VectorXd& u) const {
    const VectorXd zh = normalize(z);
    VectorXd out = u - sigma_ * re_form(u, zh) * zh;
    for (const auto& J : Jamb_) {
        const VectorXd Jz = J * zh;
        out -= sigma_ * re_form(out, Jz) * Jz;
    }
    return out;
}

double GlobalModel::metric(const VectorXd& z, const VectorXd& u, const VectorXd& v) const {
    const double s2 = sigma_ * re_form(z, z);
    if (!(s2 > 1e-14)) throw std::domain_error("point representative leaves the model quadric");
    const VectorXd pu = horizontal_project(z, u);
    const VectorXd pv = horizontal_project(z, v);
    return re_form(pu, pv) / (s2 * space_.c);
}

MatrixXd GlobalModel::horizontal_basis(const VectorXd& z) const {
    const VectorXd zh = normalize(z);
    const int dn = dim();
    MatrixXd B(amb_dim_, dn);
    int got = 0;
    for (int j = 0; j < amb_dim_ && got < dn; ++j) {
        VectorXd cand = VectorXd::Zero(amb_dim_);
        cand(j) = 1.0;
        cand = horizontal_project(zh, cand);
        for (int a = 0; a < got; ++a) cand -= re_form(cand, B.col(a)) / re_form(B.col(a), B.col(a)) * B.col(a);
        const double nrm2 = re_form(cand, cand);
        if (nrm2 > 1e-8) {
            B.col(got++) = cand / std::sqrt(nrm2 / space_.c);
        }
    }
    if (got != dn) throw std::runtime_error("failed to complete a horizontal basis");
    return B;
}

GlobalModel::GeodesicEnd GlobalModel::geodesic(const VectorXd& z, const VectorXd& v,
                                               double s) const {
    const VectorXd zh = normalize(z);
    VectorXd w = horizontal_project(zh, v);
    const double wn = std::sqrt(re_form(w, w));
    if (!(wn > 1e-12)) throw std::invalid_argument("geodesic: direction has no horizontal part");
    w /= wn;  // unit-scale model direction
    const double sm = std::sqrt(space_.c) * s;
    GeodesicEnd out;
    if (space_.sign > 0) {
        out.point = std::cos(sm) * zh + std::sin(sm) * w;
        out.velocity = -std::sin(sm) * zh + std::cos(sm) * w;
    } else {
        out.point = std::cosh(sm) * zh + std::sinh(sm) * w;
        out.velocity = std::sinh(sm) * zh + std::cosh(sm) * w;
    }
    out.velocity *= std::sqrt(space_.c);  // unit speed in the c-scaled metric
    return out;
}

double GlobalModel::distance(const VectorXd& z, const VectorXd& w) const {
    const VectorXd zh = normalize(z);
    const VectorXd wh = normalize(w);
    const double f = form(zh, wh).norm();
    double d1;
    if (space_.sign > 0) {
        d1 = std::acos(std::clamp(f, 0.0, 1.0));
    } else {
        d1 = std::acosh(std::max(f, 1.0));
    }
    return d1 / std::sqrt(space_.c);
}

bool GlobalModel::same_point(const VectorXd& z, const VectorXd& w, double tol) const {
    // phase-aligned chordal distance; resolves coincident points to machine
    // precision where the arccos-based distance cannot
    const VectorXd zh = normalize(z);
    const VectorXd wh = normalize(w);
    VectorXd q = form(wh, zh);
    const double qn = q.norm();
    if (qn < 1e-14) return false;
    q *= sigma_ / qn;  // F(w, w*lambda) = F(w,w) lambda
    return (zh - scalar_mult(wh, q)).norm() < tol;
}

VectorXd GlobalModel::base_point() const {
    VectorXd z = VectorXd::Zero(amb_dim_);
    z(0) = 1.0;
    return z;
}

VectorXd GlobalModel::random_point(SampleRng& rng) const {
    const VectorXd z0 = base_point();
    const MatrixXd B = horizontal_basis(z0);
    VectorXd coeff(dim());
    for (int i = 0; i < dim(); ++i) coeff(i) = rng.normal();
    const double smax = (space_.sign > 0 ? 1.2 : 1.0) / std::sqrt(space_.c);
    return geodesic(z0, B * coeff, rng.uniform(0.05, smax)).point;
}

std::vector<MatrixXd> GlobalModel::induced_structure(const VectorXd& z,
                                                     const MatrixXd& basis) const {
    std::vector<MatrixXd> out;
    const int dn = dim();
    for (const auto& J : Jamb_) {
        MatrixXd M(dn, dn);
        for (int i = 0; i < dn; ++i) {
            const VectorXd Jb = J * basis.col(i);
            for (int a = 0; a < dn; ++a) M(a, i) = metric(z, basis.col(a), Jb);
        }
        out.push_back(std::move(M));
    }
    return out;
}

VectorXd GlobalModel::chart_point(const VectorXd& z, const MatrixXd& basis,
                                  const VectorXd& x) const {
    return z + basis * x;
}

VectorXd GlobalModel::chart_coords(const VectorXd& z, const MatrixXd& basis,
                                   const VectorXd& p) const {
    const VectorXd zh = normalize(z);
    const VectorXd ph = normalize(p);
    VectorXd q = form(zh, ph);
    const double q2 = q.squaredNorm();
    if (!(q2 > 1e-20)) throw std::domain_error("chart_coords: point is outside the chart");
    VectorXd lam = q / q2;
    lam.tail(lam.size() - 1) *= -1.0;  // conjugate
    lam *= sigma_;
    const VectorXd diff = scalar_mult(ph, lam) - zh;
    VectorXd x(basis.cols());
    for (int i = 0; i < basis.cols(); ++i)
        x(i) = re_form(basis.col(i), diff) / re_form(basis.col(i), basis.col(i));
    return x;
}

MatrixXd GlobalModel::metric_matrix(const VectorXd& z, const MatrixXd& basis,
                                    const VectorXd& x) const {
    const VectorXd p = chart_point(z, basis, x);
    const int dn = static_cast<int>(basis.cols());
    MatrixXd G(dn, dn);
    for (int i = 0; i < dn; ++i)
        for (int j = i; j < dn; ++j) {
            G(i, j) = metric(p, basis.col(i), basis.col(j));
            G(j, i) = G(i, j);
        }
    return G;
}

std::vector<MatrixXd> GlobalModel::christoffel(const VectorXd& z, const MatrixXd& basis,
                                               const VectorXd& x, double h) const {
    const int dn = static_cast<int>(basis.cols());
    const MatrixXd G0 = metric_matrix(z, basis, x);
    const MatrixXd Ginv = G0.inverse();
    std::vector<MatrixXd> dG(dn);
    VectorXd xp = x;
    for (int l = 0; l < dn; ++l) {
        xp(l) = x(l) + h;
        const MatrixXd Gp = metric_matrix(z, basis, xp);
        xp(l) = x(l) - h;
        const MatrixXd Gm = metric_matrix(z, basis, xp);
        xp(l) = x(l);
        dG[l] = (Gp - Gm) / (2.0 * h);
    }
    std::vector<MatrixXd> Gamma(dn, MatrixXd::Zero(dn, dn));
    for (int k = 0; k < dn; ++k)
        for (int i = 0; i < dn; ++i)
            for (int j = i; j < dn; ++j) {
                double acc = 0.0;
                for (int l = 0; l < dn; ++l)
                    acc += Ginv(k, l) * (dG[i](j, l) + dG[j](i, l) - dG[l](i, j));
                Gamma[k](i, j) = 0.5 * acc;
                Gamma[k](j, i) = Gamma[k](i, j);
            }
    return Gamma;
}

Curv4 GlobalModel::fd_curvature(const VectorXd& z, const MatrixXd& basis, const VectorXd& x,
                                double h) const {
    const int dn = static_cast<int>(basis.cols());
    const MatrixXd G0 = metric_matrix(z, basis, x);
    const auto Gamma0 = christoffel(z, basis, x, h);
    // dGamma[p][k](i,j) = d/dx_p Gamma^k_ij
    std::vector<std::vector<MatrixXd>> dGamma(dn);
    VectorXd xp = x;
    for (int p = 0; p < dn; ++p) {
        xp(p) = x(p) + h;
        const auto Gp = christoffel(z, basis, xp, h);
        xp(p) = x(p) - h;
        const auto Gm = christoffel(z, basis, xp, h);
        xp(p) = x(p);
        dGamma[p].resize(dn);
        for (int k = 0; k < dn; ++k) dGamma[p][k] = (Gp[k] - Gm[k]) / (2.0 * h);
    }
    Curv4 R;
    R.dim = dn;
    R.v.assign(static_cast<size_t>(dn) * dn * dn * dn, 0.0);
    for (int i = 0; i < dn; ++i)
        for (int j = 0; j < dn; ++j)
            for (int k = 0; k < dn; ++k)
                for (int l = 0; l < dn; ++l) {
                    double up = dGamma[i][l](j, k) - dGamma[j][l](i, k);
                    for (int m = 0; m < dn; ++m)
                        up += Gamma0[m](j, k) * Gamma0[l](i, m) - Gamma0[m](i, k) * Gamma0[l](j, m);
                    R.at(i, j, k, l) = up;  // R^l_{ijk}, lowered below
                }
    // lower the contravariant index with G0
    Curv4 out;
    out.dim = dn;
    out.v.assign(R.v.size(), 0.0);
    for (int i = 0; i < dn; ++i)
        for (int j = 0; j < dn; ++j)
            for (int k = 0; k < dn; ++k)
                for (int l = 0; l < dn; ++l) {
                    double acc = 0.0;
                    for (int m = 0; m < dn; ++m) acc += G0(l, m) * R(i, j, k, m);
                    out.at(i, j, k, l) = acc;
                }
    return out;
}

MatrixXd GlobalModel::parallel_transport(const VectorXd& z, const MatrixXd& basis,
                                         const VectorXd& dir, double s, int steps,
                                         double h) const {
    const int dn = static_cast<int>(basis.cols());
    MatrixXd frame = MatrixXd::Identity(dn, dn);
    const double dt = s / steps;
    const double dtau = 1e-5;
    auto coords_at = [&](double t) {
        return chart_coords(z, basis, geodesic(z, dir, t).point);
    };
    auto deriv = [&](double t, const MatrixXd& F) {
        const VectorXd xt = coords_at(t);
        const VectorXd xdot = (coords_at(t + dtau) - coords_at(t - dtau)) / (2.0 * dtau);
        const auto Gamma = christoffel(z, basis, xt, h);
        MatrixXd dF = MatrixXd::Zero(dn, dn);
        for (int col = 0; col < dn; ++col)
            for (int k = 0; k < dn; ++k) {
                double acc = 0.0;
                for (int i = 0; i < dn; ++i)
                    for (int j = 0; j < dn; ++j) acc += Gamma[k](i, j) * xdot(i) * F(j, col);
                dF(k, col) = -acc;
            }
        return dF;
    };
    for (int step = 0; step < steps; ++step) {
        const double t = step * dt;
        const MatrixXd k1 = deriv(t, frame);
        const MatrixXd k2 = deriv(t + 0.5 * dt, frame + 0.5 * dt * k1);
        const MatrixXd k3 = deriv(t + 0.5 * dt, frame + 0.5 * dt * k2);
        const MatrixXd k4 = deriv(t + dt, frame + dt * k3);
        frame += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return frame;
}

}  // namespace rank1
