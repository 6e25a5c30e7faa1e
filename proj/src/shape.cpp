#include "rank1/shape.hpp"

#include <cmath>

namespace rank1 {

namespace {

void finish_scalars(ShapeData& s) {
    const int m = s.m, k = s.k;
    s.H.resize(k);
    s.h2 = 0.0;
    for (int a = 0; a < k; ++a) {
        s.H(a) = s.h[a].trace();
        s.h2 += s.h[a].squaredNorm();
    }
    s.H2 = s.H.squaredNorm();
    s.h02 = s.h2 - s.H2 / m;
    const double Hn = std::sqrt(s.H2);
    s.has_type1 = Hn > 1e-12;
    if (s.has_type1) {
        MatrixXd h1 = MatrixXd::Zero(m, m);
        for (int a = 0; a < k; ++a) h1 += (s.H(a) / Hn) * s.h[a];
        s.h1_2 = h1.squaredNorm();
        h1.diagonal().array() -= Hn / m;
        s.h1o2 = h1.squaredNorm();
        s.hminus2 = s.h02 - s.h1o2;
    } else {
        s.h1_2 = s.h1o2 = 0.0;
        s.hminus2 = s.h02;
    }
}

}  // namespace

ShapeData derive_scalars(std::vector<MatrixXd> h) {
    if (h.empty()) throw std::invalid_argument("shape: need at least one component");
    const int m = static_cast<int>(h[0].rows());
    for (const auto& ha : h) {
        if (ha.rows() != m || ha.cols() != m) throw std::invalid_argument("shape: ragged components");
        if ((ha - ha.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, ha.norm()))
            throw std::invalid_argument("shape: asymmetric component");
    }
    ShapeData s;
    s.m = m;
    s.k = static_cast<int>(h.size());
    s.h = std::move(h);
    finish_scalars(s);
    return s;
}

ShapeData shape_from_traceless(const std::vector<MatrixXd>& T, const VectorXd& H) {
    const int m = static_cast<int>(T[0].rows());
    std::vector<MatrixXd> h(T.size());
    for (size_t a = 0; a < T.size(); ++a) {
        h[a] = T[a];
        h[a].diagonal().array() += H(static_cast<int>(a)) / m;
    }
    return derive_scalars(std::move(h));
}

ShapeData hypersurface_shape(const VectorXd& eigenvalues) {
    std::vector<MatrixXd> h(1);
    h[0] = eigenvalues.asDiagonal();
    return derive_scalars(std::move(h));
}

std::vector<MatrixXd> random_sff(int m, int k, SampleRng& rng) {
    std::vector<MatrixXd> h(k);
    for (int a = 0; a < k; ++a) {
        MatrixXd A(m, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) A(i, j) = rng.normal();
        h[a] = 0.5 * (A + A.transpose());
    }
    return h;
}

std::vector<MatrixXd> random_traceless(int m, int k, SampleRng& rng) {
    auto h = random_sff(m, k, rng);
    for (auto& ha : h) ha.diagonal().array() -= ha.trace() / m;
    return h;
}

ShapeData sample_shape(int m, int k, SampleRng& rng) { return derive_scalars(random_sff(m, k, rng)); }

ShapeData sample_traceless_shape(int m, int k, SampleRng& rng) {
    return derive_scalars(random_traceless(m, k, rng));
}

ShapeData sample_constrained_shape(int m, int k, double a, double b, SampleRng& rng) {
    if (!(a > 1.0 / m)) throw std::invalid_argument("constraint projection needs a > 1/m");
    auto T = random_traceless(m, k, rng);
    double t2 = 0.0;
    for (const auto& Ta : T) t2 += Ta.squaredNorm();
    if (t2 <= std::max(b, 0.0) + 1e-9) {
        // rescale the traceless part so the surface is reachable
        const double target = std::max(b, 0.0) + 1.0 + rng.uniform();
        const double sc = std::sqrt(target / t2);
        for (auto& Ta : T) Ta *= sc;
        t2 = target;
    }
    if (t2 - b <= 0.0) throw std::domain_error("constraint surface unreachable");
    VectorXd dir(k);
    for (int a2 = 0; a2 < k; ++a2) dir(a2) = rng.normal();
    dir.normalize();
    // ||h_o||^2 + ||H||^2/m = a ||H||^2 + b  =>  ||H||^2 = (||h_o||^2 - b)/(a - 1/m)
    const double H2 = (t2 - b) / (a - 1.0 / m);
    return shape_from_traceless(T, std::sqrt(H2) * dir);
}

ShapeData sample_pinched_shape(int m, int k, double a_eps, double b_eps, SampleRng& rng) {
    auto T = random_traceless(m, k, rng);
    double t2 = 0.0;
    for (const auto& Ta : T) t2 += Ta.squaredNorm();
    const double gap = a_eps - 1.0 / m;
    if (!(gap > 0.0)) throw std::invalid_argument("pinched sampling needs a_eps > 1/m");
    const double H2_min = (t2 - b_eps) / gap;
    const double H2 = std::max(H2_min, 0.0) * (1.0 + rng.uniform()) + rng.uniform() * m;
    VectorXd dir(k);
    for (int a2 = 0; a2 < k; ++a2) dir(a2) = rng.normal();
    dir.normalize();
    return shape_from_traceless(T, std::sqrt(H2) * dir);
}

R12 r1_r2(const ShapeData& s) {
    R12 out{0.0, 0.0, 0.0};
    const int k = s.k;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const double ip = s.h[a].cwiseProduct(s.h[b]).sum();
            out.r1 += ip * ip;
            if (a < b) {
                const MatrixXd comm = s.h[a] * s.h[b] - s.h[b] * s.h[a];
                out.r1 += 2.0 * comm.squaredNorm();
            }
        }
    MatrixXd Hh = MatrixXd::Zero(s.m, s.m);
    for (int a = 0; a < k; ++a) Hh += s.H(a) * s.h[a];
    out.r2 = Hh.squaredNorm();
    out.r2_split = s.has_type1 ? s.h1_2 * s.H2 : 0.0;
    return out;
}

double z_quantity(const ShapeData& s) {
    MatrixXd S = MatrixXd::Zero(s.m, s.m);
    MatrixXd Hh = MatrixXd::Zero(s.m, s.m);
    for (int a = 0; a < s.k; ++a) {
        S += s.h[a] * s.h[a];
        Hh += s.H(a) * s.h[a];
    }
    const double first = (Hh * S).trace();
    return first - r1_r2(s).r1;
}

ReactionTerms reaction_terms(const PointAlgebra& alg, const SubspacePair& pair,
                             const ShapeData& s, double a) {
    if (pair.m() != s.m || pair.k() != s.k)
        throw std::invalid_argument("reaction_terms: shape/pair dimension mismatch");
    const double epsc = alg.space().sign * alg.space().c;
    const int m = s.m, k = s.k;
    const auto ops = split_operators(alg, pair);
    const int nops = static_cast<int>(ops.P.size());

    // precompute products of shape components
    std::vector<MatrixXd> prod(static_cast<size_t>(k) * k);  // h^a h^b
    MatrixXd gram(k, k);                                     // <h^a, h^b>
    for (int a1 = 0; a1 < k; ++a1)
        for (int b1 = 0; b1 < k; ++b1) {
            prod[a1 * k + b1] = s.h[a1] * s.h[b1];
            gram(a1, b1) = s.h[a1].cwiseProduct(s.h[b1]).sum();
        }

    ReactionTerms rt;
    // P_I = 4 eps c { ||H||^2 - m ||h||^2 + 3 sum_xi,a [tr(B^2 (h^a)^2) - tr(h^a B h^a B)] }
    double pi_core = s.H2 - m * s.h2;
    for (int x = 0; x < nops; ++x) {
        const MatrixXd& B = ops.P[x];
        const MatrixXd B2 = B * B;
        for (int a1 = 0; a1 < k; ++a1) {
            const MatrixXd hB = s.h[a1] * B;
            pi_core += 3.0 * ((B2 * prod[a1 * k + a1]).trace() - (hB * hB).trace());
        }
    }
    rt.P_I = 4.0 * epsc * pi_core;

    // P_II = 2 eps c { m(||h||^2 - a ||H||^2) + 3 sum_xi <t^T t, gram - a H H^T> }
    double pii_core = m * (s.h2 - a * s.H2);
    const MatrixXd HHt = s.H * s.H.transpose();
    for (int x = 0; x < nops; ++x) {
        const MatrixXd tt = ops.t[x].transpose() * ops.t[x];
        pii_core += 3.0 * tt.cwiseProduct(gram - a * HHt).sum();
    }
    rt.P_II = 2.0 * epsc * pii_core;

    // P_III = -8 eps c sum_xi { sum_ab [(t^T h^a h^b t)_ba - (t^T h^a h^b t)_ab]
    //                           - 2 sum_ab f_ba tr(B h^a h^b) }
    double piii_core = 0.0;
    for (int x = 0; x < nops; ++x) {
        const MatrixXd& t = ops.t[x];
        const MatrixXd& f = ops.f[x];
        const MatrixXd& B = ops.P[x];
        for (int a1 = 0; a1 < k; ++a1)
            for (int b1 = 0; b1 < k; ++b1) {
                const MatrixXd& M = prod[a1 * k + b1];
                const MatrixXd C = t.transpose() * M * t;
                piii_core += C(b1, a1) - C(a1, b1);
                piii_core -= 2.0 * f(b1, a1) * (B * M).trace();
            }
    }
    rt.P_III = -8.0 * epsc * piii_core;

    rt.P_total = rt.P_I + rt.P_II + rt.P_III;
    const R12 r = r1_r2(s);
    rt.R1 = r.r1;
    rt.R2 = r.r2;
    rt.R = 2.0 * r.r1 - 2.0 * a * r.r2 + rt.P_total;
    return rt;
}

ReactionTerms reaction_terms_reference(const PointAlgebra& alg, const SubspacePair& pair,
                                       const ShapeData& s, double a) {
    const int m = s.m, k = s.k;
    const auto& T = pair.tangent;
    const auto& N = pair.normal;
    auto R4 = [&](const VectorXd& X, const VectorXd& Y, const VectorXd& Z, const VectorXd& W) {
        return alg.curvature(X, Y, Z, W);
    };
    ReactionTerms rt;
    double p1 = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int p = 0; p < m; ++p) {
                for (int q = 0; q < m; ++q) {
                    double hh = 0.0;
                    for (int al = 0; al < k; ++al) hh += s.h[al](p, q) * s.h[al](i, j);
                    p1 += 4.0 * R4(T.col(i), T.col(p), T.col(q), T.col(j)) * hh;
                }
            }
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
            for (int p = 0; p < m; ++p) {
                double hh = 0.0;
                for (int i = 0; i < m; ++i)
                    for (int al = 0; al < k; ++al) hh += s.h[al](p, i) * s.h[al](i, j);
                p1 -= 4.0 * R4(T.col(l), T.col(j), T.col(p), T.col(l)) * hh;
            }
    rt.P_I = p1;
    double p2 = 0.0;
    for (int l = 0; l < m; ++l)
        for (int al = 0; al < k; ++al)
            for (int be = 0; be < k; ++be) {
                const double Rl = R4(T.col(l), N.col(al), N.col(be), T.col(l));
                p2 += 2.0 * Rl * (s.h[al].cwiseProduct(s.h[be]).sum() - a * s.H(al) * s.H(be));
            }
    rt.P_II = p2;
    double p3 = 0.0;
    for (int j = 0; j < m; ++j)
        for (int p = 0; p < m; ++p)
            for (int al = 0; al < k; ++al)
                for (int be = 0; be < k; ++be) {
                    double hh = 0.0;
                    for (int i = 0; i < m; ++i) hh += s.h[al](i, p) * s.h[be](i, j);
                    p3 -= 8.0 * R4(T.col(j), T.col(p), N.col(be), N.col(al)) * hh;
                }
    rt.P_III = p3;
    rt.P_total = rt.P_I + rt.P_II + rt.P_III;
    const R12 r = r1_r2(s);
    rt.R1 = r.r1;
    rt.R2 = r.r2;
    rt.R = 2.0 * r.r1 - 2.0 * a * r.r2 + rt.P_total;
    return rt;
}

PinchConstants PinchConstants::for_space(const SpaceSpec& space, int m, int k, double eps,
                                         double sigma) {
    if (m < 2) throw std::invalid_argument("pinch constants need m >= 2");
    if (k < 1) throw std::invalid_argument("pinch constants need k >= 1");
    if (m + k != space.real_dim())
        throw std::invalid_argument("pinch constants: m + k must equal the ambient dimension");
    PinchConstants pc;
    pc.space = space;
    pc.m = m;
    pc.k = k;
    pc.eps = eps;
    pc.sigma = sigma;
    return pc;
}

double PinchConstants::b() const {
    const double c = space.c;
    const int d = space.d();
    if (k == 1) return space.sign > 0 ? 2.0 * c : -8.0 * c;
    if (space.sign > 0) return (m - 4.0 * (d - 1) * k - 3.0) * c / m;
    return -(8.0 * m + 4.0 * (d - 1) * k + 3.0) * c / m;
}

double PinchConstants::alpha() const {
    const double c = space.c;
    const double rbar = space.einstein_const();
    if (k == 1) {
        if (space.sign > 0) return 2.0 * c / ((m - 1 + eps) * (rbar + 2.0 * c * (1.0 - eps)));
        return -8.0 * c / ((m - 1 + eps) * (rbar - 8.0 * c * (1.0 + eps)));
    }
    return alpha_k2_formula(space.d(), m);
}

double PinchConstants::C1() const {
    if (k == 1) return 3.0 / (m + 2) - 1.0 / m - alpha();
    return 1.0 / (9.0 * m * (m + 2));
}

double PinchConstants::C4() const {
    if (k == 1) return 2.0 * (m - 1) / (3.0 * m);
    return ((11.0 - 2.0 * space.d()) * m - 18.0) / (9.0 * m * (m + 2));
}

double PinchConstants::C7() const {
    const double base = 1.0 / (2.0 * alpha() * (m - 1) * (m - 1 + eps));
    if (space.sign > 0) return std::min(base, 0.5);
    return base;
}

double PinchConstants::C8() const {
    if (space.sign > 0) return 1.0;
    const double dn = space.real_dim();
    if (k == 1) return (dn * dn - 3.0 * dn + 2.0) / (dn * dn - 4.0 * dn + 4.0 - eps);
    return m * (m - 1.0) / (m * m - 2.0 * m + 1.0 - eps);
}

double PinchConstants::C13(double C12) const {
    const double w = C12 / C4() + 1.0;
    return w - m * (space.sign - 1.0) * (7.0 * m + 4.0 * (space.d() - 1) * k) * space.c;
}

double PinchConstants::C14(double C12) const {
    const double w = C12 / C4() + 1.0;
    return -0.5 * w * (space.sign - 1.0) * (7.0 * m + 4.0 * (space.d() - 1) * k) * space.c;
}

PinchReport pinch_eval(const ShapeData& s, const PinchConstants& pc) {
    if (s.m != pc.m || s.k != pc.k) throw std::invalid_argument("pinch_eval: dimension mismatch");
    PinchReport rep;
    rep.q0_margin = s.H2 / (pc.m - 1) + pc.b() - s.h2;
    rep.star_satisfied = rep.q0_margin > 0.0;
    rep.q_eps = s.h2 - pc.a_eps() * s.H2 - pc.b_eps();
    rep.alpha_defined = pc.alpha_positive();
    rep.H2_lower_bound = pc.H2_lower_bound();
    if (!rep.alpha_defined) {
        rep.W = rep.f_sigma = rep.f0 = std::nan("");
        rep.W_positive = false;
        return rep;
    }
    rep.W = pc.W(s.H2);
    rep.W_positive = rep.W > 0.0;
    if (rep.W_positive) {
        rep.f_sigma = s.h02 / std::pow(rep.W, 1.0 - pc.sigma);
        rep.f0 = s.h02 / rep.W;
    } else {
        rep.f_sigma = rep.f0 = std::nan("");
    }
    return rep;
}

double g_quantity(const ShapeData& s, const PinchConstants& pc, double C12) {
    return s.H2 * s.h02 + 0.5 * (C12 / pc.C4() + 1.0) * s.h02;
}

double f_quantity(double gradH2, double g, const PinchConstants& pc, double C5, double eta,
                  double H2) {
    return gradH2 + (C5 + 1.0) / pc.C4() * g - eta * H2 * H2;
}

ConstrainedReactionBounds constrained_reaction_bounds(const ShapeData& s, double a, double b, bool want_rhs2) {
    if (!s.has_type1)
        throw std::domain_error("constrained_reaction_bounds: requires H != 0 (type (I) splitting)");
    const R12 r = r1_r2(s);
    ConstrainedReactionBounds out;
    out.lhs = 2.0 * r.r1 - 2.0 * a * r.r2;
    const double m = s.m;
    out.rhs1 = 2.0 * s.h1o2 * s.h1o2 - 2.0 * (a - 2.0 / m) * s.h1o2 * s.H2 -
               (2.0 / m) * (a - 1.0 / m) * s.H2 * s.H2 + 8.0 * s.h1o2 * s.hminus2 +
               3.0 * s.hminus2 * s.hminus2;
    if (want_rhs2) {
        const double ma1 = m * a - 1.0;
        if (std::abs(ma1) < 1e-14)
            throw std::invalid_argument("constrained_reaction_bounds: second bound undefined at ma = 1");
        if (!(a > 1.0 / m))
            throw std::invalid_argument("constrained_reaction_bounds: second bound requires a > 1/m");
        if (std::abs(s.h2 - (a * s.H2 + b)) > 1e-6 * std::max(1.0, s.h2))
            throw std::invalid_argument("constrained_reaction_bounds: shape is off the constraint surface");
        out.rhs2 = (6.0 - 2.0 / ma1) * s.h02 * s.hminus2 - 3.0 * s.hminus2 * s.hminus2 +
                   2.0 * m * a * b / ma1 * s.h1o2 + 4.0 * b / ma1 * s.hminus2 -
                   2.0 * b * b / ma1;
        out.rhs2_valid = true;
    }
    return out;
}

double omega_term_coefficient(int d, int m) {
    return m + 1.0 -
           (d - 1.0) * (18.0 * (7.0 - d) * m - 108.0) / ((m - 1.0) * (m + 2.0));
}

double gradient_gap_coefficient(int d, int m, double eps) {
    return 2.0 * (10.0 - d) / (9.0 * (m + 2.0)) - 1.0 / (m - 1.0 + eps);
}

double alpha_k2_formula(int d, int m) {
    return ((11.0 - 2.0 * d) * m - 19.0) / (9.0 * m * (m + 2.0));
}

}  // namespace rank1
