#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>

#include "rank1/codazzi.hpp"
#include "rank1/lab.hpp"
#include "rank1/shape.hpp"

namespace rank1 {

namespace {

using AlgebraSet = std::vector<std::shared_ptr<const PointAlgebra>>;

AlgebraSet algebras_for(const std::vector<CaseConfig>& cfgs) {
    AlgebraSet out;
    out.reserve(cfgs.size());
    for (const auto& c : cfgs)
        out.push_back(std::make_shared<PointAlgebra>(PointAlgebra::standard(c.space)));
    return out;
}

// shape with traceless part scaled (shrinking handle), trace part kept
ShapeData scaled_shape(int m, int k, SampleRng& rng, double scale) {
    auto T = random_traceless(m, k, rng);
    VectorXd H(k);
    for (int a = 0; a < k; ++a) H(a) = std::sqrt(static_cast<double>(m)) * rng.normal();
    for (auto& Ta : T) Ta *= scale;
    return shape_from_traceless(T, H);
}

ShapeData scaled_constrained(int m, int k, double a, double b, SampleRng& rng, double scale) {
    auto T = random_traceless(m, k, rng);
    for (auto& Ta : T) Ta *= scale;
    double t2 = 0.0;
    for (const auto& Ta : T) t2 += Ta.squaredNorm();
    if (t2 <= std::max(b, 0.0) + 1e-9) {
        const double target = std::max(b, 0.0) + 1.0 + rng.uniform();
        const double sc = std::sqrt(target / std::max(t2, 1e-300));
        for (auto& Ta : T) Ta *= sc;
        t2 = target;
    }
    VectorXd dir(k);
    for (int a2 = 0; a2 < k; ++a2) dir(a2) = rng.normal();
    dir.normalize();
    const double H2 = (t2 - b) / (a - 1.0 / m);
    return shape_from_traceless(T, std::sqrt(H2) * dir);
}

ShapeData scaled_pinched(int m, int k, double a_eps, double b_eps, SampleRng& rng, double scale) {
    auto T = random_traceless(m, k, rng);
    for (auto& Ta : T) Ta *= scale;
    double t2 = 0.0;
    for (const auto& Ta : T) t2 += Ta.squaredNorm();
    const double gap = a_eps - 1.0 / m;
    const double H2_min = (t2 - b_eps) / gap;
    const double H2 = std::max(H2_min, 0.0) * (1.0 + rng.uniform()) + rng.uniform() * m;
    VectorXd dir(k);
    for (int a2 = 0; a2 < k; ++a2) dir(a2) = rng.normal();
    dir.normalize();
    return shape_from_traceless(T, std::sqrt(H2) * dir);
}

CaseConfig cfg(Family f, int sign, int n, int m, int k, double eps = 0.05) {
    return CaseConfig{make_space(f, sign, n, 1.0), m, k, eps};
}

LemmaCase case_l32a() {
    LemmaCase lc;
    lc.id = "L3.2-a";
    lc.statement = "reaction bound 2R1-2aR2 <= type(I)-splitting polynomial, any a";
    lc.configs = {cfg(Family::C, 1, 3, 5, 1), cfg(Family::C, 1, 5, 6, 4),
                  cfg(Family::C, 1, 5, 8, 2), cfg(Family::H, 1, 3, 9, 3)};
    lc.eval = [cfgs = lc.configs](std::size_t ci, SampleRng& rng, double scale) {
        const auto& c = cfgs[ci];
        const double a = rng.uniform(-1.0, 2.0);
        const ShapeData s = scaled_shape(c.m, c.k, rng, scale);
        if (!s.has_type1) return SampleOutcome{0.0, false};
        const R12 r = r1_r2(s);
        const double lhs = 2.0 * r.r1 - 2.0 * a * r.r2;
        const double m = s.m;
        const double rhs = 2.0 * s.h1o2 * s.h1o2 - 2.0 * (a - 2.0 / m) * s.h1o2 * s.H2 -
                           (2.0 / m) * (a - 1.0 / m) * s.H2 * s.H2 + 8.0 * s.h1o2 * s.hminus2 +
                           3.0 * s.hminus2 * s.hminus2;
        const double norm = std::max(1.0, (s.h2 + s.H2) * (s.h2 + s.H2));
        return SampleOutcome{(rhs - lhs) / norm, true};
    };
    return lc;
}

LemmaCase case_l32b() {
    LemmaCase lc;
    lc.id = "L3.2-b";
    lc.statement = "constrained reaction bound on ||h||^2 = a||H||^2 + b";
    lc.configs = {cfg(Family::C, 1, 3, 5, 1), cfg(Family::C, 1, 4, 6, 2),
                  cfg(Family::C, 1, 6, 9, 3), cfg(Family::H, 1, 4, 12, 4)};
    lc.eval = [cfgs = lc.configs](std::size_t ci, SampleRng& rng, double scale) {
        const auto& c = cfgs[ci];
        const double a = 1.0 / (c.m - 1 + rng.uniform(0.01, 1.0));
        const double b = rng.uniform(-3.0, 3.0);
        const ShapeData s = scaled_constrained(c.m, c.k, a, b, rng, scale);
        if (!s.has_type1) return SampleOutcome{0.0, false};
        const auto bd = constrained_reaction_bounds(s, a, b, true);
        const double norm = std::max(1.0, (s.h2 + s.H2) * (s.h2 + s.H2));
        return SampleOutcome{(bd.rhs2 - bd.lhs) / norm, true};
    };
    return lc;
}

LemmaCase case_ll() {
    LemmaCase lc;
    lc.id = "LL";
    lc.statement = "2R1 <= 3||h||^4 for minimal data (H = 0)";
    lc.configs = {cfg(Family::C, 1, 3, 5, 1), cfg(Family::C, 1, 4, 5, 3),
                  cfg(Family::C, 1, 6, 8, 4), cfg(Family::H, 1, 3, 10, 2)};
    lc.eval = [cfgs = lc.configs](std::size_t ci, SampleRng& rng, double scale) {
        const auto& c = cfgs[ci];
        auto T = random_traceless(c.m, c.k, rng);
        for (auto& Ta : T) Ta *= scale;
        const ShapeData s = derive_scalars(std::move(T));
        if (s.h2 < 1e-12) return SampleOutcome{0.0, false};
        const R12 r = r1_r2(s);
        return SampleOutcome{(3.0 * s.h2 * s.h2 - 2.0 * r.r1) / (s.h2 * s.h2), true};
    };
    return lc;
}

// configurations satisfying the codimension>=2 collapse-theorem hypotheses;
// the (C, n=7, m=12) row has b > 0, which makes the minimal (H = 0) boundary
// case feasible on the compact side
std::vector<CaseConfig> collapse_hypothesis_configs(int sign) {
    return {cfg(Family::C, sign, 5, 8, 2), cfg(Family::C, sign, 6, 9, 3),
            cfg(Family::H, sign, 4, 14, 2), cfg(Family::H, sign, 4, 13, 3),
            cfg(Family::C, sign, 7, 12, 2)};
}

SampleOutcome reaction_case_eval(const AlgebraSet& algs, const std::vector<CaseConfig>& cfgs,
                                 std::size_t ci, SampleRng& rng, double scale, bool want_R) {
    const auto& c = cfgs[ci];
    const auto& alg = *algs[ci];
    const PinchConstants pc = PinchConstants::for_space(c.space, c.m, c.k, c.eps, 0.1);
    const SubspacePair pair = random_subspace_pair(c.space.real_dim(), c.m, rng);
    ShapeData s;
    if (pc.b_eps() > 0.0 && rng.uniform() < 0.15) {
        // boundary case with H = 0: minimal data with ||h||^2 = b_eps
        auto T = random_traceless(c.m, c.k, rng);
        double t2 = 0.0;
        for (const auto& Ta : T) t2 += Ta.squaredNorm();
        const double sc = std::sqrt(pc.b_eps() / t2);
        for (auto& Ta : T) Ta *= sc;
        s = derive_scalars(std::move(T));
    } else {
        s = scaled_constrained(c.m, c.k, pc.a_eps(), pc.b_eps(), rng, scale);
    }
    const ReactionTerms rt = reaction_terms(alg, pair, s, pc.a_eps());
    const int d = c.space.d();
    const double cc = c.space.c;
    double margin;
    if (want_R) {
        const double norm = std::max(1.0, (s.h2 + s.H2) * (s.h2 + s.H2));
        margin = -rt.R / norm;
    } else {
        const double norm = std::max(1.0, s.h2 + s.H2);
        if (c.space.sign > 0) {
            const double bound = -2.0 * (c.m - 4.0 * (d - 1) * c.k - 3.0) * cc * s.h02;
            margin = (bound - rt.P_total) / norm;
        } else {
            const double bound = 2.0 * (8.0 * c.m + 4.0 * (d - 1) * c.k + 3.0) * cc * s.h02 -
                                 2.0 * (c.m + 3.0) * pc.b_eps() * cc;
            margin = (bound - rt.P_total) / norm;
        }
    }
    return SampleOutcome{margin, true};
}

LemmaCase case_reaction(int sign, bool want_R) {
    LemmaCase lc;
    lc.id = std::string(sign > 0 ? "P3.8" : "P3.9") + (want_R ? "-R" : "-bound");
    lc.statement = want_R ? "full reaction scalar R < 0 on the pinching boundary"
                          : "curvature reaction estimate on the pinching boundary";
    lc.configs = collapse_hypothesis_configs(sign);
    lc.needs_ambient = true;
    auto algs = std::make_shared<AlgebraSet>(algebras_for(lc.configs));
    lc.eval = [algs, cfgs = lc.configs, want_R](std::size_t ci, SampleRng& rng, double scale) {
        return reaction_case_eval(*algs, cfgs, ci, rng, scale, want_R);
    };
    return lc;
}

LemmaCase case_pi(int sign, double factor, bool informational) {
    LemmaCase lc;
    const char* tag = sign > 0 ? "PI-compact" : (factor == 16.0 ? "PI-hyper-weak" : "PI-hyper-strong");
    lc.id = tag;
    lc.statement = sign > 0 ? "tangential reaction part P_I <= -4mc||h_o||^2"
                            : "tangential reaction part P_I upper bound (factor variant)";
    lc.configs = sign > 0 ? std::vector<CaseConfig>{cfg(Family::C, 1, 2, 3, 1),
                                                    cfg(Family::C, 1, 4, 6, 2),
                                                    cfg(Family::H, 1, 2, 7, 1),
                                                    cfg(Family::H, 1, 3, 9, 3)}
                          : std::vector<CaseConfig>{cfg(Family::C, -1, 2, 3, 1),
                                                    cfg(Family::C, -1, 4, 6, 2),
                                                    cfg(Family::H, -1, 2, 7, 1),
                                                    cfg(Family::H, -1, 3, 9, 3)};
    lc.needs_ambient = true;
    lc.informational = informational;
    auto algs = std::make_shared<AlgebraSet>(algebras_for(lc.configs));
    lc.eval = [algs, cfgs = lc.configs, sign, factor](std::size_t ci, SampleRng& rng,
                                                      double scale) {
        const auto& c = cfgs[ci];
        const SubspacePair pair = random_subspace_pair(c.space.real_dim(), c.m, rng);
        const ShapeData s = scaled_shape(c.m, c.k, rng, scale);
        const ReactionTerms rt = reaction_terms(*(*algs)[ci], pair, s, 1.0 / (c.m - 1));
        const double cc = c.space.c;
        const double bound = (sign > 0 ? -4.0 : factor) * c.m * cc * s.h02;
        return SampleOutcome{(bound - rt.P_I) / std::max(1.0, s.h2), true};
    };
    return lc;
}

LemmaCase case_l64(int sign) {
    LemmaCase lc;
    lc.id = sign > 0 ? "L6.4-i" : "L6.4-ii";
    lc.statement = "cubic-contraction positivity: empirical rho > 0 under pinching";
    lc.configs = sign > 0 ? std::vector<CaseConfig>{cfg(Family::C, 1, 3, 5, 1),
                                                    cfg(Family::H, 1, 3, 11, 1),
                                                    cfg(Family::C, 1, 5, 8, 2),
                                                    cfg(Family::H, 1, 4, 13, 3)}
                          : std::vector<CaseConfig>{cfg(Family::C, -1, 3, 5, 1),
                                                    cfg(Family::H, -1, 3, 11, 1),
                                                    cfg(Family::C, -1, 5, 8, 2),
                                                    cfg(Family::H, -1, 4, 13, 3)};
    lc.eval = [cfgs = lc.configs, sign](std::size_t ci, SampleRng& rng, double scale) {
        const auto& c = cfgs[ci];
        const PinchConstants pc = PinchConstants::for_space(c.space, c.m, c.k, c.eps, 0.1);
        const ShapeData s = scaled_pinched(c.m, c.k, pc.a_eps(), pc.b_eps(), rng, scale);
        if (s.h02 < 1e-10) return SampleOutcome{0.0, false};
        const double W = pc.W(s.H2);
        if (!(W > 1e-12)) return SampleOutcome{0.0, false};
        const double Z = z_quantity(s);
        const double b = pc.b();
        const double lhs = sign > 0 ? Z + 2.0 * c.m * b * s.h02 : Z - 0.5 * c.m * b * s.h02;
        return SampleOutcome{lhs / (c.eps * s.h02 * W), true};
    };
    return lc;
}

LemmaCase case_l63() {
    LemmaCase lc;
    lc.id = "L6.3";
    lc.statement = "intrinsic sectional curvature exceeds eps*C7*W for pinched hypersurfaces";
    lc.configs = {cfg(Family::C, 1, 3, 5, 1), cfg(Family::C, -1, 3, 5, 1),
                  cfg(Family::H, 1, 3, 11, 1), cfg(Family::H, -1, 3, 11, 1)};
    lc.needs_ambient = true;
    auto algs = std::make_shared<AlgebraSet>(algebras_for(lc.configs));
    lc.eval = [algs, cfgs = lc.configs](std::size_t ci, SampleRng& rng, double scale) {
        const auto& c = cfgs[ci];
        const auto& alg = *(*algs)[ci];
        const PinchConstants pc = PinchConstants::for_space(c.space, c.m, c.k, c.eps, 0.1);
        const SubspacePair pair = random_subspace_pair(c.space.real_dim(), c.m, rng);
        const ShapeData s = scaled_pinched(c.m, 1, pc.a_eps(), pc.b_eps(), rng, scale);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.h[0]);
        const VectorXd lam = es.eigenvalues();
        const MatrixXd dirs = pair.tangent * es.eigenvectors();
        const double W = pc.W(s.H2);
        if (!(W > 1e-12)) return SampleOutcome{0.0, false};
        double margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < c.m; ++i)
            for (int j = i + 1; j < c.m; ++j) {
                const double Kij = alg.sectional(dirs.col(i), dirs.col(j)) + lam(i) * lam(j);
                margin = std::min(margin, (Kij - c.eps * pc.C7() * W) / std::max(1.0, W));
            }
        return SampleOutcome{margin, true};
    };
    return lc;
}

LemmaCase case_l34() {
    LemmaCase lc;
    lc.id = "L3.4";
    lc.statement = "||P||^2 ||F||^2 >= m ||FP||^2 on sampled subspace pairs";
    lc.configs = {cfg(Family::C, 1, 3, 4, 2), cfg(Family::C, 1, 4, 5, 3),
                  cfg(Family::H, 1, 2, 5, 3), cfg(Family::H, 1, 3, 8, 4),
                  cfg(Family::O, 1, 2, 10, 6), cfg(Family::C, -1, 4, 6, 2)};
    lc.needs_ambient = true;
    auto algs = std::make_shared<AlgebraSet>(algebras_for(lc.configs));
    lc.eval = [algs, cfgs = lc.configs](std::size_t ci, SampleRng& rng, double) {
        const auto& c = cfgs[ci];
        const SubspacePair pair = random_subspace_pair(c.space.real_dim(), c.m, rng);
        const auto ops = split_operators(*(*algs)[ci], pair);
        double margin = std::numeric_limits<double>::infinity();
        for (size_t x = 0; x < ops.P.size(); ++x)
            margin = std::min(margin, ops.P2[x] * ops.F2[x] - c.m * ops.FP2[x]);
        return SampleOutcome{margin, true};
    };
    return lc;
}

LemmaCase case_l34_syn() {
    LemmaCase lc;
    lc.id = "L3.4-syn";
    lc.statement = "angle-form of the product bound, synthetic angle configurations";
    lc.configs = {cfg(Family::C, 1, 4, 5, 3), cfg(Family::C, 1, 5, 6, 4),
                  cfg(Family::C, 1, 6, 7, 5), cfg(Family::C, 1, 7, 8, 6)};
    lc.eval = [cfgs = lc.configs](std::size_t ci, SampleRng& rng, double) {
        const auto& c = cfgs[ci];
        const int kp = c.k / 2;
        double sum_t2 = 0.0, sum_tn = 0.0;
        for (int r = 0; r < kp; ++r) {
            const double tau = rng.uniform();
            const double nu2 = 1.0 - tau * tau;
            sum_t2 += tau * tau;
            sum_tn += tau * tau * nu2;
        }
        double P2, t2;
        if (c.k % 2 == 0) {
            P2 = c.m - 2.0 * sum_t2;
            t2 = 2.0 * sum_t2;
        } else {
            P2 = (c.m - 1.0) - 2.0 * sum_t2;
            t2 = 1.0 + 2.0 * sum_t2;
        }
        const double FP2 = 2.0 * sum_tn;
        return SampleOutcome{P2 * t2 - c.m * FP2, true};
    };
    return lc;
}

LemmaCase case_i310() {
    LemmaCase lc;
    lc.id = "I3.10";
    lc.statement = "||omega||^2 <= 9(d-1)c^2 sum ||F P||^2";
    lc.configs = {cfg(Family::C, 1, 4, 5, 3), cfg(Family::H, 1, 2, 5, 3),
                  cfg(Family::H, -1, 3, 8, 4), cfg(Family::O, 1, 2, 11, 5)};
    lc.needs_ambient = true;
    auto algs = std::make_shared<AlgebraSet>(algebras_for(lc.configs));
    lc.eval = [algs, cfgs = lc.configs](std::size_t ci, SampleRng& rng, double) {
        const auto& c = cfgs[ci];
        const SubspacePair pair = random_subspace_pair(c.space.real_dim(), c.m, rng);
        const auto ops = split_operators(*(*algs)[ci], pair);
        return SampleOutcome{ops.bound310_rhs - ops.omega2, true};
    };
    return lc;
}

std::vector<CaseConfig> codazzi_configs() {
    return {cfg(Family::C, 1, 5, 8, 2),  cfg(Family::C, -1, 6, 9, 3),
            cfg(Family::H, 1, 4, 12, 4), cfg(Family::H, -1, 4, 13, 3),
            cfg(Family::O, 1, 2, 14, 2), cfg(Family::C, 1, 5, 9, 1)};
}

LemmaCase case_codazzi(const char* id) {
    LemmaCase lc;
    lc.id = id;
    lc.configs = codazzi_configs();
    lc.needs_ambient = true;
    const std::string which = id;
    if (which == "L3.3")
        lc.statement = "gradient bound with the omega correction, eta grid";
    else if (which == "L3.5")
        lc.statement = "||grad h||^2 >= 2(m+1)/(9(d-1)^2) ||omega||^2";
    else
        lc.statement = "||grad h||^2 >= 2(10-d)/(9(m+2)) ||grad H||^2";
    auto algs = std::make_shared<AlgebraSet>(algebras_for(lc.configs));
    lc.eval = [algs, cfgs = lc.configs, which](std::size_t ci, SampleRng& rng, double scale) {
        const auto& c = cfgs[ci];
        const auto& alg = *(*algs)[ci];
        const int d = c.space.d();
        if (which == "L3.6" && c.m < mean_gradient_threshold(d)) return SampleOutcome{0.0, false};
        const SubspacePair pair = random_subspace_pair(c.space.real_dim(), c.m, rng);
        GradTensor T = random_symmetric3(c.m, c.k, rng);
        const GradTensor E = codazzi_particular(curvature_defect(alg, pair));
        const bool adversarial = rng.uniform() < 0.25;
        const double amp = scale * (adversarial ? 0.05 * rng.uniform() : rng.uniform(0.05, 2.0));
        for (auto& x : T.v) x *= amp;
        if (adversarial) {
            // steer toward the minimal-norm Codazzi tensor for this pair
            const GradTensor Esym = full_symmetrization(E);
            for (size_t i = 0; i < T.v.size(); ++i) T.v[i] -= Esym.v[i];
        }
        for (size_t i = 0; i < T.v.size(); ++i) T.v[i] += E.v[i];
        const double norm = std::max(1.0, T.norm2());
        if (which == "L3.6") return SampleOutcome{gradient_mean_bound_margin(T, d) / norm, true};
        const double omega2 = split_operators(alg, pair).omega2;
        if (which == "L3.5") return SampleOutcome{gradient_omega_bound_margin(T, omega2, d) / norm, true};
        double margin = std::numeric_limits<double>::infinity();
        for (double eta : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1, 1.0})
            margin = std::min(margin, gradient_trace_bound_margin(T, omega2, eta) / norm);
        return SampleOutcome{margin, true};
    };
    return lc;
}

}  // namespace

std::vector<LemmaCase> standard_registry() {
    std::vector<LemmaCase> reg;
    reg.push_back(case_l32a());
    reg.push_back(case_l32b());
    reg.push_back(case_ll());
    reg.push_back(case_reaction(1, false));
    reg.push_back(case_reaction(1, true));
    reg.push_back(case_reaction(-1, false));
    reg.push_back(case_reaction(-1, true));
    reg.push_back(case_pi(1, -4.0, false));
    reg.push_back(case_pi(-1, 16.0, false));
    reg.push_back(case_pi(-1, 8.0, true));
    reg.push_back(case_l64(1));
    reg.push_back(case_l64(-1));
    reg.push_back(case_l63());
    reg.push_back(case_l34());
    reg.push_back(case_l34_syn());
    reg.push_back(case_i310());
    reg.push_back(case_codazzi("L3.3"));
    reg.push_back(case_codazzi("L3.5"));
    reg.push_back(case_codazzi("L3.6"));
    return reg;
}

std::vector<std::string> registry_manifest() {
    return {"L3.2-a", "L3.2-b", "LL",          "P3.8-bound",    "P3.8-R",
            "P3.9-bound", "P3.9-R", "PI-compact", "PI-hyper-weak", "PI-hyper-strong",
            "L6.4-i", "L6.4-ii", "L6.3",       "L3.4",          "L3.4-syn",
            "I3.10",  "L3.3",   "L3.5",        "L3.6"};
}

}  // namespace rank1
