// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with its runtime. Budgets and tolerances are pinned in code.

#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "rank1/codazzi.hpp"
#include "rank1/config.hpp"
#include "rank1/global_model.hpp"
#include "rank1/lab.hpp"
#include "rank1/report.hpp"

using namespace rank1;

namespace {

constexpr double kPi = 3.14159265358979323846;

class Criterion {
public:
    Criterion(int number, const char* label, double budget_seconds)
        : number_(number), label_(label), budget_(budget_seconds),
          start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok) { ok_ = ok_ && ok; }

    ~Criterion() {
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const bool in_budget = dt < budget_;
        std::printf("[acceptance] criterion %2d (%s): %s  (%.1fs / %.0fs)\n", number_, label_,
                    ok_ && in_budget ? "PASS" : "FAIL", dt, budget_);
        std::fflush(stdout);
        CHECK(ok_);
        CHECK(in_budget);
    }

private:
    int number_;
    const char* label_;
    double budget_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

std::vector<SpaceSpec> six_families() {
    return {make_space(Family::C, 1, 3, 1.0),  make_space(Family::C, -1, 2, 2.5),
            make_space(Family::H, 1, 2, 1.0),  make_space(Family::H, -1, 3, 1.0),
            make_space(Family::O, 1, 2, 1.0),  make_space(Family::O, -1, 2, 0.5)};
}

std::vector<SpaceSpec> model_spaces() {
    return {make_space(Family::C, 1, 2, 1.0), make_space(Family::C, -1, 2, 1.0),
            make_space(Family::H, 1, 2, 1.0), make_space(Family::H, -1, 2, 1.0)};
}

}  // namespace

TEST_CASE("criterion 1: ambient kernel") {
    Criterion cr(1, "sectional bounds and Einstein identity", 10.0);
    SampleRng rng(0xacce91, 1, 0);
    for (const auto& sp : six_families()) {
        const auto alg = PointAlgebra::standard(sp);
        double kmin = 1e300, kmax = -1e300;
        for (int it = 0; it < 10000; ++it) {
            const VectorXd X = alg.random_vector(rng);
            const VectorXd Y = alg.random_vector(rng);
            const double K = sp.sign * alg.sectional(X, Y);
            kmin = std::min(kmin, K);
            kmax = std::max(kmax, K);
        }
        cr.expect(kmin > sp.c - 1e-10);
        cr.expect(kmax < 4.0 * sp.c + 1e-10);
        const double rbar = sp.einstein_const();
        double worst = 0.0;
        for (int it = 0; it < 1000; ++it)
            worst = std::max(worst, std::abs(alg.ricci(alg.random_unit(rng)) - rbar));
        cr.expect(worst <= 1e-10 * std::max(1.0, std::abs(rbar)));
    }
}

TEST_CASE("criterion 2: coordinate-model cross-check") {
    Criterion cr(2, "finite-difference curvature and parallelism", 60.0);
    SampleRng rng(0xacce92, 1, 0);
    for (const auto& sp : model_spaces()) {
        const auto model = GlobalModel::create(sp);
        // 1000 random component contractions across base points
        int samples = 0;
        double worst = 0.0;
        for (int pt = 0; pt < 4; ++pt) {
            const VectorXd z = model.normalize(model.random_point(rng));
            const MatrixXd B = model.horizontal_basis(z);
            const Curv4 R = model.fd_curvature(z, B, VectorXd::Zero(model.dim()), 1e-4);
            const auto Jind = model.induced_structure(z, B);
            auto formula = [&](const VectorXd& X, const VectorXd& Y, const VectorXd& Z,
                               const VectorXd& W) {
                double acc = Y.dot(Z) * X.dot(W) - X.dot(Z) * Y.dot(W);
                for (const auto& J : Jind)
                    acc += Y.dot(J * Z) * X.dot(J * W) - X.dot(J * Z) * Y.dot(J * W) -
                           2.0 * X.dot(J * Y) * Z.dot(J * W);
                return static_cast<double>(sp.sign) * sp.c * acc;
            };
            for (int it = 0; it < 250; ++it, ++samples) {
                VectorXd X(model.dim()), Y(model.dim()), Z(model.dim()), W(model.dim());
                for (int i = 0; i < model.dim(); ++i) {
                    X(i) = rng.normal();
                    Y(i) = rng.normal();
                    Z(i) = rng.normal();
                    W(i) = rng.normal();
                }
                const double scale = X.norm() * Y.norm() * Z.norm() * W.norm() * 4.0 * sp.c;
                worst = std::max(worst,
                                 std::abs(R.contract(X, Y, Z, W) - formula(X, Y, Z, W)) / scale);
            }
        }
        cr.expect(samples == 1000);
        cr.expect(worst < 1e-4);
        // derivative of curvature components along a geodesic, transported frame
        const VectorXd z = model.base_point();
        const MatrixXd B = model.horizontal_basis(z);
        VectorXd coeff(model.dim());
        for (int i = 0; i < model.dim(); ++i) coeff(i) = rng.normal();
        const VectorXd dir = B * coeff;
        auto comps = [&](double s) {
            const VectorXd x = model.chart_coords(z, B, model.geodesic(z, dir, s).point);
            const Curv4 R = model.fd_curvature(z, B, x, 1e-3);
            const MatrixXd F = model.parallel_transport(z, B, dir, s, 16, 1e-3);
            std::vector<double> vals;
            for (int a = 0; a < 2; ++a)
                for (int b = 2; b < 4; ++b)
                    vals.push_back(R.contract(F.col(a), F.col(b), F.col(b), F.col(a)));
            return vals;
        };
        const auto lo = comps(0.06), hi = comps(0.10);
        for (size_t i = 0; i < lo.size(); ++i)
            cr.expect(std::abs(hi[i] - lo[i]) / 0.04 < 1e-3);
    }
}

TEST_CASE("criterion 3: adapted-frame suite") {
    Criterion cr(3, "frame relations, product bound, omega bound", 30.0);
    // defining relations of the second-kind frames at 1e-10
    SampleRng rng(0xacce93, 1, 0);
    for (const auto& sp : six_families()) {
        const auto alg = PointAlgebra::standard(sp);
        const int dn = sp.real_dim();
        for (int it = 0; it < 60; ++it) {
            const int k = 1 + static_cast<int>(rng.below(dn / 2));
            const int m = dn - k;
            if (k > m) continue;
            const auto pair = random_subspace_pair(dn, m, rng);
            const int xi = static_cast<int>(rng.below(sp.d() - 1));
            const auto fr = build_type2(alg, pair, xi);
            const MatrixXd& J = alg.structure_ops()[xi];
            double worst = 0.0;
            for (int r = 0; r < k / 2; ++r) {
                worst = std::max(worst,
                                 (J * fr.normal.col(2 * r) - fr.tau[r] * fr.tangent.col(2 * r) -
                                  fr.nu[r] * fr.normal.col(2 * r + 1))
                                     .norm());
                worst = std::max(worst, (J * fr.tangent.col(2 * r) +
                                         fr.nu[r] * fr.tangent.col(2 * r + 1) +
                                         fr.tau[r] * fr.normal.col(2 * r))
                                            .norm());
            }
            if (k % 2 == 1)
                worst = std::max(worst, (J * fr.normal.col(k - 1) - fr.tangent.col(k - 1)).norm());
            cr.expect(worst <= 1e-10);
        }
    }
    // 1.2e5 sampled/synthetic configurations with zero violations
    const auto reg = filter_cases(standard_registry(), "L3.4*");
    const auto rep = run_campaign(reg, 0xacce93, 40000);
    const auto rep2 = run_campaign(filter_cases(standard_registry(), "I3.10"), 0xacce93, 40000);
    for (const auto& c : rep.cases) cr.expect(c.executed && c.violations == 0);
    for (const auto& c : rep2.cases) cr.expect(c.executed && c.violations == 0);
}

TEST_CASE("criterion 4: algebraic reaction campaign") {
    Criterion cr(4, "reaction bounds at 1e5 samples per case", 300.0);
    const char* ids[] = {"L3.2-a", "L3.2-b", "LL",     "P3.8-bound", "P3.8-R",
                         "P3.9-bound", "P3.9-R", "L6.4-i", "L6.4-ii"};
    std::vector<LemmaCase> cases;
    for (const auto& lc : standard_registry())
        for (const char* id : ids)
            if (lc.id == id) cases.push_back(lc);
    REQUIRE(cases.size() == 9);
    const auto rep = run_campaign(cases, 0xacce94, 100000);
    for (const auto& c : rep.cases) {
        INFO(c.id, " worst=", c.worst_margin);
        cr.expect(c.executed);
        cr.expect(c.violations == 0);  // tolerance 1e-9 pinned in the cases
        cr.expect(c.samples + c.skipped == 100000);
        if (c.id == std::string("L6.4-i") || c.id == std::string("L6.4-ii"))
            cr.expect(c.worst_margin > 0.0);  // empirical rho stays positive
    }
}

TEST_CASE("criterion 5: Codazzi-compatible gradient suite") {
    Criterion cr(5, "gradient inequalities on corrected samples", 120.0);
    // 1e4 per hypothesis configuration (six configurations per case)
    std::vector<LemmaCase> reg;
    for (const auto& lc : standard_registry())
        if (lc.id == "L3.3" || lc.id == "L3.5" || lc.id == "L3.6") reg.push_back(lc);
    REQUIRE(reg.size() == 3);
    const auto rep = run_campaign(reg, 0xacce95, 60000);
    for (const auto& c : rep.cases) {
        INFO(c.id, " worst=", c.worst_margin);
        cr.expect(c.executed && c.violations == 0);
    }
    // the omega-coefficient changes sign exactly at the threshold grid point
    cr.expect(omega_term_coefficient(2, 7) < 0.0);
    cr.expect(omega_term_coefficient(2, 8) >= 0.0);
    cr.expect(omega_term_coefficient(4, 10) < 0.0);
    cr.expect(omega_term_coefficient(4, 11) >= 0.0);
    cr.expect(omega_term_coefficient(8, 1 + 1) > 0.0);
}

TEST_CASE("criterion 6: geodesic-sphere flows in the noncompact families") {
    Criterion cr(6, "collapse bounds and pinching preservation", 60.0);
    for (const auto& sp :
         {make_space(Family::C, -1, 2, 1.0), make_space(Family::C, -1, 3, 1.0),
          make_space(Family::H, -1, 2, 1.0), make_space(Family::H, -1, 3, 1.0)}) {
        const double rate = (sp.n + 1) * sp.d() - 2;
        int pinched_starts = 0;
        for (int i = 0; i < 10; ++i) {
            const double r0 = 0.05 + 0.045 * i;
            const auto trace = sphere_flow(sp, r0);
            const auto oracle = sphere_flow_oracle(sp, r0);
            cr.expect(trace.blew_up);
            cr.expect(trace.t_collapse <= r0 / rate + 1e-12);
            cr.expect(std::abs(trace.t_collapse - oracle.t_collapse) <= 1e-6);
            // pinching is preserved along every trace that starts pinched
            if (trace.samples.front().Qeps < 0.0) {
                ++pinched_starts;
                bool stays = true;
                for (const auto& s : trace.samples) stays = stays && s.Qeps < 0.0;
                cr.expect(stays);
            }
        }
        cr.expect(pinched_starts >= 8);
    }
}

TEST_CASE("criterion 7: evolution-equation consistency") {
    Criterion cr(7, "reduced reaction terms vs finite differences", 30.0);
    for (const auto& sp :
         {make_space(Family::C, -1, 2, 1.0), make_space(Family::C, -1, 3, 1.0),
          make_space(Family::H, -1, 2, 1.0), make_space(Family::H, -1, 3, 1.0),
          make_space(Family::C, 1, 2, 1.0), make_space(Family::H, 1, 2, 1.0)}) {
        const double r0 = sp.sign > 0 ? 0.6 : 1.0;
        const double T = sphere_flow_oracle(sp, r0).t_collapse;
        std::vector<double> times;
        for (double f : {0.1, 0.25, 0.4, 0.55, 0.7, 0.85}) times.push_back(f * T);
        const auto res = evolution_consistency(sp, r0, times);
        INFO(sp.name());
        cr.expect(res.dH2_rel <= 1e-6);
        cr.expect(res.dh2_rel <= 1e-6);
        cr.expect(res.dvol_rel <= 1e-6);
        cr.expect(res.grad_bound_ok);
    }
}

TEST_CASE("criterion 8: curve engine") {
    Criterion cr(8, "circle collapse, stationarity, convergence order", 120.0);
    const double r0 = kPi / 8.0;
    const double Texact = circle_collapse_time(1.0, r0);
    // 1% at 256 vertices
    {
        const auto tr = curve_flow(geodesic_circle(1.0, r0, 256));
        cr.expect(tr.collapsed);
        cr.expect(std::abs(tr.t_collapse - Texact) / Texact < 0.01);
    }
    // measured convergence order over N in {64, ..., 1024}
    {
        std::vector<double> logN, logE;
        for (int N : {64, 128, 256, 512, 1024}) {
            const auto tr = curve_flow(geodesic_circle(1.0, r0, N));
            cr.expect(tr.collapsed);
            logN.push_back(std::log(static_cast<double>(N)));
            logE.push_back(std::log(std::abs(tr.t_collapse - Texact)));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(logN.size());
        for (int i = 0; i < n; ++i) {
            sx += logN[i];
            sy += logE[i];
            sxx += logN[i] * logN[i];
            sxy += logN[i] * logE[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        std::printf("[acceptance]   curve collapse-time convergence order: %.2f\n", -slope);
        cr.expect(-slope >= 1.8);
    }
    // great circles are stationary over [0, 0.5]
    {
        CurveFlowOptions opt;
        opt.t_end = 0.5;
        opt.euclidean_tail = false;
        opt.stop_diameter = 1e-9;
        const auto start = great_circle(1.0, 256);
        const auto tr = curve_flow(start, opt);
        cr.expect(!tr.collapsed && !tr.halted);
        double drift = 0.0;
        for (int i = 0; i < start.size(); ++i)
            drift = std::max(drift, (tr.final_state.pts.row(i) - start.pts.row(i)).norm());
        cr.expect(drift <= 1e-3);
    }
}

TEST_CASE("criterion 9: pinching scan of the complex hyperbolic plane") {
    Criterion cr(9, "critical radius bracketing", 5.0);
    const auto sp = make_space(Family::C, -1, 2, 1.0);
    std::vector<double> radii;
    for (int i = 0; i < 10; ++i) radii.push_back(0.1 + 0.1 * i);
    const auto scan = pinch_monitor_scan(sp, radii);
    cr.expect(scan.rows.front().star_margin > 0.0);  // satisfied at r = 0.1
    cr.expect(scan.rows.back().star_margin < 0.0);   // violated at r = 1.0
    cr.expect(scan.has_critical);
    cr.expect(scan.r_lo > 0.1 - 1e-12);
    cr.expect(scan.r_hi < 1.0 + 1e-12);
    // refined to 1e-10: the margin changes sign across the reported root
    auto margin = [&](double r) {
        const SphereState st{sp, r};
        return std::pow(st.mean_curvature(), 2) / (st.m() - 1) - 8.0 - st.norm_h2();
    };
    cr.expect(margin(scan.r_critical - 1e-10) >= 0.0);
    cr.expect(margin(scan.r_critical + 1e-10) <= 0.0);
}

TEST_CASE("criterion 10: bit-exact reproducibility") {
    Criterion cr(10, "identical reports for identical seeds", 120.0);
    const auto reg = standard_registry();
    const auto a = run_campaign(reg, kDefaultSeed, 2000);
    const auto b = run_campaign(reg, kDefaultSeed, 2000);
    cr.expect(report_to_json(a) == report_to_json(b));
    // and independently of the thread count
    setenv("RANK1_LAB_THREADS", "4", 1);
    const auto c = run_campaign(reg, kDefaultSeed, 2000);
    unsetenv("RANK1_LAB_THREADS");
    cr.expect(report_to_json(a) == report_to_json(c));
    const auto d = run_campaign_serial(reg, kDefaultSeed, 2000);
    cr.expect(report_to_json(a) == report_to_json(d));
}
