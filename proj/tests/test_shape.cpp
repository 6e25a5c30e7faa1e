#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "rank1/shape.hpp"

using namespace rank1;

TEST_CASE("scalar derivation: umbilic, hypersurface identity, dual formulas") {
    // umbilic: h^a = (H^a/m) id has no traceless part
    {
        std::vector<MatrixXd> T(2, MatrixXd::Zero(4, 4));
        VectorXd H(2);
        H << 2.0, -1.0;
        const auto s = shape_from_traceless(T, H);
        CHECK(s.h02 == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(s.h1o2 == doctest::Approx(0.0));
        CHECK(s.H2 == doctest::Approx(5.0));
    }
    // hypersurface eigenvalues (1, 2)
    {
        VectorXd lam(2);
        lam << 1.0, 2.0;
        const auto s = hypersurface_shape(lam);
        CHECK(s.h02 == doctest::Approx(0.5).epsilon(1e-14));           // (1/m) sum (li-lj)^2
        CHECK(s.h2 - s.H2 / s.m == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(s.h2 == doctest::Approx(5.0));
        CHECK(s.H2 == doctest::Approx(9.0));
    }
    // random shapes: definition vs the norm-splitting identity
    SampleRng rng(101, 0, 0);
    for (int it = 0; it < 300; ++it) {
        const int m = 3 + static_cast<int>(rng.below(6));
        const int k = 1 + static_cast<int>(rng.below(4));
        const auto s = sample_shape(m, k, rng);
        // traceless norm: direct sum of squared traceless components
        double direct = 0.0;
        for (int a = 0; a < k; ++a) {
            MatrixXd ho = s.h[a];
            ho.diagonal().array() -= s.h[a].trace() / m;
            direct += ho.squaredNorm();
        }
        CHECK(std::abs(direct - s.h02) < 1e-12 * std::max(1.0, s.h2));
        // hypersurface eigenvalue-gap identity
        if (k == 1) {
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.h[0]);
            double gaps = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    gaps += std::pow(es.eigenvalues()(i) - es.eigenvalues()(j), 2);
            CHECK(std::abs(gaps / m - s.h02) < 1e-11 * std::max(1.0, s.h2));
        }
        // type (I) split adds up
        if (s.has_type1) CHECK(s.h1o2 + s.hminus2 == doctest::Approx(s.h02).epsilon(1e-11));
    }
    // asymmetric input rejected
    std::vector<MatrixXd> bad(1, MatrixXd::Zero(3, 3));
    bad[0](0, 1) = 1.0;
    CHECK_THROWS_AS(derive_scalars(bad), std::invalid_argument);
}

TEST_CASE("R1/R2: vanishing, umbilic value, splitting identity") {
    SampleRng rng(103, 0, 0);
    // H = 0 kills R2
    const auto s0 = sample_traceless_shape(5, 3, rng);
    CHECK(r1_r2(s0).r2 < 1e-20 * std::max(1.0, s0.h2 * s0.h2));
    CHECK(r1_r2(s0).r2_split == 0.0);
    // umbilic hypersurface: R2 = ||H||^4 / m
    {
        VectorXd lam = VectorXd::Constant(4, 1.5);
        const auto s = hypersurface_shape(lam);
        CHECK(r1_r2(s).r2 == doctest::Approx(s.H2 * s.H2 / 4.0).epsilon(1e-12));
    }
    // definition vs frame-splitting formula
    for (int it = 0; it < 300; ++it) {
        const int m = 3 + static_cast<int>(rng.below(6));
        const int k = 1 + static_cast<int>(rng.below(4));
        const auto s = sample_shape(m, k, rng);
        const auto r = r1_r2(s);
        if (s.has_type1) CHECK(std::abs(r.r2 - r.r2_split) < 1e-10 * std::max(1.0, r.r2));
    }
}

TEST_CASE("reaction terms: matrix evaluation matches the component sums") {
    SampleRng rng(107, 0, 0);
    const std::vector<SpaceSpec> spaces = {
        make_space(Family::C, 1, 3, 1.0), make_space(Family::C, -1, 3, 1.3),
        make_space(Family::H, 1, 2, 1.0), make_space(Family::H, -1, 2, 0.7)};
    for (const auto& sp : spaces) {
        const auto alg = PointAlgebra::standard(sp);
        const int dn = sp.real_dim();
        for (int it = 0; it < 6; ++it) {
            const int k = 1 + static_cast<int>(rng.below(3));
            const int m = dn - k;
            const auto pair = random_subspace_pair(dn, m, rng);
            const auto s = sample_shape(m, k, rng);
            const double a = rng.uniform(0.0, 0.5);
            const auto fast = reaction_terms(alg, pair, s, a);
            const auto ref = reaction_terms_reference(alg, pair, s, a);
            const double scale = std::max({1.0, std::abs(ref.P_I), std::abs(ref.P_II),
                                           std::abs(ref.P_III)});
            CHECK(std::abs(fast.P_I - ref.P_I) / scale < 1e-10);
            CHECK(std::abs(fast.P_II - ref.P_II) / scale < 1e-10);
            CHECK(std::abs(fast.P_III - ref.P_III) / scale < 1e-10);
        }
    }
}

TEST_CASE("tangential reaction term: eigen-gap identity and umbilic vanishing") {
    SampleRng rng(109, 0, 0);
    const auto sp = make_space(Family::C, 1, 2, 1.0);
    const auto alg = PointAlgebra::standard(sp);
    for (int it = 0; it < 30; ++it) {
        const auto pair = random_subspace_pair(4, 3, rng);
        const auto s = sample_shape(3, 1, rng);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.h[0]);
        const MatrixXd dirs = pair.tangent * es.eigenvectors();
        double expect = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int p = i + 1; p < 3; ++p)
                expect += -4.0 * alg.sectional(dirs.col(i), dirs.col(p)) *
                          std::pow(es.eigenvalues()(i) - es.eigenvalues()(p), 2);
        const auto rt = reaction_terms(alg, pair, s, 0.3);
        CHECK(rt.P_I == doctest::Approx(expect).epsilon(1e-9));
        // the compact-family bound
        CHECK(rt.P_I <= -4.0 * 3 * sp.c * s.h02 + 1e-9);
    }
    // umbilic: no eigenvalue gaps, P_I = 0
    const auto pair = random_subspace_pair(4, 3, rng);
    const auto s = hypersurface_shape(VectorXd::Constant(3, 2.0));
    CHECK(std::abs(reaction_terms(alg, pair, s, 0.3).P_I) < 1e-10);
}

TEST_CASE("cubic contraction Z: hypersurface power-sum identity") {
    SampleRng rng(113, 0, 0);
    for (int it = 0; it < 100; ++it) {
        const int m = 3 + static_cast<int>(rng.below(5));
        const auto s = sample_shape(m, 1, rng);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.h[0]);
        const VectorXd lam = es.eigenvalues();
        double p1 = 0, p2 = 0, p3 = 0;
        for (int i = 0; i < m; ++i) {
            p1 += lam(i);
            p2 += lam(i) * lam(i);
            p3 += lam(i) * lam(i) * lam(i);
        }
        CHECK(z_quantity(s) == doctest::Approx(p1 * p3 - p2 * p2).epsilon(1e-10));
    }
}

TEST_CASE("pinching constants: table values and formulas") {
    // k = 1 values of b
    const auto cp3 = make_space(Family::C, 1, 3, 1.0);
    const auto pc1 = PinchConstants::for_space(cp3, 5, 1, 0.05, 0.1);
    CHECK(pc1.b() == doctest::Approx(2.0));
    const auto ch3 = make_space(Family::C, -1, 3, 1.0);
    CHECK(PinchConstants::for_space(ch3, 5, 1, 0.05, 0.1).b() == doctest::Approx(-8.0));
    // codimension >= 2 table rows
    const auto cp5 = make_space(Family::C, 1, 5, 1.0);
    const auto pc2 = PinchConstants::for_space(cp5, 8, 2, 0.05, 0.1);
    CHECK(pc2.b() == doctest::Approx((8.0 - 4.0 * 1 * 2 - 3.0) / 8.0));
    const auto hh4 = make_space(Family::H, -1, 4, 1.0);
    const auto pc3 = PinchConstants::for_space(hh4, 13, 3, 0.05, 0.1);
    CHECK(pc3.b() == doctest::Approx(-(8.0 * 13 + 4.0 * 3 * 3 + 3.0) / 13.0));
    // C1 and C4 in the higher-codimension regime
    CHECK(pc2.C1() == doctest::Approx(1.0 / (9.0 * 8 * 10)).epsilon(1e-12));
    CHECK(pc2.C4() == doctest::Approx(((11.0 - 4.0) * 8 - 18.0) / (9.0 * 8 * 10)).epsilon(1e-12));
    // gradient constant positive in the hypersurface regime
    CHECK(pc1.C1() > 0.0);
    CHECK(PinchConstants::for_space(ch3, 5, 1, 0.05, 0.1).C1() > 0.0);
    // mean-curvature lower bound for the noncompact families
    CHECK(PinchConstants::for_space(ch3, 5, 1, 0.05, 0.1).H2_lower_bound() ==
          doctest::Approx(8.0 * 5 * 4));
    CHECK(pc1.H2_lower_bound() == 0.0);
    // C13/C14 collapse in the compact case
    CHECK(pc2.C14(1.0) == doctest::Approx(0.0));
    CHECK(pc2.C13(1.0) == doctest::Approx(1.0 / pc2.C4() + 1.0));
    // dimension bookkeeping enforced
    CHECK_THROWS_AS(PinchConstants::for_space(cp3, 4, 1, 0.05, 0.1), std::invalid_argument);
}

TEST_CASE("pinch evaluation on geodesic-sphere shapes") {
    // radius-0.1 sphere in the complex hyperbolic plane: condition satisfied
    auto sphere_shape = [](double r) {
        VectorXd lam(3);
        lam << 1.0 / std::tanh(r), 1.0 / std::tanh(r), 2.0 / std::tanh(2.0 * r);
        return hypersurface_shape(lam);
    };
    const auto ch2 = make_space(Family::C, -1, 2, 1.0);
    const auto pc = PinchConstants::for_space(ch2, 3, 1, 0.05, 0.1);
    {
        const auto s = sphere_shape(0.1);
        CHECK(s.h2 == doctest::Approx(304.0).epsilon(1e-4));
        CHECK(s.H2 / 2.0 + pc.b() == doctest::Approx(448.0).epsilon(1e-4));
        const auto rep = pinch_eval(s, pc);
        CHECK(rep.star_satisfied);
        CHECK(rep.H2_lower_bound == doctest::Approx(48.0));
        CHECK(rep.W_positive);
        CHECK(rep.f0 >= 0.0);
        CHECK(rep.f0 < 1.0);
    }
    {
        const auto rep = pinch_eval(sphere_shape(1.0), pc);
        CHECK(!rep.star_satisfied);
    }
    // umbilic with positive b: condition always satisfied
    {
        const auto cp3 = make_space(Family::C, 1, 3, 1.0);
        const auto pcc = PinchConstants::for_space(cp3, 5, 1, 0.05, 0.1);
        const auto s = hypersurface_shape(VectorXd::Constant(5, 3.0));
        CHECK(pinch_eval(s, pcc).star_satisfied);
    }
    // octonionic high-codimension normalization is undefined
    {
        const auto op2 = make_space(Family::O, 1, 2, 1.0);
        const auto pco = PinchConstants::for_space(op2, 14, 2, 0.05, 0.1);
        CHECK(!pco.alpha_positive());
        SampleRng rng(1, 1, 1);
        const auto rep = pinch_eval(sample_shape(14, 2, rng), pco);
        CHECK(!rep.alpha_defined);
        CHECK(std::isnan(rep.f_sigma));
    }
}

TEST_CASE("constrained sampling and the conditional reaction bound") {
    SampleRng rng(127, 0, 0);
    // the sampler lands exactly on the constraint surface
    for (int it = 0; it < 200; ++it) {
        const int m = 5 + static_cast<int>(rng.below(6));
        const int k = 1 + static_cast<int>(rng.below(4));
        const double a = 1.0 / (m - 1 + rng.uniform(0.01, 1.0));
        const double b = rng.uniform(-3.0, 3.0);
        const auto s = sample_constrained_shape(m, k, a, b, rng);
        CHECK(std::abs(s.h2 - (a * s.H2 + b)) < 1e-9 * std::max(1.0, s.h2));
        const auto bd = constrained_reaction_bounds(s, a, b, true);
        CHECK(bd.rhs2_valid);
        CHECK(bd.lhs <= bd.rhs1 + 1e-9 * std::max(1.0, s.h2 * s.h2));
        CHECK(bd.lhs <= bd.rhs2 + 1e-9 * std::max(1.0, s.h2 * s.h2));
    }
    // a = 1/m: the second bound divides by ma - 1
    {
        const auto s = sample_shape(5, 2, rng);
        CHECK_THROWS_AS(constrained_reaction_bounds(s, 1.0 / 5.0, 1.0, true), std::invalid_argument);
    }
    CHECK_THROWS_AS(sample_constrained_shape(5, 2, 1.0 / 5.0, 1.0, rng), std::invalid_argument);
    // off the constraint surface the conditional bound refuses to evaluate
    {
        const auto s = sample_shape(5, 2, rng);
        CHECK_THROWS_AS(constrained_reaction_bounds(s, 0.5, -100.0, true), std::invalid_argument);
    }
    // H = 0 has no first-kind frame
    SampleRng rng2(127, 1, 0);
    const auto s0 = sample_traceless_shape(5, 2, rng2);
    CHECK_THROWS_AS(constrained_reaction_bounds(s0, 0.5, 1.0, true), std::domain_error);
}

TEST_CASE("pinched sampler respects the relaxed condition") {
    SampleRng rng(131, 0, 0);
    for (int it = 0; it < 200; ++it) {
        const int m = 5 + static_cast<int>(rng.below(6));
        const int k = 1 + static_cast<int>(rng.below(3));
        const double eps = 0.05;
        const double a_eps = 1.0 / (m - 1 + eps);
        const double b_eps = rng.uniform(-4.0, 2.0);
        const auto s = sample_pinched_shape(m, k, a_eps, b_eps, rng);
        CHECK(s.h2 <= a_eps * s.H2 + b_eps + 1e-9 * std::max(1.0, s.h2));
    }
}

TEST_CASE("composite smoothing quantities") {
    const auto cp5 = make_space(Family::C, 1, 5, 1.0);
    const auto pc = PinchConstants::for_space(cp5, 8, 2, 0.05, 0.1);
    SampleRng rng(137, 0, 0);
    const auto s = sample_shape(8, 2, rng);
    const double C12 = 1.7;
    const double g = g_quantity(s, pc, C12);
    CHECK(g == doctest::Approx(s.H2 * s.h02 + 0.5 * (C12 / pc.C4() + 1.0) * s.h02));
    // on gradient-free data, f reduces to the g part minus the quartic term
    const double f = f_quantity(0.0, g, pc, 2.0, 0.01, s.H2);
    CHECK(f == doctest::Approx(3.0 / pc.C4() * g - 0.01 * s.H2 * s.H2));
}

TEST_CASE("profile coefficients flip at the family thresholds") {
    CHECK(omega_term_coefficient(2, 8) >= 0.0);
    CHECK(omega_term_coefficient(2, 7) < 0.0);
    CHECK(omega_term_coefficient(4, 11) >= 0.0);
    CHECK(omega_term_coefficient(4, 10) < 0.0);
    for (int m = 2; m <= 16; ++m) {
        CHECK(omega_term_coefficient(8, m) > 0.0);
        CHECK(alpha_k2_formula(8, m) < 0.0);  // octonionic normalization is negative
    }
}
