#include <doctest.h>

#include "rank1/ambient.hpp"

using namespace rank1;

namespace {

std::vector<SpaceSpec> six_families() {
    return {make_space(Family::C, 1, 2, 1.0),  make_space(Family::C, -1, 3, 1.0),
            make_space(Family::H, 1, 2, 1.0),  make_space(Family::H, -1, 2, 1.0),
            make_space(Family::O, 1, 2, 1.0),  make_space(Family::O, -1, 2, 1.0)};
}

}  // namespace

TEST_CASE("space derivation and validation") {
    const auto cp2 = make_space(Family::C, 1, 2, 1.0);
    CHECK(cp2.d() == 2);
    CHECK(cp2.real_dim() == 4);
    CHECK(cp2.einstein_const() == doctest::Approx(6.0));

    const auto hp3 = make_space(Family::H, 1, 3, 1.0);
    CHECK(hp3.d() == 4);
    CHECK(hp3.real_dim() == 12);
    CHECK(hp3.einstein_const() == doctest::Approx(20.0));

    CHECK(make_space(Family::C, -1, 2, 1.0).einstein_const() == doctest::Approx(-6.0));
    CHECK(make_space(Family::O, 1, 2, 1.0).einstein_const() == doctest::Approx(36.0));
    CHECK(make_space(Family::H, -1, 3, 1.0).einstein_const() == doctest::Approx(-20.0));

    CHECK_THROWS_AS(make_space(Family::C, 1, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_space(Family::C, 1, 2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_space(Family::O, 1, 3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_space(Family::C, 1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_space(Family::C, 2, 2, 1.0), std::invalid_argument);
}

TEST_CASE("space descriptor parsing") {
    const auto ch2 = parse_space("CH", 1, 2, 1.0);
    CHECK(ch2.family == Family::C);
    CHECK(ch2.sign == -1);
    const auto hp = parse_space("HP", -1, 3, 2.0);
    CHECK(hp.sign == 1);
    const auto bare = parse_space("H", -1, 2, 1.0);
    CHECK(bare.sign == -1);
    CHECK_THROWS_AS(parse_space("X", 1, 2, 1.0), std::invalid_argument);
}

TEST_CASE("structure operators: isometry, skewness, square, anticommutation") {
    for (const auto& sp : six_families()) {
        const auto alg = PointAlgebra::standard(sp);
        const int dim = alg.dim();
        const auto& J = alg.structure_ops();
        CHECK(static_cast<int>(J.size()) == sp.d() - 1);
        const MatrixXd I = MatrixXd::Identity(dim, dim);
        for (size_t a = 0; a < J.size(); ++a) {
            CHECK((J[a].transpose() * J[a] - I).cwiseAbs().maxCoeff() < 1e-12);  // isometry
            CHECK((J[a] + J[a].transpose()).cwiseAbs().maxCoeff() < 1e-12);      // skewness
            CHECK((J[a] * J[a] + I).cwiseAbs().maxCoeff() < 1e-12);              // square
            for (size_t b = a + 1; b < J.size(); ++b)
                CHECK((J[a] * J[b] + J[b] * J[a]).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("quaternionic frame composition sign convention") {
    const auto alg = PointAlgebra::standard(make_space(Family::H, 1, 2, 1.0));
    const auto& J = alg.structure_ops();
    // right scalar multiplication: J1 J2 = -J3
    CHECK((J[0] * J[1] + J[2]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("curvature values on distinguished planes") {
    const auto sp = make_space(Family::C, 1, 2, 1.0);
    const auto alg = PointAlgebra::standard(sp);
    VectorXd X = VectorXd::Zero(4), Y = VectorXd::Zero(4);
    X(0) = 1.0;
    Y(2) = 1.0;  // orthonormal, Y perp J1 X
    CHECK(alg.curvature(X, Y, Y, X) == doctest::Approx(1.0).epsilon(1e-12));
    const VectorXd JX = alg.structure_ops()[0] * X;
    CHECK(alg.curvature(X, JX, JX, X) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(alg.curvature(X, X, X, X) == doctest::Approx(0.0));

    CHECK_THROWS_AS(alg.curvature(VectorXd::Zero(3), X, X, X), std::invalid_argument);
}

TEST_CASE("sectional curvature bounds and special planes") {
    SampleRng rng(7, 7, 7);
    {
        const auto alg = PointAlgebra::standard(make_space(Family::C, -1, 3, 1.0));
        const VectorXd X = alg.random_unit(rng);
        const VectorXd JX = alg.structure_ops()[0] * X;
        CHECK(alg.sectional(X, JX) == doctest::Approx(-4.0).epsilon(1e-12));
    }
    {
        const auto alg = PointAlgebra::standard(make_space(Family::H, 1, 3, 1.0));
        VectorXd X = VectorXd::Zero(12), Y = VectorXd::Zero(12);
        X(0) = 1.0;
        Y(4) = 1.0;  // different quaternionic coordinate, real direction
        CHECK(alg.sectional(X, Y) == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const auto& sp : six_families()) {
        const auto alg = PointAlgebra::standard(sp);
        for (int it = 0; it < 500; ++it) {
            const VectorXd X = alg.random_vector(rng);
            const VectorXd Y = alg.random_vector(rng);
            const double K = sp.sign * alg.sectional(X, Y);
            CHECK(K > sp.c - 1e-10);
            CHECK(K < 4.0 * sp.c + 1e-10);
        }
    }
    const auto alg = PointAlgebra::standard(make_space(Family::C, 1, 2, 1.0));
    VectorXd X = VectorXd::Zero(4);
    X(0) = 1.0;
    CHECK_THROWS_AS(alg.sectional(X, 2.0 * X), std::domain_error);
}

TEST_CASE("curvature symmetries and first Bianchi identity") {
    SampleRng rng(11, 3, 0);
    for (const auto& sp : six_families()) {
        const auto alg = PointAlgebra::standard(sp);
        for (int it = 0; it < 10000; ++it) {
            const VectorXd X = alg.random_vector(rng), Y = alg.random_vector(rng),
                           Z = alg.random_vector(rng), W = alg.random_vector(rng);
            const double scale = std::max(1.0, std::abs(alg.curvature(X, Y, Z, W)));
            CHECK(std::abs(alg.curvature(X, Y, Z, W) + alg.curvature(Y, X, Z, W)) / scale < 1e-12);
            CHECK(std::abs(alg.curvature(X, Y, Z, W) - alg.curvature(Z, W, X, Y)) / scale < 1e-12);
            const double bianchi = alg.curvature(X, Y, Z, W) + alg.curvature(Y, Z, X, W) +
                                   alg.curvature(Z, X, Y, W);
            CHECK(std::abs(bianchi) / scale < 1e-12);
        }
    }
}

TEST_CASE("Einstein property of the curvature formula") {
    SampleRng rng(13, 1, 0);
    for (const auto& sp : six_families()) {
        const auto alg = PointAlgebra::standard(sp);
        const double rbar = sp.einstein_const();
        for (int it = 0; it < 100; ++it) {
            const VectorXd X = alg.random_unit(rng);
            CHECK(std::abs(alg.ricci(X) - rbar) < 1e-10);
        }
    }
    const auto alg = PointAlgebra::standard(make_space(Family::C, 1, 2, 1.0));
    VectorXd X = VectorXd::Zero(4);
    X(0) = 2.0;
    CHECK_THROWS_AS(alg.ricci(X), std::invalid_argument);
}

TEST_CASE("curvature scales exactly linearly in c") {
    SampleRng rng(17, 2, 5);
    const double c = 2.75;
    const auto a1 = PointAlgebra::standard(make_space(Family::H, -1, 2, 1.0));
    const auto ac = PointAlgebra::standard(make_space(Family::H, -1, 2, c));
    for (int it = 0; it < 50; ++it) {
        const VectorXd X = a1.random_vector(rng), Y = a1.random_vector(rng),
                       Z = a1.random_vector(rng), W = a1.random_vector(rng);
        CHECK(ac.curvature(X, Y, Z, W) == c * a1.curvature(X, Y, Z, W));
    }
}

TEST_CASE("structure-frame re-gauging leaves curvature invariant") {
    SampleRng rng(19, 4, 1);
    const auto alg = PointAlgebra::standard(make_space(Family::H, 1, 2, 1.0));
    // a rotation about a lopsided axis
    Eigen::Matrix3d g =
        Eigen::AngleAxisd(0.83, Eigen::Vector3d(1.0, -2.0, 0.5).normalized()).toRotationMatrix();
    const auto alg2 = alg.regauged(g);
    for (int it = 0; it < 100; ++it) {
        const VectorXd X = alg.random_vector(rng), Y = alg.random_vector(rng),
                       Z = alg.random_vector(rng), W = alg.random_vector(rng);
        CHECK(alg.curvature(X, Y, Z, W) ==
              doctest::Approx(alg2.curvature(X, Y, Z, W)).epsilon(1e-12));
    }
    const auto algC = PointAlgebra::standard(make_space(Family::C, 1, 2, 1.0));
    CHECK_THROWS_AS(algC.regauged(g), std::invalid_argument);
}

TEST_CASE("octonion table yields a left-multiplication algebra") {
    for (int k = 1; k <= 7; ++k) {
        const auto L = octonion_left_mult(k);
        CHECK((L * L + Eigen::Matrix<double, 8, 8>::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK_THROWS_AS(octonion_left_mult(0), std::invalid_argument);
}
