#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tubeops/integration.hpp"
#include "tubeops/special_functions.hpp"

using namespace tubeops;
namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("half-plane quadrature on a gaussian") {
    QuadratureConfig qc;
    const TubeFn g = [](const TubePoint& z) {
        return Complex{std::exp(-z.x[0] * z.x[0] - z.y[0] * z.y[0]), 0.0};
    };
    const auto r = integrate_tube(g, 1, 0.0, qc);
    CHECK(r.converged);
    CHECK(r.real() == doctest::Approx(0.5 * pi).epsilon(1e-2));
}

TEST_CASE("boundary weight is applied") {
    QuadratureConfig qc;
    const TubeFn g = [](const TubePoint& z) {
        return Complex{std::exp(-z.x[0] * z.x[0] - z.y[0]), 0.0};
    };
    // integral exp(-x^2) dx * integral y exp(-y) dy = sqrt(pi) * 1
    const auto r = integrate_tube(g, 1, 1.0, qc);
    CHECK(r.converged);
    CHECK(r.real() == doctest::Approx(std::sqrt(pi)).epsilon(1e-2));
}

TEST_CASE("divergence is flagged, not truncated") {
    QuadratureConfig qc;
    qc.max_evals = 2'000'000;
    const TubeFn one = [](const TubePoint&) { return Complex{1.0, 0.0}; };
    const auto r = integrate_tube(one, 1, 0.0, qc);
    CHECK(r.divergent);
    CHECK(!r.converged);
}

TEST_CASE("two-kernel identity at the pinned configuration") {
    QuadratureConfig qc;
    const auto rep = verify_identity_first(1, 2.0, 2.0, 0.0,
                                           TubePoint::half_plane(0.0, 1.0),
                                           TubePoint::half_plane(0.0, 2.0), qc);
    CHECK(rep.converged);
    CHECK(rep.rel_err < 1e-2);
    // rho(z,u) = 3/2, so the closed form is 4 pi / (3/2)^2 = 16 pi / 9
    CHECK(rep.rhs.real() == doctest::Approx(16.0 * pi / 9.0).epsilon(1e-12));
    CHECK(rep.lhs.real() == doctest::Approx(16.0 * pi / 9.0).epsilon(1e-2));
}

TEST_CASE("single-kernel identity: homogeneity and even-power constant") {
    QuadratureConfig qc;
    std::vector<TubePoint> zs;
    for (double h : {0.5, 1.0, 1.7, 3.0})
        zs.push_back(TubePoint::half_plane(0.4 * h, h));
    const auto rep = verify_identity_second(1, 4.0, 0.0, zs, qc);
    CHECK(rep.converged);
    CHECK(!rep.divergent);
    CHECK(rep.homogeneity_spread < 2e-2);
    // |rho(z,w)|^4 = rho(z,w)^2 rho(w,z)^2, so the constant is C1(1,2,2,0)
    CHECK(rep.constant_estimate == doctest::Approx(4.0 * pi).epsilon(2e-2));

    const auto bad = verify_identity_second(1, 2.0, 0.0, zs, qc);
    CHECK(bad.divergent);
}

TEST_CASE("L2 norm against a closed form") {
    QuadratureConfig qc;
    const TubePoint i1 = TubePoint::half_plane(0.0, 1.0);
    const TubeFn f = [&](const TubePoint& z) {
        const Complex v = rho_pair(z, i1);
        return Complex{1.0, 0.0} / (v * v);
    };
    // integral |f|^2 = C1(1,2,2,0) / rho(i)^2 = 4 pi
    const auto r = norm_tube(f, 1, Exponent(2.0), 0.0, qc);
    CHECK(r.converged);
    CHECK(r.real() == doctest::Approx(std::sqrt(4.0 * pi)).epsilon(1e-2));
}

TEST_CASE("mixed norm of a separable function factors") {
    QuadratureConfig qc;
    const TubeFn g1 = [](const TubePoint& z) {
        return Complex{std::exp(-z.x[0] * z.x[0] - z.y[0]), 0.0};
    };
    const TubeFn g2 = [](const TubePoint& z) {
        return Complex{std::exp(-0.5 * z.x[0] * z.x[0] - 2.0 * z.y[0]), 0.0};
    };
    const auto f = WeightedFunction::separable(g1, g2);
    const auto m = mixed_norm(f, 1, MixedExponents(2.0, 3.0), {0.0, 0.5}, qc);
    const auto n1 = norm_tube(g1, 1, Exponent(2.0), 0.0, qc);
    const auto n2 = norm_tube(g2, 1, Exponent(3.0), 0.5, qc);
    CHECK(m.converged);
    CHECK(m.real() == doctest::Approx(n1.real() * n2.real()).epsilon(1e-3));
}

TEST_CASE("monte carlo agrees with the closed form at n = 2") {
    QuadratureConfig qc;
    qc.max_evals = 3'000'000;
    qc.seed = 99;
    const auto z = TubePoint::vertical(2, 1.0);
    const auto rep = verify_identity_first(2, 3.0, 3.0, 0.0, z, z, qc);
    CHECK(rep.rel_err < 0.15);
    // identical configuration twice gives identical output
    const auto rep2 = verify_identity_first(2, 3.0, 3.0, 0.0, z, z, qc);
    CHECK(rep.lhs == rep2.lhs);
}

TEST_CASE("quadrature config validation") {
    QuadratureConfig qc;
    qc.rel_tol = -1.0;
    CHECK_THROWS(qc.validate());
}
