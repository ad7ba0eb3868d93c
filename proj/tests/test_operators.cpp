#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tubeops/operators.hpp"
#include "tubeops/witnesses.hpp"

using namespace tubeops;

TEST_CASE("named operator parameter triples") {
    const auto p = make_projection(1, {0.5, 1.0});
    CHECK(p.a[0] == 0.0);
    CHECK(p.b[0] == doctest::Approx(0.5));
    CHECK(p.c[0] == doctest::Approx(2.5));
    CHECK(p.c[1] == doctest::Approx(3.0));
    CHECK(p.alpha[0] == doctest::Approx(0.5));
    CHECK(p.beta[1] == doctest::Approx(1.0));

    const auto b = make_berezin(1, {0.0, 0.5});
    CHECK(b.a[0] == doctest::Approx(2.0));
    CHECK(b.b[1] == doctest::Approx(0.5));
    CHECK(b.c[0] == doctest::Approx(4.0));
    CHECK(b.c[1] == doctest::Approx(5.0));

    const auto t = make_Tc({1.5, 2.0}, {0.25, 0.0});
    CHECK(t.a[0] == 0.0);
    CHECK(t.b[0] == doctest::Approx(0.25));
    CHECK(t.c[0] == doctest::Approx(1.5));
    CHECK(t.c[1] == doctest::Approx(2.0));

    CHECK_THROWS_AS(make_projection(1, {-1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_berezin(2, {0.0, -1.5}), std::invalid_argument);
}

TEST_CASE("inadmissible quadrature weights are rejected") {
    OperatorParams params;
    params.alpha = {-2.0, 0.0};
    const auto f = make_bump(TubePoint::half_plane(0, 1.5),
                             TubePoint::half_plane(0, 1.5), 0.5);
    QuadratureConfig qc;
    CHECK_THROWS_AS(apply_T(params, f, TubePoint::half_plane(0, 1),
                            TubePoint::half_plane(0, 1), 1, qc),
                    std::invalid_argument);
}

TEST_CASE("application is homogeneous in the input") {
    OperatorParams params;
    params.b = {0.2, 0.0};
    params.c = {1.5, 1.2};
    QuadratureConfig qc;
    const auto f = make_bump(TubePoint::half_plane(0.3, 1.5),
                             TubePoint::half_plane(-0.2, 1.8), 0.6);
    WeightedFunction f3 = f;
    const TubeFn inner = f.f1;
    f3.f1 = [inner](const TubePoint& z) { return 3.0 * inner(z); };
    const TubePoint z = TubePoint::half_plane(0.0, 1.0);
    const TubePoint w = TubePoint::half_plane(0.5, 2.0);
    const auto r1 = apply_T(params, f, z, w, 1, qc);
    const auto r3 = apply_T(params, f3, z, w, 1, qc);
    CHECK(std::abs(r3.value - 3.0 * r1.value) <=
          1e-9 * std::abs(r3.value) + 3.0 * r1.est_error + r3.est_error);
}

TEST_CASE("modulus kernel dominates the analytic kernel pointwise") {
    OperatorParams params;
    params.a = {0.3, 0.0};
    params.b = {0.0, 0.4};
    params.c = {1.8, 1.1};
    QuadratureConfig qc;
    const auto f = make_bump(TubePoint::half_plane(0.0, 1.5),
                             TubePoint::half_plane(0.0, 1.5), 0.7);
    const TubePoint z = TubePoint::half_plane(1.0, 0.8);
    const TubePoint w = TubePoint::half_plane(-1.0, 2.2);
    const auto t = apply_T(params, f, z, w, 1, qc);
    const auto s = apply_S(params, f, z, w, 1, qc);
    CHECK(s.value.real() > 0.0);
    CHECK(std::abs(t.value) <= s.value.real() + t.est_error + s.est_error);
}

TEST_CASE("adjoint pairing agreement") {
    OperatorParams params;
    params.a = {0.2, 0.1};
    params.b = {0.3, 0.0};
    params.c = {1.4, 1.6};
    params.alpha = {0.2, -0.1};
    params.beta = {0.0, 0.3};
    QuadratureConfig qc;
    const auto f = make_bump(TubePoint::half_plane(-0.5, 1.4),
                             TubePoint::half_plane(0.4, 1.9), 0.6);
    const auto g = make_bump(TubePoint::half_plane(0.8, 2.1),
                             TubePoint::half_plane(-0.3, 1.5), 0.6);
    CHECK(duality_gap(params, f, g, 1, qc) < 2e-2);
}
