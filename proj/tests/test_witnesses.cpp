#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tubeops/integration.hpp"
#include "tubeops/witnesses.hpp"

using namespace tubeops;

namespace {

OperatorParams sample_params() {
    OperatorParams p;
    p.a = {0.3, 0.2};
    p.b = {0.4, 0.1};
    p.c = {1.6, 1.3};
    return p;
}

}  // namespace

TEST_CASE("direct family: construction and norm anchor-independence") {
    const MixedExponents p(2.0, 2.0);
    const auto params = sample_params();
    const auto f1 = make_direct_family(1, p, params, TubePoint::half_plane(0.0, 1.0),
                                       TubePoint::half_plane(0.0, 1.0));
    const auto f2 = make_direct_family(1, p, params, TubePoint::half_plane(1.5, 0.3),
                                       TubePoint::half_plane(-0.8, 2.5));
    QuadratureConfig qc;
    const auto n1 = mixed_norm(f1.fn, 1, p, {params.alpha[0], params.alpha[1]}, qc);
    const auto n2 = mixed_norm(f2.fn, 1, p, {params.alpha[0], params.alpha[1]}, qc);
    CHECK(n1.converged);
    CHECK(n2.converged);
    CHECK(n1.real() == doctest::Approx(n2.real()).epsilon(3e-2));
}

TEST_CASE("direct family rejects an infeasible integrability range") {
    OperatorParams p = sample_params();
    p.alpha = {3.0, 0.0};  // alpha1 + 1 >= p1 (b1 + 1)
    CHECK_THROWS_AS(make_direct_family(1, {2.0, 2.0}, p,
                                       TubePoint::half_plane(0, 1),
                                       TubePoint::half_plane(0, 1)),
                    std::invalid_argument);
}

TEST_CASE("closed-form image matches quadrature") {
    const MixedExponents p(2.0, 2.0);
    const auto params = sample_params();
    const auto fam = make_direct_family(1, p, params, TubePoint::half_plane(0.4, 1.2),
                                        TubePoint::half_plane(-0.3, 0.9));
    const auto img = closed_form_T_image(fam);
    CHECK(img.constant > 0.0);
    CHECK(!img.describe().empty());
    QuadratureConfig qc;
    const TubePoint z = TubePoint::half_plane(0.0, 1.0);
    const TubePoint w = TubePoint::half_plane(0.7, 1.8);
    const auto quad = apply_T(params, fam.fn, z, w, 1, qc);
    const Complex cf = img.fn.eval(z, w);
    CHECK(quad.converged);
    CHECK(std::abs(quad.value - cf) <= 2e-2 * std::abs(cf));
}

TEST_CASE("dual family satisfies its exponent constraints") {
    const MixedExponents q(2.5, 3.0);
    OperatorParams params = sample_params();
    params.beta = {0.2, -0.3};
    const auto fam = make_dual_family(1, q, params, 1.0, 1.0);
    for (int i = 0; i < 2; ++i) {
        const double qd = q.at(i).conjugate().value();
        const double s = fam.s_exp[i], t = fam.t_exp[i];
        const double be = params.beta[i], a = params.a[i], c = params.c[i];
        CHECK(s > 0.0);
        CHECK(t > -(be + 1.0) / qd);
        CHECK(t > -a - be - 1.0);
        CHECK(s - t > (2.0 + be) / qd);
        CHECK(s - t > be + a - c + 2.0);
    }
    const auto img = closed_form_T_image(fam);
    CHECK(img.constant > 0.0);
}

TEST_CASE("norm-ratio sweep is flat exactly on the critical line") {
    OperatorParams p;
    p.c = {2.0, 2.0};
    const std::vector<double> scales = {1, 2, 4, 8, 16, 32};
    QuadratureConfig qc;
    auto res = blowup_sweep(1, {2.0, 2.0}, {2.0, 2.0}, p, scales, qc);
    CHECK(!res.divergent);
    CHECK(res.predicted_slope == doctest::Approx(0.0));
    CHECK(std::abs(res.slope) < 1e-9);

    p.c[0] = 2.3;
    res = blowup_sweep(1, {2.0, 2.0}, {2.0, 2.0}, p, scales, qc);
    CHECK(!res.divergent);
    CHECK(res.predicted_slope == doctest::Approx(-0.3));
    CHECK(res.slope == doctest::Approx(-0.3).epsilon(1e-9));

    p.c[0] = 1.7;
    res = blowup_sweep(1, {2.0, 2.0}, {2.0, 2.0}, p, scales, qc);
    CHECK(res.slope == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("sweep csv output") {
    OperatorParams p;
    p.c = {2.0, 2.0};
    const std::vector<double> scales = {1, 2, 4};
    QuadratureConfig qc;
    const auto res = blowup_sweep(1, {2.0, 2.0}, {2.0, 2.0}, p, scales, qc);
    const auto csv = res.csv();
    CHECK(csv.rfind("scale,ratio,slope\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("sweep requires finite exponents and a covered regime") {
    OperatorParams p;
    p.c = {2.0, 2.0};
    QuadratureConfig qc;
    CHECK_THROWS_AS(blowup_sweep(1, {2.0, 2.0},
                                 MixedExponents(Exponent::infinity(), Exponent(2.0)),
                                 p, {1, 2, 4}, qc),
                    std::invalid_argument);
}

TEST_CASE("bumps are supported where claimed") {
    const auto f = make_bump(TubePoint::half_plane(0.0, 1.5),
                             TubePoint::half_plane(1.0, 2.0), 0.5);
    CHECK(f.f1(TubePoint::half_plane(0.0, 1.5)).real() > 0.0);
    CHECK(f.f1(TubePoint::half_plane(0.6, 1.5)).real() == 0.0);
    CHECK(f.f2(TubePoint::half_plane(1.0, 2.4)).real() > 0.0);
    CHECK(f.f2(TubePoint::half_plane(1.0, 2.6)).real() == 0.0);
    CHECK_THROWS(make_bump(TubePoint::half_plane(0.0, 0.3),
                           TubePoint::half_plane(0.0, 1.0), 0.5));
}

TEST_CASE("duality gap is small for generic parameters") {
    OperatorParams params = sample_params();
    params.alpha = {0.1, -0.2};
    params.beta = {0.3, 0.0};
    const auto f = make_bump(TubePoint::half_plane(-0.4, 1.6),
                             TubePoint::half_plane(0.2, 2.0), 0.6);
    const auto g = make_bump(TubePoint::half_plane(0.5, 1.3),
                             TubePoint::half_plane(-0.6, 1.8), 0.6);
    QuadratureConfig qc;
    CHECK(duality_gap(params, f, g, 1, qc) < 2e-2);
}
