#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "tubeops/classifier.hpp"
#include "tubeops/schur.hpp"

using namespace tubeops;

namespace {

OperatorParams bergman_params() {
    OperatorParams p;
    p.c = {2.0, 2.0};
    return p;
}

}  // namespace

TEST_CASE("unweighted L2 feasible region is the known square") {
    const auto f = feasibility_intervals(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params());
    REQUIRE(f.feasible);
    for (int i = 0; i < 2; ++i) {
        CHECK(f.r_interval[i].lo == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(f.r_interval[i].hi == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(f.s_interval[i].lo == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(f.s_interval[i].hi == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(f.r_center[i] == doctest::Approx(-0.25).epsilon(1e-12));
        CHECK(f.s_center[i] == doctest::Approx(-0.25).epsilon(1e-12));
    }
}

TEST_CASE("canonical certificate for the unweighted L2 case") {
    const auto cert = build_certificate(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params());
    CHECK(cert.regime == "6.1");
    for (int i = 0; i < 2; ++i) {
        CHECK(cert.tau[i] == doctest::Approx(2.0));
        CHECK(cert.gamma[i] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(cert.delta[i] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(cert.gamma[i] + cert.delta[i] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(cert.margins[i] == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("margins degrade toward the boundary and vanish on it") {
    const auto m_center = schur_margins(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params(),
                                        {-0.25, -0.25}, {-0.25, -0.25});
    const auto m_off = schur_margins(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params(),
                                     {-0.45, -0.25}, {-0.25, -0.25});
    CHECK(m_center[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m_off[0] < m_center[0]);
    CHECK(m_off[1] == doctest::Approx(m_center[1]).epsilon(1e-12));
    const auto m_bd = schur_margins(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params(),
                                    {-0.5, -0.25}, {-0.25, -0.25});
    CHECK(m_bd[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("infeasibility matches the unbounded verdict") {
    auto p = bergman_params();
    p.c[0] = 2.4;
    const auto f = feasibility_intervals(1, {2.0, 2.0}, {2.0, 2.0}, p);
    CHECK(!f.feasible);
    REQUIRE(!f.failures.empty());
    CHECK(f.failures[0] == "c1_critical");
    CHECK_THROWS_AS(build_certificate(1, {2.0, 2.0}, {2.0, 2.0}, p), InfeasibleError);
    CHECK(classify(1, {2.0, 2.0}, {2.0, 2.0}, p).status == Boundedness::unbounded);
}

TEST_CASE("gamma + delta = 1 exactly across random feasible configurations") {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        OperatorParams p;
        const double p1 = 1.3 + 1.5 * u(g), p2 = 1.3 + 1.5 * u(g);
        const double q1 = std::max(p1, p2) + 0.2 + u(g);
        const double q2 = std::max(p1, p2) + 0.2 + u(g);
        for (int i = 0; i < 2; ++i) {
            const double pi = i == 0 ? p1 : p2, qi = i == 0 ? q1 : q2;
            p.alpha[i] = -0.5 + u(g);
            p.beta[i] = -0.5 + u(g);
            p.b[i] = (p.alpha[i] + 1.0) / pi - 1.0 + 0.4 + 0.8 * u(g);
            p.a[i] = -(p.beta[i] + 1.0) / qi + 0.4 + 0.8 * u(g);
            p.c[i] = 2.0 + p.a[i] + p.b[i] + (2.0 + p.beta[i]) / qi -
                     (2.0 + p.alpha[i]) / pi;
        }
        const auto cert = build_certificate(1, {p1, p2}, {q1, q2}, p);
        for (int i = 0; i < 2; ++i) {
            CHECK(cert.gamma[i] + cert.delta[i] == 1.0);
            CHECK(cert.gamma[i] > 0.0);
            CHECK(cert.delta[i] > 0.0);
            CHECK(cert.r_interval[i].contains_strictly(cert.r[i]));
            CHECK(cert.s_interval[i].contains_strictly(cert.s[i]));
        }
    }
}

TEST_CASE("schur conditions verify numerically in the L2 case") {
    const auto cert = build_certificate(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params());
    QuadratureConfig qc;
    qc.rel_tol = 5e-3;
    const auto ver = verify_schur_conditions(cert, 5, qc);
    CHECK(ver.converged);
    CHECK(ver.max_spread < 5e-2);
    CHECK(!ver.checks.empty());
}

TEST_CASE("sup-target slice norms are dilation invariant") {
    OperatorParams p;
    p.a = {1.0, 0.8};
    p.alpha = {0.0, 0.2};
    p.b = {0.2, 0.4};
    for (int i = 0; i < 2; ++i)
        p.c[i] = 2.0 + p.a[i] + p.b[i] - (2.0 + p.alpha[i]) / 2.0;
    QuadratureConfig qc;
    qc.rel_tol = 5e-3;
    const auto rep = verify_infinity_condition(1, {2.0, 2.0}, p, 4, qc);
    CHECK(!rep.divergent);
    CHECK(rep.converged);
    CHECK(rep.spread < 5e-2);
}

TEST_CASE("certificate json is parseable and complete") {
    const auto cert = build_certificate(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params());
    const auto j = nlohmann::json::parse(cert.to_json());
    CHECK(j.at("regime") == "6.1");
    CHECK(j.at("gamma")[0].get<double>() == doctest::Approx(0.5));
    CHECK(j.at("r")[0].get<double>() == doctest::Approx(-0.25));
    CHECK(j.at("tau")[1].get<double>() == doctest::Approx(2.0));
}
