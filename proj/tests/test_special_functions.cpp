#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tubeops/special_functions.hpp"

using namespace tubeops;

TEST_CASE("gamma at classical points") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("gamma recurrence and log consistency") {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> u(0.1, 8.0);
    for (int k = 0; k < 200; ++k) {
        const double x = u(g);
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-11));
        CHECK(log_gamma(x) == doctest::Approx(std::log(gamma_fn(x))).epsilon(1e-10));
    }
}

TEST_CASE("identity constant: pinned value and symmetry") {
    CHECK(c1_constant(1, 2.0, 2.0, 0.0) ==
          doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
    std::mt19937_64 g(9);
    std::uniform_real_distribution<double> u(1.1, 3.0);
    for (int k = 0; k < 50; ++k) {
        const double r = u(g), s = u(g);
        CHECK(c1_constant(1, r, s, 0.0) ==
              doctest::Approx(c1_constant(1, s, r, 0.0)).epsilon(1e-12));
    }
    // n = 2: 2^3 pi^2 Gamma(1) Gamma(3) / Gamma(3)^2 = 4 pi^2
    CHECK(c1_constant(2, 3.0, 3.0, 0.0) ==
          doctest::Approx(4.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("identity constant validity boundaries") {
    CHECK(c1_valid(1, 2.0, 2.0, 0.0));
    CHECK(!c1_valid(1, 2.0, 2.0, 2.0));   // r+s-t = 2 = n+1
    CHECK(!c1_valid(1, 0.0, 2.0, 0.0));   // r = 0
    CHECK(!c1_valid(1, 2.0, 2.0, -1.0));  // t = -1
    CHECK_THROWS_AS(c1_constant(1, 2.0, 2.0, 3.0), DivergentParameterError);
    CHECK_THROWS_AS(c1_constant(1, -1.0, 2.0, 0.0), DivergentParameterError);
    CHECK_THROWS_AS(c1_constant(1, 2.0, 2.0, -1.5), DivergentParameterError);
}

TEST_CASE("single-kernel identity validity range") {
    CHECK(second_identity_valid(1, 4.0, 0.0));
    CHECK(!second_identity_valid(1, 2.0, 0.0));   // s-t = n+1 boundary
    CHECK(!second_identity_valid(1, 4.0, -1.0));  // t = -1 boundary
    CHECK(second_identity_valid(2, 4.0, 0.5));
    CHECK(!second_identity_valid(2, 3.0, 0.0));
}
