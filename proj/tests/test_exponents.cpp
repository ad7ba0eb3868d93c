#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "tubeops/exponents.hpp"

using namespace tubeops;

TEST_CASE("construction and parsing") {
    CHECK(Exponent(1.0).is_one());
    CHECK(Exponent::parse("inf").is_inf());
    CHECK(Exponent::parse("2.5").value() == doctest::Approx(2.5));
    CHECK_THROWS_AS(Exponent(0.5), std::invalid_argument);
    CHECK_THROWS_AS(Exponent::infinity().value(), std::logic_error);
}

TEST_CASE("conjugates and reciprocals") {
    CHECK(Exponent(1.0).conjugate().is_inf());
    CHECK(Exponent::infinity().conjugate().is_one());
    CHECK(Exponent(2.0).conjugate().value() == doctest::Approx(2.0));
    CHECK(Exponent(3.0).conjugate().value() == doctest::Approx(1.5));
    CHECK(Exponent::infinity().reciprocal() == 0.0);
    CHECK(Exponent(4.0).reciprocal() == doctest::Approx(0.25));
}

TEST_CASE("ordering puts infinity on top") {
    CHECK(Exponent(5.0) < Exponent::infinity());
    CHECK(Exponent::infinity() <= Exponent::infinity());
    CHECK(!(Exponent::infinity() < Exponent::infinity()));
    CHECK(Exponent(2.0) <= Exponent(2.0));
    CHECK(Exponent(2.0) == Exponent(2.0));
}

TEST_CASE("mixed pairs") {
    MixedExponents m(Exponent(3.0), Exponent::infinity());
    CHECK(m.minus().value() == doctest::Approx(3.0));
    CHECK(m.plus().is_inf());
    CHECK(!m.both_finite());
    CHECK(!m.both_inf());
    CHECK(m.at(0).value() == doctest::Approx(3.0));
    CHECK(m.at(1).is_inf());
    CHECK(MixedExponents(2.0, 4.0).both_finite());
}
