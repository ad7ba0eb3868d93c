#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "tubeops/classifier.hpp"

using namespace tubeops;

namespace {

bool failed_contains(const BoundednessVerdict& v, const std::string& name) {
    return std::find(v.failed_conditions.begin(), v.failed_conditions.end(), name) !=
           v.failed_conditions.end();
}

OperatorParams bergman_params() {
    OperatorParams p;
    p.c = {2.0, 2.0};
    return p;
}

}  // namespace

TEST_CASE("unweighted L2 projection-type kernel is bounded") {
    const auto v = classify(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params());
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "6.1");
    CHECK(v.has_lambda);
    CHECK(v.lambda[0] == doctest::Approx(0.0));
    CHECK(v.critical_c[0] == doctest::Approx(2.0));
    CHECK(v.failed_conditions.empty());
}

TEST_CASE("off-critical kernel power is unbounded with the right diagnosis") {
    auto p = bergman_params();
    p.c[0] = 2.3;
    const auto v = classify(1, {2.0, 2.0}, {2.0, 2.0}, p);
    CHECK(v.status == Boundedness::unbounded);
    CHECK(failed_contains(v, "c1_critical"));
    CHECK(v.critical_c[0] == doctest::Approx(2.0));
    CHECK(v.critical_c[1] == doctest::Approx(2.0));
}

TEST_CASE("criticality tolerance is 1e-9 absolute") {
    auto p = bergman_params();
    p.c[0] = 2.0 + 1e-10;
    CHECK(classify(1, {2.0, 2.0}, {2.0, 2.0}, p).status == Boundedness::bounded);
    p.c[0] = 2.0 + 1e-6;
    CHECK(classify(1, {2.0, 2.0}, {2.0, 2.0}, p).status == Boundedness::unbounded);
    p.c[0] = 2.0 - 1e-6;
    CHECK(classify(1, {2.0, 2.0}, {2.0, 2.0}, p).status == Boundedness::unbounded);
}

TEST_CASE("source exponent above the target range is outside coverage") {
    const auto v = classify(1, {2.0, 3.0}, {2.0, 2.0}, bergman_params());
    CHECK(v.status == Boundedness::outside_coverage);
    CHECK(v.theorem.empty());
}

TEST_CASE("a single infinite target exponent is outside coverage") {
    const auto v = classify(1, {2.0, 2.0},
                            {Exponent(2.0), Exponent::infinity()}, bergman_params());
    CHECK(v.status == Boundedness::outside_coverage);
}

TEST_CASE("sup-norm target with finite source") {
    OperatorParams p;
    p.a = {1.0, 1.0};
    p.c = {2.0, 2.0};  // critical: 2 + 1 + 0 - (2+0)/2 = 2
    const MixedExponents qinf(Exponent::infinity(), Exponent::infinity());
    auto v = classify(1, {2.0, 2.0}, qinf, p);
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "6.5");
    CHECK(v.lambda[0] == doctest::Approx(-1.0));

    p.a[0] = 0.0;  // outer decay is now missing in slot 1
    p.c[0] = 1.0;
    v = classify(1, {2.0, 2.0}, qinf, p);
    CHECK(v.status == Boundedness::unbounded);
    CHECK(failed_contains(v, "a1_positive"));
}

TEST_CASE("L1 source with sup-norm target") {
    OperatorParams p;  // a = b = alpha = 0, c = 0 is the bounded case
    const MixedExponents one(1.0, 1.0);
    const MixedExponents qinf(Exponent::infinity(), Exponent::infinity());
    auto v = classify(1, one, qinf, p);
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "6.6");
    CHECK(v.critical_c[0] == doctest::Approx(0.0));

    p.b = {-0.5, 0.0};  // b1 < alpha1 breaks the comparison condition
    p.c[0] = -0.5;
    v = classify(1, one, qinf, p);
    CHECK(v.status == Boundedness::unbounded);
}

TEST_CASE("weights the regime uses must be admissible") {
    OperatorParams p = bergman_params();
    p.alpha[0] = -1.5;
    p.formal = true;
    const auto v = classify(1, {2.0, 2.0}, {2.0, 2.0}, p);
    CHECK(v.status == Boundedness::inadmissible_weights);
    CHECK(failed_contains(v, "alpha1_admissible"));

    // with p = infinity the source weight is unused, so the same alpha is fine
    OperatorParams s;
    s.a = {1.0, 1.0};
    s.b = {0.5, 0.5};
    s.alpha = {-1.5, -1.5};
    s.formal = true;
    const MixedExponents pinf(Exponent::infinity(), Exponent::infinity());
    const MixedExponents qinf(Exponent::infinity(), Exponent::infinity());
    const auto w = classify(1, pinf, qinf, s);
    CHECK(w.status != Boundedness::inadmissible_weights);
}

TEST_CASE("T and S receive identical verdicts") {
    for (double c1 : {1.0, 2.0, 2.5}) {
        auto p = bergman_params();
        p.c[0] = c1;
        const auto vt = classify(1, {2.0, 2.0}, {2.0, 2.0}, p, OperatorKind::T);
        const auto vs = classify(1, {2.0, 2.0}, {2.0, 2.0}, p, OperatorKind::S);
        CHECK(vt.status == vs.status);
        CHECK(vt.theorem == vs.theorem);
        CHECK(vs.kind == OperatorKind::S);
    }
}

TEST_CASE("slot swap maps the mixed regimes onto each other") {
    OperatorParams p;
    p.alpha = {0.3, 0.0};
    p.beta = {0.1, -0.2};
    p.b = {0.9, 0.6};
    p.a = {0.2, 0.3};
    p.c = {0.0, 0.0};
    const MixedExponents pe(Exponent(2.0), Exponent(1.0));
    const MixedExponents qe(3.0, 2.5);
    const auto v = classify(1, pe, qe, p);

    OperatorParams s;
    s.alpha = {p.alpha[1], p.alpha[0]};
    s.beta = {p.beta[1], p.beta[0]};
    s.a = {p.a[1], p.a[0]};
    s.b = {p.b[1], p.b[0]};
    s.c = {p.c[1], p.c[0]};
    const auto w = classify(1, MixedExponents(Exponent(1.0), Exponent(2.0)),
                            MixedExponents(2.5, 3.0), s);
    CHECK(v.status == w.status);
    CHECK(v.theorem == "6.3");
    CHECK(w.theorem == "6.4");
    CHECK(v.lambda[0] == doctest::Approx(w.lambda[1]));
    CHECK(v.lambda[1] == doctest::Approx(w.lambda[0]));
}

TEST_CASE("projection corollaries") {
    auto v = classify_projection(1, {2.0, 2.0}, {2.0, 2.0}, {0.0, 0.0}, {0.0, 0.0},
                                 {0.0, 0.0});
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "7.4");

    v = classify_projection(1, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {0.0, 0.0},
                            {0.0, 0.0});
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "7.5");

    const MixedExponents qinf(Exponent::infinity(), Exponent::infinity());
    v = classify_projection(1, {1.0, 1.0}, qinf, {0.5, 0.5}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(v.status == Boundedness::inadmissible_weights);
    CHECK(v.theorem == "7.9");

    v = classify_projection(1, {2.0, 2.0}, qinf, {0.5, 0.5}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(v.status == Boundedness::unbounded);
    CHECK(v.theorem == "7.10");
}

TEST_CASE("plain kernel-power corollaries") {
    const MixedExponents one(1.0, 1.0);
    const MixedExponents qinf(Exponent::infinity(), Exponent::infinity());
    auto v = classify_Tc(1, one, qinf, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "7.2");

    v = classify_Tc(1, one, qinf, {0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(v.status == Boundedness::unbounded);

    // p_i > 1 with finite targets: bounded exactly on the critical line
    v = classify_Tc(1, {2.0, 2.0}, {3.0, 3.0}, {5.0 / 3.0, 5.0 / 3.0}, {0.0, 0.0},
                    {0.0, 0.0});
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "7.1");

    // an L1 slot with finite targets can never be bounded
    v = classify_Tc(1, {1.0, 2.0}, {2.0, 2.0}, {1.0, 2.0}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(v.status == Boundedness::unbounded);
}

TEST_CASE("berezin-type corollaries") {
    const MixedExponents pinf(Exponent::infinity(), Exponent::infinity());
    auto v = classify_berezin(1, pinf, pinf, {0.3, 0.8}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "7.20");
    CHECK(v.kind == OperatorKind::S);

    v = classify_berezin(1, {2.0, 2.0}, pinf, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(v.status == Boundedness::inadmissible_weights);

    v = classify_berezin(1, {2.0, 2.0}, {2.0, 2.0}, {0.0, 0.0}, {0.0, 0.0},
                         {0.0, 0.0});
    CHECK(v.status == Boundedness::bounded);
    CHECK(v.theorem == "7.12");
}

TEST_CASE("json output shape is stable") {
    const auto v = classify(1, {2.0, 2.0}, {2.0, 2.0}, bergman_params());
    const auto j = nlohmann::json::parse(v.to_json());
    CHECK(j.at("status") == "bounded");
    CHECK(j.at("theorem") == "6.1");
    CHECK(j.at("lambda").is_array());
    CHECK(j.at("lambda")[0].get<double>() == doctest::Approx(0.0));
    CHECK(j.at("critical_c")[1].get<double>() == doctest::Approx(2.0));
    CHECK(j.at("failed").empty());

    const auto o = classify(1, {2.0, 3.0}, {2.0, 2.0}, bergman_params());
    const auto jo = nlohmann::json::parse(o.to_json());
    CHECK(jo.at("status") == "outside_coverage");
    CHECK(jo.at("theorem").is_null());
    CHECK(jo.at("lambda").is_null());
}
