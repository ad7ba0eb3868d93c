#include "tubeops/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "tubeops/classifier.hpp"
#include "tubeops/geometry.hpp"
#include "tubeops/integration.hpp"
#include "tubeops/operators.hpp"
#include "tubeops/schur.hpp"
#include "tubeops/special_functions.hpp"
#include "tubeops/witnesses.hpp"

namespace tubeops {
namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double urand(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

struct Config {
    MixedExponents p{2.0, 2.0};
    MixedExponents q{2.0, 2.0};
    OperatorParams params;
};

/// A random configuration satisfying one of the four finite-target
/// characterizations, with every strict condition holding by at least
/// margin_lo.  regime selects which slots have p_i = 1.
Config bounded_config(std::mt19937_64& g, int regime, double margin_lo = 0.5,
                      double margin_hi = 1.3) {
    Config cfg;
    const bool one1 = (regime == 2 || regime == 4);
    const bool one2 = (regime == 2 || regime == 3);
    const double p1 = one1 ? 1.0 : urand(g, 1.3, 2.8);
    const double p2 = one2 ? 1.0 : urand(g, 1.3, 2.8);
    const double pp = std::max(p1, p2);
    const double q1 = pp + urand(g, 0.1, 1.4);
    const double q2 = pp + urand(g, 0.1, 1.4);
    cfg.p = MixedExponents(p1, p2);
    cfg.q = MixedExponents(q1, q2);
    for (int i = 0; i < 2; ++i) {
        const double pi = i == 0 ? p1 : p2;
        const double qi = i == 0 ? q1 : q2;
        const double al = urand(g, -0.7, 0.8);
        const double be = urand(g, -0.7, 0.8);
        const double m1 = urand(g, margin_lo, margin_hi);
        const double m2 = urand(g, margin_lo, margin_hi);
        const double b = pi > 1.0 ? (al + 1.0) / pi - 1.0 + m1 : al + m1;
        const double a = -(be + 1.0) / qi + m2;
        const double lam = (2.0 + be) / qi - (pi > 1.0 ? (2.0 + al) / pi : (2.0 + al));
        cfg.params.alpha[i] = al;
        cfg.params.beta[i] = be;
        cfg.params.a[i] = a;
        cfg.params.b[i] = b;
        cfg.params.c[i] = 2.0 + a + b + lam;
    }
    return cfg;
}

// ---------------------------------------------------------------- 1

CheckResult check_identity_first(bool quick) {
    CheckResult r{"identity-closed-form"};
    QuadratureConfig qc;
    qc.rel_tol = 1e-3;
    qc.seed = 11;

    double worst = 0.0;
    bool ok = true;

    const double pinned = 16.0 * std::numbers::pi / 9.0;
    auto rep = verify_identity_first(1, 2.0, 2.0, 0.0, TubePoint::half_plane(0.0, 1.0),
                                     TubePoint::half_plane(0.0, 2.0), qc);
    ok = rep.converged && rep.rel_err <= 1e-2 &&
         std::abs(rep.lhs.real() - pinned) <= 1e-2 * pinned &&
         std::abs(rep.lhs.imag()) <= 1e-2 * pinned;
    worst = rep.rel_err;

    std::mt19937_64 g(11);
    const int N = quick ? 8 : 20;
    for (int k = 0; k < N && ok; ++k) {
        const double rr = urand(g, 1.5, 3.0);
        const double ss = urand(g, 1.5, 3.0);
        const double tt = urand(g, -0.5, std::min(1.5, rr + ss - 2.5));
        const TubePoint z = TubePoint::half_plane(urand(g, -1.5, 1.5), urand(g, 0.4, 2.5));
        const TubePoint u = TubePoint::half_plane(urand(g, -1.5, 1.5), urand(g, 0.4, 2.5));
        auto rk = verify_identity_first(1, rr, ss, tt, z, u, qc);
        worst = std::max(worst, rk.rel_err);
        if (!rk.converged || rk.rel_err > 1e-2) ok = false;
    }
    r.passed = ok;
    r.detail = fmt("worst rel err %.3g (tol 1e-2), pinned 16pi/9 matched", worst);
    return r;
}

// ---------------------------------------------------------------- 2

CheckResult check_identity_second(bool) {
    CheckResult r{"identity-homogeneity"};
    QuadratureConfig qc;
    qc.rel_tol = 1e-3;
    qc.seed = 12;
    const std::vector<TubePoint> zs = {
        TubePoint::half_plane(0.3, 0.4), TubePoint::half_plane(-1.2, 0.8),
        TubePoint::half_plane(0.5, 1.0), TubePoint::half_plane(2.0, 2.5),
        TubePoint::half_plane(-0.7, 5.0)};
    auto good = verify_identity_second(1, 4.0, 0.0, zs, qc);
    auto bad = verify_identity_second(1, 2.0, 0.0, zs, qc);
    r.passed = good.converged && !good.divergent && good.homogeneity_spread < 2e-2 &&
               bad.divergent;
    r.detail = fmt("spread %.3g (tol 2e-2), boundary case flagged divergent: %s",
                   good.homogeneity_spread, bad.divergent ? "yes" : "no");
    return r;
}

// ---------------------------------------------------------------- 3

CheckResult check_certificate_equivalence(bool quick) {
    CheckResult r{"classifier-certificate-equivalence"};
    std::mt19937_64 g(23);
    const int N = quick ? 200 : 1000;
    int disagree = 0, bounded_n = 0, unbounded_n = 0;
    for (int k = 0; k < N; ++k) {
        Config cfg = bounded_config(g, 1, 0.2, 1.3);
        const int mode = k % 4;
        const int slot = (k / 4) % 2;
        if (mode == 1) {
            cfg.params.c[slot] += (k % 8 < 4 ? 1.0 : -1.0) * urand(g, 0.05, 0.6);
        } else if (mode == 2) {
            // break the alpha-range condition, keep c on the critical line
            const double pi = cfg.p.at(slot).value();
            const double al = cfg.params.alpha[slot];
            const double shift = (al + 1.0) / pi - 1.0 - urand(g, 0.05, 0.6) -
                                 cfg.params.b[slot];
            cfg.params.b[slot] += shift;
            cfg.params.c[slot] += shift;
        } else if (mode == 3) {
            // break the beta-range condition, keep c on the critical line
            const double qi = cfg.q.at(slot).value();
            const double shift = -(cfg.params.beta[slot] + 1.0) / qi -
                                 urand(g, 0.05, 0.6) - cfg.params.a[slot];
            cfg.params.a[slot] += shift;
            cfg.params.c[slot] += shift;
        }
        const auto verdict = classify(1, cfg.p, cfg.q, cfg.params);
        bool cert_ok = true;
        try {
            build_certificate(1, cfg.p, cfg.q, cfg.params);
        } catch (const InfeasibleError&) {
            cert_ok = false;
        }
        const bool bd = verdict.status == Boundedness::bounded;
        (bd ? bounded_n : unbounded_n)++;
        if (bd != cert_ok) ++disagree;
    }
    r.passed = disagree == 0 && bounded_n > 0 && unbounded_n > 0;
    r.detail = fmt("%d configs (%d bounded, %d not), %d disagreements", N, bounded_n,
                   unbounded_n, disagree);
    return r;
}

// ---------------------------------------------------------------- 4

CheckResult check_schur_constancy(bool quick) {
    CheckResult r{"schur-constancy"};
    std::mt19937_64 g(31);
    QuadratureConfig qc;
    qc.rel_tol = 5e-3;
    qc.max_evals = 3'000'000;
    qc.seed = 31;
    const int N = quick ? 6 : 25;
    const int samples = quick ? 6 : 10;
    double worst = 0.0;
    bool ok = true;
    std::string fail;
    for (int k = 0; k < N && ok; ++k) {
        Config cfg = bounded_config(g, k % 4 + 1, 0.6, 1.3);
        try {
            const auto cert = build_certificate(1, cfg.p, cfg.q, cfg.params);
            const auto ver = verify_schur_conditions(cert, samples, qc);
            worst = std::max(worst, ver.max_spread);
            if (!ver.passed(5e-2)) {
                ok = false;
                fail = fmt(" (config %d regime %s: spread %.3g, converged %d)", k,
                           cert.regime.c_str(), ver.max_spread, (int)ver.converged);
            }
        } catch (const InfeasibleError& e) {
            ok = false;
            fail = fmt(" (config %d infeasible: %s)", k, e.what());
        }
    }
    r.passed = ok;
    r.detail = fmt("%d certificates, worst ratio spread %.3g (tol 5e-2)%s", N, worst,
                   fail.c_str());
    return r;
}

// ---------------------------------------------------------------- 5

CheckResult check_criticality_dichotomy(bool quick) {
    CheckResult r{"criticality-dichotomy"};
    std::mt19937_64 g(41);
    QuadratureConfig qc;
    const std::vector<double> scales = {1, 2, 4, 8, 16, 32, 64};
    const int N = quick ? 8 : 20;
    bool ok = true;
    double worst_flat = 0.0, worst_tilt = 0.0;
    std::string fail;
    for (int k = 0; k < N && ok; ++k) {
        Config cfg = bounded_config(g, k % 4 + 1, 0.6, 1.2);
        const double off = (k % 3 == 0) ? 0.0 : (k % 3 == 1 ? 0.3 : -0.3);
        cfg.params.c[0] += off;
        const auto res = blowup_sweep(1, cfg.p, cfg.q, cfg.params, scales, qc);
        if (res.divergent) {
            ok = false;
            fail = fmt(" (config %d sweep divergent)", k);
            break;
        }
        if (off == 0.0) {
            worst_flat = std::max(worst_flat, std::abs(res.slope));
            if (std::abs(res.slope) >= 0.05 || std::abs(res.predicted_slope) > 1e-9) {
                ok = false;
                fail = fmt(" (critical config %d slope %.3g)", k, res.slope);
            }
        } else {
            worst_tilt = std::max(worst_tilt, std::abs(std::abs(res.slope) - 0.3));
            if (std::abs(res.slope - res.predicted_slope) > 1e-6 ||
                std::abs(std::abs(res.slope) - 0.3) > 0.05) {
                ok = false;
                fail = fmt(" (offset config %d slope %.3g predicted %.3g)", k, res.slope,
                           res.predicted_slope);
            }
        }
    }
    r.passed = ok;
    r.detail = fmt("critical |slope| <= %.2g, off-critical ||slope|-0.3| <= %.2g%s",
                   worst_flat, worst_tilt, fail.c_str());
    return r;
}

// ---------------------------------------------------------------- 6

CheckResult check_operator_oracle(bool quick) {
    CheckResult r{"operator-oracle"};
    std::mt19937_64 g(53);
    QuadratureConfig qc;
    qc.rel_tol = 1e-3;
    qc.max_evals = 2'000'000;
    qc.seed = 53;
    const int N = quick ? 3 : 5;
    const int M = quick ? 3 : 5;
    const MixedExponents p(2.0, 2.0);
    double worst = 0.0;
    bool ok = true;
    for (int k = 0; k < N && ok; ++k) {
        OperatorParams params;
        for (int i = 0; i < 2; ++i) {
            params.a[i] = urand(g, 0.1, 0.8);
            params.b[i] = urand(g, -0.2, 0.8);
            params.c[i] = urand(g, 0.8, 2.2);
        }
        const TubePoint xi = TubePoint::half_plane(urand(g, -1, 1), urand(g, 0.6, 1.8));
        const TubePoint eta = TubePoint::half_plane(urand(g, -1, 1), urand(g, 0.6, 1.8));
        const auto fam = make_direct_family(1, p, params, xi, eta);
        const auto img = closed_form_T_image(fam);
        for (int j = 0; j < M && ok; ++j) {
            const TubePoint z = TubePoint::half_plane(urand(g, -1, 1), urand(g, 0.5, 2.0));
            const TubePoint w = TubePoint::half_plane(urand(g, -1, 1), urand(g, 0.5, 2.0));
            const auto tq = apply_T(params, fam.fn, z, w, 1, qc);
            const Complex cf = img.fn.eval(z, w);
            const double rel = std::abs(tq.value - cf) / std::abs(cf);
            worst = std::max(worst, rel);
            if (!tq.converged || rel > 2e-2) ok = false;
        }
    }
    r.passed = ok;
    r.detail = fmt("%d kernels x %d points, worst rel err %.3g (tol 2e-2)", N, M, worst);
    return r;
}

// ---------------------------------------------------------------- 7

CheckResult check_duality(bool quick) {
    CheckResult r{"duality"};
    std::mt19937_64 g(61);
    QuadratureConfig qc;
    const int N = quick ? 4 : 10;
    double worst = 0.0;
    for (int k = 0; k < N; ++k) {
        OperatorParams params;
        for (int i = 0; i < 2; ++i) {
            params.a[i] = urand(g, 0.0, 0.8);
            params.b[i] = urand(g, -0.2, 0.8);
            params.c[i] = urand(g, 0.8, 2.0);
            params.alpha[i] = urand(g, -0.5, 0.5);
            params.beta[i] = urand(g, -0.5, 0.5);
        }
        auto center = [&] {
            return TubePoint::half_plane(urand(g, -2, 2), urand(g, 1.2, 2.6));
        };
        const auto f = make_bump(center(), center(), 0.6);
        const auto gg = make_bump(center(), center(), 0.6);
        worst = std::max(worst, duality_gap(params, f, gg, 1, qc));
    }
    r.passed = worst < 2e-2;
    r.detail = fmt("%d bump pairs, worst pairing gap %.3g (tol 2e-2)", N, worst);
    return r;
}

// ---------------------------------------------------------------- 8

CheckResult check_domination(bool quick) {
    CheckResult r{"domination"};
    std::mt19937_64 g(71);
    QuadratureConfig qc;
    qc.rel_tol = 2e-3;
    const int configs = quick ? 4 : 5;
    const int points = quick ? 4 : 10;
    bool ok = true;
    double worst = -1e300;
    for (int k = 0; k < configs && ok; ++k) {
        OperatorParams params;
        for (int i = 0; i < 2; ++i) {
            params.a[i] = urand(g, 0.0, 0.8);
            params.b[i] = urand(g, -0.2, 0.8);
            params.c[i] = urand(g, 0.8, 2.0);
        }
        const auto f = make_bump(TubePoint::half_plane(urand(g, -1.5, 1.5), urand(g, 1.2, 2.4)),
                                 TubePoint::half_plane(urand(g, -1.5, 1.5), urand(g, 1.2, 2.4)),
                                 0.7);
        for (int j = 0; j < points && ok; ++j) {
            const TubePoint z = TubePoint::half_plane(urand(g, -2, 2), urand(g, 0.3, 3.0));
            const TubePoint w = TubePoint::half_plane(urand(g, -2, 2), urand(g, 0.3, 3.0));
            const auto t = apply_T(params, f, z, w, 1, qc);
            const auto s = apply_S(params, f, z, w, 1, qc);
            const double slack = s.real() + t.est_error + s.est_error +
                                 1e-9 * std::abs(s.real()) - std::abs(t.value);
            worst = std::max(worst, std::abs(t.value) - s.real());
            if (slack < 0.0) ok = false;
        }
    }
    r.passed = ok;
    r.detail = fmt("%d evaluations, max |Tf| - Sf = %.3g (must be <= error budget)",
                   configs * points, worst);
    return r;
}

// ---------------------------------------------------------------- 9

Exponent random_exponent(std::mt19937_64& g, int kind) {
    if (kind == 0) return Exponent(1.0);
    if (kind == 2) return Exponent::infinity();
    return Exponent(urand(g, 1.2, 4.0));
}

std::string swapped_theorem(const std::string& id) {
    if (id == "6.3") return "6.4";
    if (id == "6.4") return "6.3";
    if (id == "6.7") return "6.8";
    if (id == "6.8") return "6.7";
    if (id == "6.10") return "6.11";
    if (id == "6.11") return "6.10";
    if (id == "6.12") return "6.13";
    if (id == "6.13") return "6.12";
    return id;
}

CheckResult check_classifier_structure(bool quick) {
    CheckResult r{"classifier-structure"};
    std::mt19937_64 g(83);
    bool ok = true;
    std::string fail;

    // T and S agree everywhere; swapping the slots swaps the verdict.
    const int N = quick ? 2000 : 10000;
    for (int k = 0; k < N && ok; ++k) {
        const int qmode = k % 3;  // both finite / both inf / mixed
        MixedExponents p(random_exponent(g, k % 3), random_exponent(g, (k / 3) % 3));
        MixedExponents q =
            qmode == 0 ? MixedExponents(urand(g, 1.0, 4.5), urand(g, 1.0, 4.5))
            : qmode == 1
                ? MixedExponents(Exponent::infinity(), Exponent::infinity())
                : MixedExponents(Exponent(urand(g, 1.0, 4.0)), Exponent::infinity());
        OperatorParams params;
        params.formal = true;
        for (int i = 0; i < 2; ++i) {
            params.a[i] = urand(g, -1.0, 1.5);
            params.b[i] = urand(g, -1.0, 1.5);
            params.c[i] = urand(g, 0.0, 4.0);
            params.alpha[i] = urand(g, -1.5, 1.5);
            params.beta[i] = urand(g, -1.5, 1.5);
        }
        const auto vt = classify(1, p, q, params, OperatorKind::T);
        const auto vs = classify(1, p, q, params, OperatorKind::S);
        if (vt.status != vs.status || vt.theorem != vs.theorem ||
            vt.has_lambda != vs.has_lambda ||
            vt.failed_conditions != vs.failed_conditions) {
            ok = false;
            fail = fmt(" (T/S mismatch at config %d)", k);
            break;
        }
        OperatorParams sw;
        sw.formal = true;
        for (int i = 0; i < 2; ++i) {
            sw.a[i] = params.a[1 - i];
            sw.b[i] = params.b[1 - i];
            sw.c[i] = params.c[1 - i];
            sw.alpha[i] = params.alpha[1 - i];
            sw.beta[i] = params.beta[1 - i];
        }
        const auto vw = classify(1, MixedExponents(p.at(1), p.at(0)),
                                 MixedExponents(q.at(1), q.at(0)), sw);
        bool sym = vw.status == vt.status &&
                   vw.failed_conditions.size() == vt.failed_conditions.size();
        if (sym && vt.status != Boundedness::outside_coverage)
            sym = vw.theorem == swapped_theorem(vt.theorem);
        if (sym && vt.has_lambda)
            sym = vw.lambda[0] == vt.lambda[1] && vw.lambda[1] == vt.lambda[0] &&
                  vw.critical_c[0] == vt.critical_c[1] &&
                  vw.critical_c[1] == vt.critical_c[0];
        if (!sym) {
            ok = false;
            fail = fmt(" (swap asymmetry at config %d)", k);
            break;
        }
    }

    // Corollary entry points agree with delegation on random input; a
    // disagreement surfaces as std::logic_error.
    const int M = quick ? 200 : 1000;
    for (int k = 0; k < M && ok; ++k) {
        MixedExponents p(random_exponent(g, k % 3), random_exponent(g, (k / 2) % 3));
        const int qmode = k % 2;
        MixedExponents q = qmode == 0
                               ? MixedExponents(urand(g, 1.0, 4.0), urand(g, 1.0, 4.0))
                               : MixedExponents(Exponent::infinity(), Exponent::infinity());
        RealPair gamma{urand(g, -0.9, 2.0), urand(g, -0.9, 2.0)};
        RealPair alpha{urand(g, -1.2, 1.5), urand(g, -1.2, 1.5)};
        RealPair beta{urand(g, -1.2, 1.5), urand(g, -1.2, 1.5)};
        RealPair c{urand(g, 0.0, 4.0), urand(g, 0.0, 4.0)};
        if (k % 3 == 0 && qmode == 0 && p.both_finite()) {
            // land some samples exactly on the corollary equalities
            for (int i = 0; i < 2; ++i) {
                const double pi = p.at(i).value(), qi = q.at(i).value();
                beta[i] = qi / pi * (2.0 + alpha[i]) - 2.0;
                c[i] = 2.0 + gamma[i] + (2.0 + beta[i]) / qi - (2.0 + alpha[i]) / pi;
            }
        }
        try {
            classify_Tc(1, p, q, c, gamma, beta);
            classify_projection(1, p, q, gamma, alpha, beta);
            classify_berezin(1, p, q, gamma, alpha, beta);
        } catch (const std::logic_error& e) {
            ok = false;
            fail = fmt(" (corollary cross-check: %s)", e.what());
        }
    }

    // A 1e-6 push off the critical line flips any bounded verdict.
    const int F = quick ? 100 : 400;
    for (int k = 0; k < F && ok; ++k) {
        Config cfg = bounded_config(g, k % 4 + 1);
        if (classify(1, cfg.p, cfg.q, cfg.params).status != Boundedness::bounded) {
            ok = false;
            fail = fmt(" (generator config %d not bounded)", k);
            break;
        }
        for (double push : {1e-6, -1e-6}) {
            Config pc = cfg;
            pc.params.c[k % 2] += push;
            const auto v = classify(1, pc.p, pc.q, pc.params);
            const std::string want = fmt("c%d_critical", k % 2 + 1);
            const bool flipped =
                v.status == Boundedness::unbounded &&
                std::find(v.failed_conditions.begin(), v.failed_conditions.end(), want) !=
                    v.failed_conditions.end();
            if (!flipped) {
                ok = false;
                fail = fmt(" (no critical flip at config %d)", k);
            }
        }
    }

    r.passed = ok;
    r.detail = fmt("%d T/S + swap configs, %d corollary calls, %d critical flips%s", N, M,
                   2 * F, fail.c_str());
    return r;
}

// ---------------------------------------------------------------- 10

CheckResult check_polarization_bounds(bool quick) {
    CheckResult r{"polarization-bounds"};
    const int per_dim = quick ? 1000 : 5000;
    bool ok = true;
    double worst_slack = 1e300;
    for (int n = 1; n <= 2 && ok; ++n) {
        const auto pts = sample_points(n, 2 * per_dim, 97 + n, 2.0);
        for (std::size_t k = 0; k + 1 < pts.size() && ok; k += 2) {
            const TubePoint& z = pts[k];
            const TubePoint& u = pts[k + 1];
            const Complex pz = rho_pair(z, u);
            const Complex pu = rho_pair(u, z);
            const double rz = rho(z), ru = rho(u);
            if (std::abs(pz - std::conj(pu)) > 1e-12 * std::abs(pz)) ok = false;
            if (std::abs(rho_pair(z, z) - rz) > 1e-12 * rz) ok = false;
            if (pz.real() <= 0.0) ok = false;
            const double slack = 2.0 * std::abs(pz) - std::max(rz, ru);
            worst_slack = std::min(worst_slack, slack / std::max(rz, ru));
            if (2.0 * std::abs(pz) < std::max(rz, ru) * (1.0 - 1e-12)) ok = false;
        }
    }
    r.passed = ok;
    r.detail = fmt("%d pairs over n=1,2; min slack of 2|rho(z,u)| >= max(rho) is %.3g",
                   2 * per_dim, worst_slack);
    return r;
}

// ---------------------------------------------------------------- 11

CheckResult check_sup_target(bool quick) {
    CheckResult r{"sup-target-slices"};
    std::mt19937_64 g(103);
    QuadratureConfig qc;
    qc.rel_tol = 5e-3;
    qc.max_evals = 3'000'000;
    qc.seed = 103;
    const int N = quick ? 3 : 5;
    const int samples = quick ? 4 : 8;
    const MixedExponents qinf(Exponent::infinity(), Exponent::infinity());
    double worst = 0.0;
    bool ok = true;
    for (int k = 0; k < N && ok; ++k) {
        MixedExponents p(urand(g, 1.4, 2.4), urand(g, 1.4, 2.4));
        OperatorParams params;
        for (int i = 0; i < 2; ++i) {
            const double pi = p.at(i).value();
            params.alpha[i] = urand(g, -0.5, 0.8);
            params.a[i] = urand(g, 0.3, 1.2);
            params.b[i] = (params.alpha[i] + 1.0) / pi - 1.0 + urand(g, 0.4, 1.1);
            params.c[i] = 2.0 + params.a[i] + params.b[i] -
                          (2.0 + params.alpha[i]) / pi;
        }
        if (classify(1, p, qinf, params).status != Boundedness::bounded) {
            ok = false;
            r.detail = fmt("config %d unexpectedly not bounded", k);
            break;
        }
        const auto ver = verify_infinity_condition(1, p, params, samples, qc);
        worst = std::max(worst, ver.spread);
        if (ver.divergent || !ver.converged || ver.spread >= 5e-2) {
            ok = false;
            r.detail = fmt("config %d spread %.3g divergent %d converged %d", k,
                           ver.spread, (int)ver.divergent, (int)ver.converged);
        }
    }
    r.passed = ok;
    if (r.detail.empty())
        r.detail = fmt("%d sup-target kernels, worst slice-norm spread %.3g (tol 5e-2)",
                       N, worst);
    return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance(bool quick, std::ostream* log) {
    struct Entry {
        const char* name;
        CheckResult (*fn)(bool);
    };
    const Entry checks[] = {
        {"identity-closed-form", check_identity_first},
        {"identity-homogeneity", check_identity_second},
        {"classifier-certificate-equivalence", check_certificate_equivalence},
        {"schur-constancy", check_schur_constancy},
        {"criticality-dichotomy", check_criticality_dichotomy},
        {"operator-oracle", check_operator_oracle},
        {"duality", check_duality},
        {"domination", check_domination},
        {"classifier-structure", check_classifier_structure},
        {"polarization-bounds", check_polarization_bounds},
        {"sup-target-slices", check_sup_target},
    };
    std::vector<CheckResult> out;
    for (const Entry& c : checks) {
        const auto t0 = Clock::now();
        CheckResult res;
        try {
            res = c.fn(quick);
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = fmt("unexpected exception: %s", e.what());
        }
        res.name = c.name;
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (log)
            (*log) << (res.passed ? "PASS" : "FAIL") << "  " << res.name << "  ("
                   << fmt("%.1fs", res.seconds) << ")  " << res.detail << "\n";
        out.push_back(std::move(res));
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& c) { return c.passed; });
}

}  // namespace tubeops
