#include "tubeops/schur.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "tubeops/special_functions.hpp"

namespace tubeops {

namespace {

constexpr double kTauTol = 1e-9;

/// One strip L < c1*r + c2*s < U in the (r, s) plane.
struct Strip {
    double c1, c2, lo, hi;
    double eval(double r, double s) const { return c1 * r + c2 * s; }
};

struct SlotStrips {
    Strip first, second;   // the r-type and s-type inequality
    double det() const {   // transversality; equals tau * c for this kernel
        return first.c1 * second.c2 - first.c2 * second.c1;
    }
};

/// The pre-division inequalities of the sufficiency proof, linear in
/// (r_i, s_i):
///   -tau (beta+1)/q - a B < tau r + a (r - s) < a A
///   -tau (alpha+1)/p' - d A < tau s + d (s - r) < d B
/// with A = (n+1+alpha)/p' (zero when p = 1), B = (n+1+beta)/q and
/// d = b - alpha.
SlotStrips slot_strips(int n, const Exponent& p, double q, int i,
                       const OperatorParams& pp, double tau) {
    const double np1 = n + 1.0;
    const double A = p.is_one() ? 0.0 : (np1 + pp.alpha[i]) / p.conjugate().value();
    const double B = (np1 + pp.beta[i]) / q;
    const double a = pp.a[i];
    const double d = pp.b[i] - pp.alpha[i];
    const double ap_term = p.is_one() ? 0.0 : (pp.alpha[i] + 1.0) / p.conjugate().value();
    SlotStrips s;
    s.first = {tau + a, -a, -tau * (pp.beta[i] + 1.0) / q - a * B, a * A};
    s.second = {-d, tau + d, -tau * ap_term - d * A, d * B};
    return s;
}

/// Solves first.eval = v1, second.eval = v2.
void solve_point(const SlotStrips& st, double v1, double v2, double& r, double& s) {
    const double det = st.det();
    r = (v1 * st.second.c2 - st.first.c2 * v2) / det;
    s = (st.first.c1 * v2 - v1 * st.second.c1) / det;
}

}  // namespace

FeasibilityResult feasibility_intervals(int n, const MixedExponents& p,
                                        const MixedExponents& q,
                                        const OperatorParams& params) {
    FeasibilityResult out;
    if (!q.both_finite())
        throw std::invalid_argument(
            "feasibility_intervals: finite target exponents required");
    const double np1 = n + 1.0;
    bool feasible = true;
    for (int i = 0; i < 2; ++i) {
        const Exponent& pi = p.at(i);
        if (pi.is_inf()) {
            out.failures.push_back("p" + std::to_string(i + 1) + "_infinite");
            feasible = false;
            continue;
        }
        const double qi = q.at(i).value();
        const double tau = params.c[i] - params.a[i] - params.b[i] + params.alpha[i];
        const double A =
            pi.is_one() ? 0.0 : (np1 + params.alpha[i]) / pi.conjugate().value();
        const double B = (np1 + params.beta[i]) / qi;
        // tau must agree with A + B: that is the critical-line equality
        // c_i = n+1+a_i+b_i+lambda_i in disguise.
        if (std::abs(tau - (A + B)) > kTauTol) {
            out.failures.push_back("c" + std::to_string(i + 1) + "_critical");
            feasible = false;
            continue;
        }
        if (!(tau > 0.0)) {
            out.failures.push_back("tau" + std::to_string(i + 1) + "_positive");
            feasible = false;
            continue;
        }
        const SlotStrips st = slot_strips(n, pi, qi, i, params, tau);
        if (!(st.first.hi > st.first.lo)) {
            // empty iff -q_i a_i < beta_i + 1 fails
            out.failures.push_back("beta" + std::to_string(i + 1) + "_range");
            feasible = false;
        }
        if (!(st.second.hi > st.second.lo)) {
            // empty iff alpha_i + 1 < p_i (b_i + 1) (or alpha < b at p = 1) fails
            out.failures.push_back("alpha" + std::to_string(i + 1) + "_range");
            feasible = false;
        }
        if (!feasible) continue;

        // Parallelogram vertices: all four boundary combinations.
        double rmin = 0.0, rmax = 0.0, smin = 0.0, smax = 0.0;
        bool seeded = false;
        for (double v1 : {st.first.lo, st.first.hi})
            for (double v2 : {st.second.lo, st.second.hi}) {
                double rv, sv;
                solve_point(st, v1, v2, rv, sv);
                if (!seeded) {
                    rmin = rmax = rv;
                    smin = smax = sv;
                    seeded = true;
                } else {
                    rmin = std::min(rmin, rv);
                    rmax = std::max(rmax, rv);
                    smin = std::min(smin, sv);
                    smax = std::max(smax, sv);
                }
            }
        out.r_interval[i] = {rmin, rmax};
        out.s_interval[i] = {smin, smax};
        solve_point(st, 0.5 * (st.first.lo + st.first.hi),
                    0.5 * (st.second.lo + st.second.hi), out.r_center[i],
                    out.s_center[i]);
    }
    out.feasible = feasible;
    return out;
}

RealPair schur_margins(int n, const MixedExponents& p, const MixedExponents& q,
                       const OperatorParams& params, RealPair r, RealPair s) {
    RealPair m{0.0, 0.0};
    for (int i = 0; i < 2; ++i) {
        const double tau = params.c[i] - params.a[i] - params.b[i] + params.alpha[i];
        const SlotStrips st =
            slot_strips(n, p.at(i), q.at(i).value(), i, params, tau);
        double worst = 1.0;
        for (const Strip* strip : {&st.first, &st.second}) {
            const double g = strip->eval(r[i], s[i]);
            const double w = strip->hi - strip->lo;
            worst = std::min(worst, std::min(g - strip->lo, strip->hi - g) / w);
        }
        m[i] = worst;
    }
    return m;
}

SchurCertificate build_certificate(int n, const MixedExponents& p,
                                   const MixedExponents& q,
                                   const OperatorParams& params) {
    const FeasibilityResult fr = feasibility_intervals(n, p, q, params);
    if (!fr.feasible) {
        std::string what = "build_certificate: infeasible (";
        for (size_t k = 0; k < fr.failures.size(); ++k)
            what += (k ? ", " : "") + fr.failures[k];
        throw InfeasibleError(what + ")");
    }
    SchurCertificate cert;
    cert.regime = classify(n, p, q, params).theorem;
    cert.n = n;
    cert.p = p;
    cert.q = q;
    cert.params = params;
    cert.r = fr.r_center;
    cert.s = fr.s_center;
    cert.r_interval = fr.r_interval;
    cert.s_interval = fr.s_interval;
    const double np1 = n + 1.0;
    for (int i = 0; i < 2; ++i) {
        cert.tau[i] = params.c[i] - params.a[i] - params.b[i] + params.alpha[i];
        const Exponent& pi = p.at(i);
        const double A =
            pi.is_one() ? 0.0 : (np1 + params.alpha[i]) / pi.conjugate().value();
        cert.gamma[i] = (A + cert.s[i] - cert.r[i]) / cert.tau[i];
        cert.delta[i] = 1.0 - cert.gamma[i];
    }
    cert.margins = schur_margins(n, p, q, params, cert.r, cert.s);
    return cert;
}

std::string SchurCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["regime"] = regime;
    j["tau"] = {tau[0], tau[1]};
    j["r"] = {r[0], r[1]};
    j["s"] = {s[0], s[1]};
    j["gamma"] = {gamma[0], gamma[1]};
    j["delta"] = {delta[0], delta[1]};
    j["r_interval"] = {{r_interval[0].lo, r_interval[0].hi},
                       {r_interval[1].lo, r_interval[1].hi}};
    j["s_interval"] = {{s_interval[0].lo, s_interval[0].hi},
                       {s_interval[1].lo, s_interval[1].hi}};
    j["margins"] = {margins[0], margins[1]};
    return j.dump();
}

namespace {

/// Sample points on the vertical slice y' = 0, where dilations and real
/// translations act transitively; the constancy ratios are exactly
/// invariant there.
std::vector<TubePoint> slice_samples(int n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    std::uniform_real_distribution<double> uh(std::log(0.1), std::log(10.0));
    std::vector<TubePoint> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        std::vector<double> x(n), y(n, 0.0);
        for (int j = 0; j < n; ++j) x[j] = ux(rng);
        y[n - 1] = std::exp(uh(rng));
        pts.emplace_back(std::move(x), std::move(y));
    }
    return pts;
}

/// Maps a reference point by the dilation-translation taking the base
/// point (0', i) to z (z on the vertical slice): exact covariance of
/// rho and |rho(z, .)|.
TubePoint covariant_map(const TubePoint& z, const TubePoint& ref) {
    const int n = z.dim;
    const double h = rho(z);
    const double root = std::sqrt(h);
    std::vector<double> x(n), y(n);
    for (int j = 0; j < n - 1; ++j) {
        x[j] = z.x[j] + root * ref.x[j];
        y[j] = root * ref.y[j];
    }
    x[n - 1] = z.x[n - 1] + h * ref.x[n - 1];
    y[n - 1] = h * ref.y[n - 1];
    return TubePoint(std::move(x), std::move(y));
}

/// integral of rho(u)^e / |rho(z,u)|^m dV(u).
IntegralResult modulus_integral(const TubePoint& z, double m, double e, int n,
                                const QuadratureConfig& cfg) {
    const TubeFn g = [&z, m](const TubePoint& u) -> Complex {
        return {std::pow(std::abs(rho_pair(z, u)), -m), 0.0};
    };
    return integrate_tube(g, n, e, cfg);
}

double spread_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    return mean == 0.0 ? 0.0 : (*hi - *lo) / std::abs(mean);
}

}  // namespace

SchurVerification verify_schur_conditions(const SchurCertificate& cert,
                                          int sample_count,
                                          const QuadratureConfig& cfg) {
    const int n = cert.n;
    const OperatorParams& pp = cert.params;
    const auto zs = slice_samples(n, sample_count, cfg.seed + 11);
    const auto us = slice_samples(n, sample_count, cfg.seed + 29);
    const auto refs = sample_points(n, 4000, cfg.seed + 47, 1.0);

    SchurVerification out;
    for (int i = 0; i < 2; ++i) {
        const Exponent& pi = cert.p.at(i);
        const double qi = cert.q.at(i).value();
        const double a = pp.a[i], b = pp.b[i], c = pp.c[i];
        const double al = pp.alpha[i], be = pp.beta[i];
        const double ga = cert.gamma[i], de = cert.delta[i];

        RatioCheck c1;
        c1.name = "cond1_slot" + std::to_string(i + 1);
        if (!pi.is_one()) {
            const double pd = pi.conjugate().value();
            const double m = c * ga * pd;
            const double e = (b - al) * ga * pd + cert.s[i] * pd + al;
            if (!second_identity_valid(n, m, e)) c1.converged = false;
            for (const TubePoint& z : zs) {
                if (!c1.converged) break;
                const IntegralResult ir = modulus_integral(z, m, e, n, cfg);
                c1.converged = c1.converged && ir.converged && !ir.divergent;
                const double val = std::pow(rho(z), a * ga * pd) * ir.real();
                c1.ratios.push_back(val / std::pow(rho(z), cert.r[i] * pd));
            }
        } else {
            // ess-sup condition: grid maximum of K^gamma h1 against the
            // covariant grid; a lower bound whose ratio is grid-exact.
            for (const TubePoint& z : zs) {
                double best = 0.0;
                for (const TubePoint& ref : refs) {
                    const TubePoint u = covariant_map(z, ref);
                    const double val =
                        std::pow(rho(z), a * ga) *
                        std::pow(rho(u), (b - al) * ga + cert.s[i]) /
                        std::pow(std::abs(rho_pair(z, u)), c * ga);
                    best = std::max(best, val);
                }
                c1.ratios.push_back(best / std::pow(rho(z), cert.r[i]));
            }
        }
        c1.spread = spread_of(c1.ratios);
        out.checks.push_back(std::move(c1));

        RatioCheck c2;
        c2.name = "cond2_slot" + std::to_string(i + 1);
        {
            const double m = c * de * qi;
            const double e = cert.r[i] * qi + a * de * qi + be;
            if (!second_identity_valid(n, m, e)) c2.converged = false;
            for (const TubePoint& u : us) {
                if (!c2.converged) break;
                const IntegralResult ir = modulus_integral(u, m, e, n, cfg);
                c2.converged = c2.converged && ir.converged && !ir.divergent;
                const double val = std::pow(rho(u), (b - al) * de * qi) * ir.real();
                c2.ratios.push_back(val / std::pow(rho(u), cert.s[i] * qi));
            }
        }
        c2.spread = spread_of(c2.ratios);
        out.checks.push_back(std::move(c2));
    }
    for (const RatioCheck& ch : out.checks) {
        out.max_spread = std::max(out.max_spread, ch.spread);
        out.converged = out.converged && ch.converged;
    }
    return out;
}

InfinityReport verify_infinity_condition(int n, const MixedExponents& p,
                                         const OperatorParams& params,
                                         int sample_count,
                                         const QuadratureConfig& cfg) {
    const auto zs = slice_samples(n, sample_count, cfg.seed + 61);
    const auto ws = slice_samples(n, sample_count, cfg.seed + 83);
    const auto refs = sample_points(n, 4000, cfg.seed + 47, 1.0);

    InfinityReport out;
    const auto slot_norm = [&](const TubePoint& z, int i) -> double {
        const Exponent& pi = p.at(i);
        const double a = params.a[i], b = params.b[i], c = params.c[i];
        const double al = params.alpha[i];
        if (pi.is_one()) {
            // p' = inf: ess-sup of the kernel slice on the covariant grid.
            double best = 0.0;
            for (const TubePoint& ref : refs) {
                const TubePoint u = covariant_map(z, ref);
                best = std::max(best, std::pow(rho(z), a) *
                                          std::pow(rho(u), b - al) /
                                          std::pow(std::abs(rho_pair(z, u)), c));
            }
            return best;
        }
        if (pi.is_inf()) {
            // p' = 1 against the unweighted sup-norm pairing.
            if (!second_identity_valid(n, c, b)) {
                out.divergent = true;
                return 0.0;
            }
            const IntegralResult ir = modulus_integral(z, c, b, n, cfg);
            out.converged = out.converged && ir.converged;
            out.divergent = out.divergent || ir.divergent;
            return std::pow(rho(z), a) * ir.real();
        }
        const double pd = pi.conjugate().value();
        const double m = c * pd;
        const double e = (b - al) * pd + al;
        if (!second_identity_valid(n, m, e)) {
            out.divergent = true;
            return 0.0;
        }
        const IntegralResult ir = modulus_integral(z, m, e, n, cfg);
        out.converged = out.converged && ir.converged;
        out.divergent = out.divergent || ir.divergent;
        return std::pow(rho(z), a) * std::pow(ir.real(), 1.0 / pd);
    };

    for (int k = 0; k < sample_count; ++k) {
        if (out.divergent) break;
        const double norm = slot_norm(zs[k], 0) * slot_norm(ws[k], 1);
        out.slice_norms.push_back(norm);
    }
    out.spread = spread_of(out.slice_norms);
    return out;
}

}  // namespace tubeops
