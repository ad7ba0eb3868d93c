#include "tubeops/integration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <tuple>

#include "tubeops/special_functions.hpp"

namespace tubeops {

namespace {

// 16-node Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGLWeight[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

struct Panel {
    double x0, x1, y0, y1;
};

}  // namespace

const double* gauss_legendre_nodes() { return kGLNode; }
const double* gauss_legendre_weights() { return kGLWeight; }

namespace {

// f(x, y) already includes the rho-weight.
using PlaneFn = std::function<Complex(double, double)>;

Complex gl_panel(const PlaneFn& f, const Panel& p, long& evals) {
    const double hx = 0.5 * (p.x1 - p.x0), cx = 0.5 * (p.x1 + p.x0);
    const double hy = 0.5 * (p.y1 - p.y0), cy = 0.5 * (p.y1 + p.y0);
    Complex acc{0.0, 0.0};
    for (int i = 0; i < kGL; ++i) {
        const double x = cx + hx * kGLNode[i];
        Complex row{0.0, 0.0};
        for (int j = 0; j < kGL; ++j)
            row += kGLWeight[j] * f(x, cy + hy * kGLNode[j]);
        acc += kGLWeight[i] * row;
    }
    evals += kGL * kGL;
    return acc * (hx * hy);
}

// Recursive 2x2 subdivision against an absolute tolerance budget.
Complex adaptive_panel(const PlaneFn& f, const Panel& p, double tol_abs, int depth,
                       long& evals, long max_evals, double& err_acc) {
    const Complex whole = gl_panel(f, p, evals);
    const double xm = 0.5 * (p.x0 + p.x1), ym = 0.5 * (p.y0 + p.y1);
    const Panel children[4] = {{p.x0, xm, p.y0, ym},
                               {xm, p.x1, p.y0, ym},
                               {p.x0, xm, ym, p.y1},
                               {xm, p.x1, ym, p.y1}};
    Complex split{0.0, 0.0};
    for (const Panel& c : children) split += gl_panel(f, c, evals);
    const double diff = std::abs(whole - split);
    if (diff <= tol_abs || depth >= 5 || evals >= max_evals) {
        err_acc += diff;
        return split;
    }
    Complex acc{0.0, 0.0};
    for (const Panel& c : children)
        acc += adaptive_panel(f, c, tol_abs / 4.0, depth + 1, evals, max_evals, err_acc);
    return acc;
}

// Dyadic panel grid keyed by power-of-two bands: x band ix covers
// [2^{ix-1}, 2^ix] (ix = 0 covers [0, 1]) on each sign, y band j covers
// [2^j, 2^{j+1}].  Keeping the bands level-independent lets successive
// truncation levels reuse every previously integrated panel.
struct PanelGrid {
    const PlaneFn& f;
    long& evals;
    long max_evals;
    double budget = 0.0;
    double err_acc = 0.0;
    std::map<std::tuple<int, int, int>, Complex> cache;  // (sign, ix, j) -> value

    Panel make_panel(int sign, int ix, int j) const {
        const double x0 = ix == 0 ? 0.0 : std::ldexp(1.0, ix - 1);
        const double x1 = std::ldexp(1.0, ix);
        const double y0 = std::ldexp(1.0, j);
        const double y1 = std::ldexp(1.0, j + 1);
        if (sign < 0) return {-x1, -x0, y0, y1};
        return {x0, x1, y0, y1};
    }

    Complex panel_value(int sign, int ix, int j) {
        const auto key = std::make_tuple(sign, ix, j);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const Complex v =
            adaptive_panel(f, make_panel(sign, ix, j), budget, 0, evals, max_evals,
                           err_acc);
        cache.emplace(key, v);
        return v;
    }

    // Sum over x in [-2^K, 2^K], y in [2^jmin, 2^K].
    Complex level_total(int K, int jmin) {
        Complex total{0.0, 0.0};
        for (int j = jmin; j < K; ++j)
            for (int ix = 0; ix <= K; ++ix)
                for (int sign : {1, -1}) total += panel_value(sign, ix, j);
        return total;
    }
};

IntegralResult integrate_half_plane(const TubeFn& g, double weight_exponent,
                                    const QuadratureConfig& cfg) {
    const PlaneFn f = [&](double x, double y) {
        return g(TubePoint::half_plane(x, y)) * std::pow(y, weight_exponent);
    };
    IntegralResult res;
    const int gstep =
        std::max(1, static_cast<int>(std::lround(std::log2(cfg.truncation_growth))));
    int K = 3;       // truncation radius 2^K
    int jmin = -20;  // boundary cutoff 2^jmin
    const int max_levels = 12;
    std::vector<Complex> hist;
    std::vector<double> deltas;

    PanelGrid grid{f, res.evals, cfg.max_evals};
    {  // coarse pass at the first level fixes the absolute panel budget
        long coarse_evals = 0;
        Complex coarse{0.0, 0.0};
        int npanels = 0;
        for (int j = jmin; j < K; ++j)
            for (int ix = 0; ix <= K; ++ix)
                for (int sign : {1, -1}) {
                    coarse += gl_panel(f, grid.make_panel(sign, ix, j), coarse_evals);
                    ++npanels;
                }
        res.evals += coarse_evals;
        grid.budget =
            0.1 * cfg.rel_tol * std::max(std::abs(coarse), 1e-300) / npanels;
    }

    // Aitken delta-squared acceleration.  Truncation and near-boundary
    // tails decay like R^{-d} and eps^{e+1}, so the level sequence is a
    // sum of (at most) two geometric series; one pass removes the
    // dominant one and a second pass the remainder.
    const auto aitken = [](const std::vector<Complex>& v) {
        std::vector<Complex> out;
        for (std::size_t k = 0; k + 2 < v.size(); ++k) {
            const Complex d1 = v[k + 1] - v[k];
            const Complex d2 = v[k + 2] - v[k + 1];
            const Complex den = d2 - d1;
            if (std::abs(den) < 1e-12 * (std::abs(d1) + std::abs(d2)) + 1e-300)
                out.push_back(v[k + 2]);
            else
                out.push_back(v[k + 2] - d2 * d2 / den);
        }
        return out;
    };

    for (int level = 0; level < max_levels; ++level) {
        const Complex v = grid.level_total(K, jmin);
        const double panel_err = grid.err_acc;
        if (!hist.empty()) {
            const Complex prev = hist.back();
            const double delta = std::abs(v - prev);
            const double mag = std::abs(v) + 1e-300;
            deltas.push_back(delta);
            // Divergent integrals keep adding mass: the level increments of a
            // convergent one shrink geometrically, so three consecutive
            // non-shrinking increments (once the bulk has been captured)
            // signal divergence -- constant increments for logarithmic rates,
            // growing ones for power rates.
            if (deltas.size() >= 4 && level >= 5) {
                bool stalled = true;
                for (std::size_t k = deltas.size() - 3; k < deltas.size(); ++k)
                    stalled = stalled && deltas[k] >= 0.93 * deltas[k - 1] &&
                              deltas[k] > 1e-14 * mag;
                if (stalled) {
                    res.value = v;
                    res.divergent = true;
                    return res;
                }
            }
            if (delta < 0.5 * cfg.rel_tol * mag) {
                res.value = v;
                res.est_error = delta + panel_err;
                res.converged = true;
                return res;
            }
            res.est_error = delta + panel_err;
        }
        hist.push_back(v);
        res.value = v;

        const std::vector<Complex> acc1 = aitken(hist);
        const std::vector<Complex> acc2 = aitken(acc1);
        for (const auto* seq : {&acc2, &acc1}) {
            if (seq->size() < 2) continue;
            const Complex last = seq->back();
            const double d = std::abs(last - (*seq)[seq->size() - 2]);
            if (d < 0.5 * cfg.rel_tol * (std::abs(last) + 1e-300)) {
                res.value = last;
                res.est_error = d + panel_err;
                res.converged = true;
                return res;
            }
        }

        if (res.evals >= cfg.max_evals) break;
        K += gstep;
        jmin -= 2 * gstep;
    }
    return res;  // converged == false
}

IntegralResult integrate_monte_carlo(const TubeFn& g, int n, double weight_exponent,
                                     const QuadratureConfig& cfg) {
    std::mt19937_64 rng(cfg.seed ^ 0x5bf03635ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double sx = 2.0;        // Cauchy scale per x component
    const double ylo = 1e-6, yhi = 1e3;
    const double lnratio = std::log(yhi / ylo);

    IntegralResult res;
    Complex sum{0.0, 0.0};
    double sum_sq = 0.0;  // of |sample|
    long count = 0;
    const long batch = 20000;
    while (res.evals < cfg.max_evals) {
        for (long k = 0; k < batch; ++k) {
            std::vector<double> x(n), y(n);
            double logpdf = 0.0;
            for (int j = 0; j < n; ++j) {
                const double t = std::tan(std::numbers::pi * (unit(rng) - 0.5));
                x[j] = sx * t;
                logpdf += -std::log(std::numbers::pi * sx * (1.0 + t * t));
            }
            const double yn = ylo * std::exp(lnratio * unit(rng));
            logpdf += -std::log(yn * lnratio);
            const double rad = std::sqrt(yn);
            double s = 0.0;
            for (int j = 0; j + 1 < n; ++j) {
                y[j] = rad * (2.0 * unit(rng) - 1.0);
                s += y[j] * y[j];
            }
            if (s >= yn) {  // outside the paraboloid slice: contributes zero
                ++count;
                continue;
            }
            // uniform cube proposal over [-rad, rad]^{n-1}, restricted to the
            // ball by the rejection above
            if (n > 1) logpdf += -(n - 1) * std::log(2.0 * rad);
            y[n - 1] = yn;
            const TubePoint z(std::move(x), std::move(y));
            const double h = rho(z);
            const Complex val =
                g(z) * std::pow(h, weight_exponent) * std::exp(-logpdf);
            sum += val;
            sum_sq += std::norm(val);
            ++count;
        }
        res.evals += batch;
        const Complex mean = sum / static_cast<double>(count);
        const double var =
            std::max(0.0, sum_sq / count - std::norm(mean)) / std::max<long>(count - 1, 1);
        res.value = mean;
        res.est_error = std::sqrt(var);
        if (res.est_error <= cfg.rel_tol * std::abs(mean) && count > 4 * batch) {
            res.converged = true;
            return res;
        }
    }
    return res;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 0.5))
        throw std::invalid_argument("QuadratureConfig: rel_tol must be in (0, 0.5)");
    if (max_evals < 1000)
        throw std::invalid_argument("QuadratureConfig: max_evals >= 1000 required");
    if (!(truncation_growth > 1.0))
        throw std::invalid_argument("QuadratureConfig: truncation_growth > 1 required");
}

QuadratureConfig QuadratureConfig::scaled_down(double factor) const {
    QuadratureConfig c = *this;
    c.rel_tol = std::min(0.45, rel_tol * 3.0);
    c.max_evals = std::max<long>(1000, static_cast<long>(max_evals / factor));
    return c;
}

WeightedFunction WeightedFunction::separable(TubeFn a, TubeFn b) {
    WeightedFunction w;
    w.structure = Structure::separable;
    w.f1 = std::move(a);
    w.f2 = std::move(b);
    return w;
}

WeightedFunction WeightedFunction::generic(PairFn g) {
    WeightedFunction w;
    w.structure = Structure::generic;
    w.f = std::move(g);
    return w;
}

Complex WeightedFunction::eval(const TubePoint& u, const TubePoint& eta) const {
    if (structure == Structure::separable) return f1(u) * f2(eta);
    return f(u, eta);
}

IntegralResult integrate_tube(const TubeFn& g, int n, double weight_exponent,
                              const QuadratureConfig& cfg) {
    cfg.validate();
    if (n == 1 && cfg.method == QuadMethod::adaptive_tensor)
        return integrate_half_plane(g, weight_exponent, cfg);
    return integrate_monte_carlo(g, n, weight_exponent, cfg);
}

IntegralResult integrate_product(const WeightedFunction& f, int n,
                                 std::pair<double, double> weights,
                                 const QuadratureConfig& cfg) {
    cfg.validate();
    if (f.structure == WeightedFunction::Structure::separable) {
        const IntegralResult a = integrate_tube(f.f1, n, weights.first, cfg);
        const IntegralResult b = integrate_tube(f.f2, n, weights.second, cfg);
        IntegralResult res;
        res.value = a.value * b.value;
        res.est_error = a.est_error * std::abs(b.value) + b.est_error * std::abs(a.value);
        res.evals = a.evals + b.evals;
        res.converged = a.converged && b.converged;
        res.divergent = a.divergent || b.divergent;
        return res;
    }
    // Generic structure: joint Monte Carlo over the product domain via two
    // independent proposals.
    std::mt19937_64 mix(cfg.seed);
    QuadratureConfig inner = cfg;
    // Joint Monte Carlo over the doubled space: each u sample draws one
    // matched eta sample from a captured secondary stream, with the eta
    // importance weight folded into the integrand.
    const std::uint64_t seed2 = mix();
    auto eta_stream = std::make_shared<std::mt19937_64>(seed2);
    const double w2 = weights.second;
    const TubeFn g1 = [f, n, w2, eta_stream](const TubePoint& u) -> Complex {
        // one matched eta sample per u sample, importance weights included
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto& rng = *eta_stream;
        const double sx = 2.0, ylo = 1e-6, yhi = 1e3;
        const double lnratio = std::log(yhi / ylo);
        std::vector<double> x(n), y(n);
        double logpdf = 0.0;
        for (int j = 0; j < n; ++j) {
            const double t = std::tan(std::numbers::pi * (unit(rng) - 0.5));
            x[j] = sx * t;
            logpdf += -std::log(std::numbers::pi * sx * (1.0 + t * t));
        }
        const double yn = ylo * std::exp(lnratio * unit(rng));
        logpdf += -std::log(yn * lnratio);
        const double rad = std::sqrt(yn);
        double s = 0.0;
        for (int j = 0; j + 1 < n; ++j) {
            y[j] = rad * (2.0 * unit(rng) - 1.0);
            s += y[j] * y[j];
        }
        if (s >= yn) return {0.0, 0.0};
        if (n > 1) logpdf += -(n - 1) * std::log(2.0 * rad);
        y[n - 1] = yn;
        const TubePoint eta(std::move(x), std::move(y));
        return f.f(u, eta) * std::pow(rho(eta), w2) * std::exp(-logpdf);
    };
    inner.method = QuadMethod::monte_carlo;
    return integrate_tube(g1, n, weights.first, inner);
}

namespace {

IntegralResult sup_on_grid(const TubeFn& g, int n, const QuadratureConfig& cfg) {
    // ess-sup surrogate: maximum over the stratified sample grid.  This is a
    // lower bound of the true essential supremum.
    IntegralResult res;
    double best = 0.0;
    const auto pts = sample_points(n, 10000, cfg.seed + 17, 1.0);
    for (const auto& z : pts) best = std::max(best, std::abs(g(z)));
    res.value = best;
    res.evals = static_cast<long>(pts.size());
    res.converged = true;
    return res;
}

}  // namespace

IntegralResult norm_tube(const TubeFn& g, int n, const Exponent& p, double weight,
                         const QuadratureConfig& cfg) {
    if (p.is_inf()) return sup_on_grid(g, n, cfg);
    const double pv = p.value();
    const TubeFn integrand = [&g, pv](const TubePoint& z) -> Complex {
        return {std::pow(std::abs(g(z)), pv), 0.0};
    };
    IntegralResult res = integrate_tube(integrand, n, weight, cfg);
    if (res.divergent) return res;
    const double base = res.value.real();
    IntegralResult out = res;
    out.value = std::pow(std::max(base, 0.0), 1.0 / pv);
    out.est_error = base > 0.0
                        ? out.value.real() * res.est_error / (pv * base)
                        : res.est_error;
    return out;
}

IntegralResult mixed_norm(const WeightedFunction& f, int n, const MixedExponents& p,
                          std::pair<double, double> weights,
                          const QuadratureConfig& cfg) {
    cfg.validate();
    if (f.structure == WeightedFunction::Structure::separable) {
        const IntegralResult a = norm_tube(f.f1, n, p.p1, weights.first, cfg);
        const IntegralResult b = norm_tube(f.f2, n, p.p2, weights.second, cfg);
        IntegralResult res;
        res.value = a.value.real() * b.value.real();
        res.est_error = a.est_error * b.value.real() + b.est_error * a.value.real();
        res.evals = a.evals + b.evals;
        res.converged = a.converged && b.converged;
        res.divergent = a.divergent || b.divergent;
        return res;
    }
    // Generic structure: iterated evaluation, inner norm per outer node.
    const QuadratureConfig inner = cfg.scaled_down(64.0);
    const TubeFn inner_norm = [&f, n, &p, weights, inner](const TubePoint& eta) -> Complex {
        const TubeFn slice = [&f, &eta](const TubePoint& u) { return f.f(u, eta); };
        return norm_tube(slice, n, p.p1, weights.first, inner).value;
    };
    return norm_tube(inner_norm, n, p.p2, weights.second, cfg.scaled_down(8.0));
}

IdentityReport verify_identity_first(int n, double r, double s, double t,
                                     const TubePoint& z, const TubePoint& u,
                                     const QuadratureConfig& cfg) {
    if (!c1_valid(n, r, s, t))
        throw DivergentParameterError(
            "verify_identity_first: parameters outside the identity's validity range");
    require_interior(z);
    require_interior(u);
    const TubeFn g = [&](const TubePoint& w) -> Complex {
        return 1.0 / (complex_power(rho_pair(z, w), r) * complex_power(rho_pair(w, u), s));
    };
    const IntegralResult lhs = integrate_tube(g, n, t, cfg);
    const Complex zu = rho_pair(z, u);
    const Complex rhs =
        c1_constant(n, r, s, t) / complex_power(zu, r + s - t - n - 1.0);
    IdentityReport rep;
    rep.lhs = lhs.value;
    rep.rhs = rhs;
    rep.rel_err = std::abs(lhs.value - rhs) / std::abs(rhs);
    rep.converged = lhs.converged;
    rep.evals = lhs.evals;
    return rep;
}

SecondIdentityReport verify_identity_second(int n, double s, double t,
                                            const std::vector<TubePoint>& zs,
                                            const QuadratureConfig& cfg) {
    SecondIdentityReport rep;
    if (!second_identity_valid(n, s, t)) {
        rep.divergent = true;  // the identity's own dichotomy: infinite integral
        return rep;
    }
    if (zs.empty()) return rep;
    rep.converged = true;
    for (const auto& z : zs) {
        require_interior(z);
        const TubeFn g = [&](const TubePoint& w) -> Complex {
            return std::pow(std::abs(rho_pair(z, w)), -s);
        };
        const IntegralResult v = integrate_tube(g, n, t, cfg);
        rep.divergent = rep.divergent || v.divergent;
        rep.converged = rep.converged && v.converged;
        rep.scaled_values.push_back(v.value.real() *
                                    std::pow(rho(z), s - t - n - 1.0));
    }
    const auto [mn, mx] =
        std::minmax_element(rep.scaled_values.begin(), rep.scaled_values.end());
    double mean = 0.0;
    for (double v : rep.scaled_values) mean += v;
    mean /= rep.scaled_values.size();
    rep.constant_estimate = mean;
    rep.homogeneity_spread = mean != 0.0 ? (*mx - *mn) / mean : 0.0;
    return rep;
}

}  // namespace tubeops
