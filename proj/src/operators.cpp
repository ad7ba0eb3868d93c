#include "tubeops/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace tubeops {

void OperatorParams::require_admissible_source() const {
    if (formal) return;
    for (int i = 0; i < 2; ++i)
        if (!(alpha[i] > -1.0))
            throw std::invalid_argument(
                "OperatorParams: source weight alpha must exceed -1 (set formal to "
                "bypass for classification queries)");
}

void OperatorParams::require_quadrature_ok() const {
    for (int i = 0; i < 2; ++i)
        if (!(alpha[i] > -1.0))
            throw std::invalid_argument(
                "OperatorParams: quadrature against weights alpha <= -1 is ill-posed");
}

namespace {

enum class KernelKind { analytic, modulus };

IntegralResult apply_kernel(const RealPair& pre, const RealPair& b, const RealPair& c,
                            KernelKind kind, const WeightedFunction& f,
                            const TubePoint& z, const TubePoint& w, int n,
                            const QuadratureConfig& cfg) {
    require_interior(z);
    require_interior(w);
    const auto slot_integral = [&](const TubeFn& fi, const TubePoint& zz, int i) {
        const double ci = c[i];
        const TubeFn g = [&fi, &zz, ci, kind](const TubePoint& u) -> Complex {
            const Complex pair = rho_pair(zz, u);
            if (kind == KernelKind::analytic)
                return fi(u) / complex_power(pair, ci);
            return fi(u) / std::pow(std::abs(pair), ci);
        };
        return integrate_tube(g, n, b[i], cfg);
    };

    IntegralResult res;
    const double prefactor = std::pow(rho(z), pre[0]) * std::pow(rho(w), pre[1]);
    if (f.structure == WeightedFunction::Structure::separable) {
        const IntegralResult i1 = slot_integral(f.f1, z, 0);
        const IntegralResult i2 = slot_integral(f.f2, w, 1);
        res.value = prefactor * i1.value * i2.value;
        res.est_error = prefactor * (i1.est_error * std::abs(i2.value) +
                                     i2.est_error * std::abs(i1.value));
        res.evals = i1.evals + i2.evals;
        res.converged = i1.converged && i2.converged;
        res.divergent = i1.divergent || i2.divergent;
        return res;
    }
    const PairFn g = [&](const TubePoint& u, const TubePoint& eta) -> Complex {
        const Complex p1 = rho_pair(z, u), p2 = rho_pair(w, eta);
        if (kind == KernelKind::analytic)
            return f.f(u, eta) / (complex_power(p1, c[0]) * complex_power(p2, c[1]));
        return f.f(u, eta) / (std::pow(std::abs(p1), c[0]) * std::pow(std::abs(p2), c[1]));
    };
    res = integrate_product(WeightedFunction::generic(g), n, {b[0], b[1]}, cfg);
    res.value *= prefactor;
    res.est_error *= prefactor;
    return res;
}

}  // namespace

IntegralResult apply_T(const OperatorParams& params, const WeightedFunction& f,
                       const TubePoint& z, const TubePoint& w, int n,
                       const QuadratureConfig& cfg) {
    params.require_quadrature_ok();
    return apply_kernel(params.a, params.b, params.c, KernelKind::analytic, f, z, w, n,
                        cfg);
}

IntegralResult apply_S(const OperatorParams& params, const WeightedFunction& f,
                       const TubePoint& z, const TubePoint& w, int n,
                       const QuadratureConfig& cfg) {
    params.require_quadrature_ok();
    return apply_kernel(params.a, params.b, params.c, KernelKind::modulus, f, z, w, n,
                        cfg);
}

IntegralResult apply_T_adjoint(const OperatorParams& params, const WeightedFunction& f,
                               const TubePoint& z, const TubePoint& w, int n,
                               const QuadratureConfig& cfg) {
    params.require_quadrature_ok();
    const RealPair pre{params.b[0] - params.alpha[0], params.b[1] - params.alpha[1]};
    const RealPair bw{params.beta[0] + params.a[0], params.beta[1] + params.a[1]};
    return apply_kernel(pre, bw, params.c, KernelKind::analytic, f, z, w, n, cfg);
}

OperatorParams make_projection(int n, RealPair gamma) {
    for (double g : gamma)
        if (!(g > -1.0)) throw std::invalid_argument("make_projection: gamma > -1 required");
    OperatorParams p;
    p.a = {0.0, 0.0};
    p.b = gamma;
    p.c = {n + 1.0 + gamma[0], n + 1.0 + gamma[1]};
    p.alpha = gamma;
    p.beta = gamma;
    return p;
}

OperatorParams make_berezin(int n, RealPair gamma) {
    for (double g : gamma)
        if (!(g > -1.0)) throw std::invalid_argument("make_berezin: gamma > -1 required");
    OperatorParams p;
    p.a = {n + 1.0 + gamma[0], n + 1.0 + gamma[1]};
    p.b = gamma;
    p.c = {2.0 * (n + 1.0 + gamma[0]), 2.0 * (n + 1.0 + gamma[1])};
    p.alpha = gamma;
    p.beta = gamma;
    return p;
}

OperatorParams make_Tc(RealPair c, RealPair gamma) {
    for (double g : gamma)
        if (!(g > -1.0)) throw std::invalid_argument("make_Tc: gamma > -1 required");
    OperatorParams p;
    p.a = {0.0, 0.0};
    p.b = gamma;
    p.c = c;
    p.alpha = gamma;
    p.beta = gamma;
    return p;
}

}  // namespace tubeops
