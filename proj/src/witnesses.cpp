#include "tubeops/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tubeops/classifier.hpp"
#include "tubeops/special_functions.hpp"

namespace tubeops {

namespace {

double inv(const Exponent& e) { return e.reciprocal(); }

void require_direct_preconditions(const MixedExponents& p, const OperatorParams& pp) {
    for (int i = 0; i < 2; ++i) {
        const Exponent& pi = p.at(i);
        const bool ok = pi.is_inf() ? pp.b[i] > -1.0
                                    : pp.alpha[i] + 1.0 < pi.value() * (pp.b[i] + 1.0);
        if (!ok)
            throw std::invalid_argument(
                "make_direct_family: source norm diverges (alpha_i + 1 < p_i (b_i + 1) "
                "required)");
    }
}

TubeFn direct_slot(double prefactor, const TubePoint& anchor, double kernel_power) {
    return [prefactor, anchor, kernel_power](const TubePoint& z) -> Complex {
        return prefactor / complex_power(rho_pair(z, anchor), kernel_power);
    };
}

double least_squares_slope(const std::vector<double>& lx, const std::vector<double>& ly,
                           size_t count) {
    if (count < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (size_t k = 0; k < count; ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < count; ++k) {
        num += (lx[k] - mx) * (ly[k] - my);
        den += (lx[k] - mx) * (lx[k] - mx);
    }
    return num / den;
}

}  // namespace

WitnessFamily make_direct_family(int n, const MixedExponents& p,
                                 const OperatorParams& params, const TubePoint& xi,
                                 const TubePoint& eta) {
    require_interior(xi);
    require_interior(eta);
    require_direct_preconditions(p, params);
    WitnessFamily fam;
    fam.kind = WitnessFamily::Kind::direct_family;
    fam.n = n;
    fam.params = params;
    fam.p = p;
    fam.xi = xi;
    fam.eta = eta;
    const double np1 = n + 1.0;
    for (int i = 0; i < 2; ++i)
        fam.prefactor_exp[i] =
            np1 + params.b[i] - (np1 + params.alpha[i]) * inv(p.at(i));
    fam.fn = WeightedFunction::separable(
        direct_slot(std::pow(rho(xi), fam.prefactor_exp[0]), xi, np1 + params.b[0]),
        direct_slot(std::pow(rho(eta), fam.prefactor_exp[1]), eta, np1 + params.b[1]));
    return fam;
}

WitnessFamily make_dual_family(int n, const MixedExponents& q,
                               const OperatorParams& params, double u, double eta) {
    if (!(u > 0.0) || !(eta > 0.0))
        throw std::invalid_argument("make_dual_family: anchors need positive heights");
    WitnessFamily fam;
    fam.kind = WitnessFamily::Kind::dual_family;
    fam.n = n;
    fam.params = params;
    fam.p = q;
    fam.xi = TubePoint::vertical(n, u);
    fam.eta = TubePoint::vertical(n, eta);
    const double np1 = n + 1.0;
    for (int i = 0; i < 2; ++i) {
        // Open ranges; the canonical choice is threshold + 1 in each.
        const double inv_qd = q.at(i).conjugate().reciprocal();
        const double t_thr = std::max(-(params.beta[i] + 1.0) * inv_qd,
                                      -params.a[i] - params.beta[i] - 1.0);
        const double gap_thr =
            std::max((np1 + params.beta[i]) * inv_qd,
                     params.beta[i] + params.a[i] - params.c[i] + np1);
        fam.t_exp[i] = t_thr + 1.0;
        fam.s_exp[i] = fam.t_exp[i] + gap_thr + 1.0;
    }
    const auto slot = [](const TubePoint& anchor, double s, double t) -> TubeFn {
        return [anchor, s, t](const TubePoint& z) -> Complex {
            return std::pow(rho(z), t) / complex_power(rho_pair(z, anchor), s);
        };
    };
    fam.fn = WeightedFunction::separable(slot(fam.xi, fam.s_exp[0], fam.t_exp[0]),
                                         slot(fam.eta, fam.s_exp[1], fam.t_exp[1]));
    return fam;
}

ClosedFormImage closed_form_T_image(const WitnessFamily& family) {
    const OperatorParams& pp = family.params;
    const int n = family.n;
    const double np1 = n + 1.0;
    ClosedFormImage out;
    if (family.kind == WitnessFamily::Kind::direct_family) {
        // Per slot: integral rho(u)^{b} / ( rho(z,u)^{c} rho(u,xi)^{n+1+b} ) dV
        //         = C1(n, c, n+1+b, b) / rho(z,xi)^{c}.
        for (int i = 0; i < 2; ++i)
            out.slot_constants[i] = c1_constant(n, pp.c[i], np1 + pp.b[i], pp.b[i]);
        out.constant = out.slot_constants[0] * out.slot_constants[1];
        const auto slot = [&](int i, const TubePoint& anchor) -> TubeFn {
            const double cst = out.slot_constants[i] *
                               std::pow(rho(anchor), family.prefactor_exp[i]);
            const double a = pp.a[i], c = pp.c[i];
            return [cst, a, c, anchor](const TubePoint& z) -> Complex {
                return cst * std::pow(rho(z), a) /
                       complex_power(rho_pair(z, anchor), c);
            };
        };
        out.fn = WeightedFunction::separable(slot(0, family.xi), slot(1, family.eta));
        return out;
    }
    // Adjoint image of the dual family:
    //   T* f = C rho(z)^{b1-alpha1} rho(w)^{b2-alpha2}
    //          / ( rho(z,xi)^{d1} rho(w,eta)^{d2} ),
    //   d_i = c_i + s_i - (n+1+beta_i+a_i+t_i).
    for (int i = 0; i < 2; ++i)
        out.slot_constants[i] = c1_constant(
            n, pp.c[i], family.s_exp[i], pp.beta[i] + pp.a[i] + family.t_exp[i]);
    out.constant = out.slot_constants[0] * out.slot_constants[1];
    const auto slot = [&](int i, const TubePoint& anchor) -> TubeFn {
        const double cst = out.slot_constants[i];
        const double pre = pp.b[i] - pp.alpha[i];
        const double d = pp.c[i] + family.s_exp[i] -
                         (np1 + pp.beta[i] + pp.a[i] + family.t_exp[i]);
        return [cst, pre, d, anchor](const TubePoint& z) -> Complex {
            return cst * std::pow(rho(z), pre) / complex_power(rho_pair(z, anchor), d);
        };
    };
    out.fn = WeightedFunction::separable(slot(0, family.xi), slot(1, family.eta));
    return out;
}

std::string ClosedFormImage::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "C = %.12g (slot constants %.12g, %.12g)",
                  constant, slot_constants[0], slot_constants[1]);
    return buf;
}

SweepResult blowup_sweep(int n, const MixedExponents& p, const MixedExponents& q,
                         const OperatorParams& params,
                         const std::vector<double>& scales,
                         const QuadratureConfig& cfg) {
    (void)cfg;  // the sweep runs entirely on closed forms
    if (!p.both_finite() || !q.both_finite())
        throw std::invalid_argument("blowup_sweep: finite exponent regimes only");
    OperatorParams formal = params;
    formal.formal = true;
    const BoundednessVerdict verdict = classify(n, p, q, formal);
    if (!verdict.has_lambda)
        throw std::invalid_argument("blowup_sweep: configuration outside the covered "
                                    "finite-exponent regimes");
    SweepResult out;
    out.predicted_slope = (verdict.critical_c[0] - params.c[0]) +
                          (verdict.critical_c[1] - params.c[1]);

    const double np1 = n + 1.0;
    // log ||f||, log ||Tf|| as alpha + beta * log t; both norms reduce to
    // the identity constants because |v|^{2h} = v^h conj(v)^h for Re v > 0.
    double const_term = 0.0;
    double slope_term = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double pi = p.at(i).value(), qi = q.at(i).value();
        const double a = params.a[i], b = params.b[i], c = params.c[i];
        const double al = params.alpha[i], be = params.beta[i];
        const double hs = 0.5 * (np1 + b) * pi;  // source half-power
        const double ht = 0.5 * c * qi;          // target half-power
        if (!c1_valid(n, hs, hs, al) || !c1_valid(n, c, np1 + b, b) ||
            !c1_valid(n, ht, ht, be + a * qi)) {
            out.divergent = true;
            return out;
        }
        const double e = np1 + b - (np1 + al) / pi;
        const double log_source = std::log(c1_constant(n, hs, hs, al)) / pi;
        const double src_slope = e + (np1 + al - (np1 + b) * pi) / pi;
        const double log_target =
            std::log(c1_constant(n, c, np1 + b, b)) +
            std::log(c1_constant(n, ht, ht, be + a * qi)) / qi;
        const double tgt_slope = e + (np1 + be + a * qi - c * qi) / qi;
        const_term += log_target - log_source;
        slope_term += tgt_slope - src_slope;
    }

    std::vector<double> lx, ly;
    for (double t : scales) {
        if (!(t > 0.0)) throw std::invalid_argument("blowup_sweep: scales must be > 0");
        const double lr = const_term + slope_term * std::log(t);
        lx.push_back(std::log(t));
        ly.push_back(lr);
        SweepPoint pt;
        pt.scale = t;
        pt.ratio = std::exp(lr);
        pt.slope_so_far = least_squares_slope(lx, ly, lx.size());
        out.points.push_back(pt);
    }
    out.slope = least_squares_slope(lx, ly, lx.size());
    return out;
}

std::string SweepResult::csv() const {
    std::string s = "scale,ratio,slope\n";
    char buf[96];
    for (const SweepPoint& pt : points) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", pt.scale, pt.ratio,
                      pt.slope_so_far);
        s += buf;
    }
    return s;
}

namespace {

double bump_profile(double t) {
    const double r2 = t * t;
    if (r2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r2));
}

TubeFn bump_slot(const TubePoint& center, double halfwidth) {
    return [center, halfwidth](const TubePoint& z) -> Complex {
        double v = 1.0;
        for (int j = 0; j < z.dim; ++j) {
            v *= bump_profile((z.x[j] - center.x[j]) / halfwidth);
            v *= bump_profile((z.y[j] - center.y[j]) / halfwidth);
            if (v == 0.0) break;
        }
        return {v, 0.0};
    };
}

struct Box {
    double x0, x1, y0, y1;
    bool empty = true;
};

/// Bounding box of the support of a slot function (n = 1), padded by one
/// scan cell.  Compact support is the caller's contract.
Box support_box(const TubeFn& f) {
    constexpr int kScan = 160;
    constexpr double kXMax = 10.0, kYMax = 10.0;
    const double dx = 2.0 * kXMax / kScan, dy = kYMax / kScan;
    Box b{0.0, 0.0, 0.0, 0.0, true};
    for (int ix = 0; ix < kScan; ++ix)
        for (int iy = 0; iy < kScan; ++iy) {
            const double x = -kXMax + (ix + 0.5) * dx;
            const double y = (iy + 0.5) * dy;
            if (std::abs(f(TubePoint::half_plane(x, y))) == 0.0) continue;
            if (b.empty) {
                b = {x, x, y, y, false};
            } else {
                b.x0 = std::min(b.x0, x);
                b.x1 = std::max(b.x1, x);
                b.y0 = std::min(b.y0, y);
                b.y1 = std::max(b.y1, y);
            }
        }
    if (!b.empty) {
        b.x0 -= dx;
        b.x1 += dx;
        b.y0 = std::max(b.y0 - dy, 1e-12);
        b.y1 += dy;
    }
    return b;
}

struct BoxGrid {
    std::vector<TubePoint> pts;
    std::vector<double> wts;
};

/// Two Gauss-Legendre panels per axis over the box.
BoxGrid box_grid(const Box& b) {
    BoxGrid g;
    if (b.empty) return g;
    const double* nodes = gauss_legendre_nodes();
    const double* wts = gauss_legendre_weights();
    const auto axis = [&](double lo, double hi, std::vector<double>& t,
                          std::vector<double>& w) {
        const double mid = 0.5 * (lo + hi);
        for (const auto& [a0, a1] : {std::pair{lo, mid}, std::pair{mid, hi}}) {
            const double h = 0.5 * (a1 - a0), c = 0.5 * (a1 + a0);
            for (int k = 0; k < kGaussLegendreSize; ++k) {
                t.push_back(c + h * nodes[k]);
                w.push_back(h * wts[k]);
            }
        }
    };
    std::vector<double> xs, xw, ys, yw;
    axis(b.x0, b.x1, xs, xw);
    axis(b.y0, b.y1, ys, yw);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < ys.size(); ++j) {
            g.pts.push_back(TubePoint::half_plane(xs[i], ys[j]));
            g.wts.push_back(xw[i] * yw[j]);
        }
    return g;
}

}  // namespace

WeightedFunction make_bump(const TubePoint& center1, const TubePoint& center2,
                           double halfwidth) {
    require_interior(center1);
    require_interior(center2);
    if (!(halfwidth > 0.0))
        throw std::invalid_argument("make_bump: halfwidth must be positive");
    for (const TubePoint* c : {&center1, &center2})
        if (!(rho(*c) > halfwidth))
            throw std::invalid_argument(
                "make_bump: support must stay away from the boundary");
    return WeightedFunction::separable(bump_slot(center1, halfwidth),
                                       bump_slot(center2, halfwidth));
}

double duality_gap(const OperatorParams& params, const WeightedFunction& f,
                   const WeightedFunction& g, int n, const QuadratureConfig& cfg) {
    (void)cfg;  // compact supports make the truncation exact
    if (n != 1)
        throw std::invalid_argument("duality_gap: implemented at n = 1");
    if (f.structure != WeightedFunction::Structure::separable ||
        g.structure != WeightedFunction::Structure::separable)
        throw std::invalid_argument("duality_gap: separable bump pairs required");
    params.require_quadrature_ok();

    Complex lhs{1.0, 0.0}, rhs{1.0, 0.0};
    for (int i = 0; i < 2; ++i) {
        const TubeFn& fi = i == 0 ? f.f1 : f.f2;
        const TubeFn& gi = i == 0 ? g.f1 : g.f2;
        const BoxGrid fg = box_grid(support_box(fi));
        const BoxGrid gg = box_grid(support_box(gi));
        if (fg.pts.empty() || gg.pts.empty()) return 0.0;
        const double a = params.a[i], b = params.b[i], c = params.c[i];
        const double al = params.alpha[i], be = params.beta[i];

        // <Tf, g>_beta = integral over z of rho(z)^{a+beta} conj(g)
        //                . integral over u of rho(u)^{b} f / rho(z,u)^{c}.
        Complex p1{0.0, 0.0};
        for (size_t zi = 0; zi < gg.pts.size(); ++zi) {
            const TubePoint& z = gg.pts[zi];
            const Complex gz = std::conj(gi(z));
            if (gz == Complex{0.0, 0.0}) continue;
            Complex inner{0.0, 0.0};
            for (size_t ui = 0; ui < fg.pts.size(); ++ui) {
                const TubePoint& u = fg.pts[ui];
                inner += fg.wts[ui] * std::pow(rho(u), b) * fi(u) /
                         complex_power(rho_pair(z, u), c);
            }
            p1 += gg.wts[zi] * std::pow(rho(z), a + be) * gz * inner;
        }

        // <f, T*g>_alpha with T* written out; conjugation flips the
        // kernel to rho(u, z).
        Complex p2{0.0, 0.0};
        for (size_t zi = 0; zi < fg.pts.size(); ++zi) {
            const TubePoint& z = fg.pts[zi];
            const Complex fz = fi(z);
            if (fz == Complex{0.0, 0.0}) continue;
            Complex inner{0.0, 0.0};
            for (size_t ui = 0; ui < gg.pts.size(); ++ui) {
                const TubePoint& u = gg.pts[ui];
                inner += gg.wts[ui] * std::pow(rho(u), be + a) * std::conj(gi(u)) /
                         complex_power(rho_pair(u, z), c);
            }
            p2 += fg.wts[zi] * std::pow(rho(z), al) * fz *
                  std::pow(rho(z), b - al) * inner;
        }
        lhs *= p1;
        rhs *= p2;
    }
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    if (denom < 1e-30) return 0.0;
    return std::abs(lhs - rhs) / denom;
}

}  // namespace tubeops
