#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tubeops/exponents.hpp"
#include "tubeops/geometry.hpp"

namespace tubeops {

enum class QuadMethod { adaptive_tensor, monte_carlo };

struct QuadratureConfig {
    QuadMethod method = QuadMethod::adaptive_tensor;
    double rel_tol = 1e-3;
    long max_evals = 4'000'000;
    std::uint64_t seed = 0;
    double truncation_growth = 2.0;

    void validate() const;
    QuadratureConfig scaled_down(double factor) const;  // coarser copy for nested use
};

struct IntegralResult {
    Complex value{0.0, 0.0};
    double est_error = 0.0;
    long evals = 0;
    bool converged = false;
    bool divergent = false;

    double real() const { return value.real(); }
    double abs() const { return std::abs(value); }
};

using TubeFn = std::function<Complex(const TubePoint&)>;
using PairFn = std::function<Complex(const TubePoint&, const TubePoint&)>;

/// A function on the product domain.  Every kernel and test-function
/// family in sight factors across the two slots, which turns product
/// integrals into pairs of single-domain integrals; the generic form is
/// kept for completeness.
struct WeightedFunction {
    enum class Structure { separable, generic };
    Structure structure = Structure::separable;
    TubeFn f1, f2;  // separable: f(u,eta) = f1(u) * f2(eta)
    PairFn f;       // generic

    static WeightedFunction separable(TubeFn a, TubeFn b);
    static WeightedFunction generic(PairFn g);
    Complex eval(const TubePoint& u, const TubePoint& eta) const;
};

/// integral over the tube of g(z) * rho(z)^weight_exponent dV(z).
/// n = 1 uses adaptive tensor Gauss-Legendre panels on a growing
/// truncation box; n >= 2 (or method monte_carlo) uses seeded
/// importance-sampled Monte Carlo.  Divergence is flagged, never
/// silently truncated.
IntegralResult integrate_tube(const TubeFn& g, int n, double weight_exponent,
                              const QuadratureConfig& cfg);

/// Double integral with one weight per slot.  Separable structure is
/// the exact product of two single-domain integrals.
IntegralResult integrate_product(const WeightedFunction& f, int n,
                                 std::pair<double, double> weights,
                                 const QuadratureConfig& cfg);

/// Single-slot norm (integral of |g|^p rho^w)^{1/p}; p = inf is the
/// stratified-grid maximum, reported as a lower bound.
IntegralResult norm_tube(const TubeFn& g, int n, const Exponent& p, double weight,
                         const QuadratureConfig& cfg);

/// Iterated mixed norm with exponents (p1,p2) and weights per slot.
IntegralResult mixed_norm(const WeightedFunction& f, int n, const MixedExponents& p,
                          std::pair<double, double> weights,
                          const QuadratureConfig& cfg);

/// The 16-point Gauss-Legendre rule on [-1, 1], shared with callers that
/// integrate smooth integrands over known compact boxes.
constexpr int kGaussLegendreSize = 16;
const double* gauss_legendre_nodes();
const double* gauss_legendre_weights();

struct IdentityReport {
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double rel_err = 0.0;
    bool converged = false;
    long evals = 0;
};

/// Quadrature check of
///   integral rho(w)^t / (rho(z,w)^r rho(w,u)^s) dV(w)
///     = C1(n,r,s,t) / rho(z,u)^{r+s-t-n-1}.
/// Throws DivergentParameterError when the closed form does not apply.
IdentityReport verify_identity_first(int n, double r, double s, double t,
                                     const TubePoint& z, const TubePoint& u,
                                     const QuadratureConfig& cfg);

struct SecondIdentityReport {
    std::vector<double> scaled_values;  // quadrature * rho(z)^{s-t-n-1} per point
    double constant_estimate = 0.0;     // the unnamed constant, numerically
    double homogeneity_spread = 0.0;    // (max-min)/mean of scaled values
    bool divergent = false;
    bool converged = false;
};

/// Homogeneity check of
///   integral rho(w)^t / |rho(z,w)|^s dV(w) = const / rho(z)^{s-t-n-1},
/// where the constant carries no closed form here and is estimated
/// numerically.  Parameters outside t > -1, s-t > n+1 are flagged
/// divergent.
SecondIdentityReport verify_identity_second(int n, double s, double t,
                                            const std::vector<TubePoint>& zs,
                                            const QuadratureConfig& cfg);

}  // namespace tubeops
