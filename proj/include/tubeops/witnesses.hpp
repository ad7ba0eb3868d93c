#pragma once

#include <string>
#include <vector>

#include "tubeops/integration.hpp"
#include "tubeops/operators.hpp"

namespace tubeops {

/// The extremal families of the necessity arguments.  direct_family is
///   f_{xi,eta}(z,w) = rho(xi)^{n+1+b1-(n+1+alpha1)/p1} ... /
///                     ( rho(z,xi)^{n+1+b1} rho(w,eta)^{n+1+b2} ),
/// whose mixed p-norm is bounded by an anchor-independent constant.
/// dual_family is f_{u,eta} with free exponents (s_i, t_i) anchored on
/// the vertical ray, used against the adjoint.
struct WitnessFamily {
    enum class Kind { direct_family, dual_family };
    Kind kind = Kind::direct_family;
    int n = 1;
    OperatorParams params;
    MixedExponents p;          // source exponents (direct) / target pair (dual)
    TubePoint xi, eta;         // anchors; dual anchors sit on the vertical ray
    RealPair s_exp{0.0, 0.0};  // dual-family kernel powers
    RealPair t_exp{0.0, 0.0};  // dual-family boundary powers
    RealPair prefactor_exp{0.0, 0.0};  // rho(anchor) powers of the direct family
    WeightedFunction fn;
};

/// Builds f_{xi,eta}; requires alpha_i + 1 < p_i (b_i + 1) so the norm
/// is finite, and interior anchors.
WitnessFamily make_direct_family(int n, const MixedExponents& p,
                                 const OperatorParams& params, const TubePoint& xi,
                                 const TubePoint& eta);

/// Builds f_{u,eta} on anchors (0', u i), (0', eta i) with the canonical
/// exponent choice threshold + 1 in each open range:
///   s_i > 0,
///   t_i > max{ -(beta_i+1)/q_i', -a_i - beta_i - 1 },
///   s_i - t_i > max{ (n+1+beta_i)/q_i', beta_i + a_i - c_i + n + 1 }.
WitnessFamily make_dual_family(int n, const MixedExponents& q,
                               const OperatorParams& params, double u, double eta);

/// The image of the direct family in closed form:
///   T f_{xi,eta} = C rho(z)^{a1} rho(w)^{a2} rho(xi)^{e1} rho(eta)^{e2}
///                  / ( rho(z,xi)^{c1} rho(w,eta)^{c2} ),
/// with C the product of the two slot identity constants.
struct ClosedFormImage {
    WeightedFunction fn;       // the full image, constants included
    double constant = 1.0;     // C
    RealPair slot_constants{1.0, 1.0};
    std::string describe() const;
};

ClosedFormImage closed_form_T_image(const WitnessFamily& family);

struct SweepPoint {
    double scale = 0.0;
    double ratio = 0.0;
    double slope_so_far = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double slope = 0.0;          // least-squares log-log slope
    double predicted_slope = 0.0;  // sum of (critical_c_i - c_i) by power counting
    bool divergent = false;
    std::string csv() const;     // header "scale,ratio,slope"
};

/// Norm-ratio sweep ||T f_{xi,eta}||_q,beta / ||f_{xi,eta}||_p,alpha over
/// anchors xi = eta = (0', t i).  Both norms follow the closed forms, so
/// the ratio is an exact power of t: t^{sum_i (critical_c_i - c_i)}.  At
/// criticality the slope vanishes; an off-critical c_i tilts it by the
/// offset, which is the measurable face of unboundedness (the blow-up
/// end is t -> 0+ for c above critical and t -> infinity below).
SweepResult blowup_sweep(int n, const MixedExponents& p, const MixedExponents& q,
                         const OperatorParams& params,
                         const std::vector<double>& scales,
                         const QuadratureConfig& cfg);

/// Smooth compact bump exp(1 - 1/(1 - |.|^2)) in a box around the two
/// slot centers, supported away from the boundary.
WeightedFunction make_bump(const TubePoint& center1, const TubePoint& center2,
                           double halfwidth);

/// Relative discrepancy between <Tf, g>_beta and <f, T*g>_alpha for
/// compactly supported separable bumps; 0 when both pairings vanish.
double duality_gap(const OperatorParams& params, const WeightedFunction& f,
                   const WeightedFunction& g, int n, const QuadratureConfig& cfg);

}  // namespace tubeops
