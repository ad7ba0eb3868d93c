#pragma once

#include <array>
#include <utility>

#include "tubeops/integration.hpp"

namespace tubeops {

using RealPair = std::array<double, 2>;

/// The parameter triple (a, b, c) of the two-slot kernel, together with
/// the source weights alpha and target weights beta.
struct OperatorParams {
    RealPair a{0.0, 0.0};
    RealPair b{0.0, 0.0};
    RealPair c{0.0, 0.0};
    RealPair alpha{0.0, 0.0};
    RealPair beta{0.0, 0.0};
    /// Permits alpha_i <= -1 for classification queries only; quadrature
    /// against such weights is rejected.
    bool formal = false;

    void require_admissible_source() const;
    void require_quadrature_ok() const;
};

/// T f(z,w) = rho(z)^{a1} rho(w)^{a2}
///            . integral integral rho(u)^{b1} rho(eta)^{b2} f(u,eta)
///              / ( rho(z,u)^{c1} rho(w,eta)^{c2} ) dV dV.
/// Separable f is evaluated as the product of two single-slot integrals.
IntegralResult apply_T(const OperatorParams& params, const WeightedFunction& f,
                       const TubePoint& z, const TubePoint& w, int n,
                       const QuadratureConfig& cfg);

/// Same kernel with |rho(.,.)| in place of the analytic power; real-valued
/// for real f.
IntegralResult apply_S(const OperatorParams& params, const WeightedFunction& f,
                       const TubePoint& z, const TubePoint& w, int n,
                       const QuadratureConfig& cfg);

/// The adjoint with respect to the weighted pairings:
/// T* f(z,w) = rho(z)^{b1-alpha1} rho(w)^{b2-alpha2}
///             . integral integral rho(u)^{beta1+a1} rho(eta)^{beta2+a2} f
///               / ( rho(z,u)^{c1} rho(w,eta)^{c2} ) dV dV.
IntegralResult apply_T_adjoint(const OperatorParams& params, const WeightedFunction& f,
                               const TubePoint& z, const TubePoint& w, int n,
                               const QuadratureConfig& cfg);

/// Bergman-type projection P_gamma = T_{0, gamma, n+1+gamma}.
OperatorParams make_projection(int n, RealPair gamma);
/// Berezin-type transform B_gamma = S_{n+1+gamma, gamma, 2(n+1+gamma)}.
OperatorParams make_berezin(int n, RealPair gamma);
/// T_c^gamma = T_{0, gamma, c} acting on the gamma-weighted source space.
OperatorParams make_Tc(RealPair c, RealPair gamma);

}  // namespace tubeops
