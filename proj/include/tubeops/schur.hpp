#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "tubeops/classifier.hpp"
#include "tubeops/integration.hpp"
#include "tubeops/operators.hpp"

namespace tubeops {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    bool contains_strictly(double x) const { return lo < x && x < hi; }
};

class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The feasible (r_i, s_i) region per slot.  The defining inequalities
/// are two transversal strips in the (r_i, s_i) plane; their
/// intersection is an open parallelogram.  The reported intervals are
/// its axis projections and the canonical point is the solution of the
/// two strip-midline equations (the center of the parallelogram).
struct FeasibilityResult {
    bool feasible = false;
    std::vector<std::string> failures;  // named conditions that emptied the region
    std::array<Interval, 2> r_interval{};
    std::array<Interval, 2> s_interval{};
    RealPair r_center{0.0, 0.0};
    RealPair s_center{0.0, 0.0};
};

FeasibilityResult feasibility_intervals(int n, const MixedExponents& p,
                                        const MixedExponents& q,
                                        const OperatorParams& params);

/// The sufficiency data: splitting exponents (gamma_i, delta_i) with
/// gamma_i + delta_i = 1, auxiliary powers h1 = rho^{s1} (x) rho^{s2},
/// h2 = rho^{r1} (x) rho^{r2}, and the slot kernels
/// K_i(z,u) = rho(u)^{b_i - alpha_i} rho(z)^{a_i} / |rho(z,u)|^{c_i}.
struct SchurCertificate {
    std::string regime;  // theorem id of the regime the certificate serves
    int n = 1;
    MixedExponents p, q;
    OperatorParams params;
    RealPair tau{0.0, 0.0};  // tau_i = c_i - a_i - b_i + alpha_i
    RealPair r{0.0, 0.0};
    RealPair s{0.0, 0.0};
    RealPair gamma{0.0, 0.0};
    RealPair delta{0.0, 0.0};
    std::array<Interval, 2> r_interval{};
    std::array<Interval, 2> s_interval{};
    RealPair margins{0.0, 0.0};  // min normalized slack over the slot's conditions

    std::string to_json() const;
};

/// Normalized slack of the strip conditions at an arbitrary point,
/// 0 on the boundary and 1/2 at the canonical center.
RealPair schur_margins(int n, const MixedExponents& p, const MixedExponents& q,
                       const OperatorParams& params, RealPair r, RealPair s);

/// Builds the certificate at the canonical point.  Throws
/// InfeasibleError when the region is empty, which happens exactly when
/// classify does not return bounded in the finite-target regimes.
SchurCertificate build_certificate(int n, const MixedExponents& p,
                                   const MixedExponents& q,
                                   const OperatorParams& params);

struct RatioCheck {
    std::string name;
    std::vector<double> ratios;
    double spread = 0.0;  // (max - min) / mean
    bool converged = true;
};

struct SchurVerification {
    std::vector<RatioCheck> checks;
    double max_spread = 0.0;
    bool converged = true;
    bool passed(double tol) const { return converged && max_spread < tol; }
};

/// Checks the Schur hypotheses numerically.  The proof evaluates each
/// left side in closed form as a constant times the matching power of
/// h1 or h2; the constants are not pinned, so the testable statement is
/// constancy of LHS / h^power across sample points.  Integral slots are
/// evaluated by quadrature; ess-sup slots (p_i = 1) by maxima over a
/// grid that moves covariantly with the sample point, which makes the
/// ratio exactly invariant under the domain's dilations.
SchurVerification verify_schur_conditions(const SchurCertificate& cert,
                                          int sample_count,
                                          const QuadratureConfig& cfg);

struct InfinityReport {
    std::vector<double> slice_norms;  // ||K1(z,.)||_{p1'} * ||K2(w,.)||_{p2'}
    double spread = 0.0;
    bool divergent = false;
    bool converged = true;
};

/// The sup-target sufficiency check: the mixed p'-norm of the kernel
/// slice at (z, w) is constant in (z, w) exactly when the infinite-target
/// regime conditions hold; divergence of the slot integrals is flagged.
InfinityReport verify_infinity_condition(int n, const MixedExponents& p,
                                         const OperatorParams& params,
                                         int sample_count,
                                         const QuadratureConfig& cfg);

}  // namespace tubeops
