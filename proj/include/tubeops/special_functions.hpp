#pragma once

#include <stdexcept>

namespace tubeops {

/// Raised when a closed-form constant is requested outside its validity
/// range (the corresponding integral is infinite).
struct DivergentParameterError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Euler Gamma for x > 0, Lanczos approximation (g = 7, 9 coefficients).
double gamma_fn(double x);

/// log Gamma for x > 0.
double log_gamma(double x);

/// The constant of the two-kernel integral identity,
///   C1(n,r,s,t) = 2^{n+1} pi^n Gamma(1+t) Gamma(r+s-t-n-1) / (Gamma(r) Gamma(s)),
/// valid for r,s > 0, t > -1, r+s-t > n+1.  Evaluated in log space.
/// Throws DivergentParameterError outside the validity range.
double c1_constant(int n, double r, double s, double t);

/// Validity test for c1_constant without throwing.
bool c1_valid(int n, double r, double s, double t);

/// Validity range of the single-kernel identity
///   integral of rho(w)^t / |rho(z,w)|^s over the tube = const / rho(z)^{s-t-n-1}:
/// t > -1 and s - t > n + 1.  The constant has no closed form used here;
/// it is determined numerically by the integration module.
bool second_identity_valid(int n, double s, double t);

}  // namespace tubeops
