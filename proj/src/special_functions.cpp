#include "tubeops/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace tubeops {

namespace {

// Lanczos coefficients, g = 7, 9 terms (Godfrey's table).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_log_gamma(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(sum);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");
    if (x < 0.5) {
        // Gamma(x) = Gamma(x+1)/x
        return log_gamma(x + 1.0) - std::log(x);
    }
    return lanczos_log_gamma(x);
}

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn: argument must be positive");
    return std::exp(log_gamma(x));
}

bool c1_valid(int n, double r, double s, double t) {
    return r > 0.0 && s > 0.0 && t > -1.0 && r + s - t > n + 1.0;
}

bool second_identity_valid(int n, double s, double t) {
    return t > -1.0 && s - t > n + 1.0;
}

double c1_constant(int n, double r, double s, double t) {
    if (!c1_valid(n, r, s, t))
        throw DivergentParameterError(
            "c1_constant: need r,s > 0, t > -1, r+s-t > n+1 (integral is infinite)");
    const double logv = (n + 1) * std::numbers::ln2 +
                        n * std::log(std::numbers::pi) + log_gamma(1.0 + t) +
                        log_gamma(r + s - t - n - 1.0) - log_gamma(r) - log_gamma(s);
    return std::exp(logv);
}

}  // namespace tubeops
