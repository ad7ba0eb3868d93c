#include "tubeops/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace tubeops {

TubePoint::TubePoint(std::vector<double> x_, std::vector<double> y_)
    : dim(static_cast<int>(x_.size())), x(std::move(x_)), y(std::move(y_)) {
    if (dim < 1 || y.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("TubePoint: x and y must have equal positive length");
}

TubePoint TubePoint::half_plane(double x, double y) {
    return TubePoint({x}, {y});
}

TubePoint TubePoint::vertical(int dim, double t) {
    std::vector<double> x(dim, 0.0), y(dim, 0.0);
    y[dim - 1] = t;
    return TubePoint(std::move(x), std::move(y));
}

double rho(const TubePoint& z) {
    double s = 0.0;
    for (int k = 0; k + 1 < z.dim; ++k) s += z.y[k] * z.y[k];
    return z.y[z.dim - 1] - s;
}

bool is_interior(const TubePoint& z) {
    const double yn = z.y[z.dim - 1];
    return rho(z) > 1e-14 * (1.0 + std::abs(yn));
}

void require_interior(const TubePoint& z) {
    if (!is_interior(z))
        throw std::domain_error("TubePoint: not in the interior of the tube domain (rho <= 0)");
}

Complex rho_pair(const TubePoint& z, const TubePoint& u) {
    if (z.dim != u.dim)
        throw std::invalid_argument("rho_pair: dimension mismatch");
    Complex sq{0.0, 0.0};
    for (int k = 0; k + 1 < z.dim; ++k) {
        // z_k - conj(u_k)
        const Complex d{z.x[k] - u.x[k], z.y[k] + u.y[k]};
        sq += d * d;
    }
    const int n = z.dim;
    const Complex dn{z.x[n - 1] - u.x[n - 1], z.y[n - 1] + u.y[n - 1]};
    return 0.25 * (sq - Complex{0.0, 2.0} * dn);
}

Complex complex_power(Complex v, double e) {
    if (v == Complex{0.0, 0.0})
        throw std::domain_error("complex_power: zero base");
    if (v.imag() == 0.0 && v.real() > 0.0)
        return {std::pow(v.real(), e), 0.0};
    return std::exp(e * std::log(v));  // principal branch
}

std::vector<TubePoint> sample_points(int dim, int count, std::uint64_t seed,
                                     double scale) {
    if (dim < 1) throw std::invalid_argument("sample_points: dim >= 1 required");
    if (count < 1) throw std::invalid_argument("sample_points: count >= 1 required");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<TubePoint> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        // Strata: near-boundary (rho small), bulk, far-field.
        const int stratum = k % 3;
        double h;  // target height rho
        switch (stratum) {
            case 0: h = scale * std::pow(10.0, -4.0 * unit(rng)); break;
            case 1: h = scale * (0.2 + 2.0 * unit(rng)); break;
            default: h = scale * std::pow(10.0, 1.0 + 2.0 * unit(rng)); break;
        }
        double xspread = (stratum == 2) ? 10.0 * scale : 2.0 * scale;
        std::vector<double> x(dim), y(dim);
        for (int j = 0; j < dim; ++j) x[j] = xspread * (2.0 * unit(rng) - 1.0);
        double s = 0.0;
        for (int j = 0; j + 1 < dim; ++j) {
            // |y'| < sqrt(y_n): pick y' first in a ball of radius sqrt(h),
            // then set y_n = h + |y'|^2 so rho == h exactly.
            y[j] = std::sqrt(h) * (2.0 * unit(rng) - 1.0) * 0.7;
            s += y[j] * y[j];
        }
        y[dim - 1] = h + s;
        pts.emplace_back(std::move(x), std::move(y));
    }
    return pts;
}

}  // namespace tubeops
