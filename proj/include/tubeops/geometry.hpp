#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace tubeops {

using Complex = std::complex<double>;

/// A point z = x + iy of the tube domain over the paraboloid
/// B = { y : y_1^2 + ... + y_{n-1}^2 < y_n }.  At n = 1 the domain is the
/// upper half-plane.  Coordinates are kept real so the membership
/// constraint stays explicit.
struct TubePoint {
    int dim = 1;
    std::vector<double> x;
    std::vector<double> y;

    TubePoint() = default;
    TubePoint(std::vector<double> x_, std::vector<double> y_);

    /// Upper half-plane shorthand (n = 1).
    static TubePoint half_plane(double x, double y);
    /// The base point (0', t) on the vertical ray; t > 0.
    static TubePoint vertical(int dim, double t);
};

/// y_n - |y'|^2.  Strictly positive on the interior.
double rho(const TubePoint& z);

/// True when z lies strictly inside the domain (with a small relative
/// margin so quadrature nodes never sit on the degenerate boundary).
bool is_interior(const TubePoint& z);

/// Throws std::domain_error when z is not interior.
void require_interior(const TubePoint& z);

/// The sesquianalytic polarization
///   rho(z,u) = (1/4) ( (z' - conj(u'))^2 - 2i (z_n - conj(u_n)) ),
/// where the square is the complex bilinear square over the first n-1
/// coordinates.  Satisfies rho_pair(z,z) = rho(z) and
/// rho_pair(z,u) = conj(rho_pair(u,z)).
Complex rho_pair(const TubePoint& z, const TubePoint& u);

/// Principal-branch power v^e, arg v in (-pi, pi].  Throws on v == 0.
/// For interior pairs Re rho_pair > 0, so kernel powers never cross the
/// branch cut; this is asserted at the call sites that rely on it.
Complex complex_power(Complex v, double e);

/// Deterministic interior sample covering near-boundary, bulk and
/// far-field strata.  Identical (n, count, seed, scale) always produces
/// the identical list.
std::vector<TubePoint> sample_points(int dim, int count, std::uint64_t seed,
                                     double scale = 1.0);

}  // namespace tubeops
