#pragma once

#include <cmath>
#include <stdexcept>

namespace puccilab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Gamma at half-integer arguments, exact up to one rounding of sqrt(pi):
// gamma(n) = (n-1)!, gamma(n + 1/2) = sqrt(pi) * (2n-1)!! / 2^n.
// Argument is passed doubled so the half-integer grid is exact.
inline double gamma_half_integer(int twice_x) {
    if (twice_x < 1) throw std::invalid_argument("gamma_half_integer: argument must be >= 1/2");
    if (twice_x % 2 == 0) {
        double f = 1.0;
        for (int j = 2; j < twice_x / 2; ++j) f *= static_cast<double>(j);
        return f;
    }
    const int n = (twice_x - 1) / 2;  // x = n + 1/2
    double f = std::sqrt(kPi);
    for (int j = 1; j <= n; ++j) f *= (2.0 * j - 1.0) / 2.0;
    return f;
}

// Surface measure of the unit sphere in R^N: 2 pi^{N/2} / Gamma(N/2).
inline double unit_sphere_area(int dim) {
    if (dim < 1) throw std::invalid_argument("unit_sphere_area: dim must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * dim) / gamma_half_integer(dim);
}

// Ball domain; dx = omega r^{N-1} dr with omega the unit-sphere surface measure,
// so the volume carries an extra 1/N shell factor.
struct DomainBall {
    int dim;
    double radius;

    DomainBall(int n, double r) : dim(n), radius(r) {
        if (n < 2) throw std::invalid_argument("DomainBall: dim must be >= 2");
        if (!(r > 0.0)) throw std::invalid_argument("DomainBall: radius must be positive");
    }

    double diameter() const { return 2.0 * radius; }
    double sphere_area() const { return unit_sphere_area(dim); }
    double volume() const { return sphere_area() / dim * std::pow(radius, dim); }
};

}  // namespace puccilab
