#include "puccilab/quadrature.hpp"

#include <array>
#include <cmath>

namespace puccilab {

namespace {

struct GaussRule {
    std::array<double, 15> x;  // nodes on [-1, 1]
    std::array<double, 15> w;
};

// Newton iteration on the degree-15 Legendre polynomial; converges to the
// last bit in a handful of steps.
GaussRule make_rule15() {
    GaussRule rule{};
    const int n = 15;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
        double z1 = 0.0, pp = 0.0;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::fabs(z - z1) > 1e-15);
        rule.x[static_cast<std::size_t>(i)] = -z;
        rule.x[static_cast<std::size_t>(n - 1 - i)] = z;
        rule.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[static_cast<std::size_t>(n - 1 - i)] = rule.w[static_cast<std::size_t>(i)];
    }
    return rule;
}

const GaussRule& rule15() {
    static const GaussRule rule = make_rule15();
    return rule;
}

struct Accumulator {
    double sum = 0.0;
    double err = 0.0;
};

void recurse(const std::function<double(double)>& f, double a, double b, double tol_per_length,
             double abs_floor, int depth, Accumulator& acc) {
    const double m = 0.5 * (a + b);
    const double whole = gauss15(f, a, b);
    const double halves = gauss15(f, a, m) + gauss15(f, m, b);
    const double err = std::fabs(whole - halves);
    if (err <= tol_per_length * (b - a) || err <= abs_floor) {
        acc.sum += halves;
        acc.err += err;
        return;
    }
    if (depth >= 52)
        throw QuadratureError("integrate_adaptive: panel refinement stalled (singular integrand?)",
                              m);
    recurse(f, a, m, tol_per_length, abs_floor, depth + 1, acc);
    recurse(f, m, b, tol_per_length, abs_floor, depth + 1, acc);
}

}  // namespace

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& rule = rule15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 15; ++i)
        s += rule.w[static_cast<std::size_t>(i)] * f(mid + half * rule.x[static_cast<std::size_t>(i)]);
    return s * half;
}

QuadratureOutcome integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     double rel_target, double abs_floor) {
    if (!(b > a)) return {0.0, 0.0};
    const double rough = std::fabs(gauss15(f, a, b));
    const double tol = std::max(abs_floor, rel_target * rough);
    Accumulator acc;
    recurse(f, a, b, tol / (b - a), abs_floor, 0, acc);
    return {acc.sum, acc.err};
}

}  // namespace puccilab
