#include "puccilab/shooting.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "puccilab/norms.hpp"

namespace puccilab {

namespace {

struct Rhs {
    const EllipticityPair& e;
    int dim;
    double mu;

    // Weighted value Lambda x^+ - lambda x^-.
    double weighted(double x) const { return x > 0.0 ? e.Lambda * x : e.lambda * x; }

    // u'' resolved from the piecewise-linear inversion of the operator.
    double operator()(double r, double u, double du) const {
        const double rhs = -mu * u - (dim - 1) * weighted(du / r);
        return rhs >= 0.0 ? rhs / e.Lambda : rhs / e.lambda;
    }
};

struct State {
    double r, u, du;
};

State rk4_step(const Rhs& f, const State& s, double h) {
    const double k1u = s.du;
    const double k1v = f(s.r, s.u, s.du);
    const double k2u = s.du + 0.5 * h * k1v;
    const double k2v = f(s.r + 0.5 * h, s.u + 0.5 * h * k1u, s.du + 0.5 * h * k1v);
    const double k3u = s.du + 0.5 * h * k2v;
    const double k3v = f(s.r + 0.5 * h, s.u + 0.5 * h * k2u, s.du + 0.5 * h * k2v);
    const double k4u = s.du + h * k3v;
    const double k4v = f(s.r + h, s.u + h * k3u, s.du + h * k3v);
    return {s.r + h, s.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            s.du + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

State series_start(const EllipticityPair& e, int dim, double mu, double r0) {
    // All Hessian eigenvalues at the center equal u''(0) = -mu/(N lambda).
    const double c = mu / (dim * e.lambda);
    return {r0, 1.0 - 0.5 * c * r0 * r0, -c * r0};
}

void check_args(const EllipticityPair&, int dim, double mu, double r_max, double step) {
    if (dim < 2) throw std::invalid_argument("shoot: dim must be >= 2");
    if (!(mu > 0.0)) throw std::invalid_argument("shoot: mu must be positive");
    if (!(r_max > 0.0)) throw std::invalid_argument("shoot: r_max must be positive");
    if (!(step > 0.0) || step > r_max / 1e3)
        throw std::invalid_argument("shoot: step must be positive and at most r_max/1000");
}

// Core march; returns the first zero if one occurs before r_max.
std::optional<double> march(const Rhs& f, const EllipticityPair& e, int dim, double mu,
                            double r_max, double step, ShootingState* record) {
    State s = series_start(e, dim, mu, 1e-6 * r_max);
    if (record) record->trajectory.push_back({s.r, s.u, s.du});
    while (s.r < r_max) {
        const double h = std::min(step, r_max - s.r);
        const State next = rk4_step(f, s, h);
        if (record) record->trajectory.push_back({next.r, next.u, next.du});
        if (next.u <= 0.0) {
            // Bisect the step offset; a single RK4 step from the last
            // positive state evaluates u anywhere inside the step.
            double lo = 0.0, hi = h;
            while (hi - lo > 1e-12 * r_max) {
                const double m = 0.5 * (lo + hi);
                if (rk4_step(f, s, m).u > 0.0)
                    lo = m;
                else
                    hi = m;
            }
            return s.r + 0.5 * (lo + hi);
        }
        s = next;
    }
    return std::nullopt;
}

}  // namespace

ShootingState shoot(const EllipticityPair& e, int dim, double mu, double r_max, double step) {
    check_args(e, dim, mu, r_max, step);
    ShootingState state;
    state.mu = mu;
    const Rhs f{e, dim, mu};
    state.first_zero = march(f, e, dim, mu, r_max, step, &state);
    return state;
}

double richardson_check(const EllipticityPair& e, int dim, double mu, double r_max, double step) {
    check_args(e, dim, mu, r_max, step);
    const Rhs f{e, dim, mu};
    ShootingState full, half;
    march(f, e, dim, mu, r_max, step, &full);
    march(f, e, dim, mu, r_max, 0.5 * step, &half);
    double worst = 0.0;
    for (std::size_t i = 1; i < full.trajectory.size(); ++i) {
        const std::size_t j = 2 * i;
        if (j >= half.trajectory.size()) break;
        worst = std::max(worst, std::fabs(full.trajectory[i][1] - half.trajectory[j][1]));
    }
    return worst;
}

EigenResult principal_eigenvalue(const EllipticityPair& e, int dim, double radius, double tol) {
    if (!(radius > 0.0)) throw std::invalid_argument("principal_eigenvalue: radius must be positive");
    if (!(tol >= 1e-10)) throw std::invalid_argument("principal_eigenvalue: tol must be >= 1e-10");

    const double step = radius / 1e4;
    const double r_max = 3.0 * radius;
    int shots = 0;
    auto rho = [&](double mu) {
        ++shots;
        const Rhs f{e, dim, mu};
        const auto zero = march(f, e, dim, mu, r_max, step, nullptr);
        return zero ? *zero : std::numeric_limits<double>::infinity();
    };

    double lo = 1.0, hi = 1.0;
    int growth = 0;
    while (rho(hi) > radius) {
        hi *= 2.0;
        if (++growth > 60)
            throw std::runtime_error("principal_eigenvalue: bracket growth exceeded 2^60");
    }
    growth = 0;
    while (rho(lo) <= radius) {
        lo *= 0.5;
        if (++growth > 60)
            throw std::runtime_error("principal_eigenvalue: bracket shrink exceeded 2^-60");
    }

    while (hi - lo > tol * lo) {
        const double mid = 0.5 * (lo + hi);
        if (rho(mid) > radius)
            lo = mid;
        else
            hi = mid;
    }

    EigenResult result;
    result.mu1 = 0.5 * (lo + hi);
    result.radius = radius;
    const double final_rho = rho(result.mu1);
    result.achieved_tol = std::fabs(final_rho - radius) / radius;
    const DomainBall ball(dim, radius);
    result.empirical_C1_floor =
        1.0 / (result.mu1 * std::pow(ball.volume(), 1.0 / dim) * ball.diameter());
    result.shots = shots;
    return result;
}

EmpiricalBoundReport empirical_bound_report(const EigenResult& res, int dim, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("empirical_bound_report: p must be >= 1");
    const DomainBall ball(dim, res.radius);
    EmpiricalBoundReport report;
    report.p = p;
    report.upper_bound = res.mu1 * std::pow(ball.volume(), 1.0 / p);
    report.empirical_C1_floor = res.empirical_C1_floor;
    const double bound_n = res.mu1 * std::pow(ball.volume(), 1.0 / dim);
    report.identity_residual =
        std::fabs(report.empirical_C1_floor * ball.diameter() * bound_n - 1.0);
    if (p >= static_cast<double>(dim)) {
        const double lower =
            1.0 / (report.empirical_C1_floor * ball.diameter() *
                   std::pow(ball.volume(), 1.0 / dim - 1.0 / p));
        report.lower_p_at_floor = lower;
        report.consistent = lower <= report.upper_bound * (1.0 + 1e-12);
    }
    return report;
}

std::string trajectory_csv(const ShootingState& state) {
    std::ostringstream os;
    os << "r,u,du\n";
    for (const auto& row : state.trajectory)
        os << format_17g(row[0]) << ',' << format_17g(row[1]) << ',' << format_17g(row[2]) << '\n';
    return os.str();
}

}  // namespace puccilab
