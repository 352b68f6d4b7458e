#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "puccilab/domain.hpp"
#include "puccilab/pucci.hpp"

namespace puccilab {

struct ShootingState {
    double mu = 0.0;
    std::vector<std::array<double, 3>> trajectory;  // (r, u, du)
    std::optional<double> first_zero;
};

// Integrates the radial maximal-operator eigenvalue ODE
//   Lambda (u'')^+ - lambda (u'')^- = -mu u - (N-1) [Lambda (u'/r)^+ - lambda (u'/r)^-]
// by classical RK4 from the regular-center expansion u = 1 - mu r^2 / (2 N lambda),
// locating the first zero of u by in-step bisection.
ShootingState shoot(const EllipticityPair& e, int dim, double mu, double r_max, double step);

// Max deviation of u between the full-step and half-step trajectories at the
// full-step radii.
double richardson_check(const EllipticityPair& e, int dim, double mu, double r_max, double step);

struct EigenResult {
    double mu1 = 0.0;
    double radius = 0.0;
    double achieved_tol = 0.0;      // |rho(mu1) - R| / R on a final re-shoot
    double empirical_C1_floor = 0.0;
    int shots = 0;
};

// Principal eigenvalue in the shooting sense: the mu whose regular radial
// solution first vanishes exactly at the ball boundary. Bisection over a
// doubling-grown bracket, relative width `tol`.
EigenResult principal_eigenvalue(const EllipticityPair& e, int dim, double radius, double tol);

struct EmpiricalBoundReport {
    double p = 0.0;
    double upper_bound = 0.0;          // mu1 |B_R|^{1/p}
    double empirical_C1_floor = 0.0;   // smallest C1 consistent with the L^N lower bound
    double identity_residual = 0.0;    // |C1_floor * diam * (mu1 |B_R|^{1/N}) - 1|
    std::optional<double> lower_p_at_floor;
    bool consistent = true;
};

EmpiricalBoundReport empirical_bound_report(const EigenResult& res, int dim, double p);

std::string trajectory_csv(const ShootingState& state);

}  // namespace puccilab
