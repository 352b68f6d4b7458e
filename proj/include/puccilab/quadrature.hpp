#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace puccilab {

struct QuadratureOutcome {
    double value = 0.0;
    double error_estimate = 0.0;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double radius)
        : std::runtime_error(what), radius_(radius) {}
    double radius() const { return radius_; }

  private:
    double radius_;
};

// Adaptive 15-point Gauss-Legendre with recursive panel bisection. The
// relative target is measured against a first whole-interval estimate;
// panels that keep failing down to depth 52 signal a non-integrable
// singularity and raise QuadratureError at the offending radius.
QuadratureOutcome integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     double rel_target = 1e-10, double abs_floor = 1e-14);

// Single 15-point panel, exposed for the benchmark and tests.
double gauss15(const std::function<double(double)>& f, double a, double b);

}  // namespace puccilab
