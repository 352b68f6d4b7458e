#pragma once

#include <stdexcept>

namespace puccilab {

// Ellipticity constants 0 < lambda <= Lambda. Equality is the degenerate
// Laplacian regime: admitted only when oracle_mode is set, because it is the
// one case with classical closed-form cross-checks.
struct EllipticityPair {
    double lambda;
    double Lambda;
    bool oracle_mode = false;

    static EllipticityPair strict(double lambda, double Lambda) {
        check(lambda, Lambda);
        if (lambda == Lambda)
            throw std::invalid_argument("EllipticityPair: lambda == Lambda requires oracle mode");
        return {lambda, Lambda, false};
    }

    static EllipticityPair oracle(double lambda, double Lambda) {
        check(lambda, Lambda);
        return {lambda, Lambda, true};
    }

    // Radial harmonic exponents: r^{2-alpha} (resp. r^{2-beta}) is annihilated
    // by the maximal operator on decreasing-convex (resp. increasing-concave)
    // profiles.
    double alpha(int dim) const { return lambda / Lambda * (dim - 1) + 1.0; }
    double beta(int dim) const { return Lambda / lambda * (dim - 1) + 1.0; }

  private:
    static void check(double lambda, double Lambda) {
        if (!(lambda > 0.0)) throw std::invalid_argument("EllipticityPair: lambda must be positive");
        if (!(Lambda >= lambda)) throw std::invalid_argument("EllipticityPair: need lambda <= Lambda");
    }
};

}  // namespace puccilab
