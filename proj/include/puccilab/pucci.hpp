#pragma once

#include <span>

#include "puccilab/ellipticity.hpp"
#include "puccilab/linalg.hpp"

namespace puccilab {

enum class OpSign { Plus, Minus };

// Point data of a radial profile at radius r > 0; the Hessian of
// x -> u(|x|) there has eigenvalues du/r (x N-1) and d2u (x 1).
struct RadialJet {
    double r;
    double u;
    double du;
    double d2u;
    int dim;
};

// Extremal operator on a spectrum: the maximal (Plus) variant weights
// positive eigenvalues by Lambda and negative ones by lambda; Minus swaps
// the weights. Zero eigenvalues contribute nothing to either sum.
double pucci(const EllipticityPair& e, const Spectrum& s, OpSign sign);

Spectrum radial_hessian_spectrum(const RadialJet& j);

// Reconstructs D^2 u = (du/r)(I - x x^T) + d2u x x^T for a unit direction x;
// cross-check oracle for the radial spectrum shortcut.
SymMatrix hessian_from_jet(const RadialJet& j, std::span<const double> direction);

double pucci_radial(const EllipticityPair& e, const RadialJet& j, OpSign sign);

}  // namespace puccilab
