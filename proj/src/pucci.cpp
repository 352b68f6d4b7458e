#include "puccilab/pucci.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace puccilab {

double pucci(const EllipticityPair& e, const Spectrum& s, OpSign sign) {
    if (s.values.empty()) throw std::invalid_argument("pucci: empty spectrum");
    const double w_pos = sign == OpSign::Plus ? e.Lambda : e.lambda;
    const double w_neg = sign == OpSign::Plus ? e.lambda : e.Lambda;
    // Single ordered pass so the lambda == Lambda case reduces to the plain
    // sequential sum of the spectrum, bit for bit.
    double acc = 0.0;
    for (double v : s.values) {
        if (v > 0.0)
            acc += w_pos * v;
        else if (v < 0.0)
            acc += w_neg * v;
    }
    return acc;
}

Spectrum radial_hessian_spectrum(const RadialJet& j) {
    if (!(j.r > 0.0)) throw std::invalid_argument("radial_hessian_spectrum: r must be positive");
    if (j.dim < 2) throw std::invalid_argument("radial_hessian_spectrum: dim must be >= 2");
    const double tangential = j.du / j.r;
    Spectrum s;
    s.values.assign(static_cast<std::size_t>(j.dim), tangential);
    if (j.d2u < tangential)
        s.values.front() = j.d2u;
    else
        s.values.back() = j.d2u;
    return s;
}

SymMatrix hessian_from_jet(const RadialJet& j, std::span<const double> direction) {
    if (!(j.r > 0.0)) throw std::invalid_argument("hessian_from_jet: r must be positive");
    if (static_cast<int>(direction.size()) != j.dim)
        throw std::invalid_argument("hessian_from_jet: direction size mismatch");
    double norm2 = 0.0;
    for (double x : direction) norm2 += x * x;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument("hessian_from_jet: direction must be a unit vector");

    const double tangential = j.du / j.r;
    std::vector<double> entries(static_cast<std::size_t>(j.dim) * j.dim, 0.0);
    for (int i = 0; i < j.dim; ++i) {
        for (int k = 0; k < j.dim; ++k) {
            const double proj = direction[static_cast<std::size_t>(i)] * direction[static_cast<std::size_t>(k)];
            double v = (j.d2u - tangential) * proj;
            if (i == k) v += tangential;
            entries[static_cast<std::size_t>(i) * j.dim + k] = v;
        }
    }
    return SymMatrix::symmetrized(j.dim, entries);
}

double pucci_radial(const EllipticityPair& e, const RadialJet& j, OpSign sign) {
    return pucci(e, radial_hessian_spectrum(j), sign);
}

}  // namespace puccilab
