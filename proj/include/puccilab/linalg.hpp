#pragma once

#include <span>
#include <vector>

namespace puccilab {

// Dense symmetric matrix, dimensions 2..16. Entries are stored row-major and
// must be exactly symmetric; use symmetrized() to average asymmetric input.
class SymMatrix {
  public:
    SymMatrix(int dim, std::span<const double> entries);

    static SymMatrix symmetrized(int dim, std::span<const double> entries);
    static SymMatrix zero(int dim);
    static SymMatrix identity(int dim);
    static SymMatrix diagonal(std::span<const double> diag);

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    std::span<const double> data() const { return a_; }

    SymMatrix negated() const;
    SymMatrix scaled(double t) const;
    SymMatrix plus(const SymMatrix& other) const;
    double trace() const;

  private:
    SymMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {}
    int dim_;
    std::vector<double> a_;
};

// Eigenvalues sorted nondecreasing; multiplicity by repetition.
struct Spectrum {
    std::vector<double> values;
};

// Cyclic Jacobi rotations, absolute off-diagonal tolerance 1e-13 * scale.
Spectrum sym_eigenvalues(const SymMatrix& m);

}  // namespace puccilab
