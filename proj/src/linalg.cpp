#include "puccilab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace puccilab {

namespace {

void check_dim(int dim) {
    if (dim < 2) throw std::invalid_argument("SymMatrix: dim must be >= 2");
    if (dim > 16) throw std::invalid_argument("SymMatrix: dim capped at 16");
}

}  // namespace

SymMatrix::SymMatrix(int dim, std::span<const double> entries) : SymMatrix(dim) {
    check_dim(dim);
    if (entries.size() != a_.size()) throw std::invalid_argument("SymMatrix: entry count mismatch");
    std::copy(entries.begin(), entries.end(), a_.begin());
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                throw std::invalid_argument("SymMatrix: entries not symmetric");
}

SymMatrix SymMatrix::symmetrized(int dim, std::span<const double> entries) {
    check_dim(dim);
    SymMatrix m(dim);
    if (entries.size() != m.a_.size()) throw std::invalid_argument("SymMatrix: entry count mismatch");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(i, j) = 0.5 * (entries[static_cast<std::size_t>(i) * dim + j] +
                             entries[static_cast<std::size_t>(j) * dim + i]);
    return m;
}

SymMatrix SymMatrix::zero(int dim) {
    check_dim(dim);
    return SymMatrix(dim);
}

SymMatrix SymMatrix::identity(int dim) {
    check_dim(dim);
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    check_dim(static_cast<int>(diag.size()));
    SymMatrix m(static_cast<int>(diag.size()));
    for (int i = 0; i < m.dim_; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
    return m;
}

SymMatrix SymMatrix::negated() const {
    SymMatrix m(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
}

SymMatrix SymMatrix::scaled(double t) const {
    SymMatrix m(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = t * a_[i];
    return m;
}

SymMatrix SymMatrix::plus(const SymMatrix& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("SymMatrix: dim mismatch");
    SymMatrix m(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + other.a_[i];
    return m;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Spectrum sym_eigenvalues(const SymMatrix& m) {
    const int n = m.dim();
    std::vector<double> a(m.data().begin(), m.data().end());
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::fabs(v));
    const double tol = 1e-13 * (1.0 + scale);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = at(p, p), aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p), arq = at(r, q);
                    at(r, p) = at(p, r) = arp - s * (arq + tau * arp);
                    at(r, q) = at(q, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }

    Spectrum spec;
    spec.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) spec.values[static_cast<std::size_t>(i)] = at(i, i);
    std::sort(spec.values.begin(), spec.values.end());
    return spec;
}

}  // namespace puccilab
