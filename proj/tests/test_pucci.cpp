#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "puccilab/pucci.hpp"
#include "puccilab/rng.hpp"

using namespace puccilab;

namespace {

SymMatrix random_symmetric(Rng& rng, int n, double scale = 1.0) {
    std::vector<double> entries(static_cast<std::size_t>(n) * n);
    for (auto& v : entries) v = rng.uniform(-scale, scale);
    return SymMatrix::symmetrized(n, entries);
}

RadialJet random_jet(Rng& rng, int dim) {
    return RadialJet{rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                     rng.uniform(-2.0, 2.0), dim};
}

std::vector<double> random_direction(Rng& rng, int dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : v) {
            x = rng.normal();
            norm += x * x;
        }
    } while (norm < 1e-8);
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
}

// Independent eigenvalue oracle: det(A - tI) by Gaussian elimination, roots
// bracketed by a Gershgorin scan and polished by bisection.
double char_poly(const SymMatrix& m, double t) {
    const int n = m.dim();
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i) * n + j] = m(i, j) - (i == j ? t : 0.0);
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(a[static_cast<std::size_t>(row) * n + col]) >
                std::fabs(a[static_cast<std::size_t>(pivot) * n + col]))
                pivot = row;
        if (a[static_cast<std::size_t>(pivot) * n + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * n + j],
                          a[static_cast<std::size_t>(col) * n + j]);
            det = -det;
        }
        const double d = a[static_cast<std::size_t>(col) * n + col];
        det *= d;
        for (int row = col + 1; row < n; ++row) {
            const double f = a[static_cast<std::size_t>(row) * n + col] / d;
            for (int j = col; j < n; ++j)
                a[static_cast<std::size_t>(row) * n + j] -= f * a[static_cast<std::size_t>(col) * n + j];
        }
    }
    return det;
}

std::vector<double> eigenvalues_by_bisection(const SymMatrix& m) {
    const int n = m.dim();
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        double radius = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) radius += std::fabs(m(i, j));
        lo = std::min(lo, m(i, i) - radius);
        hi = std::max(hi, m(i, i) + radius);
    }
    lo -= 1e-6;
    hi += 1e-6;

    const int scan = 20000;
    std::vector<double> roots;
    double prev_t = lo, prev_v = char_poly(m, lo);
    for (int s = 1; s <= scan; ++s) {
        const double t = lo + (hi - lo) * s / scan;
        const double v = char_poly(m, t);
        if (prev_v == 0.0) {
            roots.push_back(prev_t);
        } else if (v != 0.0 && (v > 0.0) != (prev_v > 0.0)) {
            double a = prev_t, b = t, va = prev_v;
            for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::fabs(b)); ++it) {
                const double mid = 0.5 * (a + b);
                const double vm = char_poly(m, mid);
                if (vm == 0.0 || (vm > 0.0) == (va > 0.0)) {
                    a = mid;
                    va = vm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_t = t;
        prev_v = v;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace

TEST_CASE("eigenvalues: identity and diagonal") {
    const Spectrum id3 = sym_eigenvalues(SymMatrix::identity(3));
    REQUIRE(id3.values.size() == 3);
    for (double v : id3.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    const double diag_entries[] = {3.0, -2.0};
    const Spectrum d = sym_eigenvalues(SymMatrix::diagonal(diag_entries));
    CHECK(d.values[0] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(d.values[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("eigenvalues: characteristic-polynomial bisection oracle, 4x4") {
    Rng rng(20240401);
    for (int rep = 0; rep < 20; ++rep) {
        const SymMatrix m = random_symmetric(rng, 4);
        const Spectrum jac = sym_eigenvalues(m);
        const std::vector<double> oracle = eigenvalues_by_bisection(m);
        REQUIRE(oracle.size() == 4);
        for (int i = 0; i < 4; ++i)
            CHECK(std::fabs(jac.values[static_cast<std::size_t>(i)] -
                            oracle[static_cast<std::size_t>(i)]) <= 1e-10);
    }
}

TEST_CASE("eigenvalues: rejects bad input") {
    CHECK_THROWS_AS(SymMatrix::identity(1), std::invalid_argument);
    CHECK_THROWS_AS(SymMatrix::identity(17), std::invalid_argument);
    const double asym[] = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(SymMatrix(2, asym), std::invalid_argument);
    CHECK_NOTHROW(SymMatrix::symmetrized(2, asym));
}

TEST_CASE("pucci: direct evaluation examples") {
    const EllipticityPair e = EllipticityPair::strict(1.0, 2.0);
    Spectrum s;
    s.values = {-1.0, 1.0};
    CHECK(pucci(e, s, OpSign::Plus) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pucci(e, s, OpSign::Minus) == doctest::Approx(-1.0).epsilon(1e-15));

    Spectrum zero;
    zero.values = {0.0, 0.0, 0.0};
    CHECK(pucci(e, zero, OpSign::Plus) == 0.0);
    CHECK(pucci(e, zero, OpSign::Minus) == 0.0);

    const EllipticityPair lap = EllipticityPair::oracle(1.0, 1.0);
    Spectrum abc;
    abc.values = {-0.25, 0.5, 2.0};
    const double trace = std::accumulate(abc.values.begin(), abc.values.end(), 0.0);
    CHECK(pucci(lap, abc, OpSign::Plus) == trace);
    CHECK(pucci(lap, abc, OpSign::Minus) == trace);
}

TEST_CASE("ellipticity exponents: alpha >= 1 and beta >= alpha") {
    Rng rng(55);
    for (int rep = 0; rep < 100; ++rep) {
        const double lambda = rng.uniform(0.1, 2.0);
        const double Lambda = lambda + rng.uniform(0.0, 3.0);
        const EllipticityPair e = Lambda == lambda ? EllipticityPair::oracle(lambda, Lambda)
                                                   : EllipticityPair::strict(lambda, Lambda);
        for (int dim = 2; dim <= 6; ++dim) {
            CHECK(e.alpha(dim) >= 1.0);
            CHECK(e.beta(dim) >= e.alpha(dim));
            if (lambda == Lambda) CHECK(e.alpha(dim) == e.beta(dim));
        }
    }
    const EllipticityPair lap = EllipticityPair::oracle(1.5, 1.5);
    CHECK(lap.alpha(4) == lap.beta(4));
}

TEST_CASE("pucci: strict pair rejects lambda == Lambda outside oracle mode") {
    CHECK_THROWS_AS(EllipticityPair::strict(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(EllipticityPair::strict(-1.0, 2.0), std::invalid_argument);
    CHECK_NOTHROW(EllipticityPair::oracle(1.0, 1.0));
}

TEST_CASE("pucci: duality, ordering, homogeneity, monotonicity") {
    const EllipticityPair e = EllipticityPair::strict(0.7, 2.3);
    Rng rng(99);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = static_cast<int>(rng.uniform_int(2, 6));
        const SymMatrix m = random_symmetric(rng, n);
        const Spectrum s = sym_eigenvalues(m);
        const Spectrum s_neg = sym_eigenvalues(m.negated());

        CHECK(std::fabs(pucci(e, s, OpSign::Minus) + pucci(e, s_neg, OpSign::Plus)) <= 1e-12);
        CHECK(pucci(e, s, OpSign::Minus) <= pucci(e, s, OpSign::Plus) + 1e-12);

        const double t = rng.uniform(0.0, 3.0);
        Spectrum ts;
        for (double v : s.values) ts.values.push_back(t * v);
        std::sort(ts.values.begin(), ts.values.end());
        CHECK(std::fabs(pucci(e, ts, OpSign::Plus) - t * pucci(e, s, OpSign::Plus)) <=
              1e-12 * (1.0 + std::fabs(t * pucci(e, s, OpSign::Plus))));

        // A + G^T G dominates A.
        SymMatrix shift = SymMatrix::zero(n);
        {
            std::vector<double> g(static_cast<std::size_t>(n) * n);
            for (auto& v : g) v = rng.uniform(-0.5, 0.5);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < n; ++k)
                        acc += g[static_cast<std::size_t>(k) * n + i] *
                               g[static_cast<std::size_t>(k) * n + j];
                    shift(i, j) = acc;
                }
        }
        const Spectrum sb = sym_eigenvalues(m.plus(shift));
        CHECK(pucci(e, s, OpSign::Plus) <= pucci(e, sb, OpSign::Plus) + 1e-10);
        CHECK(pucci(e, s, OpSign::Minus) <= pucci(e, sb, OpSign::Minus) + 1e-10);
    }
}

TEST_CASE("radial spectrum: direct substitutions") {
    const Spectrum a = radial_hessian_spectrum(RadialJet{0.5, 0.25, 1.0, 2.0, 3});
    REQUIRE(a.values.size() == 3);
    for (double v : a.values) CHECK(v == 2.0);

    const Spectrum b = radial_hessian_spectrum(RadialJet{2.0, 0.0, -4.0, 6.0, 2});
    CHECK(b.values[0] == -2.0);
    CHECK(b.values[1] == 6.0);

    CHECK_THROWS_AS(radial_hessian_spectrum(RadialJet{0.0, 0.0, 1.0, 1.0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(radial_hessian_spectrum(RadialJet{-1.0, 0.0, 1.0, 1.0, 2}), std::invalid_argument);
}

TEST_CASE("hessian reconstruction: isotropic and rank-one cases") {
    // du/r == d2u == c gives c I for any direction.
    const RadialJet iso{2.0, 0.0, 3.0, 1.5, 3};
    const std::vector<double> dir = {1.0, 0.0, 0.0};
    const SymMatrix h = hessian_from_jet(iso, dir);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(h(i, j) == doctest::Approx(i == j ? 1.5 : 0.0));

    const RadialJet planar{1.0, 0.0, 0.0, 5.0, 2};
    const std::vector<double> e1 = {1.0, 0.0};
    const SymMatrix g = hessian_from_jet(planar, e1);
    CHECK(g(0, 0) == doctest::Approx(5.0));
    CHECK(g(0, 1) == doctest::Approx(0.0));
    CHECK(g(1, 1) == doctest::Approx(0.0));

    std::vector<double> bad = {0.5, 0.5};
    CHECK_THROWS_AS(hessian_from_jet(planar, bad), std::invalid_argument);
}

TEST_CASE("radial spectrum matches full-Hessian reconstruction, 1000 jets") {
    Rng rng(4242);
    for (int rep = 0; rep < 1000; ++rep) {
        const int dim = static_cast<int>(rng.uniform_int(2, 6));
        const RadialJet jet = random_jet(rng, dim);
        const auto dir = random_direction(rng, dim);
        const Spectrum direct = radial_hessian_spectrum(jet);
        const Spectrum rebuilt = sym_eigenvalues(hessian_from_jet(jet, dir));
        REQUIRE(direct.values.size() == rebuilt.values.size());
        for (std::size_t i = 0; i < direct.values.size(); ++i)
            CHECK(std::fabs(direct.values[i] - rebuilt.values[i]) <= 1e-10);
    }
}

TEST_CASE("pucci_radial: exponential profile and quadratic profile") {
    const EllipticityPair e = EllipticityPair::strict(1.0, 2.0);
    const double k = 10.0;
    const double u = std::exp(-0.1);
    const RadialJet jet{1.0, u, -u / k, u / (k * k), 3};
    const double m_plus = pucci_radial(e, jet, OpSign::Plus);
    CHECK(m_plus == doctest::Approx(-0.18 * u).epsilon(1e-14));
    // rbar/(k r) - Lambda/k^2 at r=1 with rbar = 2
    CHECK(-m_plus / u == doctest::Approx(2.0 / k - 2.0 / (k * k)).epsilon(1e-13));

    const double k1 = 0.7, k2 = 0.3;
    for (double r : {0.25, 1.0, 1.7}) {
        const RadialJet q{r, k1 * r * r + k2, 2.0 * k1 * r, 2.0 * k1, 4};
        CHECK(pucci_radial(e, q, OpSign::Plus) ==
              doctest::Approx(2.0 * k1 * 4 * e.Lambda).epsilon(1e-14));
    }
}

TEST_CASE("pucci_radial: sign duality under jet negation") {
    const EllipticityPair e = EllipticityPair::strict(0.5, 3.0);
    Rng rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const RadialJet jet = random_jet(rng, static_cast<int>(rng.uniform_int(2, 6)));
        const RadialJet neg{jet.r, -jet.u, -jet.du, -jet.d2u, jet.dim};
        CHECK(std::fabs(pucci_radial(e, jet, OpSign::Minus) + pucci_radial(e, neg, OpSign::Plus)) <=
              1e-12);
    }
}
