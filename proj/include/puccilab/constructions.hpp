#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "puccilab/coefficient.hpp"
#include "puccilab/domain.hpp"

namespace puccilab {

enum class Family { N3, N2, SmallNorm };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Inverse-power family (dimension >= 3): c r^{-d} - d r^{-c} in an annulus,
// matched by a quadratic at the center and a harmonic tail.
struct ParamsN3 {
    int dim;
    EllipticityPair e;
    double c;
    double d;
    double epsilon;

    double cd_target() const { return e.Lambda / e.lambda * (dim - 1) - 1.0; }
    double k1() const;
    double k2() const;
    void check() const;
};

// Planar log family (dimension 2): quadratic core, beta-harmonic ring,
// shifted-square bridge, alpha-harmonic tail. epsilon is carried in log
// space so extreme values stay representable.
struct ParamsN2 {
    EllipticityPair e;
    double K;
    double log_epsilon;

    static ParamsN2 from_epsilon(const EllipticityPair& e, double K, double epsilon);
    double epsilon() const;
    double log_alpha_sq() const;
    void check() const;
};

// Exponential-decay family: constant core, e^{-r/k} annulus, harmonic tail
// on the ball of radius 2 lambda (N-1).
struct ParamsSmallNorm {
    int dim;
    EllipticityPair e;
    int k;

    double rbar() const { return e.lambda * (dim - 1); }
    int ktilde() const;
    void check() const;
};

using FamilyParams = std::variant<ParamsN3, ParamsN2, ParamsSmallNorm>;

struct Provenance {
    Family family;
    FamilyParams params;
    double scale = 1.0;
};

struct ConstructionInstance {
    RadialPiecewise u;
    CoefficientField a;
    double domain_radius = 0.0;
    int dim = 0;
    EllipticityPair e = EllipticityPair::oracle(1.0, 1.0);
    Provenance provenance;
};

ConstructionInstance build_n3(const ParamsN3& p);
ConstructionInstance build_n2(const ParamsN2& p);
ConstructionInstance build_small_norm(const ParamsSmallNorm& p);
ConstructionInstance build_family(Family family, const FamilyParams& params);

// Parameter diagnostics: named numeric facts, named boolean condition
// outcomes, free-form findings. fatal marks instances whose induced
// coefficient genuinely divides by a vanishing profile.
struct ValidityFinding {
    std::string kind;
    std::string detail;
};

struct ValidityReport {
    bool fatal = false;
    std::map<std::string, double> values;
    std::map<std::string, bool> checks;
    std::vector<ValidityFinding> findings;
};

ValidityReport validate_params(const ParamsN3& p);
ValidityReport validate_params(const ParamsN2& p);
ValidityReport validate_params(const ParamsSmallNorm& p);
ValidityReport validate_family(Family family, const FamilyParams& params);

enum class CoefficientClass { AboveOne, BelowOne, Neither };

struct ClassificationReport {
    CoefficientClass cls = CoefficientClass::Neither;
    double g1_measure = 0.0;      // measure of {a+ > 1}
    double l1_measure = 0.0;      // measure of {0 <= a+ <= 1}
    double domain_measure = 0.0;
    std::vector<double> crossing_radii;
    std::vector<std::pair<double, double>> above_intervals;
    std::string method;  // "closed-form", "bisection", "sampling"
    bool sampling_warning = false;
};

std::string coefficient_class_name(CoefficientClass c);

// Level-1 decomposition of the positive part by exact shell volumes; the
// crossing radii are solved in closed form for recognized piece shapes and
// by bisection on monotone pieces otherwise.
ClassificationReport classify_coefficient(const CoefficientField& a, double tol,
                                          const DomainBall& ball);

// u_s(x) = u(x/s), a_s(x) = s^{-2} a(x/s), breakpoints scaled by s.
ConstructionInstance scale_instance(const ConstructionInstance& inst, double factor);

}  // namespace puccilab
