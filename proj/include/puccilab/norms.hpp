#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "puccilab/constructions.hpp"
#include "puccilab/quadrature.hpp"

namespace puccilab {

struct NormResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// (int_{r_lo}^{r_hi} omega_N r^{N-1} |g(r)|^p dr)^{1/p}, panels aligned with
// the breakpoints of g.
NormResult lp_norm(const CoefficientField& g, double p, double r_lo, double r_hi,
                   const DomainBall& ball);
NormResult lp_norm(const RadialPiecewise& g, double p, double r_lo, double r_hi,
                   const DomainBall& ball);

// Exact annulus norm of the inverse-power family coefficient,
// ((cd lambda)^p omega_N (1 - eps^{N-2p}) / (N-2p))^{1/p}; valid for p < N/2.
double closed_norm_n3(const ParamsN3& params, double exponent);

// Upper bound on the positive-part norm of the exponential-decay family,
// [omega_N/(N-p) (rbar^N/k^p) ((3/2)^{N-p} - (k+1)^{p-N})]^{1/p}; p < N.
double closed_norm_small_bound(const ParamsSmallNorm& params, double exponent);

// L1 bound for the planar log family, evaluated in log space:
// 4 pi Lambda log(L/(1+L)) + 4 pi Lambda alpha / (K - log alpha^2),
// with L = log eps^2 + K - 1 < -1.
double n2_l1_bound(const ParamsN2& params);

struct BoundConfig {
    double C1;
    double p;
};

struct BoundReport {
    double lower_N = 0.0;
    std::optional<double> lower_p;
    std::string lower_p_note;
    double tilde_lower = 0.0;
};

BoundReport lyapunov_bounds(const DomainBall& ball, const BoundConfig& cfg);

struct PowerTransformReport {
    double lhs = 0.0;  // || (a+)^{p/N} ||_N^N
    double rhs = 0.0;  // || a+ ||_p^p
    double rel_gap = 0.0;
    bool pointwise_inequality_holds = true;
    int samples_in_unit_range = 0;
};

PowerTransformReport power_transform_check(const CoefficientField& a, double p,
                                           const DomainBall& ball);

struct ResidualSampleSpec {
    int samples_per_piece = 200;
    double exclusion_rel = 1e-8;
    std::uint64_t seed = 0;
    bool jitter = false;
};

struct ResidualReport {
    double max_normalized = 0.0;
    double argmax_radius = 0.0;
    std::vector<double> per_piece_max;
    InterfaceReport interfaces;
    double boundary_value = 0.0;
};

// max_r |M^sign(D^2 w) + a w| / (1 + |w|) over an interior sample grid,
// with w = u or -u. The scan is the data-parallel kernel; parallel=false
// forces the serial reference path.
ResidualReport residual_verify(const ConstructionInstance& inst, const ResidualSampleSpec& spec,
                               OpSign sign, bool negate, bool parallel = true);

struct SweepRow {
    double param = 0.0;
    double closed_form = 0.0;
    double quadrature = 0.0;
    double bound = 0.0;
    bool valid = true;
};

struct SweepTable {
    std::string param_name;
    std::vector<SweepRow> rows;
    std::map<std::string, double> summary;
};

struct SweepSpec {
    Family family;
    FamilyParams base;
    std::vector<double> values;
    double exponent = 1.0;
    bool n2_eps_tracks_K = true;
};

// One row per grid point; rows are independent and computed by the same
// parallel kernel scheme as the residual scan.
SweepTable run_sweep(const SweepSpec& spec, bool parallel = true);

// Header, one data row per point (17 significant digits), then summary
// comment lines.
std::string sweep_csv(const SweepTable& table);

std::string format_17g(double v);

}  // namespace puccilab
