#include "puccilab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace puccilab {

namespace {

constexpr double kAlphaLogBranchTol = 1e-12;

// Harmonic tail C [R_out^{2-a} - r^{2-a}] (log form when a == 2) matching
// `value` at r = r_in and vanishing at r = r_out, annihilated by the maximal
// operator on decreasing-convex data.
TermSum harmonic_tail(double alpha, double r_in, double r_out, double value) {
    TermSum terms;
    if (std::fabs(alpha - 2.0) <= kAlphaLogBranchTol) {
        const double c = value / std::log(r_out / r_in);
        terms.push_back(BasisTerm::constant(c * std::log(r_out)));
        terms.push_back(BasisTerm::log_term(-c));
        return terms;
    }
    const double p = 2.0 - alpha;
    const double c = value / (std::pow(r_out, p) - std::pow(r_in, p));
    terms.push_back(BasisTerm::constant(c * std::pow(r_out, p)));
    terms.push_back(BasisTerm::power(-c, p));
    return terms;
}

void attach_coefficient(ConstructionInstance& inst, OpSign sign) {
    InducedResult induced = induced_coefficient_checked(inst.u, inst.e, sign);
    if (!induced.errors.empty()) {
        std::ostringstream msg;
        msg << "construction rejected: piece " << induced.errors[0].piece
            << " divides by a vanishing profile (radius " << induced.errors[0].crossing_radius
            << "); see validate_params";
        throw std::domain_error(msg.str());
    }
    inst.a = std::move(induced.field);
}

std::string sign_pattern_string(const TermSum& terms, double lo, double hi) {
    auto fmt = [](const SignInfo& s) -> std::string {
        if (!s.stable) return "unstable";
        return s.sign > 0 ? "+" : s.sign < 0 ? "-" : "0";
    };
    return "du:" + fmt(derivative_sign_on(terms, lo, hi)) +
           ",d2u:" + fmt(second_derivative_sign_on(terms, lo, hi));
}

std::string region_sign_string(const TermSum& terms, double lo, double hi) {
    if (auto crossing = zero_crossing(terms, lo, hi)) {
        std::ostringstream os;
        os << "mixed (crosses zero near r=" << *crossing << ")";
        return os.str();
    }
    const double mid = 0.5 * (lo + hi);
    const double v = sum_value(terms, mid);
    return v > 0.0 ? "positive" : v < 0.0 ? "negative" : "zero";
}

void record_profile_diagnostics(ValidityReport& report, const RadialPiecewise& u) {
    for (int i = 0; i < u.piece_count(); ++i) {
        const double lo = u.breakpoints[static_cast<std::size_t>(i)];
        const double hi = u.breakpoints[static_cast<std::size_t>(i) + 1];
        const std::string tag = "piece" + std::to_string(i);
        report.findings.push_back({"sign_pattern_" + tag,
                                   sign_pattern_string(u.pieces[static_cast<std::size_t>(i)], lo, hi)});
        report.findings.push_back(
            {"profile_sign_" + tag, region_sign_string(u.pieces[static_cast<std::size_t>(i)], lo, hi)});
    }
}

void record_induced_outcome(ValidityReport& report, const RadialPiecewise& u,
                            const EllipticityPair& e) {
    InducedResult induced = induced_coefficient_checked(u, e, OpSign::Plus);
    report.fatal = !induced.errors.empty();
    report.checks["fatal_division_by_zero"] = report.fatal;
    for (const auto& err : induced.errors) {
        std::ostringstream os;
        os << "piece " << err.piece << ": " << err.message << " at r=" << err.crossing_radius;
        report.findings.push_back({"division_by_zero", os.str()});
    }
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::N3: return "n3";
        case Family::N2: return "n2";
        case Family::SmallNorm: return "small";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "n3") return Family::N3;
    if (name == "n2") return Family::N2;
    if (name == "small") return Family::SmallNorm;
    throw std::invalid_argument("unknown family '" + name + "' (expected n3, n2 or small)");
}

double ParamsN3::k1() const {
    return 0.5 * c * d * (std::pow(epsilon, -c - 2.0) - std::pow(epsilon, -d - 2.0));
}

double ParamsN3::k2() const {
    return c * std::pow(epsilon, -d) * (1.0 + 0.5 * d) - d * std::pow(epsilon, -c) * (1.0 + 0.5 * c);
}

void ParamsN3::check() const {
    if (dim < 3) throw std::invalid_argument("ParamsN3: dim must be >= 3");
    if (!(c > d && d > 0.0)) throw std::invalid_argument("ParamsN3: need c > d > 0");
    const double target = cd_target();
    if (std::fabs(c + d - target) > 1e-12 * std::max(1.0, std::fabs(target)))
        throw std::invalid_argument("ParamsN3: c + d must equal (Lambda/lambda)(N-1) - 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("ParamsN3: epsilon must lie in (0, 1)");
}

ParamsN2 ParamsN2::from_epsilon(const EllipticityPair& e, double K, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("ParamsN2: epsilon must be positive");
    return ParamsN2{e, K, std::log(epsilon)};
}

double ParamsN2::epsilon() const { return std::exp(log_epsilon); }

double ParamsN2::log_alpha_sq() const {
    const double alpha = e.alpha(2);
    return 2.0 * std::log(alpha);
}

void ParamsN2::check() const {
    if (!(K > log_alpha_sq()))
        throw std::invalid_argument("ParamsN2: K must exceed log(alpha^2)");
    if (!(2.0 * log_epsilon + K < 0.0))
        throw std::invalid_argument("ParamsN2: need log(epsilon^2) + K < 0");
}

int ParamsSmallNorm::ktilde() const {
    const double L = e.Lambda;
    int t = static_cast<int>(std::ceil(1.5 * L));
    if (!(static_cast<double>(t) / L >= 1.5)) ++t;
    while (!(L / t < 1.0)) ++t;
    return t;
}

void ParamsSmallNorm::check() const {
    if (dim < 2) throw std::invalid_argument("ParamsSmallNorm: dim must be >= 2");
    if (k < 1) throw std::invalid_argument("ParamsSmallNorm: k must be >= 1");
}

ConstructionInstance build_n3(const ParamsN3& p) {
    p.check();
    ConstructionInstance inst;
    inst.dim = p.dim;
    inst.e = p.e;
    inst.domain_radius = 2.0;
    inst.provenance = {Family::N3, p, 1.0};

    inst.u.dim = p.dim;
    inst.u.breakpoints = {0.0, p.epsilon, 1.0, 2.0};

    TermSum core = {BasisTerm::power(p.k1(), 2.0), BasisTerm::constant(p.k2())};
    TermSum annulus = {BasisTerm::power(p.c, -p.d), BasisTerm::power(-p.d, -p.c)};
    TermSum tail = harmonic_tail(p.e.alpha(p.dim), 1.0, 2.0, p.c - p.d);
    inst.u.pieces = {std::move(core), std::move(annulus), std::move(tail)};
    inst.u.validate();

    attach_coefficient(inst, OpSign::Plus);
    return inst;
}

ConstructionInstance build_n2(const ParamsN2& p) {
    p.check();
    const double alpha = p.e.alpha(2);
    const double beta = p.e.beta(2);
    const double log_eps_sq = 2.0 * p.log_epsilon;
    if (std::fabs((2.0 - beta) * p.log_epsilon) > 700.0)
        throw std::domain_error(
            "build_n2: epsilon too extreme to represent the profile; use the closed-form bound");

    ConstructionInstance inst;
    inst.dim = 2;
    inst.e = p.e;
    inst.domain_radius = 2.0;
    inst.provenance = {Family::N2, p, 1.0};

    const double eps = p.epsilon();
    inst.u.dim = 2;
    inst.u.breakpoints = {0.0, eps, 1.0 / alpha, 1.0, 2.0};

    TermSum core = {BasisTerm::power(1.0 / (eps * eps), 2.0),
                    BasisTerm::constant(log_eps_sq + p.K - 1.0)};

    const double eps_pow = std::exp((2.0 - beta) * p.log_epsilon);  // eps^{2-beta}
    const double alpha_pow = std::pow(alpha, beta - 2.0);
    const double den = eps_pow - alpha_pow;
    const double log_alpha = std::log(alpha);
    const double a_coef = (log_eps_sq + 2.0 * log_alpha) / den;
    const double b_coef =
        (eps_pow * (p.K - 2.0 * log_alpha) - alpha_pow * (p.K + log_eps_sq)) / den;
    TermSum ring = {BasisTerm::power(a_coef, 2.0 - beta), BasisTerm::constant(b_coef)};

    const double one_minus = 1.0 - 1.0 / alpha;
    TermSum bridge = {BasisTerm::shifted_square(-1.0 / (one_minus * one_minus), 1.0),
                      BasisTerm::constant(1.0 + p.K - p.log_alpha_sq())};

    TermSum tail = harmonic_tail(alpha, 1.0, 2.0, 1.0 + p.K - p.log_alpha_sq());

    inst.u.pieces = {std::move(core), std::move(ring), std::move(bridge), std::move(tail)};
    inst.u.validate();

    attach_coefficient(inst, OpSign::Plus);
    return inst;
}

ConstructionInstance build_small_norm(const ParamsSmallNorm& p) {
    p.check();
    const double rbar = p.rbar();
    const double k = static_cast<double>(p.k);

    ConstructionInstance inst;
    inst.dim = p.dim;
    inst.e = p.e;
    inst.domain_radius = 2.0 * rbar;
    inst.provenance = {Family::SmallNorm, p, 1.0};

    inst.u.dim = p.dim;
    inst.u.breakpoints = {0.0, rbar / (k + 1.0), 1.5 * rbar, 2.0 * rbar};

    TermSum core = {BasisTerm::constant(std::exp(-rbar / (k * (k + 1.0))))};
    TermSum annulus = {BasisTerm::exp_term(1.0, -1.0 / k)};

    const double alpha = p.e.alpha(p.dim);
    const double match = std::exp(-1.5 * rbar / k);
    TermSum tail;
    if (std::fabs(alpha - 2.0) <= kAlphaLogBranchTol) {
        const double c = match / std::log(4.0 / 3.0);
        tail = {BasisTerm::constant(c * std::log(2.0 * rbar)), BasisTerm::log_term(-c)};
    } else {
        const double q = 2.0 - alpha;
        const double c = match / (std::pow(2.0, q) - std::pow(1.5, q));
        tail = {BasisTerm::constant(c * std::pow(2.0, q)),
                BasisTerm::power(-c * std::pow(rbar, -q), q)};
    }

    inst.u.pieces = {std::move(core), std::move(annulus), std::move(tail)};
    inst.u.validate();

    attach_coefficient(inst, OpSign::Plus);
    return inst;
}

ConstructionInstance build_family(Family family, const FamilyParams& params) {
    switch (family) {
        case Family::N3: return build_n3(std::get<ParamsN3>(params));
        case Family::N2: return build_n2(std::get<ParamsN2>(params));
        case Family::SmallNorm: return build_small_norm(std::get<ParamsSmallNorm>(params));
    }
    throw std::logic_error("build_family: bad family");
}

ValidityReport validate_params(const ParamsN3& p) {
    p.check();
    ValidityReport report;
    const double k1 = p.k1();
    const double k2 = p.k2();
    const double printed_bound = std::pow(p.c / p.d, 1.0 / (p.d - p.c));
    const double k2_bound =
        std::pow(p.c * (1.0 + 0.5 * p.d) / (p.d * (1.0 + 0.5 * p.c)), 1.0 / (p.d - p.c));

    report.values["k1"] = k1;
    report.values["k2"] = k2;
    report.values["cd_target"] = p.cd_target();
    report.values["reference_epsilon_bound"] = printed_bound;
    report.values["reference_k2_epsilon_bound"] = k2_bound;

    report.checks["k1_positive"] = k1 > 0.0;
    report.checks["k2_nonnegative"] = k2 >= 0.0;
    report.checks["reference_epsilon_bound_holds"] = p.epsilon < printed_bound;
    report.checks["reference_k2_bound_holds"] = p.epsilon <= k2_bound;
    // The reference text claims k2 >= 0 whenever epsilon <= the k2 bound;
    // direct evaluation disagrees, so both sides are recorded.
    report.checks["k2_sign_matches_reference_claim"] = (p.epsilon <= k2_bound) == (k2 >= 0.0);
    report.checks["bounds_ordering_holds"] = k2_bound > printed_bound;

    RadialPiecewise u;
    u.dim = p.dim;
    u.breakpoints = {0.0, p.epsilon, 1.0, 2.0};
    u.pieces = {{BasisTerm::power(k1, 2.0), BasisTerm::constant(k2)},
                {BasisTerm::power(p.c, -p.d), BasisTerm::power(-p.d, -p.c)},
                harmonic_tail(p.e.alpha(p.dim), 1.0, 2.0, p.c - p.d)};
    record_profile_diagnostics(report, u);
    record_induced_outcome(report, u, p.e);

    if (!report.fatal) {
        InducedResult induced = induced_coefficient_checked(u, p.e, OpSign::Plus);
        bool inner_nonpositive = true;
        for (int i = 0; i < 65 && inner_nonpositive; ++i) {
            const double r = p.epsilon * (i + 0.5) / 65.0;
            inner_nonpositive = induced.field.eval_on_piece(0, r) <= 0.0;
        }
        report.checks["positive_part_confined_to_annulus"] = inner_nonpositive;
        if (!inner_nonpositive)
            report.findings.push_back(
                {"positive_part_support",
                 "induced coefficient is positive on the core region, so the reference "
                 "support claim (zero positive part inside the core) fails"});
        if (!report.checks["k2_sign_matches_reference_claim"])
            report.findings.push_back(
                {"k2_sign_anomaly",
                 "direct evaluation of k2 contradicts the reference inequality direction"});
    }
    return report;
}

ValidityReport validate_params(const ParamsN2& p) {
    ValidityReport report;
    const double alpha = p.e.alpha(2);
    const double beta = p.e.beta(2);
    report.values["alpha"] = alpha;
    report.values["beta"] = beta;
    report.values["log_alpha_sq"] = p.log_alpha_sq();
    report.values["log_eps_sq_plus_K"] = 2.0 * p.log_epsilon + p.K;

    report.checks["K_above_log_alpha_sq"] = p.K > p.log_alpha_sq();
    report.checks["core_value_negative"] = 2.0 * p.log_epsilon + p.K < 0.0;
    if (!report.checks["K_above_log_alpha_sq"] || !report.checks["core_value_negative"]) {
        report.fatal = true;
        report.findings.push_back({"invalid_parameters", "type invariants violated"});
        return report;
    }

    ConstructionInstance inst = build_n2(p);
    record_profile_diagnostics(report, inst.u);
    record_induced_outcome(report, inst.u, p.e);

    bool nonneg = true;
    double worst = 0.0;
    for (int i = 0; i < inst.a.piece_count(); ++i) {
        const double lo = inst.a.breakpoints[static_cast<std::size_t>(i)];
        const double hi = inst.a.breakpoints[static_cast<std::size_t>(i) + 1];
        for (int s = 0; s < 65; ++s) {
            const double r = lo + (hi - lo) * (s + 0.5) / 65.0;
            const double v = inst.a.eval_on_piece(i, r);
            worst = std::min(worst, v);
            if (v < -1e-12) nonneg = false;
        }
    }
    report.checks["coefficient_nonnegative"] = nonneg;
    report.values["coefficient_min_sample"] = worst;

    // The reference display for the bridge region carries typographical
    // defects; compare the literal reading against the induced quotient and
    // report the gap instead of silently fixing it.
    const double one_minus = 1.0 - 1.0 / alpha;
    const double one_plus = 1.0 + 1.0 / alpha;
    double max_rel_dev = 0.0;
    for (int s = 0; s < 65; ++s) {
        const double r = 1.0 / alpha + (1.0 - 1.0 / alpha) * (s + 0.5) / 65.0;
        const double literal =
            2.0 * p.e.Lambda * (p.e.lambda / p.e.Lambda - 1.0 / r) /
            (one_minus * one_minus *
             (-(1.0 - r) * (1.0 - r) / (one_plus * one_plus) + p.K + 1.0 - p.log_alpha_sq()));
        const double induced = inst.a.eval_on_piece(2, r);
        max_rel_dev = std::max(max_rel_dev,
                               std::fabs(literal - induced) / (1.0 + std::fabs(induced)));
    }
    report.values["bridge_display_rel_deviation"] = max_rel_dev;
    if (max_rel_dev > 1e-9)
        report.findings.push_back(
            {"reference_display_mismatch",
             "literal reading of the bridge-region display deviates from the induced "
             "coefficient; treated as typographical defects in the reference"});
    return report;
}

ValidityReport validate_params(const ParamsSmallNorm& p) {
    p.check();
    ValidityReport report;
    const double k = static_cast<double>(p.k);
    report.values["rbar"] = p.rbar();
    report.values["ktilde"] = static_cast<double>(p.ktilde());
    report.checks["decay_condition_i"] = p.e.Lambda / k < 1.0;
    report.checks["decay_condition_ii"] = k / p.e.Lambda >= 1.5;
    report.checks["k_at_least_ktilde"] = p.k >= p.ktilde();

    ConstructionInstance inst = build_small_norm(p);
    record_profile_diagnostics(report, inst.u);
    record_induced_outcome(report, inst.u, p.e);

    const double lo = p.rbar() / (k + 1.0);
    const double hi = 1.5 * p.rbar();
    report.values["coefficient_at_inner_edge"] = inst.a.eval_on_piece(1, lo * (1.0 + 1e-12));
    report.values["coefficient_at_outer_edge"] = inst.a.eval_on_piece(1, hi * (1.0 - 1e-12));
    report.checks["coefficient_nonnegative_on_annulus"] =
        report.values["coefficient_at_outer_edge"] >= -1e-15;
    return report;
}

ValidityReport validate_family(Family family, const FamilyParams& params) {
    switch (family) {
        case Family::N3: return validate_params(std::get<ParamsN3>(params));
        case Family::N2: return validate_params(std::get<ParamsN2>(params));
        case Family::SmallNorm: return validate_params(std::get<ParamsSmallNorm>(params));
    }
    throw std::logic_error("validate_family: bad family");
}

std::string coefficient_class_name(CoefficientClass c) {
    switch (c) {
        case CoefficientClass::AboveOne: return "P_g";
        case CoefficientClass::BelowOne: return "P_l";
        case CoefficientClass::Neither: return "neither";
    }
    return "?";
}

namespace {

std::optional<std::vector<double>> closed_form_level_crossings(const CoefPiece& piece, double lo,
                                                               double hi) {
    if (piece.mode == CoefPiece::Mode::Zero) return std::vector<double>{};
    if (piece.mode != CoefPiece::Mode::Closed || !piece.den.empty()) return std::nullopt;

    std::vector<double> roots;
    const CoefTermSum& num = piece.num;
    const CoefTerm* power = nullptr;
    const CoefTerm* constant = nullptr;
    for (const auto& t : num) {
        if (t.kind == CoefTermKind::Power && !power)
            power = &t;
        else if (t.kind == CoefTermKind::Constant && !constant)
            constant = &t;
        else
            return std::nullopt;
    }
    if (power && !constant) {
        if (!(power->coef > 0.0) || power->param == 0.0) return std::nullopt;
        roots.push_back(std::pow(1.0 / power->coef, 1.0 / power->param));
    } else if (power && constant) {
        // A/r + B = 1
        if (power->param != -1.0 || constant->coef == 1.0) return std::nullopt;
        roots.push_back(power->coef / (1.0 - constant->coef));
    } else if (!power && !constant) {
        return std::nullopt;
    }
    // constant alone: no interior crossing

    std::vector<double> inside;
    for (double r : roots)
        if (r > lo && r < hi) inside.push_back(r);
    std::sort(inside.begin(), inside.end());
    return inside;
}

}  // namespace

ClassificationReport classify_coefficient(const CoefficientField& a, double tol,
                                          const DomainBall& ball) {
    if (ball.dim != a.dim) throw std::invalid_argument("classify_coefficient: dimension mismatch");
    if (std::fabs(ball.radius - a.outer_radius()) > 1e-12 * ball.radius)
        throw std::invalid_argument("classify_coefficient: ball radius must match the field domain");

    const CoefficientField ap = positive_part(a);
    const double omega = ball.sphere_area();
    const int n = ball.dim;
    auto shell = [&](double r0, double r1) {
        return omega / n * (std::pow(r1, n) - std::pow(r0, n));
    };

    ClassificationReport report;
    report.domain_measure = ball.volume();
    report.method = "closed-form";

    for (int i = 0; i < ap.piece_count(); ++i) {
        const double lo = ap.breakpoints[static_cast<std::size_t>(i)];
        const double hi = ap.breakpoints[static_cast<std::size_t>(i) + 1];

        std::vector<double> crossings;
        bool resolved = false;
        if (auto closed = closed_form_level_crossings(ap.pieces[static_cast<std::size_t>(i)], lo, hi)) {
            crossings = *closed;
            resolved = true;
        }

        if (!resolved) {
            // Monotone pieces get a bisection crossing; anything else falls
            // back to dense sampling with a warning.
            const double pad = 1e-9 * (hi - lo);
            bool monotone = true;
            int direction = 0;
            double prev = ap.eval_on_piece(i, lo + pad);
            for (int s = 0; s <= 64 && monotone; ++s) {
                const double r = s < 64 ? lo + (hi - lo) * (s + 0.5) / 64.0 : hi - pad;
                const double v = ap.eval_on_piece(i, r);
                if (v > prev) {
                    if (direction < 0) monotone = false;
                    direction = 1;
                } else if (v < prev) {
                    if (direction > 0) monotone = false;
                    direction = -1;
                }
                prev = v;
            }
            if (monotone) {
                double va = ap.eval_on_piece(i, lo + pad) - 1.0;
                double vb = ap.eval_on_piece(i, hi - pad) - 1.0;
                if ((va > 0.0) != (vb > 0.0)) {
                    double ra = lo + pad, rb = hi - pad;
                    while (rb - ra > 1e-12 * a.outer_radius()) {
                        const double m = 0.5 * (ra + rb);
                        if ((ap.eval_on_piece(i, m) - 1.0 > 0.0) == (va > 0.0))
                            ra = m;
                        else
                            rb = m;
                    }
                    crossings.push_back(0.5 * (ra + rb));
                }
                resolved = true;
                if (report.method == "closed-form") report.method = "bisection";
            }
        }

        if (resolved) {
            std::vector<double> cuts = {lo};
            cuts.insert(cuts.end(), crossings.begin(), crossings.end());
            cuts.push_back(hi);
            for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
                const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
                const double measure = shell(cuts[s], cuts[s + 1]);
                if (ap.eval_on_piece(i, mid) > 1.0) {
                    report.g1_measure += measure;
                    report.above_intervals.emplace_back(cuts[s], cuts[s + 1]);
                } else {
                    report.l1_measure += measure;
                }
            }
            report.crossing_radii.insert(report.crossing_radii.end(), crossings.begin(),
                                         crossings.end());
        } else {
            report.method = "sampling";
            report.sampling_warning = true;
            const int cells = 10000;
            for (int s = 0; s < cells; ++s) {
                const double r0 = lo + (hi - lo) * s / cells;
                const double r1 = lo + (hi - lo) * (s + 1) / cells;
                const double measure = shell(r0, r1);
                if (ap.eval_on_piece(i, 0.5 * (r0 + r1)) > 1.0)
                    report.g1_measure += measure;
                else
                    report.l1_measure += measure;
            }
        }
    }

    if (report.l1_measure <= tol * report.domain_measure)
        report.cls = CoefficientClass::AboveOne;
    else if (report.g1_measure <= tol * report.domain_measure)
        report.cls = CoefficientClass::BelowOne;
    else
        report.cls = CoefficientClass::Neither;
    return report;
}

namespace {

TermSum scale_profile_terms(const TermSum& terms, double s) {
    TermSum out;
    for (const auto& t : terms) {
        switch (t.kind) {
            case TermKind::Power:
                out.push_back(BasisTerm::power(t.coef * std::pow(s, -t.param), t.param));
                break;
            case TermKind::Log:
                out.push_back(BasisTerm::log_term(t.coef));
                out.push_back(BasisTerm::constant(-t.coef * std::log(s)));
                break;
            case TermKind::Exp:
                out.push_back(BasisTerm::exp_term(t.coef, t.param / s));
                break;
            case TermKind::ShiftedSquare:
                out.push_back(BasisTerm::shifted_square(t.coef / (s * s), t.param * s));
                break;
            case TermKind::Constant:
                out.push_back(t);
                break;
        }
    }
    return out;
}

}  // namespace

ConstructionInstance scale_instance(const ConstructionInstance& inst, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale_instance: factor must be positive");
    ConstructionInstance out;
    out.dim = inst.dim;
    out.e = inst.e;
    out.domain_radius = inst.domain_radius * factor;
    out.provenance = inst.provenance;
    out.provenance.scale *= factor;

    out.u.dim = inst.dim;
    out.u.breakpoints.reserve(inst.u.breakpoints.size());
    for (double b : inst.u.breakpoints) out.u.breakpoints.push_back(b * factor);
    for (const auto& piece : inst.u.pieces) out.u.pieces.push_back(scale_profile_terms(piece, factor));
    out.u.validate();

    // Re-deriving the coefficient from the scaled profile realizes
    // a_s(x) = s^{-2} a(x/s) without a separate substitution pass.
    attach_coefficient(out, inst.a.sign);
    return out;
}

}  // namespace puccilab
