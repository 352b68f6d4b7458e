#include "puccilab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "puccilab/parallel.hpp"
#include "puccilab/rng.hpp"

namespace puccilab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class Eval>
NormResult lp_norm_impl(const Eval& eval_on_piece, const std::vector<double>& breakpoints,
                        double p, double r_lo, double r_hi, const DomainBall& ball) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: exponent must be >= 1");
    const double outer = breakpoints.back();
    if (r_lo < 0.0 || r_hi > outer * (1.0 + 1e-12) || !(r_hi > r_lo))
        throw std::invalid_argument("lp_norm: region outside the field domain");
    if (r_hi > ball.radius * (1.0 + 1e-12))
        throw std::invalid_argument("lp_norm: region outside the ball");

    std::vector<double> cuts = {r_lo};
    for (double b : breakpoints)
        if (b > r_lo && b < r_hi) cuts.push_back(b);
    cuts.push_back(r_hi);

    const double omega = ball.sphere_area();
    const int n = ball.dim;

    double rough_total = 0.0;
    std::vector<int> piece_of(cuts.size() - 1);
    std::vector<std::function<double(double)>> integrands;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
        const int piece = eval_on_piece.index(mid);
        piece_of[s] = piece;
        integrands.push_back([&eval_on_piece, piece, omega, n, p](double r) {
            return omega * std::pow(r, n - 1) * std::pow(std::fabs(eval_on_piece(piece, r)), p);
        });
        rough_total += std::fabs(gauss15(integrands.back(), cuts[s], cuts[s + 1]));
    }

    const double abs_floor = std::max(1e-14, 1e-14 * rough_total);
    NormResult res;
    double integral = 0.0, err = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const QuadratureOutcome out =
            integrate_adaptive(integrands[s], cuts[s], cuts[s + 1], 1e-10, abs_floor);
        integral += out.value;
        err += out.error_estimate;
    }
    res.value = std::pow(integral, 1.0 / p);
    res.error_estimate = err;
    return res;
}

struct FieldEval {
    const CoefficientField& g;
    int index(double r) const { return g.piece_index(r); }
    double operator()(int piece, double r) const { return g.eval_on_piece(piece, r); }
};

struct ProfileEval {
    const RadialPiecewise& g;
    int index(double r) const { return g.piece_index(r); }
    double operator()(int piece, double r) const { return g.jet_on_piece(piece, r).u; }
};

}  // namespace

NormResult lp_norm(const CoefficientField& g, double p, double r_lo, double r_hi,
                   const DomainBall& ball) {
    if (ball.dim != g.dim) throw std::invalid_argument("lp_norm: dimension mismatch");
    return lp_norm_impl(FieldEval{g}, g.breakpoints, p, r_lo, r_hi, ball);
}

NormResult lp_norm(const RadialPiecewise& g, double p, double r_lo, double r_hi,
                   const DomainBall& ball) {
    if (ball.dim != g.dim) throw std::invalid_argument("lp_norm: dimension mismatch");
    return lp_norm_impl(ProfileEval{g}, g.breakpoints, p, r_lo, r_hi, ball);
}

double closed_norm_n3(const ParamsN3& params, double exponent) {
    if (!(exponent >= 1.0 && exponent < 0.5 * params.dim))
        throw std::domain_error(
            "closed_norm_n3: the annulus antiderivative requires 1 <= p < N/2 (N - 2p > 0)");
    const double cdl = params.c * params.d * params.e.lambda;
    const double omega = unit_sphere_area(params.dim);
    const double q = params.dim - 2.0 * exponent;
    const double base = std::pow(cdl, exponent) * omega * (1.0 - std::pow(params.epsilon, q)) / q;
    return std::pow(base, 1.0 / exponent);
}

double closed_norm_small_bound(const ParamsSmallNorm& params, double exponent) {
    if (!(exponent >= 1.0 && exponent < params.dim))
        throw std::domain_error("closed_norm_small_bound: requires 1 <= p < N");
    const double omega = unit_sphere_area(params.dim);
    const double rbar = params.rbar();
    const double k = static_cast<double>(params.k);
    const double q = params.dim - exponent;
    const double base = omega / q * std::pow(rbar, params.dim) / std::pow(k, exponent) *
                        (std::pow(1.5, q) - std::pow(k + 1.0, -q));
    return std::pow(base, 1.0 / exponent);
}

double n2_l1_bound(const ParamsN2& params) {
    params.check();
    const double L = 2.0 * params.log_epsilon + params.K - 1.0;
    if (L >= -1.0) throw std::domain_error("n2_l1_bound: degenerate denominator (L >= -1)");
    const double alpha = params.e.alpha(2);
    const double core = 4.0 * kPi * params.e.Lambda * std::log(L / (1.0 + L));
    const double ring = 4.0 * kPi * params.e.Lambda * alpha / (params.K - params.log_alpha_sq());
    return core + ring;
}

BoundReport lyapunov_bounds(const DomainBall& ball, const BoundConfig& cfg) {
    if (!(cfg.C1 > 0.0)) throw std::invalid_argument("lyapunov_bounds: C1 must be positive");
    if (!(cfg.p >= 1.0)) throw std::invalid_argument("lyapunov_bounds: p must be >= 1");
    BoundReport report;
    const double diam = ball.diameter();
    report.lower_N = 1.0 / (cfg.C1 * diam);
    if (cfg.p >= static_cast<double>(ball.dim)) {
        report.lower_p =
            1.0 / (cfg.C1 * diam * std::pow(ball.volume(), 1.0 / ball.dim - 1.0 / cfg.p));
    } else {
        report.lower_p_note =
            "lower_p needs p >= N: the norm-comparison step only interpolates downward to L^N";
    }
    report.tilde_lower = std::min(std::pow(ball.volume(), 1.0 / cfg.p),
                                  std::pow(report.lower_N, ball.dim / cfg.p));
    return report;
}

PowerTransformReport power_transform_check(const CoefficientField& a, double p,
                                           const DomainBall& ball) {
    if (!(p >= 1.0 && p < static_cast<double>(ball.dim)))
        throw std::invalid_argument("power_transform_check: requires 1 <= p < N");
    const CoefficientField ap = positive_part(a);
    const double q = p / ball.dim;

    const double omega = ball.sphere_area();
    const int n = ball.dim;
    auto integrate_piecewise = [&](auto&& point_value) {
        double total = 0.0;
        for (int i = 0; i < ap.piece_count(); ++i) {
            const double lo = ap.breakpoints[static_cast<std::size_t>(i)];
            const double hi = ap.breakpoints[static_cast<std::size_t>(i) + 1];
            total += integrate_adaptive(
                         [&](double r) {
                             return omega * std::pow(r, n - 1) * point_value(ap.eval_on_piece(i, r));
                         },
                         lo, hi, 1e-10, 1e-14)
                         .value;
        }
        return total;
    };

    PowerTransformReport report;
    report.lhs = integrate_piecewise([&](double v) { return std::pow(std::pow(v, q), ball.dim); });
    report.rhs = integrate_piecewise([&](double v) { return std::pow(v, p); });
    report.rel_gap = std::fabs(report.lhs - report.rhs) / std::max(1e-300, std::fabs(report.rhs));

    for (int i = 0; i < ap.piece_count(); ++i) {
        const double lo = ap.breakpoints[static_cast<std::size_t>(i)];
        const double hi = ap.breakpoints[static_cast<std::size_t>(i) + 1];
        for (int s = 0; s < 50; ++s) {
            const double r = lo + (hi - lo) * (s + 0.5) / 50.0;
            const double v = ap.eval_on_piece(i, r);
            if (v >= 0.0 && v <= 1.0) {
                ++report.samples_in_unit_range;
                if (v > std::pow(v, q) + 1e-15) report.pointwise_inequality_holds = false;
            }
        }
    }
    return report;
}

ResidualReport residual_verify(const ConstructionInstance& inst, const ResidualSampleSpec& spec,
                               OpSign sign, bool negate, bool parallel) {
    const RadialPiecewise& u = inst.u;
    const double delta = spec.exclusion_rel * inst.domain_radius;

    struct Sample {
        int piece;
        double r;
    };
    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(u.piece_count()) * spec.samples_per_piece);
    std::uint64_t stream = 0;
    for (int i = 0; i < u.piece_count(); ++i) {
        const double lo = u.breakpoints[static_cast<std::size_t>(i)] + delta;
        const double hi = u.breakpoints[static_cast<std::size_t>(i) + 1] - delta;
        if (!(hi > lo)) continue;
        for (int s = 0; s < spec.samples_per_piece; ++s) {
            double t = (s + 0.5) / spec.samples_per_piece;
            if (spec.jitter)
                t += (uniform01(spec.seed, stream) - 0.5) * 0.5 / spec.samples_per_piece;
            ++stream;
            samples.push_back({i, lo + (hi - lo) * t});
        }
    }

    std::vector<double> values(samples.size());
    par::for_each_index(
        samples.size(),
        [&](std::size_t idx) {
            const Sample& smp = samples[idx];
            RadialJet jet = u.jet_on_piece(smp.piece, smp.r);
            if (negate) {
                jet.u = -jet.u;
                jet.du = -jet.du;
                jet.d2u = -jet.d2u;
            }
            const double aw = inst.a.eval_on_piece(smp.piece, smp.r) * jet.u;
            const double m = pucci_radial(inst.e, jet, sign);
            values[idx] = std::fabs(m + aw) / (1.0 + std::fabs(jet.u));
        },
        parallel);

    ResidualReport report;
    report.per_piece_max.assign(static_cast<std::size_t>(u.piece_count()), 0.0);
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const double v = values[idx];
        auto& piece_max = report.per_piece_max[static_cast<std::size_t>(samples[idx].piece)];
        piece_max = std::max(piece_max, v);
        if (v > report.max_normalized) {
            report.max_normalized = v;
            report.argmax_radius = samples[idx].r;
        }
    }
    report.boundary_value = u.jet_on_piece(u.piece_count() - 1, u.outer_radius()).u;
    report.interfaces = interface_report(u, 1e-8);
    return report;
}

namespace {

void add_summary_stats(SweepTable& table, const std::string& name,
                       double SweepRow::*member) {
    std::vector<std::pair<double, double>> pts;
    bool decreasing = true;
    double prev = kNaN;
    for (const auto& row : table.rows) {
        const double y = row.*member;
        if (!std::isfinite(y)) continue;
        if (std::isfinite(prev) && !(y < prev)) decreasing = false;
        prev = y;
        if (row.param > 0.0 && y > 0.0) pts.emplace_back(std::log(row.param), std::log(y));
    }
    if (pts.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (const auto& [x, y] : pts) {
            mx += x;
            my += y;
        }
        mx /= static_cast<double>(pts.size());
        my /= static_cast<double>(pts.size());
        double sxy = 0.0, sxx = 0.0;
        for (const auto& [x, y] : pts) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
        table.summary["loglog_slope_" + name] = sxx > 0.0 ? sxy / sxx : kNaN;
    } else {
        table.summary["loglog_slope_" + name] = kNaN;
    }
    table.summary["strictly_decreasing_" + name] = pts.empty() ? kNaN : (decreasing ? 1.0 : 0.0);
}

void compute_sweep_row(const SweepSpec& spec, double value, SweepRow& row) {
    switch (spec.family) {
        case Family::SmallNorm: {
            ParamsSmallNorm q = std::get<ParamsSmallNorm>(spec.base);
            q.k = static_cast<int>(std::llround(value));
            row.valid = spec.exponent >= 1.0 && spec.exponent < q.dim;
            if (row.valid) row.bound = closed_norm_small_bound(q, spec.exponent);
            const ConstructionInstance inst = build_small_norm(q);
            const DomainBall ball(q.dim, inst.domain_radius);
            row.quadrature =
                lp_norm(positive_part(inst.a), spec.exponent, 0.0, inst.domain_radius, ball)
                    .value;
            break;
        }
        case Family::N3: {
            ParamsN3 q = std::get<ParamsN3>(spec.base);
            q.d = value;
            q.c = q.cd_target() - value;
            row.valid = spec.exponent >= 1.0 && spec.exponent < 0.5 * q.dim;
            if (row.valid) row.closed_form = closed_norm_n3(q, spec.exponent);
            if (q.epsilon >= 1e-6 && row.valid) {
                const ConstructionInstance inst = build_n3(q);
                const DomainBall ball(q.dim, inst.domain_radius);
                row.quadrature =
                    lp_norm(positive_part(inst.a), spec.exponent, q.epsilon, 1.0, ball).value;
            }
            break;
        }
        case Family::N2: {
            ParamsN2 q = std::get<ParamsN2>(spec.base);
            q.K = value;
            if (spec.n2_eps_tracks_K) q.log_epsilon = -value;
            row.valid = spec.exponent == 1.0;
            if (row.valid) row.bound = n2_l1_bound(q);
            if (row.valid && q.log_epsilon >= std::log(1e-6)) {
                const ConstructionInstance inst = build_n2(q);
                const DomainBall ball(2, inst.domain_radius);
                row.quadrature = lp_norm(inst.a, 1.0, 0.0, inst.domain_radius, ball).value;
            }
            break;
        }
    }
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, bool parallel) {
    bool increasing = true, decreasing = true;
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
        if (!(spec.values[i] > spec.values[i - 1])) increasing = false;
        if (!(spec.values[i] < spec.values[i - 1])) decreasing = false;
    }
    if (!increasing && !decreasing)
        throw std::invalid_argument("run_sweep: grid must be monotone in the swept parameter");

    SweepTable table;
    table.rows.resize(spec.values.size());

    switch (spec.family) {
        case Family::SmallNorm: table.param_name = "k"; break;
        case Family::N3: table.param_name = "d"; break;
        case Family::N2: table.param_name = "K"; break;
    }

    par::for_each_index(
        spec.values.size(),
        [&](std::size_t idx) {
            const double value = spec.values[idx];
            SweepRow row;
            row.param = value;
            row.closed_form = kNaN;
            row.quadrature = kNaN;
            row.bound = kNaN;
            // A row outside some validity domain is marked, never dropped,
            // and must not leak an exception out of the worker.
            try {
                compute_sweep_row(spec, value, row);
            } catch (const std::exception&) {
                row.valid = false;
                row.closed_form = kNaN;
                row.quadrature = kNaN;
                row.bound = kNaN;
            }
            table.rows[idx] = row;
        },
        parallel);

    add_summary_stats(table, "closed_form", &SweepRow::closed_form);
    add_summary_stats(table, "quadrature", &SweepRow::quadrature);
    add_summary_stats(table, "bound", &SweepRow::bound);
    return table;
}

std::string format_17g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream os;
    os << "param,closed_form,quadrature,bound,valid\n";
    for (const auto& row : table.rows) {
        os << format_17g(row.param) << ',' << format_17g(row.closed_form) << ','
           << format_17g(row.quadrature) << ',' << format_17g(row.bound) << ','
           << (row.valid ? 1 : 0) << '\n';
    }
    for (const auto& [key, value] : table.summary) os << "# " << key << ',' << format_17g(value) << '\n';
    return os.str();
}

}  // namespace puccilab
