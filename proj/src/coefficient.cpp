#include "puccilab/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace puccilab {

namespace {

constexpr int kSampleCount = 64;
constexpr double kDropRel = 1e-11;

double sample_radius(double lo, double hi, int i, int n) {
    // Interior samples plus near-endpoint limits.
    const double t = (i + 0.5) / n;
    return lo + (hi - lo) * t;
}

int strict_sign(double v) { return v > 0.0 ? 1 : v < 0.0 ? -1 : 0; }

// Sign classification by sampling: 64 interior points plus limits taken just
// inside the endpoints.
SignInfo sampled_sign(const TermSum& terms, double lo, double hi,
                      double (*f)(const TermSum&, double)) {
    const double pad = 1e-9 * (hi - lo);
    SignInfo info;
    int seen = 0;
    auto absorb = [&](double r) {
        const int s = strict_sign(f(terms, r));
        if (s == 0) return true;
        if (seen == 0) {
            seen = s;
            return true;
        }
        return s == seen;
    };
    bool stable = absorb(lo + pad) && absorb(hi - pad);
    for (int i = 0; stable && i < kSampleCount; ++i) stable = absorb(sample_radius(lo, hi, i, kSampleCount));
    info.stable = stable;
    info.sign = stable ? seen : 0;
    return info;
}

struct PowerLike {
    double coef;
    double exponent;
};

// d1 and d2 of every non-Exp basis term are single signed powers of r, which
// makes two-term sign analysis an explicit root formula.
std::optional<PowerLike> d1_as_power(const BasisTerm& t) {
    switch (t.kind) {
        case TermKind::Power: return PowerLike{t.coef * t.param, t.param - 1.0};
        case TermKind::Log: return PowerLike{t.coef, -1.0};
        case TermKind::Constant: return PowerLike{0.0, 0.0};
        default: return std::nullopt;
    }
}

std::optional<PowerLike> d2_as_power(const BasisTerm& t) {
    switch (t.kind) {
        case TermKind::Power: return PowerLike{t.coef * t.param * (t.param - 1.0), t.param - 2.0};
        case TermKind::Log: return PowerLike{-t.coef, -2.0};
        case TermKind::Constant: return PowerLike{0.0, 0.0};
        default: return std::nullopt;
    }
}

SignInfo power_pair_sign(std::vector<PowerLike> ps, double lo, double hi) {
    std::erase_if(ps, [](const PowerLike& p) { return p.coef == 0.0; });
    SignInfo info;
    if (ps.empty()) {
        info.stable = true;
        info.sign = 0;
        return info;
    }
    if (ps.size() == 1) {
        info.stable = true;
        info.sign = strict_sign(ps[0].coef);
        return info;
    }
    if (ps.size() == 2) {
        if (strict_sign(ps[0].coef) == strict_sign(ps[1].coef)) {
            info.stable = true;
            info.sign = strict_sign(ps[0].coef);
            return info;
        }
        // A r^a + B r^b with opposite signs: single root at (-B/A)^{1/(a-b)}.
        const double root =
            std::pow(-ps[1].coef / ps[0].coef, 1.0 / (ps[0].exponent - ps[1].exponent));
        info.stable = !(root > lo && root < hi);
        if (info.stable) {
            const double mid = 0.5 * (lo + hi);
            info.sign = strict_sign(ps[0].coef * std::pow(mid, ps[0].exponent) +
                                    ps[1].coef * std::pow(mid, ps[1].exponent));
        }
        return info;
    }
    info.stable = false;
    return info;
}

SignInfo analytic_or_sampled(const TermSum& terms, double lo, double hi, bool second) {
    // Constants never contribute to derivatives; a lone ShiftedSquare has an
    // affine first derivative with its root at the center. Everything that
    // reduces to at most two signed powers gets the explicit root formula,
    // the rest is sampled.
    TermSum active;
    for (const auto& t : terms)
        if (t.kind != TermKind::Constant) active.push_back(t);

    if (!second && active.size() == 1 && active[0].kind == TermKind::ShiftedSquare) {
        const BasisTerm& t = active[0];
        SignInfo info;
        info.stable = !(t.param > lo && t.param < hi);
        if (info.stable) {
            const double mid = 0.5 * (lo + hi);
            info.sign = strict_sign(-2.0 * t.coef * (t.param - mid));
        }
        return info;
    }

    std::vector<PowerLike> powers;
    bool analytic = true;
    for (const auto& t : active) {
        if (second && t.kind == TermKind::ShiftedSquare) {
            powers.push_back(PowerLike{2.0 * t.coef, 0.0});
            continue;
        }
        auto p = second ? d2_as_power(t) : d1_as_power(t);
        if (!p) {
            analytic = false;
            break;
        }
        powers.push_back(*p);
    }
    if (analytic && powers.size() <= 2) {
        SignInfo info = power_pair_sign(powers, lo, hi);
        if (info.stable) return info;
    }
    return sampled_sign(terms, lo, hi, second ? &sum_d2 : &sum_d1);
}

double weight_for(const EllipticityPair& e, OpSign sign, int value_sign) {
    if (value_sign == 0) return sign == OpSign::Plus ? e.Lambda : e.lambda;
    const bool positive = value_sign > 0;
    if (sign == OpSign::Plus) return positive ? e.Lambda : e.lambda;
    return positive ? e.lambda : e.Lambda;
}

struct ScaledTerm {
    double coef = 0.0;
    double scale = 0.0;  // sum of |contributions|, for the drop threshold
};

using SymbolicNumerator = std::map<std::pair<CoefTermKind, double>, ScaledTerm>;

void add_term(SymbolicNumerator& num, CoefTermKind kind, double param, double coef) {
    auto& slot = num[{kind, param}];
    slot.coef += coef;
    slot.scale += std::fabs(coef);
}

// Symbolic  wt (N-1) du/r + wr d2u  over the term basis.
CoefTermSum numerator_terms(const TermSum& profile, int dim, double wt, double wr) {
    SymbolicNumerator num;
    const double tang = wt * (dim - 1);
    for (const auto& t : profile) {
        switch (t.kind) {
            case TermKind::Power:
                add_term(num, CoefTermKind::Power, t.param - 2.0, t.coef * tang * t.param);
                add_term(num, CoefTermKind::Power, t.param - 2.0,
                         t.coef * wr * t.param * (t.param - 1.0));
                break;
            case TermKind::Log:
                add_term(num, CoefTermKind::Power, -2.0, t.coef * tang);
                add_term(num, CoefTermKind::Power, -2.0, -t.coef * wr);
                break;
            case TermKind::Exp:
                add_term(num, CoefTermKind::ExpOverR, t.param, t.coef * tang * t.param);
                add_term(num, CoefTermKind::Exp, t.param, t.coef * wr * t.param * t.param);
                break;
            case TermKind::ShiftedSquare:
                add_term(num, CoefTermKind::Constant, 0.0, 2.0 * t.coef * tang);
                add_term(num, CoefTermKind::Power, -1.0, -2.0 * t.coef * t.param * tang);
                add_term(num, CoefTermKind::Constant, 0.0, 2.0 * t.coef * wr);
                break;
            case TermKind::Constant: break;
        }
    }
    CoefTermSum out;
    for (const auto& [key, st] : num) {
        if (std::fabs(st.coef) <= kDropRel * st.scale) continue;  // exact cancellation up to fp
        out.push_back(CoefTerm{key.first, st.coef, key.second});
    }
    return out;
}

// Recognize num = k * r^{-2} * profile for a two-power profile, or an
// Exp-factor profile; both let the quotient shed its denominator.
std::optional<CoefTermSum> simplify_quotient(const CoefTermSum& num, const TermSum& profile) {
    if (profile.size() == 1 && profile[0].kind == TermKind::Exp && profile[0].coef != 0.0) {
        CoefTermSum out;
        for (const auto& t : num) {
            if ((t.kind != CoefTermKind::Exp && t.kind != CoefTermKind::ExpOverR) ||
                t.param != profile[0].param)
                return std::nullopt;
            out.push_back(CoefTerm{t.kind == CoefTermKind::Exp ? CoefTermKind::Constant
                                                               : CoefTermKind::Power,
                                   -t.coef / profile[0].coef,
                                   t.kind == CoefTermKind::Exp ? 0.0 : -1.0});
        }
        return out;
    }
    if (profile.size() == 2 && profile[0].kind == TermKind::Power &&
        profile[1].kind == TermKind::Power && num.size() == 2) {
        double k[2] = {0.0, 0.0};
        bool matched[2] = {false, false};
        for (const auto& nt : num) {
            if (nt.kind != CoefTermKind::Power) return std::nullopt;
            int match = -1;
            for (int j = 0; j < 2; ++j)
                if (profile[static_cast<std::size_t>(j)].param - 2.0 == nt.param) match = j;
            if (match < 0 || matched[match] || profile[static_cast<std::size_t>(match)].coef == 0.0)
                return std::nullopt;
            matched[match] = true;
            k[match] = nt.coef / profile[static_cast<std::size_t>(match)].coef;
        }
        if (!matched[0] || !matched[1]) return std::nullopt;
        if (std::fabs(k[0] - k[1]) > kDropRel * (std::fabs(k[0]) + std::fabs(k[1])))
            return std::nullopt;
        return CoefTermSum{CoefTerm{CoefTermKind::Power, -0.5 * (k[0] + k[1]), -2.0}};
    }
    return std::nullopt;
}

std::optional<double> find_crossing(const TermSum& terms, double lo, double hi) {
    const double pad = 1e-12 * (hi - lo);
    double prev_r = lo + pad;
    int prev_s = strict_sign(sum_value(terms, prev_r));
    for (int i = 1; i <= kSampleCount + 1; ++i) {
        const double r = i <= kSampleCount ? sample_radius(lo, hi, i - 1, kSampleCount) : hi - pad;
        const int s = strict_sign(sum_value(terms, r));
        if (s != 0 && prev_s != 0 && s != prev_s) {
            double a = prev_r, b = r;
            for (int it = 0; it < 200 && (b - a) > 1e-15 * hi; ++it) {
                const double m = 0.5 * (a + b);
                if (strict_sign(sum_value(terms, m)) == prev_s)
                    a = m;
                else
                    b = m;
            }
            return 0.5 * (a + b);
        }
        if (s != 0) {
            prev_s = s;
            prev_r = r;
        }
    }
    return std::nullopt;
}

}  // namespace

double CoefTerm::value(double r) const {
    switch (kind) {
        case CoefTermKind::Power: return coef * std::pow(r, param);
        case CoefTermKind::Exp: return coef * std::exp(param * r);
        case CoefTermKind::ExpOverR: return coef * std::exp(param * r) / r;
        case CoefTermKind::Constant: return coef;
    }
    return 0.0;
}

double coef_sum_value(const CoefTermSum& terms, double r) {
    double s = 0.0;
    for (const auto& t : terms) s += t.value(r);
    return s;
}

SignInfo derivative_sign_on(const TermSum& terms, double lo, double hi) {
    return analytic_or_sampled(terms, lo, hi, false);
}

SignInfo second_derivative_sign_on(const TermSum& terms, double lo, double hi) {
    return analytic_or_sampled(terms, lo, hi, true);
}

std::optional<double> zero_crossing(const TermSum& terms, double lo, double hi) {
    return find_crossing(terms, lo, hi);
}

int CoefficientField::piece_index(double r) const {
    if (!(r > 0.0) || r > outer_radius())
        throw std::domain_error("CoefficientField: radius outside (0, outer_radius]");
    if (r == outer_radius()) return piece_count() - 1;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
    const int idx = static_cast<int>(it - breakpoints.begin()) - 1;
    if (r == breakpoints[static_cast<std::size_t>(idx)] && idx > 0)
        throw std::domain_error("CoefficientField: evaluation at an interior breakpoint");
    return idx;
}

double CoefficientField::eval_on_piece(int piece, double r) const {
    const CoefPiece& p = pieces[static_cast<std::size_t>(piece)];
    double v = 0.0;
    switch (p.mode) {
        case CoefPiece::Mode::Zero: v = 0.0; break;
        case CoefPiece::Mode::Closed:
            v = coef_sum_value(p.num, r);
            if (!p.den.empty()) v /= sum_value(p.den, r);
            break;
        case CoefPiece::Mode::InducedFixed: {
            const double du = sum_d1(p.profile, r);
            const double d2u = sum_d2(p.profile, r);
            const double u = sum_value(p.profile, r);
            v = -(p.w_tangential * (dim - 1) * du / r + p.w_radial * d2u) / u;
            break;
        }
        case CoefPiece::Mode::InducedPointwise: {
            const RadialJet j{r, sum_value(p.profile, r), sum_d1(p.profile, r),
                              sum_d2(p.profile, r), dim};
            v = -pucci_radial(e, j, sign) / j.u;
            break;
        }
    }
    if (p.clip_negative && v < 0.0) v = 0.0;
    return v;
}

double CoefficientField::eval(double r) const { return eval_on_piece(piece_index(r), r); }

CoefficientField CoefficientField::constant(int dim, double radius, double value) {
    CoefficientField f;
    f.dim = dim;
    f.breakpoints = {0.0, radius};
    CoefPiece p;
    if (value == 0.0) {
        p.mode = CoefPiece::Mode::Zero;
    } else {
        p.mode = CoefPiece::Mode::Closed;
        p.num = {CoefTerm{CoefTermKind::Constant, value, 0.0}};
    }
    f.pieces.push_back(std::move(p));
    return f;
}

CoefficientField CoefficientField::closed(int dim, std::vector<double> breakpoints,
                                          std::vector<CoefTermSum> numerators) {
    if (numerators.size() + 1 != breakpoints.size())
        throw std::invalid_argument("CoefficientField: need one numerator per interval");
    CoefficientField f;
    f.dim = dim;
    f.breakpoints = std::move(breakpoints);
    for (auto& num : numerators) {
        CoefPiece p;
        if (num.empty()) {
            p.mode = CoefPiece::Mode::Zero;
        } else {
            p.mode = CoefPiece::Mode::Closed;
            p.num = std::move(num);
        }
        f.pieces.push_back(std::move(p));
    }
    return f;
}

InducedResult induced_coefficient_checked(const RadialPiecewise& u, const EllipticityPair& e,
                                          OpSign sign) {
    u.validate();
    InducedResult result;
    result.field.dim = u.dim;
    result.field.breakpoints = u.breakpoints;
    result.field.e = e;
    result.field.sign = sign;

    for (int i = 0; i < u.piece_count(); ++i) {
        const TermSum& profile = u.pieces[static_cast<std::size_t>(i)];
        const double lo = u.breakpoints[static_cast<std::size_t>(i)];
        const double hi = u.breakpoints[static_cast<std::size_t>(i) + 1];

        CoefPiece piece;
        const SignInfo s1 = derivative_sign_on(profile, lo, hi);
        const SignInfo s2 = second_derivative_sign_on(profile, lo, hi);

        if (s1.stable && s2.stable) {
            const double wt = weight_for(e, sign, s1.sign);
            const double wr = weight_for(e, sign, s2.sign);
            CoefTermSum num = numerator_terms(profile, u.dim, wt, wr);
            if (num.empty()) {
                piece.mode = CoefPiece::Mode::Zero;
            } else if (auto simplified = simplify_quotient(num, profile)) {
                piece.mode = CoefPiece::Mode::Closed;
                piece.num = std::move(*simplified);
            } else {
                if (auto crossing = zero_crossing(profile, lo, hi)) {
                    result.errors.push_back(
                        {i, *crossing, "profile vanishes inside the piece with nonzero numerator"});
                }
                piece.mode = CoefPiece::Mode::Closed;
                for (auto& t : num) t.coef = -t.coef;
                piece.num = std::move(num);
                piece.den = profile;
            }
        } else {
            if (auto crossing = zero_crossing(profile, lo, hi)) {
                result.errors.push_back(
                    {i, *crossing, "profile vanishes inside the piece with nonzero numerator"});
            }
            piece.mode = CoefPiece::Mode::InducedPointwise;
            piece.profile = profile;
        }
        result.field.pieces.push_back(std::move(piece));
    }
    return result;
}

CoefficientField induced_coefficient(const RadialPiecewise& u, const EllipticityPair& e,
                                     OpSign sign) {
    InducedResult r = induced_coefficient_checked(u, e, sign);
    if (!r.errors.empty()) {
        std::ostringstream msg;
        msg << "induced_coefficient: piece " << r.errors[0].piece << " " << r.errors[0].message
            << " (crossing radius " << r.errors[0].crossing_radius << ")";
        throw std::domain_error(msg.str());
    }
    return std::move(r.field);
}

CoefficientField positive_part(const CoefficientField& a) {
    CoefficientField out;
    out.dim = a.dim;
    out.breakpoints = a.breakpoints;
    out.e = a.e;
    out.sign = a.sign;
    for (int i = 0; i < a.piece_count(); ++i) {
        const CoefPiece& p = a.pieces[static_cast<std::size_t>(i)];
        if (p.mode == CoefPiece::Mode::Zero) {
            out.pieces.push_back(p);
            continue;
        }
        const double lo = a.breakpoints[static_cast<std::size_t>(i)];
        const double hi = a.breakpoints[static_cast<std::size_t>(i) + 1];
        const double pad = 1e-9 * (hi - lo);

        bool any_neg = false, any_pos = false, monotone_known = true;
        double prev = a.eval_on_piece(i, lo + pad);
        int direction = 0;
        auto absorb = [&](double v) {
            if (v < 0.0) any_neg = true;
            if (v > 0.0) any_pos = true;
        };
        absorb(prev);
        for (int k = 0; k <= kSampleCount; ++k) {
            const double r = k < kSampleCount ? sample_radius(lo, hi, k, kSampleCount) : hi - pad;
            const double v = a.eval_on_piece(i, r);
            absorb(v);
            if (v > prev) {
                if (direction < 0) monotone_known = false;
                direction = 1;
            } else if (v < prev) {
                if (direction > 0) monotone_known = false;
                direction = -1;
            }
            prev = v;
        }

        CoefPiece q = p;
        if (!any_neg) {
            // keep representation as-is
        } else if (!any_pos && monotone_known) {
            q = CoefPiece{};
            q.mode = CoefPiece::Mode::Zero;
        } else {
            q.clip_negative = true;
        }
        out.pieces.push_back(std::move(q));
    }
    return out;
}

std::string describe_piece(const CoefPiece& piece) {
    std::ostringstream os;
    switch (piece.mode) {
        case CoefPiece::Mode::Zero: return "0";
        case CoefPiece::Mode::Closed: {
            bool first = true;
            for (const auto& t : piece.num) {
                if (!first) os << " + ";
                first = false;
                switch (t.kind) {
                    case CoefTermKind::Power: os << t.coef << "*r^(" << t.param << ")"; break;
                    case CoefTermKind::Exp: os << t.coef << "*exp(" << t.param << "*r)"; break;
                    case CoefTermKind::ExpOverR:
                        os << t.coef << "*exp(" << t.param << "*r)/r";
                        break;
                    case CoefTermKind::Constant: os << t.coef; break;
                }
            }
            if (!piece.den.empty()) os << " over a " << piece.den.size() << "-term denominator";
            break;
        }
        case CoefPiece::Mode::InducedFixed: os << "operator quotient, frozen weights"; break;
        case CoefPiece::Mode::InducedPointwise: os << "operator quotient, pointwise weights"; break;
    }
    if (piece.clip_negative) os << " (clipped at 0)";
    return os.str();
}

}  // namespace puccilab
