#include "puccilab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace puccilab {

double BasisTerm::value(double r) const {
    switch (kind) {
        case TermKind::Power: return coef * std::pow(r, param);
        case TermKind::Log: return coef * std::log(r);
        case TermKind::Exp: return coef * std::exp(param * r);
        case TermKind::ShiftedSquare: return coef * (param - r) * (param - r);
        case TermKind::Constant: return coef;
    }
    return 0.0;
}

double BasisTerm::d1(double r) const {
    switch (kind) {
        case TermKind::Power: return coef * param * std::pow(r, param - 1.0);
        case TermKind::Log: return coef / r;
        case TermKind::Exp: return coef * param * std::exp(param * r);
        case TermKind::ShiftedSquare: return -2.0 * coef * (param - r);
        case TermKind::Constant: return 0.0;
    }
    return 0.0;
}

double BasisTerm::d2(double r) const {
    switch (kind) {
        case TermKind::Power: return coef * param * (param - 1.0) * std::pow(r, param - 2.0);
        case TermKind::Log: return -coef / (r * r);
        case TermKind::Exp: return coef * param * param * std::exp(param * r);
        case TermKind::ShiftedSquare: return 2.0 * coef;
        case TermKind::Constant: return 0.0;
    }
    return 0.0;
}

double sum_value(const TermSum& terms, double r) {
    double s = 0.0;
    for (const auto& t : terms) s += t.value(r);
    return s;
}

double sum_d1(const TermSum& terms, double r) {
    double s = 0.0;
    for (const auto& t : terms) s += t.d1(r);
    return s;
}

double sum_d2(const TermSum& terms, double r) {
    double s = 0.0;
    for (const auto& t : terms) s += t.d2(r);
    return s;
}

namespace {

bool term_allowed_at_origin(const BasisTerm& t) {
    switch (t.kind) {
        case TermKind::Constant: return true;
        case TermKind::Power: return t.param >= 2.0;
        default: return false;
    }
}

}  // namespace

void RadialPiecewise::validate() const {
    if (dim < 2) throw std::invalid_argument("RadialPiecewise: dim must be >= 2");
    if (breakpoints.size() < 2) throw std::invalid_argument("RadialPiecewise: need at least one piece");
    if (breakpoints.front() != 0.0)
        throw std::invalid_argument("RadialPiecewise: breakpoints must start at 0");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("RadialPiecewise: breakpoints must be strictly increasing");
    if (pieces.size() + 1 != breakpoints.size())
        throw std::invalid_argument("RadialPiecewise: need exactly one piece per interval");
    for (const auto& t : pieces.front())
        if (!term_allowed_at_origin(t))
            throw std::invalid_argument(
                "RadialPiecewise: the piece covering r=0 admits only constants and powers >= 2");
}

int RadialPiecewise::piece_index(double r) const {
    if (!(r > 0.0) || r > outer_radius())
        throw std::domain_error("RadialPiecewise: radius outside (0, outer_radius]");
    if (r == outer_radius()) return piece_count() - 1;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
    const int idx = static_cast<int>(it - breakpoints.begin()) - 1;
    if (r == breakpoints[static_cast<std::size_t>(idx)] && idx > 0)
        throw std::domain_error(
            "RadialPiecewise: two-sided evaluation at an interior breakpoint; use jet_left/jet_right");
    return idx;
}

RadialJet RadialPiecewise::jet_on_piece(int piece, double r) const {
    const auto& terms = pieces[static_cast<std::size_t>(piece)];
    return RadialJet{r, sum_value(terms, r), sum_d1(terms, r), sum_d2(terms, r), dim};
}

RadialJet RadialPiecewise::jet(double r) const { return jet_on_piece(piece_index(r), r); }

RadialJet RadialPiecewise::jet_left(double breakpoint_radius) const {
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (breakpoints[i] == breakpoint_radius)
            return jet_on_piece(static_cast<int>(i) - 1, breakpoint_radius);
    throw std::domain_error("RadialPiecewise: jet_left requires an exact breakpoint radius");
}

RadialJet RadialPiecewise::jet_right(double breakpoint_radius) const {
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i] == breakpoint_radius)
            return jet_on_piece(static_cast<int>(i), breakpoint_radius);
    throw std::domain_error("RadialPiecewise: jet_right requires an exact breakpoint radius");
}

InterfaceReport interface_report(const RadialPiecewise& f, double tol) {
    InterfaceReport report;
    report.tol = tol;
    for (std::size_t i = 1; i + 1 < f.breakpoints.size(); ++i) {
        const double r = f.breakpoints[i];
        const RadialJet left = f.jet_on_piece(static_cast<int>(i) - 1, r);
        const RadialJet right = f.jet_on_piece(static_cast<int>(i), r);
        InterfaceRecord rec;
        rec.radius = r;
        rec.value_left = left.u;
        rec.value_right = right.u;
        rec.value_gap = std::fabs(left.u - right.u);
        rec.deriv_left = left.du;
        rec.deriv_right = right.du;
        if (std::fabs(left.du - right.du) <= tol)
            rec.kink = KinkClass::C1;
        else
            rec.kink = right.du > left.du ? KinkClass::Convex : KinkClass::Concave;
        report.records.push_back(rec);
    }
    return report;
}

std::string kink_name(KinkClass k) {
    switch (k) {
        case KinkClass::C1: return "C1";
        case KinkClass::Convex: return "convex";
        case KinkClass::Concave: return "concave";
    }
    return "?";
}

}  // namespace puccilab
