#pragma once

#include <string>
#include <vector>

#include "puccilab/pucci.hpp"

namespace puccilab {

// One closed-form term of a radial profile. `param` is the exponent for
// Power, the rate for Exp, the center for ShiftedSquare, and unused otherwise.
enum class TermKind { Power, Log, Exp, ShiftedSquare, Constant };

struct BasisTerm {
    TermKind kind;
    double coef;
    double param = 0.0;

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;

    static BasisTerm power(double coef, double exponent) { return {TermKind::Power, coef, exponent}; }
    static BasisTerm log_term(double coef) { return {TermKind::Log, coef, 0.0}; }
    static BasisTerm exp_term(double coef, double rate) { return {TermKind::Exp, coef, rate}; }
    static BasisTerm shifted_square(double coef, double center) {
        return {TermKind::ShiftedSquare, coef, center};
    }
    static BasisTerm constant(double coef) { return {TermKind::Constant, coef, 0.0}; }
};

using TermSum = std::vector<BasisTerm>;

double sum_value(const TermSum& terms, double r);
double sum_d1(const TermSum& terms, double r);
double sum_d2(const TermSum& terms, double r);

// Piecewise closed-form radial profile. Breakpoints 0 = b_0 < ... < b_m with
// one term sum per interval [b_{i-1}, b_i); evaluation is exact term-wise.
struct RadialPiecewise {
    int dim = 0;
    std::vector<double> breakpoints;
    std::vector<TermSum> pieces;

    double outer_radius() const { return breakpoints.back(); }
    int piece_count() const { return static_cast<int>(pieces.size()); }

    // Index of the piece whose half-open interval contains r; r equal to an
    // interior breakpoint is ambiguous and rejected.
    int piece_index(double r) const;

    RadialJet jet(double r) const;
    RadialJet jet_on_piece(int piece, double r) const;
    RadialJet jet_left(double breakpoint_radius) const;
    RadialJet jet_right(double breakpoint_radius) const;

    void validate() const;
};

enum class KinkClass { C1, Convex, Concave };

struct InterfaceRecord {
    double radius;
    double value_left;
    double value_right;
    double value_gap;
    double deriv_left;
    double deriv_right;
    KinkClass kink;
};

struct InterfaceReport {
    double tol;
    std::vector<InterfaceRecord> records;
};

// One-sided values and derivatives at every interior breakpoint. Reports
// geometry only; continuity/kink claims are left to the caller to interpret.
InterfaceReport interface_report(const RadialPiecewise& f, double tol);

std::string kink_name(KinkClass k);

}  // namespace puccilab
