#pragma once

#include <optional>
#include <string>
#include <vector>

#include "puccilab/radial.hpp"

namespace puccilab {

// Value-only terms for coefficient numerators. ExpOverR covers e^{s r}/r,
// which the tangential part of the operator produces from Exp profile terms.
enum class CoefTermKind { Power, Exp, ExpOverR, Constant };

struct CoefTerm {
    CoefTermKind kind;
    double coef;
    double param = 0.0;

    double value(double r) const;
};

using CoefTermSum = std::vector<CoefTerm>;

double coef_sum_value(const CoefTermSum& terms, double r);

// One piece of a radial coefficient field on an interval (lo, hi):
//   Zero             a == 0
//   Closed           a(r) = num(r) / den(r), den empty meaning 1
//   InducedFixed     a(r) = -(wt (N-1) du/r + wr d2u) / u, weights frozen
//   InducedPointwise same quotient with weights resolved from the jet signs
// clip_negative post-composes max(., 0).
struct CoefPiece {
    enum class Mode { Zero, Closed, InducedFixed, InducedPointwise };
    Mode mode = Mode::Zero;
    CoefTermSum num;
    TermSum den;
    TermSum profile;
    double w_tangential = 0.0;
    double w_radial = 0.0;
    bool clip_negative = false;
};

struct CoefficientField {
    int dim = 0;
    std::vector<double> breakpoints;
    std::vector<CoefPiece> pieces;
    EllipticityPair e = EllipticityPair::oracle(1.0, 1.0);
    OpSign sign = OpSign::Plus;

    double outer_radius() const { return breakpoints.back(); }
    int piece_count() const { return static_cast<int>(pieces.size()); }
    int piece_index(double r) const;
    double eval_on_piece(int piece, double r) const;
    double eval(double r) const;

    static CoefficientField constant(int dim, double radius, double value);
    static CoefficientField closed(int dim, std::vector<double> breakpoints,
                                   std::vector<CoefTermSum> numerators);
};

// Sign classification of a function on an interval: stable means the sign is
// constant on the open interval (zeros allowed at the ends).
struct SignInfo {
    int sign = 0;  // -1, 0, +1 when stable
    bool stable = false;
};

SignInfo derivative_sign_on(const TermSum& terms, double lo, double hi);
SignInfo second_derivative_sign_on(const TermSum& terms, double lo, double hi);

// First radius in (lo, hi) where the sum crosses zero, if any.
std::optional<double> zero_crossing(const TermSum& terms, double lo, double hi);

struct InducedCoefficientError {
    int piece;
    double crossing_radius;
    std::string message;
};

// a := -M^sign(D^2 u)/u piecewise. Pieces with an identically vanishing
// numerator become Zero regardless of zeros of u; pieces whose quotient
// simplifies symbolically drop the denominator. A piece that genuinely
// divides by a vanishing u is a structural failure.
CoefficientField induced_coefficient(const RadialPiecewise& u, const EllipticityPair& e,
                                     OpSign sign);

// Non-throwing variant used by the validators.
struct InducedResult {
    CoefficientField field;
    std::vector<InducedCoefficientError> errors;
};
InducedResult induced_coefficient_checked(const RadialPiecewise& u, const EllipticityPair& e,
                                          OpSign sign);

// Pointwise max(a, 0); pieces with constant sign keep their representation.
CoefficientField positive_part(const CoefficientField& a);

// Human-readable piece description for reports.
std::string describe_piece(const CoefPiece& piece);

}  // namespace puccilab
