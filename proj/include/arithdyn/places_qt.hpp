#pragma once

#include "arithdyn/poly.hpp"
#include "arithdyn/ratfunc.hpp"

#include <string>

namespace arithdyn {

/// A place of Q(t): a monic irreducible polynomial, or infinity. N_p is the
/// residue degree over Q, i.e. deg(pi), and 1 at infinity.
class FFPlace {
public:
    /// Makes `pi` monic. Irreducibility is the caller's assertion and is not
    /// checked; for reducible `pi` valuations are pi-adic multiplicities.
    static FFPlace finite(const QPoly& pi);
    static FFPlace infinite() { return FFPlace(); }

    bool is_infinite() const noexcept { return infinite_; }
    const QPoly& generator() const noexcept { return pi_; }
    int degree() const noexcept { return infinite_ ? 1 : pi_.degree(); }

private:
    FFPlace() = default;
    bool infinite_ = true;
    QPoly pi_;
};

/// Multiplicity of the polynomial `pi` in nonzero g.
long poly_multiplicity(QPoly g, const QPoly& pi);

long ff_valuation(const FFElement& f, const FFPlace& place);

/// max(deg numer, deg denom).
long ff_height(const FFElement& f);

/// -sum_p min(v_p(f), 0) N_p evaluated through the square-free decomposition
/// of the denominator plus the infinite place; equals ff_height.
long ff_height_by_places(const FFElement& f);

/// sum over all places of v_p(f) N_p, via square-free decompositions of
/// numerator and denominator. Zero by the product formula.
long ff_place_degree_sum(const FFElement& f);

struct MasonReport {
    QPoly a, b, c;
    int max_degree = 0;
    int radical_degree = 0;
    /// max_degree <= radical_degree - 1
    bool holds = false;
    bool tight = false;
};

/// Checks max(deg a, deg b, deg c) <= deg rad(abc) - 1 for c = a + b.
/// Throws InputError unless a, b are nonzero and coprime, c != 0, and not
/// all of a, b, c are constant.
MasonReport mason_check(const QPoly& a, const QPoly& b);

/// Parses a polynomial or rational function in t with rational coefficients.
FFElement parse_ff(const std::string& text);
QPoly parse_qt_poly(const std::string& text);

using FFXPoly = Poly<FFElement>;

/// num/den in Q(t)[x], kept unreduced so written common factors stay visible.
struct FFXQuotient {
    FFXPoly num, den;
};

/// Parses an expression in x and t.
FFXQuotient parse_ff_xquotient(const std::string& text);
/// As above but the expression must be a polynomial in x.
FFXPoly parse_ff_xpoly(const std::string& text);

}  // namespace arithdyn
