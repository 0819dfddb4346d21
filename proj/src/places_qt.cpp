#include "arithdyn/places_qt.hpp"

#include "arithdyn/expr.hpp"

#include <algorithm>

namespace arithdyn {

FFPlace FFPlace::finite(const QPoly& pi) {
    if (pi.degree() < 1) throw InputError("a finite place needs a nonconstant polynomial");
    FFPlace p;
    p.infinite_ = false;
    p.pi_ = pi.monic();
    return p;
}

long poly_multiplicity(QPoly g, const QPoly& pi) {
    if (g.is_zero()) throw InputError("multiplicity in the zero polynomial");
    long k = 0;
    for (;;) {
        auto [q, r] = divmod(g, pi);
        if (!r.is_zero()) return k;
        g = std::move(q);
        ++k;
    }
}

long ff_valuation(const FFElement& f, const FFPlace& place) {
    if (f.is_zero()) throw InputError("valuation of zero");
    if (place.is_infinite()) return f.denom().degree() - f.numer().degree();
    return poly_multiplicity(f.numer(), place.generator()) - poly_multiplicity(f.denom(), place.generator());
}

long ff_height(const FFElement& f) {
    if (f.is_zero()) return 0;
    return std::max(f.numer().degree(), f.denom().degree());
}

namespace {

/// sum_i i * deg(part_i) over the square-free decomposition, i.e. the total
/// multiplicity-weighted degree of the finite places dividing g.
long weighted_place_degree(const QPoly& g) {
    long total = 0;
    const auto parts = squarefree_decomposition(g);
    for (std::size_t i = 0; i < parts.size(); ++i)
        total += static_cast<long>(i + 1) * parts[i].degree();
    return total;
}

}  // namespace

long ff_height_by_places(const FFElement& f) {
    if (f.is_zero()) return 0;
    // Finite places with v < 0 are exactly those dividing the denominator.
    const long finite = weighted_place_degree(f.denom());
    const long v_inf = ff_valuation(f, FFPlace::infinite());
    return finite + std::max(-v_inf, 0L);
}

long ff_place_degree_sum(const FFElement& f) {
    if (f.is_zero()) throw InputError("place sum of zero");
    return weighted_place_degree(f.numer()) - weighted_place_degree(f.denom()) +
           ff_valuation(f, FFPlace::infinite());
}

MasonReport mason_check(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) throw InputError("mason: a and b must be nonzero");
    if (!poly_gcd(a, b).is_constant()) throw InputError("mason: a and b must be coprime");
    MasonReport r;
    r.a = a;
    r.b = b;
    r.c = a + b;
    if (r.c.is_zero()) throw InputError("mason: c = a + b must be nonzero");
    if (a.is_constant() && b.is_constant()) throw InputError("mason: a, b, c all constant");
    r.max_degree = std::max({a.degree(), b.degree(), r.c.degree()});
    r.radical_degree = squarefree_part(a * b * r.c).degree();
    r.holds = r.max_degree <= r.radical_degree - 1;
    r.tight = r.max_degree == r.radical_degree - 1;
    return r;
}

FFElement parse_ff(const std::string& text) {
    const ExprPtr e = parse_expression(text);
    return evaluate<FFElement>(
        *e, [](const Int& n) { return FFElement(Rat(n)); },
        [](const Expr& v) -> FFElement {
            if (v.name != "t") throw ParseError("unknown variable '" + v.name + "' (expected t)", v.position);
            return FFElement::t();
        });
}

QPoly parse_qt_poly(const std::string& text) {
    const FFElement f = parse_ff(text);
    if (!f.is_polynomial()) throw InputError("expected a polynomial in t: '" + text + "'");
    return f.numer();
}

namespace {

struct XQ {
    FFXPoly num, den;
    XQ(FFXPoly n = {}, FFXPoly d = FFXPoly(FFElement(1))) : num(std::move(n)), den(std::move(d)) {}
    friend XQ operator+(const XQ& a, const XQ& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend XQ operator-(const XQ& a, const XQ& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend XQ operator*(const XQ& a, const XQ& b) { return {a.num * b.num, a.den * b.den}; }
    friend XQ operator/(const XQ& a, const XQ& b) { return {a.num * b.den, a.den * b.num}; }
    friend bool operator==(const XQ& a, const XQ& b) { return a.num * b.den == b.num * a.den; }
};

}  // namespace

FFXQuotient parse_ff_xquotient(const std::string& text) {
    const ExprPtr e = parse_expression(text);
    const XQ value = evaluate<XQ>(
        *e, [](const Int& n) { return XQ(FFXPoly(FFElement(Rat(n)))); },
        [](const Expr& v) -> XQ {
            if (v.name == "x") return XQ(FFXPoly::x());
            if (v.name == "t") return XQ(FFXPoly(FFElement::t()));
            throw ParseError("unknown variable '" + v.name + "' (expected x or t)", v.position);
        });
    if (value.den.is_zero()) throw InputError("expression has a zero denominator");
    return {value.num, value.den};
}

FFXPoly parse_ff_xpoly(const std::string& text) {
    const FFXQuotient q = parse_ff_xquotient(text);
    const auto [quo, rem] = divmod(q.num, q.den);
    if (!rem.is_zero()) throw InputError("expected a polynomial in x: '" + text + "'");
    return quo;
}

}  // namespace arithdyn
