#pragma once

#include "arithdyn/bigint.hpp"
#include "arithdyn/error.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace arithdyn {

/// Dense univariate polynomial over a field F, coefficients in ascending
/// degree. The zero polynomial has no coefficients and degree -1.
///
/// F must be constructible from int and support + - * / and ==. It is used
/// with F = Rat (Q[x]) and F = RatFunc<Rat> (polynomials over Q(t)).
template <class F>
class Poly {
public:
    Poly() = default;
    Poly(const F& constant) {
        if (!(constant == F(0))) coeffs_.push_back(constant);
    }
    explicit Poly(std::vector<F> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<F>{F(0), F(1)}); }
    static Poly monomial(const F& c, std::size_t k) {
        std::vector<F> v(k + 1, F(0));
        v[k] = c;
        return Poly(std::move(v));
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    const std::vector<F>& coeffs() const noexcept { return coeffs_; }
    F coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : F(0); }
    F leading() const { return coeffs_.empty() ? F(0) : coeffs_.back(); }

    F operator()(const F& z) const {
        F acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = F(acc * z + *it);
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<F> d(coeffs_.size() - 1, F(0));
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = F(coeffs_[i] * F(static_cast<long>(i)));
        return Poly(std::move(d));
    }

    Poly monic() const {
        if (is_zero()) return {};
        const F lc = leading();
        std::vector<F> v = coeffs_;
        for (auto& c : v) c = F(c / lc);
        return Poly(std::move(v));
    }

    Poly compose(const Poly& inner) const {
        Poly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + Poly(*it);
        return acc;
    }

    Poly pow(unsigned long e) const {
        Poly result(F(1)), base = *this;
        while (e) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    Poly operator-() const {
        std::vector<F> v = coeffs_;
        for (auto& c : v) c = F(-c);
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<F> v(std::max(a.coeffs_.size(), b.coeffs_.size()), F(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] = a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] = F(v[i] + b.coeffs_[i]);
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> v(a.coeffs_.size() + b.coeffs_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == F(0)) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] = F(v[i + j] + a.coeffs_[i] * b.coeffs_[j]);
        }
        return Poly(std::move(v));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw InputError("polynomial division by zero");
        std::vector<F> rem = a.coeffs_;
        const int db = b.degree();
        if (a.degree() < db) return {Poly(), a};
        std::vector<F> quo(static_cast<std::size_t>(a.degree() - db + 1), F(0));
        const F lb = b.leading();
        for (int k = a.degree() - db; k >= 0; --k) {
            const F c = F(rem[static_cast<std::size_t>(k + db)] / lb);
            quo[static_cast<std::size_t>(k)] = c;
            if (c == F(0)) continue;
            for (int j = 0; j <= db; ++j) {
                auto& slot = rem[static_cast<std::size_t>(k + j)];
                slot = F(slot - c * b.coeffs_[static_cast<std::size_t>(j)]);
            }
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// a / b, throwing InvariantError unless b divides a exactly.
    friend Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw InvariantError("inexact polynomial division");
        return q;
    }

    friend bool divides(const Poly& b, const Poly& a) { return (a % b).is_zero(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == F(0)) coeffs_.pop_back();
    }
    std::vector<F> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Res(a, b) by the Euclidean remainder sequence.
template <class F>
F resultant(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return F(0);
    const int m = a.degree(), n = b.degree();
    auto power = [](F base, int e) {
        F r(1);
        for (int i = 0; i < e; ++i) r = F(r * base);
        return r;
    };
    if (n == 0) return power(b.leading(), m);
    if (m == 0) return power(a.leading(), n);
    const F sign = ((m * n) % 2) ? F(-1) : F(1);
    if (m < n) return F(sign * resultant(b, a));
    const Poly<F> r = a % b;
    if (r.is_zero()) return F(0);
    return F(sign * power(b.leading(), m - r.degree()) * resultant(b, r));
}

/// g / gcd(g, g'), monic. Throws on g = 0.
template <class F>
Poly<F> squarefree_part(const Poly<F>& g) {
    if (g.is_zero()) throw InputError("squarefree part of the zero polynomial");
    if (g.is_constant()) return Poly<F>(F(1));
    return exact_div(g, poly_gcd(g, g.derivative())).monic();
}

/// Yun's square-free decomposition: g = lc * prod_{i>=1} parts[i-1]^i with
/// the parts monic, squarefree and pairwise coprime (some may be 1).
template <class F>
std::vector<Poly<F>> squarefree_decomposition(const Poly<F>& g) {
    if (g.is_zero()) throw InputError("squarefree decomposition of the zero polynomial");
    std::vector<Poly<F>> parts;
    if (g.is_constant()) return parts;
    const Poly<F> gp = g.derivative();
    Poly<F> a = poly_gcd(g, gp);
    Poly<F> b = exact_div(g, a);
    Poly<F> c = exact_div(gp, a);
    Poly<F> d = c - b.derivative();
    while (!b.is_constant()) {
        Poly<F> next = poly_gcd(b, d);
        parts.push_back(next);
        b = exact_div(b, next);
        c = exact_div(d, next);
        d = c - b.derivative();
    }
    return parts;
}

template <class F>
bool is_squarefree(const Poly<F>& g) {
    return poly_gcd(g, g.derivative()).is_constant();
}

using QPoly = Poly<Rat>;

/// Canonical descending-degree rendering, e.g. "x^4+2*x^2+2" or "1/2*x-3".
/// Coefficients are rendered with `render`; compound ones are parenthesized.
template <class F, class Render>
std::string render_poly(const Poly<F>& p, const std::string& var, Render render) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const F c = p.coeff(static_cast<std::size_t>(k));
        if (c == F(0)) continue;
        std::string cs = render(c);
        bool negative = !cs.empty() && cs[0] == '-';
        const bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        if (compound) {
            cs = "(" + cs + ")";
            negative = false;
        } else if (negative) {
            cs.erase(0, 1);
        }
        if (!out.empty()) out += negative ? "-" : "+";
        else if (negative) out += "-";
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        if (k == 0) out += cs;
        else if (cs == "1") out += mono;
        else out += cs + "*" + mono;
    }
    return out;
}

inline std::string to_string(const QPoly& p, const std::string& var = "x") {
    return render_poly(p, var, [](const Rat& c) { return to_string(c); });
}

/// Integer content-free representative of a nonzero Q[x] polynomial, with
/// positive leading coefficient.
std::vector<Int> primitive_integer_coeffs(const QPoly& p);

/// True iff every coefficient is an integer.
bool is_integral(const QPoly& p);

QPoly from_integers(const std::vector<Int>& coeffs);

}  // namespace arithdyn
