#pragma once

#include "arithdyn/poly.hpp"

#include <string>

namespace arithdyn {

/// Element of the rational function field F(t): numer/denom with gcd 1 and
/// monic denominator.
template <class F>
class RatFunc {
public:
    RatFunc() : num_(), den_(F(1)) {}
    RatFunc(long c) : num_(F(c)), den_(F(1)) {}
    RatFunc(const F& c) : num_(c), den_(F(1)) {}
    RatFunc(const Poly<F>& p) : num_(p), den_(F(1)) {}
    RatFunc(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static RatFunc t() { return RatFunc(Poly<F>::x()); }

    const Poly<F>& numer() const noexcept { return num_; }
    const Poly<F>& denom() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

    RatFunc operator-() const { return RatFunc(-num_, den_, Reduced{}); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw InputError("division by zero in rational function field");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    struct Reduced {};
    RatFunc(Poly<F> num, Poly<F> den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    void reduce() {
        if (den_.is_zero()) throw InputError("zero denominator in rational function");
        if (num_.is_zero()) {
            den_ = Poly<F>(F(1));
            return;
        }
        const Poly<F> g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        const F lc = den_.leading();
        if (!(lc == F(1))) {
            num_ = num_ * Poly<F>(F(F(1) / lc));
            den_ = den_.monic();
        }
    }

    Poly<F> num_;
    Poly<F> den_;
};

/// Elements of Q(t).
using FFElement = RatFunc<Rat>;

inline std::string to_string(const FFElement& f, const std::string& var = "t") {
    const std::string n = to_string(f.numer(), var);
    if (f.is_polynomial()) return n;
    const bool compound_num = n.find_first_of("+-*/", 1) != std::string::npos;
    return (compound_num ? "(" + n + ")" : n) + "/(" + to_string(f.denom(), var) + ")";
}

}  // namespace arithdyn
