#include "arithdyn/bigint.hpp"

#include "arithdyn/error.hpp"

#include <cctype>
#include <cmath>

namespace arithdyn {

double log_abs(const Int& n) {
    if (n == 0) throw InputError("log of zero");
    // Exact conversion keeps small values correctly rounded.
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 53) return std::log(std::fabs(n.get_d()));
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
    return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

double log_abs(const Rat& q) {
    return log_abs(q.get_num()) - log_abs(q.get_den());
}

std::string to_string(const Int& n) { return n.get_str(10); }

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str(10);
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

namespace {

bool valid_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Int parse_integer(std::string_view s) {
    if (!valid_integer(s)) throw InputError("malformed integer '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);
    return Int(std::string(s), 10);
}

}  // namespace

Rat parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    Rat q;
    if (slash == std::string_view::npos) {
        q = Rat(parse_integer(text));
    } else {
        Int den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        q = Rat(parse_integer(text.substr(0, slash)), den);
    }
    q.canonicalize();
    return q;
}

Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int pow_int(const Int& base, unsigned long exponent) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

std::size_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

ExtRational ExtRational::from_projective(const Int& a, const Int& b) {
    if (b == 0) {
        if (a == 0) throw InvariantError("projective point (0:0)");
        return infinity();
    }
    return ExtRational(Rat(a, b));
}

const Rat& ExtRational::value() const {
    if (!value_) throw InputError("value of the point at infinity");
    return *value_;
}

Int ExtRational::numerator() const { return value_ ? value_->get_num() : Int(1); }
Int ExtRational::denominator() const { return value_ ? value_->get_den() : Int(0); }

std::string ExtRational::str() const { return value_ ? to_string(*value_) : "inf"; }

ExtRational ExtRational::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    return ExtRational(parse_rational(text));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
    return *a.value_ == *b.value_;
}

bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinity()) return false;
    if (b.is_infinity()) return true;
    return *a.value_ < *b.value_;
}

}  // namespace arithdyn
