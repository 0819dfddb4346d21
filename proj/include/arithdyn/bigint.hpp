#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace arithdyn {

using Int = mpz_class;
using Rat = mpq_class;

/// Natural log of |n| for n != 0, accurate to double precision for any size.
double log_abs(const Int& n);
/// log(|num| / |den|) of a nonzero rational.
double log_abs(const Rat& q);

std::string to_string(const Int& n);
/// "p/q" with q > 0, or "p" when q = 1.
std::string to_string(const Rat& q);

/// Parses "p", "-p" or "p/q"; throws InputError on malformed text or q = 0.
Rat parse_rational(std::string_view text);

Int abs_int(const Int& n);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow_int(const Int& base, unsigned long exponent);
/// Bit length of |n| (0 for n = 0).
std::size_t bit_length(const Int& n);

/// A point of P^1(Q): either a reduced rational or the point at infinity.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(const Rat& value) : value_(value) { value_->canonicalize(); }
    ExtRational(long value) : value_(Rat(value)) {}

    static ExtRational infinity() { return ExtRational(std::nullopt); }
    /// Builds (a : b) from homogeneous coordinates, not both zero.
    static ExtRational from_projective(const Int& a, const Int& b);

    bool is_infinity() const noexcept { return !value_.has_value(); }
    bool is_zero() const { return value_ && *value_ == 0; }
    const Rat& value() const;

    /// Numerator and denominator with gcd 1; infinity is (1, 0).
    Int numerator() const;
    Int denominator() const;

    std::string str() const;
    static ExtRational parse(std::string_view text);

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    /// Total order (infinity last); used for cycle bookkeeping.
    friend bool operator<(const ExtRational& a, const ExtRational& b);

private:
    explicit ExtRational(std::optional<Rat> v) : value_(std::move(v)) {}
    std::optional<Rat> value_{Rat(0)};
};

}  // namespace arithdyn
