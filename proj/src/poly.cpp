#include "arithdyn/poly.hpp"

namespace arithdyn {

std::vector<Int> primitive_integer_coeffs(const QPoly& p) {
    if (p.is_zero()) throw InputError("primitive part of the zero polynomial");
    Int den = 1;
    for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
    std::vector<Int> out;
    out.reserve(p.coeffs().size());
    Int content = 0;
    for (const auto& c : p.coeffs()) {
        Int v = c.get_num() * (den / c.get_den());
        content = gcd(content, v);
        out.push_back(v);
    }
    if (p.leading() < 0) content = -content;
    for (auto& v : out) v /= content;
    return out;
}

bool is_integral(const QPoly& p) {
    for (const auto& c : p.coeffs())
        if (c.get_den() != 1) return false;
    return true;
}

QPoly from_integers(const std::vector<Int>& coeffs) {
    std::vector<Rat> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.emplace_back(c);
    return QPoly(std::move(v));
}

}  // namespace arithdyn
