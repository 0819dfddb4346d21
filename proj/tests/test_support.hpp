#pragma once

#include "arithdyn/rational_map.hpp"

#include <optional>
#include <random>

namespace arithdyn::testing {

/// Random map of the given degree with coefficients in [-bound, bound];
/// nullopt when the draw is degenerate (common factor or degree drop).
inline std::optional<RationalMap> random_map(std::mt19937_64& rng, int degree, int bound) {
    std::uniform_int_distribution<int> coef(-bound, bound);
    std::vector<Rat> p(static_cast<std::size_t>(degree) + 1), q(static_cast<std::size_t>(degree) + 1);
    for (auto& c : p) c = coef(rng);
    for (auto& c : q) c = coef(rng);
    try {
        auto m = RationalMap::from_polys(QPoly(p), QPoly(q));
        if (static_cast<int>(m.degree()) != degree) return std::nullopt;
        return m;
    } catch (const InputError&) {
        return std::nullopt;
    }
}

inline RationalMap random_map_retry(std::mt19937_64& rng, int degree, int bound) {
    for (;;)
        if (auto m = random_map(rng, degree, bound)) return *m;
}

inline Rat random_rational(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
    Rat q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

/// Trial-division factorization for small n; the oracle for factor().
inline std::vector<std::pair<unsigned long, unsigned long>> trial_factor(unsigned long n) {
    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (unsigned long p = 2; p * p <= n; ++p) {
        unsigned long e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace arithdyn::testing
