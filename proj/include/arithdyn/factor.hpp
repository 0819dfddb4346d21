#pragma once

#include "arithdyn/bigint.hpp"

#include <optional>
#include <vector>

namespace arithdyn {

struct PrimePower {
    Int prime;
    unsigned long exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Factorization effort limits. One effort unit is one modular squaring in
/// the rho iteration; trial division up to `trial_bound` is not counted.
struct FactorBudget {
    unsigned long trial_bound = 1UL << 16;
    unsigned long rho_effort = 4'000'000;
};

/// sign * prod(p^e) * cofactor. The cofactor, when present, is a composite
/// (> 1) that could not be split within budget.
struct FactoredValue {
    int sign = 1;
    std::vector<PrimePower> prime_powers;
    std::optional<Int> cofactor;
    /// False when some listed prime exceeds the deterministic Miller-Rabin
    /// range and is only a probable prime.
    bool primes_certified = true;

    bool complete() const noexcept { return !cofactor.has_value(); }
    Int reconstruct() const;
    /// Exponent of p among the resolved primes (0 if absent).
    unsigned long exponent_of(const Int& p) const;

    friend bool operator==(const FactoredValue&, const FactoredValue&) = default;
};

/// Upper limit of the deterministic witness set {2, 3, ..., 41}.
const Int& deterministic_mr_limit();

/// Miller-Rabin. Deterministic below deterministic_mr_limit(); above it the
/// fixed bases are supplemented by pseudo-random ones seeded from n, so the
/// answer is reproducible.
bool is_probable_prime(const Int& n);

/// Trial division, primality testing and Brent's rho under a budget.
/// Deterministic for fixed input and budget.
FactoredValue factor(const Int& n, const FactorBudget& budget = {});

/// v_p of a nonzero rational. Throws InputError if p is not prime or q = 0.
long valuation(const Rat& q, const Int& p);
long valuation(const Int& n, const Int& p);

/// Sum of log p over the distinct resolved primes.
struct LogMass {
    double value = 0.0;
    /// Product of the distinct resolved primes; value = log(radical).
    Int radical = 1;
    /// False when an unresolved cofactor means the true mass is larger.
    bool exact = true;
};

LogMass radical_logmass(const FactoredValue& f);

/// Pairwise coprime integers > 1 generating every input multiplicatively.
struct CoprimeBasis {
    std::vector<Int> elements;
    /// exponents[i][j]: exponent of elements[j] in |values[i]|.
    std::vector<std::vector<unsigned long>> exponents;
    std::vector<int> signs;
};

/// GCD-free basis by factor refinement; no primality testing involved.
CoprimeBasis coprime_basis(const std::vector<Int>& values);

}  // namespace arithdyn
