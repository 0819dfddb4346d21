#pragma once

#include "arithdyn/bigint.hpp"
#include "arithdyn/factor.hpp"
#include "arithdyn/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

/// Caps that make runaway computations fail fast with ResourceCapError.
struct MapLimits {
    unsigned long max_iterate_degree = 4096;
    unsigned long max_coeff_digits = 1'000'000;
};

/// Binary form of degree D stored as the coefficients of x^k y^(D-k),
/// k = 0..D. Its dehomogenization at y = 1 has the same coefficient list.
using Form = std::vector<Int>;

/// p_i, q_i of the i-th iterate as forms of degree d^i.
struct IterateRep {
    unsigned index = 1;
    Form p, q;

    unsigned long degree() const { return p.size() - 1; }
    QPoly P() const { return from_integers(p); }
    QPoly Q() const { return from_integers(q); }
};

/// phi = P/Q over Q with integer coefficients, gcd(P, Q) = 1, degree d > 1.
/// Coefficients are content-free with the lowest-degree nonzero coefficient
/// of Q positive. Immutable; copies share the iterate cache, which is safe
/// for concurrent readers.
class RationalMap {
public:
    /// Normalizes and validates; throws InputError on common factors,
    /// degree <= 1, or Q = 0.
    static RationalMap from_polys(const QPoly& P, const QPoly& Q, const MapLimits& limits = {});
    static RationalMap parse(const std::string& expr, const MapLimits& limits = {});

    unsigned degree() const noexcept { return degree_; }
    QPoly P() const { return from_integers(p_); }
    QPoly Q() const { return from_integers(q_); }
    const Form& p_form() const noexcept { return p_; }
    const Form& q_form() const noexcept { return q_; }
    const MapLimits& limits() const noexcept { return limits_; }

    /// Canonical text that parses back to an equal map.
    std::string str() const;

    /// Res(p, q) of the degree-d homogenizations (Sylvester determinant).
    Int homogeneous_resultant() const;

    IterateRep iterate(unsigned i) const;

    ExtRational operator()(const ExtRational& z) const;
    /// (p(a, b), q(a, b)) without reduction.
    std::pair<Int, Int> evaluate_projective(const Int& a, const Int& b) const;

    friend bool operator==(const RationalMap& a, const RationalMap& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }

private:
    struct Cache;
    RationalMap(Form p, Form q, unsigned d, MapLimits limits);

    Form p_, q_;
    unsigned degree_;
    MapLimits limits_;
    std::shared_ptr<Cache> cache_;
};

/// Evaluates the form f at (a, b).
Int evaluate_form(const Form& f, const Int& a, const Int& b);

/// Parses a polynomial in x with rational coefficients.
QPoly parse_polynomial(const std::string& expr);

struct BadReduction {
    std::vector<Int> primes;
    Int resultant;
    /// Res(p, q) had a composite cofactor that could not be split; some bad
    /// primes may be missing.
    bool unresolved = false;
};

/// Primes dividing Res(p, q) that fail the two-condition test.
BadReduction bad_reduction_primes(const RationalMap& map, const FactorBudget& budget = {});

/// Literal test: P, Q have no common root mod p, and p(1, y), q(1, y) have no
/// common root mod p (roots over the algebraic closure of F_p).
bool has_good_reduction(const RationalMap& map, const Int& p);

/// Element of F_p or infinity.
struct Residue {
    std::optional<Int> value;  // nullopt = infinity

    static Residue infinity() { return {}; }
    bool is_infinity() const noexcept { return !value.has_value(); }
    std::string str() const { return value ? to_string(*value) : "inf"; }
    friend bool operator==(const Residue&, const Residue&) = default;
    friend bool operator<(const Residue& a, const Residue& b) {
        if (!a.value) return false;
        if (!b.value) return true;
        return *a.value < *b.value;
    }
};

Residue reduce_mod(const ExtRational& z, const Int& p);
/// The map induced on F_p u {inf}; p must be of good reduction.
Residue step_mod(const RationalMap& map, const Residue& r, const Int& p);

/// (phi(r_p(z)), r_p(phi(z))); throws InputError if p is bad or not prime.
std::pair<Residue, Residue> reduce_and_step(const RationalMap& map, const ExtRational& z, const Int& p);

struct ResidueCycle {
    Int prime;
    Residue start;
    unsigned long tail_length = 0;
    unsigned long period = 0;
};

ResidueCycle residue_cycle(const RationalMap& map, const Residue& start, const Int& p);

/// P/Q is literally c x^d or c x^-d.
bool is_power_map(const RationalMap& map);

/// Number of distinct points of phi^-n(beta) in P^1 over the algebraic closure.
unsigned long preimage_count(const RationalMap& map, const ExtRational& beta, unsigned n);

/// phi^-2(beta) = {beta}: a single preimage point at level 2 that is beta itself.
bool is_exceptional(const RationalMap& map, const ExtRational& beta);

struct MultiplicityClass {
    unsigned long multiplicity = 0;
    /// Number of distinct finite roots with this multiplicity.
    unsigned long count = 0;
    /// Monic squarefree polynomial whose roots are exactly these points.
    QPoly roots;
};

/// Multiplicity structure of phi^-n(0).
struct RamificationProfile {
    unsigned level = 0;
    std::vector<MultiplicityClass> finite_multiplicities;
    /// Multiplicity of infinity as a preimage of 0 (0 when phi^n(inf) != 0).
    unsigned long infinity_multiplicity = 0;
    /// Preimages with e = 1, including infinity when its multiplicity is 1.
    unsigned long simple_root_count = 0;
};

RamificationProfile ramification_profile(const RationalMap& map, unsigned n);

enum class RamificationVerdict { NotDynamicallyRamified, LikelyDynamicallyRamified, Inconclusive };

std::string to_string(RamificationVerdict v);

/// Heuristic three-valued answer; the property quantifies over all n.
struct RamificationReport {
    RamificationVerdict verdict = RamificationVerdict::Inconclusive;
    std::optional<unsigned> witness_level;
    unsigned long threshold = 0;
    std::vector<unsigned long> simple_counts;  // index n-1
    unsigned long cumulative_simple = 0;
};

/// NotDynamicallyRamified at the first level n <= depth whose count of
/// unramified preimages of 0 exceeds the threshold (default d + 2);
/// LikelyDynamicallyRamified when no level has any; Inconclusive otherwise.
RamificationReport dynamical_ramification_verdict(const RationalMap& map, unsigned depth,
                                                  std::optional<unsigned long> threshold = std::nullopt);

}  // namespace arithdyn
