#pragma once

#include "arithdyn/factor.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/ratfunc.hpp"
#include "arithdyn/rational_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

// ---------------------------------------------------------------------------
// Ring adapters shared by the Q and Q(t) detectors. A "prime" of Z is a
// rational prime; a prime of Q[t] is a monic irreducible polynomial.

struct IntegerRing {
    using Elem = Int;
    static Elem gcd(const Elem& a, const Elem& b) { return arithdyn::gcd(a, b); }
    static bool is_unit(const Elem& a) { return a == 1 || a == -1; }
    static bool is_zero(const Elem& a) { return a == 0; }
    static Elem divexact(const Elem& a, const Elem& b) {
        Elem q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static Elem normalize(const Elem& a) { return abs_int(a); }
};

struct PolyRing {
    using Elem = QPoly;
    static Elem gcd(const Elem& a, const Elem& b) { return poly_gcd(a, b); }
    static bool is_unit(const Elem& a) { return !a.is_zero() && a.is_constant(); }
    static bool is_zero(const Elem& a) { return a.is_zero(); }
    static Elem divexact(const Elem& a, const Elem& b) { return exact_div(a, b); }
    static Elem normalize(const Elem& a) { return a.monic(); }
};

/// Removes from `value` every prime it shares with any of `earlier` by
/// repeated gcd division. A zero among `earlier` has every prime, so the
/// result is then the unit.
template <class Ring>
typename Ring::Elem strip_shared_primes(typename Ring::Elem value, const std::vector<typename Ring::Elem>& earlier) {
    value = Ring::normalize(value);
    for (const auto& e : earlier) {
        if (Ring::is_zero(e)) return Ring::normalize(Ring::divexact(value, value));
        auto g = Ring::gcd(value, e);
        while (!Ring::is_unit(g)) {
            value = Ring::divexact(value, g);
            g = Ring::gcd(value, g);
        }
    }
    return Ring::normalize(value);
}

// ---------------------------------------------------------------------------
// Orbits over Q

enum class TerminationKind { ReachedN, HitZero, Preperiodic, ResourceCap };

std::string to_string(TerminationKind k);

struct Termination {
    TerminationKind kind = TerminationKind::ReachedN;
    /// HitZero: the M with phi^M(alpha) = 0.
    unsigned long zero_index = 0;
    /// Preperiodic: first repeated orbit index and cycle length (alpha has index 0).
    unsigned long tail = 0;
    unsigned long period = 0;
};

struct OrbitLimits {
    std::size_t max_bits = std::size_t{1} << 20;
};

struct Orbit {
    ExtRational alpha;
    /// values[k] = phi^(k+1)(alpha).
    std::vector<ExtRational> values;
    Termination termination;
};

/// phi^1(alpha) .. phi^N(alpha). A repeat marks the orbit preperiodic and the
/// remaining values are filled from the cycle; a zero outside a cycle stops
/// the orbit; so does a value beyond the size cap.
Orbit orbit(const RationalMap& map, const ExtRational& alpha, unsigned long n_max, const OrbitLimits& limits = {});

/// As orbit(), taking phi^1..phi^k from `prefix` (already verified) instead
/// of recomputing them.
Orbit orbit_resume(const RationalMap& map, const ExtRational& alpha, std::vector<ExtRational> prefix,
                   unsigned long n_max, const OrbitLimits& limits = {});

/// |numerator(phi^n(alpha))| stripped of every prime of earlier numerators.
/// `values` holds phi^1..phi^N; n is 1-based. Throws InputError when
/// phi^n(alpha) is 0 or infinity.
Int primitive_part(const std::vector<ExtRational>& values, unsigned long n);

struct PrimitivePrimes {
    std::vector<Int> primes;
    /// The primitive part had a cofactor that could not be factored.
    bool unresolved = false;
};

/// Primes of the primitive part, each re-verified against the definition.
PrimitivePrimes primitive_prime_factors(const std::vector<ExtRational>& values, unsigned long n,
                                        const FactorBudget& budget = {});

struct SquarefreePrimitive {
    std::optional<Int> prime;
    bool unresolved = false;
};

/// Smallest primitive prime with exponent exactly 1 in numerator(phi^n).
SquarefreePrimitive squarefree_primitive_prime(const std::vector<ExtRational>& values, unsigned long n,
                                               const FactorBudget& budget = {});

struct OrbitRecord {
    unsigned long n = 0;
    ExtRational value;
    /// Levels where the value is 0 or infinity carry no verdicts.
    bool defined = true;
    Int primitive_part = 1;
    FactoredValue primitive_factored;
    std::vector<Int> primitive_primes;
    std::optional<Int> squarefree_prime;
    bool has_primitive = false;
    bool squarefree_checked = false;
    bool has_squarefree_primitive = false;
    /// Square-free verdict undecided: the primitive part did not fully factor.
    bool unresolved = false;
};

struct ZsigmondyOptions {
    unsigned long max_n = 12;
    unsigned long squarefree_max_n = 7;
    FactorBudget budget;
    OrbitLimits limits;
    unsigned jobs = 1;
    /// Depth for the dynamical-ramification heuristic.
    unsigned ramification_depth = 3;
};

struct Hypotheses {
    bool power_map = false;
    std::optional<unsigned long> zero_in_orbit;
    PointClassification classification;
    RamificationReport ramification;
    /// Human-readable cautions (power map, dynamically ramified, ...).
    std::vector<std::string> warnings;
};

struct ZsigmondyReport {
    std::string map;
    ExtRational alpha;
    unsigned long max_n = 0;
    unsigned long squarefree_max_n = 0;
    std::vector<OrbitRecord> records;
    std::vector<unsigned long> zsigmondy_set;
    std::vector<unsigned long> squarefree_zsigmondy_set;
    std::vector<unsigned long> squarefree_unresolved;
    Termination termination;
    Hypotheses hypotheses;
};

/// Builds the record for level n from the full value list.
OrbitRecord make_record(const std::vector<ExtRational>& values, unsigned long n, bool check_squarefree,
                        const FactorBudget& budget);

/// Derives the record flags from a precomputed primitive part and, when the
/// square-free check applies, its factorization.
OrbitRecord record_from_parts(const std::vector<ExtRational>& values, unsigned long n, const Int& primitive,
                              std::optional<FactoredValue> factored);

/// Assembles a report from precomputed records (used when resuming).
ZsigmondyReport assemble_report(const RationalMap& map, const ExtRational& alpha, const ZsigmondyOptions& opts,
                                const Orbit& orb, std::vector<OrbitRecord> records);

ZsigmondyReport zsigmondy_report(const RationalMap& map, const ExtRational& alpha, const ZsigmondyOptions& opts = {});

// ---------------------------------------------------------------------------
// Proposition-style diagnostic: primes of F(phi^(n-i)(alpha)) already seen in
// earlier orbit numerators.

struct PropOldRow {
    unsigned long n = 0;
    std::vector<Int> z_primes;
    double mass = 0.0;
    /// Product of the primes in Z; mass = log(radical).
    Int radical = 1;
    bool exact = true;
    double height = 0.0;
    double ratio = 0.0;
};

struct PropOldReport {
    QPoly F;
    unsigned level = 0;
    double delta = 0.0;
    std::vector<PropOldRow> rows;
    /// sup_n (mass - delta h(phi^n(alpha))).
    double empirical_constant = 0.0;
    /// gcd(F, P_l) constant for l < i, i.e. no root of F reaches 0 early.
    bool zero_screen_passed = false;
    /// No root of F is periodic with period <= periodic_screen_depth.
    bool periodic_screen_passed = false;
    unsigned periodic_screen_depth = 0;
};

/// Throws InputError unless F divides P_i.
PropOldReport prop_old_diagnostic(const RationalMap& map, const ExtRational& alpha, const QPoly& F, unsigned level,
                                  unsigned long n_max, double delta, const FactorBudget& budget = {},
                                  unsigned periodic_screen_depth = 4);

// ---------------------------------------------------------------------------
// Maps over Q(t)

/// phi = P/Q with P, Q in Q(t)[x], coprime, degree > 1.
class FFMap {
public:
    using Coeff = FFElement;
    using XPoly = Poly<FFElement>;

    static FFMap parse(const std::string& expr);

    unsigned degree() const noexcept { return degree_; }
    const XPoly& P() const noexcept { return P_; }
    const XPoly& Q() const noexcept { return Q_; }

    /// nullopt stands for infinity.
    std::optional<FFElement> operator()(const std::optional<FFElement>& z) const;

private:
    XPoly P_, Q_;
    unsigned degree_ = 0;
};

struct FFOrbitRecord {
    unsigned long n = 0;
    std::optional<FFElement> value;
    bool defined = true;
    /// Monic numerator stripped of every place of earlier numerators.
    QPoly primitive_part;
    /// Product of the primitive places of multiplicity one (squarefree
    /// decomposition, no factoring needed).
    QPoly squarefree_primitive_part;
    bool has_primitive = false;
    bool has_squarefree_primitive = false;
};

struct FFZsigmondyReport {
    unsigned long max_n = 0;
    std::vector<FFOrbitRecord> records;
    std::vector<unsigned long> zsigmondy_set;
    std::vector<unsigned long> squarefree_zsigmondy_set;
    Termination termination;
};

FFZsigmondyReport ff_zsigmondy_report(const FFMap& map, const std::optional<FFElement>& alpha, unsigned long n_max,
                                      unsigned long max_degree = 4096);

}  // namespace arithdyn
