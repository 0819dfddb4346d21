#pragma once

#include "arithdyn/factor.hpp"
#include "arithdyn/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

/// (-1)^(d(d-1)/2) Res(g, g') / lc(g). Throws InputError for constants.
Rat discriminant(const QPoly& g);

/// f_a^m(x) for f_a = x^2 + a, expanded.
QPoly quadratic_iterate(const Int& a, unsigned m);

/// f_a^m(0), m >= 0.
Int critical_orbit_value(const Int& a, unsigned m);

struct DiscRecursion {
    Int a;
    unsigned m = 0;
    /// Disc f^m by resultant.
    Int lhs;
    /// 2^(2^m) Disc(f^(m-1)) f^m(0), with Disc(f^0) := -1 so m = 1 gives -4a.
    Int literal_rhs;
    /// 2^(2^m) Disc(f^(m-1))^2 f^m(0) for m >= 2 (equal to literal_rhs at m = 1).
    Int squared_rhs;
    bool literal_holds = false;
    bool squared_holds = false;
    /// lhs and 2 Disc(f^(m-1)) f^m(0) have the same prime divisors.
    bool prime_support_agrees = false;
};

/// Throws InputError for m = 0 and ResourceCapError for m > max_level.
DiscRecursion disc_recursion_check(const Int& a, unsigned m, unsigned max_level = 7);

enum class CertificateStatus { Certified, NoCertificateFound, Unresolved };

std::string to_string(CertificateStatus s);

struct GaloisTowerRecord {
    Int a;
    unsigned n = 0;
    /// f_a^(n+1)(0).
    Int critical_value;
    /// Odd p with v_p(f^(n+1)(0)) = 1 and p not dividing f^m(0), 1 <= m <= n.
    std::optional<Int> certificate;
    CertificateStatus status = CertificateStatus::NoCertificateFound;
};

/// Throws InputError for a = 0 or when 0 is preperiodic within n + 1 steps.
GaloisTowerRecord stoll_certificate(const Int& a, unsigned n, const FactorBudget& budget = {});

struct TowerReport {
    Int a;
    unsigned max_n = 0;
    /// Levels 0..max_n.
    std::vector<GaloisTowerRecord> records;
    /// a > 0 and a = 1, 2 mod 4: full index at every level is known.
    bool stoll_guarantee = false;
    /// -a is not a perfect square and a != -2.
    bool hypotheses_hold = false;
    std::vector<std::string> notes;
};

TowerReport tower_report(const Int& a, unsigned max_n, const FactorBudget& budget = {}, unsigned jobs = 1);

}  // namespace arithdyn
