#pragma once

#include "arithdyn/factor.hpp"
#include "arithdyn/places_qt.hpp"
#include "arithdyn/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

/// a + b = c over Q with its height and radical.
struct AbcTriple {
    Rat a, b, c;
    /// h(a, b, c) = log(height_arg).
    double height = 0.0;
    Int height_arg = 1;
    /// Primes whose valuations are not all equal across (a, b, c).
    std::vector<Int> rad_primes;
    /// Sum of log p over those primes; log(rad_arg).
    double rad_mass = 0.0;
    Int rad_arg = 1;
    /// False when part of the support could not be factored; rad_mass is then
    /// a lower bound and quality an upper bound.
    bool rad_exact = true;
    /// height / rad_mass; nullopt when the support is empty (units only).
    std::optional<double> quality;
};

AbcTriple abc_quality(const Rat& a, const Rat& b, const FactorBudget& budget = {});

struct RothSample {
    /// Rendered sample point (p/q over Q, a rational function over Q(t)).
    std::string z;
    double radsum = 0.0;
    double height = 0.0;
    double margin = 0.0;
    bool exact = true;
};

struct RothScanReport {
    std::string F;
    unsigned degree = 0;
    double epsilon = 0.0;
    std::string sample_description;
    std::vector<RothSample> samples;
    /// Sample points that were roots of F (excluded).
    std::vector<std::string> skipped_roots;
    /// -min margin over samples.
    double empirical_constant = 0.0;
    /// Q(t) only: -(deg F) * max sample height; margins below it are a bug.
    std::optional<double> sanity_bound;
    bool sanity_ok = true;
};

/// Scans every reduced p/q with max(|p|, q) <= H. radsum is the sum of log p
/// over primes dividing the numerator of F(z); margin = radsum - (deg F - 2 -
/// eps) h(z). Throws InputError unless F is squarefree of degree >= 3.
RothScanReport roth_scan_q(const QPoly& F, double epsilon, unsigned long H, const FactorBudget& budget = {},
                           unsigned jobs = 1);

/// Sample family over Q(t): every polynomial in t of degree <= max_degree with
/// integer coefficients in [-coeff_bound, coeff_bound], in lexicographic order
/// of the coefficient vector (constant term varying fastest).
struct FFSampleFamily {
    unsigned max_degree = 2;
    unsigned coeff_bound = 2;

    std::vector<FFElement> enumerate() const;
    std::string describe() const;
};

/// radsum = number of places (counted with degree) where F(z) vanishes: the
/// degree of the squarefree part of its numerator, plus one when it vanishes
/// at infinity. Heights are degrees.
RothScanReport roth_scan_ff(const FFXPoly& F, double epsilon, const std::vector<FFElement>& samples,
                            const std::string& description, unsigned jobs = 1);
RothScanReport roth_scan_ff(const FFXPoly& F, double epsilon, const FFSampleFamily& family, unsigned jobs = 1);

/// z,radsum,height,margin,exact with a header row.
std::string margins_csv(const RothScanReport& report);

}  // namespace arithdyn
