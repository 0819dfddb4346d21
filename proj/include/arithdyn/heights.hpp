#pragma once

#include "arithdyn/bigint.hpp"
#include "arithdyn/ratfunc.hpp"
#include "arithdyn/rational_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

enum class FieldTag { Q, Qt };

/// A height. Over Q it is log(argument) for an exact integer argument >= 1;
/// over Q(t) it is an exact integer degree. The two never mix.
struct HeightValue {
    FieldTag field = FieldTag::Q;
    double value = 0.0;
    /// Q only: value = log(argument).
    Int argument = 1;
    /// Q(t) only.
    long degree = 0;
};

/// log max(|num|, |den|); h(0) = h(inf) = 0.
HeightValue weil_height(const ExtRational& z);
HeightValue weil_height(const FFElement& f);

/// h(z_1, ..., z_n) over Q: log of max |w_i| / gcd(w) where w = z * lcm(dens).
/// Throws InputError for an empty or all-zero tuple.
HeightValue multi_height(const std::vector<Rat>& values);

/// Explicit constant C with |h(phi(z)) - d h(z)| <= C for every z in P^1(Q).
///
/// Write z = (a : b) with gcd(a, b) = 1 and H = max(|a|, |b|).
/// Upper side: |p(a, b)|, |q(a, b)| <= L1 * H^d with L1 the larger coefficient
/// 1-norm, so h(phi(z)) <= d h(z) + log L1.
/// Lower side: solving the Sylvester system gives integer forms f1, g1, f2, g2
/// of degree d-1 with f1 p + g1 q = R x^(2d-1) and f2 p + g2 q = R y^(2d-1),
/// R = +-Res(p, q). Then |R| H^(2d-1) <= B H^(d-1) max(|p(a,b)|, |q(a,b)|) with
/// B the larger of |f1|_1 + |g1|_1 and |f2|_1 + |g2|_1, while
/// g = gcd(p(a,b), q(a,b)) divides R. Hence
/// h(phi(z)) = log(max(|p|, |q|) / g) >= d h(z) - log B.
/// C = max(log L1, log B).
struct HeightBound {
    double c = 0.0;
    double upper_term = 0.0;  // log L1
    double lower_term = 0.0;  // log B
    Int resultant;
    Int l1_norm;
    Int nullstellensatz_norm;  // B
};

HeightBound phi_height_bound(const RationalMap& map);

struct CanonicalHeightEstimate {
    double estimate = 0.0;
    /// |estimate - canonical height| <= error_radius.
    double error_radius = 0.0;
    unsigned iterations_used = 0;
    double c_phi = 0.0;
    /// The orbit outgrew the size cap before reaching the tolerance.
    bool capped = false;
};

struct HeightLimits {
    std::size_t max_bits = std::size_t{1} << 22;
};

/// h(phi^N(alpha)) / d^N for the least N with C d / ((d - 1) d^N) <= tol.
CanonicalHeightEstimate canonical_height(const RationalMap& map, const ExtRational& alpha, double tol,
                                         const HeightLimits& limits = {});
/// Same with a precomputed bound.
CanonicalHeightEstimate canonical_height(const RationalMap& map, const ExtRational& alpha, double tol,
                                         const HeightBound& bound, const HeightLimits& limits = {});

enum class PointKind { Wandering, Preperiodic, Inconclusive };

std::string to_string(PointKind k);

struct PointClassification {
    PointKind kind = PointKind::Inconclusive;
    unsigned long tail = 0;
    unsigned long period = 0;
    /// Wandering: the orbit index n where h(phi^n(alpha)) first exceeded the
    /// ceiling, with the canonical-height certificate at that n.
    unsigned long witness_index = 0;
    double estimate = 0.0;
    double error_radius = 0.0;
    double height_ceiling = 0.0;
};

/// Follows the orbit until a value repeats (preperiodic) or a height exceeds
/// 2 C + 1 (wandering: the canonical height is then provably positive).
PointClassification classify_point(const RationalMap& map, const ExtRational& alpha,
                                   const HeightLimits& limits = {}, unsigned long max_steps = 100000);

}  // namespace arithdyn
