#include "arithdyn/heights.hpp"

#include "arithdyn/error.hpp"
#include "arithdyn/linalg.hpp"
#include "arithdyn/places_qt.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace arithdyn {

HeightValue weil_height(const ExtRational& z) {
    HeightValue h;
    if (z.is_infinity() || z.is_zero()) return h;
    h.argument = std::max(abs_int(z.numerator()), z.denominator());
    h.value = log_abs(h.argument);
    return h;
}

HeightValue weil_height(const FFElement& f) {
    HeightValue h;
    h.field = FieldTag::Qt;
    h.degree = ff_height(f);
    h.value = static_cast<double>(h.degree);
    return h;
}

HeightValue multi_height(const std::vector<Rat>& values) {
    if (values.empty()) throw InputError("multi_height of an empty tuple");
    Int den = 1;
    for (const auto& v : values) den = lcm(den, v.get_den());
    std::vector<Int> w;
    Int g = 0;
    for (const auto& v : values) {
        w.push_back(v.get_num() * (den / v.get_den()));
        g = gcd(g, w.back());
    }
    if (g == 0) throw InputError("multi_height of the zero tuple");
    HeightValue h;
    for (const auto& x : w) h.argument = std::max(h.argument, Int(abs_int(x) / g));
    h.value = log_abs(h.argument);
    return h;
}

namespace {

Int l1(const std::vector<Int>& v) {
    Int s = 0;
    for (const auto& c : v) s += abs_int(c);
    return s;
}

/// 1-norm of the integer forms (f, g) with f p + g q = R * monomial.
Int nullstellensatz_norm(const Form& p, const Form& q, std::size_t target, Int& det_out) {
    const std::size_t d = p.size() - 1;
    const std::size_t n = 2 * d;
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k <= d; ++k) {
            m[j + k][j] = p[k];
            m[j + k][d + j] = q[k];
        }
    }
    det_out = bareiss_determinant(m);
    std::vector<Int> rhs(n, 0);
    rhs[target] = 1;
    const auto sol = solve_rational(m, rhs);
    if (!sol) throw InvariantError("Sylvester system singular for a map with nonzero resultant");
    Int total = 0;
    for (const auto& u : *sol) {
        const Rat scaled = u * det_out;
        if (scaled.get_den() != 1) throw InvariantError("adjugate entry not integral");
        total += abs_int(scaled.get_num());
    }
    return total;
}

}  // namespace

HeightBound phi_height_bound(const RationalMap& map) {
    HeightBound b;
    const Form &p = map.p_form(), &q = map.q_form();
    b.l1_norm = std::max(l1(p), l1(q));
    b.upper_term = log_abs(b.l1_norm);
    Int det_x, det_y;
    const std::size_t top = 2 * map.degree() - 1;
    const Int bx = nullstellensatz_norm(p, q, top, det_x);
    const Int by = nullstellensatz_norm(p, q, 0, det_y);
    b.resultant = map.homogeneous_resultant();
    b.nullstellensatz_norm = std::max(bx, by);
    b.lower_term = log_abs(b.nullstellensatz_norm);
    b.c = std::max({b.upper_term, b.lower_term, 0.0});
    return b;
}

CanonicalHeightEstimate canonical_height(const RationalMap& map, const ExtRational& alpha, double tol,
                                         const HeightLimits& limits) {
    return canonical_height(map, alpha, tol, phi_height_bound(map), limits);
}

CanonicalHeightEstimate canonical_height(const RationalMap& map, const ExtRational& alpha, double tol,
                                         const HeightBound& bound, const HeightLimits& limits) {
    if (!(tol > 0)) throw InputError("tolerance must be positive");
    const double d = map.degree();
    CanonicalHeightEstimate est;
    est.c_phi = bound.c;
    auto radius = [&](unsigned n) { return bound.c * d / ((d - 1.0) * std::pow(d, static_cast<double>(n))); };
    ExtRational z = alpha;
    unsigned n = 0;
    while (radius(n) > tol) {
        const std::size_t size = bit_length(z.numerator()) + bit_length(z.denominator());
        if (size > limits.max_bits) {
            est.capped = true;
            break;
        }
        z = map(z);
        ++n;
    }
    est.iterations_used = n;
    est.estimate = weil_height(z).value / std::pow(d, static_cast<double>(n));
    est.error_radius = radius(n);
    return est;
}

std::string to_string(PointKind k) {
    switch (k) {
        case PointKind::Wandering: return "Wandering";
        case PointKind::Preperiodic: return "Preperiodic";
        case PointKind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

PointClassification classify_point(const RationalMap& map, const ExtRational& alpha, const HeightLimits& limits,
                                   unsigned long max_steps) {
    const HeightBound bound = phi_height_bound(map);
    const double d = map.degree();
    PointClassification out;
    out.height_ceiling = 2.0 * bound.c + 1.0;
    std::map<ExtRational, unsigned long> seen;
    ExtRational z = alpha;
    for (unsigned long n = 0; n <= max_steps; ++n) {
        auto [it, inserted] = seen.emplace(z, n);
        if (!inserted) {
            out.kind = PointKind::Preperiodic;
            out.tail = it->second;
            out.period = n - it->second;
            return out;
        }
        const double h = weil_height(z).value;
        if (h > out.height_ceiling) {
            const double scale = std::pow(d, static_cast<double>(n));
            out.estimate = h / scale;
            out.error_radius = bound.c * d / ((d - 1.0) * scale);
            if (out.estimate - out.error_radius > 0) {
                out.kind = PointKind::Wandering;
                out.witness_index = n;
                return out;
            }
        }
        if (bit_length(z.numerator()) + bit_length(z.denominator()) > limits.max_bits) break;
        z = map(z);
    }
    return out;
}

}  // namespace arithdyn
