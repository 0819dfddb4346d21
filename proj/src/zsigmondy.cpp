#include "arithdyn/zsigmondy.hpp"

#include "arithdyn/places_qt.hpp"
#include "arithdyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace arithdyn {

std::string to_string(TerminationKind k) {
    switch (k) {
        case TerminationKind::ReachedN: return "reached-N";
        case TerminationKind::HitZero: return "hit-zero";
        case TerminationKind::Preperiodic: return "preperiodic";
        case TerminationKind::ResourceCap: return "resource-cap";
    }
    return "unknown";
}

namespace {

/// Shared orbit driver. `step` maps a value to the next one, `key` gives an
/// exact identity for cycle detection, `too_big` enforces the size cap.
/// Values already in `values` (a verified prefix) are replayed instead of
/// recomputed, so resuming gives exactly the fresh result.
template <class V, class Step, class Key, class IsZero, class TooBig>
Termination drive_orbit(const V& alpha, unsigned long n_max, std::vector<V>& values, Step step, Key key,
                        IsZero is_zero, TooBig too_big) {
    Termination term;
    std::vector<V> prefix;
    prefix.swap(values);
    std::map<std::string, unsigned long> seen{{key(alpha), 0}};
    std::optional<unsigned long> first_zero;
    V current = alpha;
    for (unsigned long k = 1; k <= n_max; ++k) {
        current = k <= prefix.size() ? prefix[k - 1] : step(current);
        if (too_big(current)) {
            term.kind = TerminationKind::ResourceCap;
            break;
        }
        const auto [it, inserted] = seen.emplace(key(current), k);
        if (!inserted) {
            term.kind = TerminationKind::Preperiodic;
            term.tail = it->second;
            term.period = k - it->second;
            // The repeat value itself is phi^k; fill k..N from the cycle.
            auto at = [&](unsigned long idx) -> const V& {
                return idx == 0 ? alpha : values[idx - 1];
            };
            for (unsigned long j = k; j <= n_max; ++j)
                values.push_back(at(term.tail + (j - term.tail) % term.period));
            return term;
        }
        values.push_back(current);
        if (!first_zero && is_zero(current)) first_zero = k;
    }
    if (first_zero && term.kind != TerminationKind::ResourceCap) {
        term.kind = TerminationKind::HitZero;
        term.zero_index = *first_zero;
        values.resize(*first_zero);
    } else if (first_zero) {
        term.zero_index = *first_zero;
    }
    return term;
}

std::vector<Int> numerators_before(const std::vector<ExtRational>& values, unsigned long n) {
    std::vector<Int> out;
    for (unsigned long m = 1; m < n; ++m) {
        const ExtRational& v = values[m - 1];
        if (v.is_infinity()) continue;  // numerator of (1 : 0) is 1
        out.push_back(v.numerator());
    }
    return out;
}

void check_level(const std::vector<ExtRational>& values, unsigned long n) {
    if (n == 0 || n > values.size())
        throw InputError("level " + std::to_string(n) + " outside the computed orbit 1.." +
                         std::to_string(values.size()));
}

/// v_p(phi^m(alpha)) <= 0 for all m < n and v_p(phi^n(alpha)) > 0, checked
/// straight from the definition.
bool primitive_by_definition(const std::vector<ExtRational>& values, unsigned long n, const Int& p) {
    const ExtRational& v = values[n - 1];
    if (v.is_infinity() || v.is_zero() || valuation(v.value(), p) <= 0) return false;
    for (unsigned long m = 1; m < n; ++m) {
        const ExtRational& w = values[m - 1];
        if (w.is_infinity()) continue;
        if (w.is_zero() || valuation(w.value(), p) > 0) return false;
    }
    return true;
}

}  // namespace

Orbit orbit(const RationalMap& map, const ExtRational& alpha, unsigned long n_max, const OrbitLimits& limits) {
    return orbit_resume(map, alpha, {}, n_max, limits);
}

Orbit orbit_resume(const RationalMap& map, const ExtRational& alpha, std::vector<ExtRational> prefix,
                   unsigned long n_max, const OrbitLimits& limits) {
    Orbit out;
    out.alpha = alpha;
    out.values = std::move(prefix);
    out.termination = drive_orbit<ExtRational>(
        alpha, n_max, out.values, [&](const ExtRational& z) { return map(z); },
        [](const ExtRational& z) { return z.str(); }, [](const ExtRational& z) { return z.is_zero(); },
        [&](const ExtRational& z) {
            return !z.is_infinity() &&
                   std::max(bit_length(z.numerator()), bit_length(z.denominator())) > limits.max_bits;
        });
    return out;
}

Int primitive_part(const std::vector<ExtRational>& values, unsigned long n) {
    check_level(values, n);
    const ExtRational& v = values[n - 1];
    if (v.is_zero() || v.is_infinity())
        throw InputError("phi^" + std::to_string(n) + "(alpha) = " + v.str() + " has no primitive part");
    return strip_shared_primes<IntegerRing>(v.numerator(), numerators_before(values, n));
}

PrimitivePrimes primitive_prime_factors(const std::vector<ExtRational>& values, unsigned long n,
                                        const FactorBudget& budget) {
    const Int pp = primitive_part(values, n);
    const FactoredValue f = factor(pp, budget);
    PrimitivePrimes out;
    out.unresolved = !f.complete();
    for (const auto& pe : f.prime_powers) {
        if (!primitive_by_definition(values, n, pe.prime))
            throw InvariantError("prime " + to_string(pe.prime) + " of the primitive part fails the definition");
        out.primes.push_back(pe.prime);
    }
    return out;
}

SquarefreePrimitive squarefree_primitive_prime(const std::vector<ExtRational>& values, unsigned long n,
                                               const FactorBudget& budget) {
    const Int pp = primitive_part(values, n);
    const FactoredValue f = factor(pp, budget);
    const Rat& v = values[n - 1].value();
    SquarefreePrimitive out;
    for (const auto& pe : f.prime_powers) {
        if (valuation(v, pe.prime) == 1) {
            out.prime = pe.prime;
            break;
        }
    }
    out.unresolved = !out.prime && !f.complete();
    return out;
}

OrbitRecord make_record(const std::vector<ExtRational>& values, unsigned long n, bool check_squarefree,
                        const FactorBudget& budget) {
    check_level(values, n);
    const ExtRational& v = values[n - 1];
    if (v.is_zero() || v.is_infinity()) return record_from_parts(values, n, 0, std::nullopt);
    const Int pp = primitive_part(values, n);
    std::optional<FactoredValue> f;
    if (check_squarefree) f = factor(pp, budget);
    return record_from_parts(values, n, pp, std::move(f));
}

OrbitRecord record_from_parts(const std::vector<ExtRational>& values, unsigned long n, const Int& primitive,
                              std::optional<FactoredValue> factored) {
    check_level(values, n);
    OrbitRecord r;
    r.n = n;
    r.value = values[n - 1];
    if (r.value.is_zero() || r.value.is_infinity()) {
        r.defined = false;
        r.primitive_part = 0;
        return r;
    }
    r.primitive_part = primitive;
    r.has_primitive = r.primitive_part > 1;
    if (!factored) return r;
    if (factored->reconstruct() != primitive)
        throw InvariantError("factor data does not multiply back to the primitive part at n = " + std::to_string(n));

    r.squarefree_checked = true;
    r.primitive_factored = std::move(*factored);
    for (const auto& pe : r.primitive_factored.prime_powers) {
        if (!primitive_by_definition(values, n, pe.prime))
            throw InvariantError("prime " + to_string(pe.prime) + " of the primitive part fails the definition");
        r.primitive_primes.push_back(pe.prime);
        if (!r.squarefree_prime && valuation(r.value.value(), pe.prime) == 1) r.squarefree_prime = pe.prime;
    }
    r.has_squarefree_primitive = r.squarefree_prime.has_value();
    r.unresolved = !r.has_squarefree_primitive && !r.primitive_factored.complete();
    return r;
}

ZsigmondyReport assemble_report(const RationalMap& map, const ExtRational& alpha, const ZsigmondyOptions& opts,
                                const Orbit& orb, std::vector<OrbitRecord> records) {
    ZsigmondyReport rep;
    rep.map = map.str();
    rep.alpha = alpha;
    rep.max_n = opts.max_n;
    rep.squarefree_max_n = std::min(opts.squarefree_max_n, opts.max_n);
    rep.termination = orb.termination;
    rep.records = std::move(records);
    for (const auto& r : rep.records) {
        if (!r.defined) continue;
        if (!r.has_primitive) rep.zsigmondy_set.push_back(r.n);
        if (!r.squarefree_checked) continue;
        if (r.unresolved)
            rep.squarefree_unresolved.push_back(r.n);
        else if (!r.has_squarefree_primitive)
            rep.squarefree_zsigmondy_set.push_back(r.n);
    }

    Hypotheses& h = rep.hypotheses;
    h.power_map = is_power_map(map);
    if (h.power_map) h.warnings.push_back("power map c*z^(+-d): primitive divisors are not expected");
    for (std::size_t k = 0; k < orb.values.size(); ++k) {
        if (orb.values[k].is_zero()) {
            h.zero_in_orbit = k + 1;
            break;
        }
    }
    if (alpha.is_zero()) h.zero_in_orbit = 0;
    if (h.zero_in_orbit)
        h.warnings.push_back("0 lies in the orbit (index " + std::to_string(*h.zero_in_orbit) + ")");
    h.classification = classify_point(map, alpha);
    if (h.classification.kind == PointKind::Preperiodic)
        h.warnings.push_back("alpha is preperiodic: the orbit is finite");
    else if (h.classification.kind == PointKind::Inconclusive)
        h.warnings.push_back("could not certify that alpha is wandering");
    h.ramification = dynamical_ramification_verdict(map, opts.ramification_depth);
    if (h.ramification.verdict == RamificationVerdict::LikelyDynamicallyRamified)
        h.warnings.push_back("map looks dynamically ramified: square-free primitive divisors are not expected");
    else if (h.ramification.verdict == RamificationVerdict::Inconclusive)
        h.warnings.push_back("dynamical ramification test inconclusive");
    return rep;
}

ZsigmondyReport zsigmondy_report(const RationalMap& map, const ExtRational& alpha, const ZsigmondyOptions& opts) {
    const Orbit orb = orbit(map, alpha, opts.max_n, opts.limits);
    const unsigned long sq = std::min(opts.squarefree_max_n, opts.max_n);
    std::vector<OrbitRecord> records(orb.values.size());
    parallel_for(records.size(), opts.jobs, [&](std::size_t i) {
        const unsigned long n = i + 1;
        records[i] = make_record(orb.values, n, n <= sq, opts.budget);
    });
    return assemble_report(map, alpha, opts, orb, std::move(records));
}

// ---------------------------------------------------------------------------

PropOldReport prop_old_diagnostic(const RationalMap& map, const ExtRational& alpha, const QPoly& F, unsigned level,
                                  unsigned long n_max, double delta, const FactorBudget& budget,
                                  unsigned periodic_screen_depth) {
    if (level == 0) throw InputError("level i must be >= 1");
    if (F.is_constant()) throw InputError("F must be non-constant");
    if (!(delta > 0)) throw InputError("delta must be positive");
    const IterateRep it = map.iterate(level);
    if (!divides(F, it.P()))
        throw InputError("F = " + to_string(F) + " does not divide P_" + std::to_string(level) + " = " +
                         to_string(it.P()));

    PropOldReport rep;
    rep.F = F;
    rep.level = level;
    rep.delta = delta;
    rep.periodic_screen_depth = periodic_screen_depth;

    rep.zero_screen_passed = F(Rat(0)) != 0;
    for (unsigned l = 1; l < level && rep.zero_screen_passed; ++l)
        rep.zero_screen_passed = poly_gcd(F, map.iterate(l).P()).is_constant();
    rep.periodic_screen_passed = true;
    for (unsigned k = 1; k <= periodic_screen_depth && rep.periodic_screen_passed; ++k) {
        const IterateRep ik = map.iterate(k);
        rep.periodic_screen_passed = poly_gcd(F, ik.P() - QPoly::x() * ik.Q()).is_constant();
    }

    const Orbit orb = orbit(map, alpha, n_max);
    auto value_at = [&](unsigned long k) -> const ExtRational& { return k == 0 ? alpha : orb.values[k - 1]; };

    double sup = -std::numeric_limits<double>::infinity();
    for (unsigned long n = std::max<unsigned long>(1, level); n <= orb.values.size(); ++n) {
        PropOldRow row;
        row.n = n;
        const ExtRational& z = value_at(n - level);
        Int G = 1;
        if (!z.is_infinity()) {
            const Rat w = F(z.value());
            const Int fw = abs_int(w.get_num());
            for (unsigned long m = 1; m < n; ++m) {
                const ExtRational& vm = orb.values[m - 1];
                if (vm.is_infinity()) continue;
                if (w == 0) {
                    if (!vm.is_zero()) G = lcm(G, vm.numerator());
                    continue;
                }
                G = lcm(G, vm.is_zero() ? fw : gcd(fw, vm.numerator()));
            }
        }
        const FactoredValue fg = factor(G, budget);
        for (const auto& pe : fg.prime_powers) row.z_primes.push_back(pe.prime);
        const LogMass lm = radical_logmass(fg);
        row.mass = lm.value;
        row.radical = lm.radical;
        row.exact = lm.exact;
        row.height = weil_height(orb.values[n - 1]).value;
        row.ratio = row.height > 0 ? row.mass / row.height : 0.0;
        sup = std::max(sup, row.mass - delta * row.height);
        rep.rows.push_back(std::move(row));
    }
    rep.empirical_constant = rep.rows.empty() ? 0.0 : sup;
    return rep;
}

// ---------------------------------------------------------------------------

FFMap FFMap::parse(const std::string& expr) {
    const FFXQuotient value = parse_ff_xquotient(expr);
    const XPoly g = poly_gcd(value.num, value.den);
    if (!g.is_constant())
        throw InputError("numerator and denominator share a factor of degree " + std::to_string(g.degree()) +
                         " in x");
    FFMap m;
    const FFElement lc = value.den.leading();
    m.P_ = value.num * XPoly(FFElement(1) / lc);
    m.Q_ = value.den.monic();
    const int d = std::max(m.P_.degree(), m.Q_.degree());
    if (d <= 1) throw InputError("map has degree " + std::to_string(std::max(d, 0)) + "; degree > 1 required");
    m.degree_ = static_cast<unsigned>(d);
    return m;
}

std::optional<FFElement> FFMap::operator()(const std::optional<FFElement>& z) const {
    if (!z) {
        if (P_.degree() > Q_.degree()) return std::nullopt;
        if (P_.degree() < Q_.degree()) return FFElement(0);
        return P_.leading() / Q_.leading();
    }
    const FFElement den = Q_(*z);
    if (den.is_zero()) return std::nullopt;
    return P_(*z) / den;
}

FFZsigmondyReport ff_zsigmondy_report(const FFMap& map, const std::optional<FFElement>& alpha, unsigned long n_max,
                                      unsigned long max_degree) {
    using V = std::optional<FFElement>;
    FFZsigmondyReport rep;
    rep.max_n = n_max;
    std::vector<V> values;
    rep.termination = drive_orbit<V>(
        alpha, n_max, values, [&](const V& z) { return map(z); },
        [](const V& z) { return z ? "(" + to_string(z->numer()) + ")/(" + to_string(z->denom()) + ")" : "inf"; },
        [](const V& z) { return z && z->is_zero(); },
        [&](const V& z) {
            return z && std::max(z->numer().degree(), z->denom().degree()) > static_cast<int>(max_degree);
        });

    std::vector<QPoly> earlier;
    for (unsigned long n = 1; n <= values.size(); ++n) {
        FFOrbitRecord r;
        r.n = n;
        r.value = values[n - 1];
        if (!r.value || r.value->is_zero()) {
            r.defined = false;
            if (r.value) earlier.push_back(QPoly());
            rep.records.push_back(std::move(r));
            continue;
        }
        r.primitive_part = strip_shared_primes<PolyRing>(r.value->numer(), earlier);
        r.has_primitive = !r.primitive_part.is_constant();
        const auto parts = squarefree_decomposition(r.primitive_part);
        r.squarefree_primitive_part = parts.empty() ? QPoly(Rat(1)) : parts[0];
        r.has_squarefree_primitive = !r.squarefree_primitive_part.is_constant();
        if (!r.has_primitive) rep.zsigmondy_set.push_back(n);
        if (!r.has_squarefree_primitive) rep.squarefree_zsigmondy_set.push_back(n);
        earlier.push_back(r.value->numer());
        rep.records.push_back(std::move(r));
    }
    return rep;
}

}  // namespace arithdyn
