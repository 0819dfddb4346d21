#include "arithdyn/abc_lab.hpp"

#include "arithdyn/heights.hpp"
#include "arithdyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace arithdyn {

AbcTriple abc_quality(const Rat& a_in, const Rat& b_in, const FactorBudget& budget) {
    Rat a = a_in, b = b_in;
    a.canonicalize();
    b.canonicalize();
    if (a == 0 || b == 0) throw InputError("a and b must be nonzero");
    AbcTriple t;
    t.a = a;
    t.b = b;
    t.c = a + b;
    if (t.c == 0) throw InputError("a + b must be nonzero");
    const HeightValue h = multi_height({t.a, t.b, t.c});
    t.height = h.value;
    t.height_arg = h.argument;

    // Coprime basis of all numerators and denominators; each basis element
    // carries a signed exponent per coordinate, and all its primes share the
    // same equal/unequal pattern, so membership in I is decided per element.
    const std::vector<Rat> z{t.a, t.b, t.c};
    std::vector<Int> parts;
    for (const auto& q : z) {
        parts.push_back(abs_int(q.get_num()));
        parts.push_back(q.get_den());
    }
    const CoprimeBasis basis = coprime_basis(parts);
    for (std::size_t j = 0; j < basis.elements.size(); ++j) {
        long v[3];
        for (int i = 0; i < 3; ++i)
            v[i] = static_cast<long>(basis.exponents[2 * i][j]) - static_cast<long>(basis.exponents[2 * i + 1][j]);
        if (v[0] == v[1] && v[1] == v[2]) continue;
        const FactoredValue f = factor(basis.elements[j], budget);
        for (const auto& pe : f.prime_powers) t.rad_primes.push_back(pe.prime);
        if (!f.complete()) t.rad_exact = false;
    }
    std::sort(t.rad_primes.begin(), t.rad_primes.end());
    for (const auto& p : t.rad_primes) t.rad_arg *= p;
    t.rad_mass = t.rad_primes.empty() ? 0.0 : log_abs(t.rad_arg);
    if (t.rad_mass > 0) t.quality = t.height / t.rad_mass;
    return t;
}

namespace {

void check_roth_hypotheses(int degree, bool squarefree) {
    if (degree < 3) throw InputError("F must have degree >= 3 (got " + std::to_string(degree) + ")");
    if (!squarefree) throw InputError("F must be squarefree");
}

double finish(RothScanReport& rep) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& s : rep.samples) lo = std::min(lo, s.margin);
    return rep.samples.empty() ? 0.0 : 0.0 - lo;
}

}  // namespace

RothScanReport roth_scan_q(const QPoly& F, double epsilon, unsigned long H, const FactorBudget& budget,
                           unsigned jobs) {
    check_roth_hypotheses(F.degree(), is_squarefree(F));
    if (!(epsilon > 0)) throw InputError("epsilon must be positive");
    if (H == 0) throw InputError("height bound must be >= 1");
    RothScanReport rep;
    rep.F = to_string(F);
    rep.degree = static_cast<unsigned>(F.degree());
    rep.epsilon = epsilon;
    rep.sample_description = "all reduced p/q with max(|p|, q) <= " + std::to_string(H);

    // Points in a fixed order: by denominator, then numerator.
    std::vector<Rat> points;
    for (unsigned long q = 1; q <= H; ++q) {
        for (long p = -static_cast<long>(H); p <= static_cast<long>(H); ++p) {
            if (gcd(Int(p), Int(q)) != 1) continue;
            Rat z(p, q);
            z.canonicalize();
            points.push_back(z);
        }
    }
    const double slope = static_cast<double>(rep.degree) - 2.0 - epsilon;
    std::vector<std::optional<RothSample>> out(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t i) {
        const Rat w = F(points[i]);
        if (w == 0) return;
        RothSample s;
        s.z = to_string(points[i]);
        const LogMass lm = radical_logmass(factor(abs_int(w.get_num()), budget));
        s.radsum = lm.value;
        s.exact = lm.exact;
        s.height = weil_height(ExtRational(points[i])).value;
        s.margin = s.radsum - slope * s.height;
        out[i] = std::move(s);
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (out[i])
            rep.samples.push_back(std::move(*out[i]));
        else
            rep.skipped_roots.push_back(to_string(points[i]));
    }
    rep.empirical_constant = finish(rep);
    return rep;
}

std::vector<FFElement> FFSampleFamily::enumerate() const {
    const long B = coeff_bound;
    const std::size_t len = max_degree + 1;
    std::vector<long> c(len, -B);
    std::vector<FFElement> out;
    for (;;) {
        std::vector<Rat> coeffs(c.begin(), c.end());
        out.emplace_back(QPoly(coeffs));
        std::size_t k = 0;
        while (k < len && c[k] == B) c[k++] = -B;
        if (k == len) break;
        ++c[k];
    }
    return out;
}

std::string FFSampleFamily::describe() const {
    return "polynomials in t of degree <= " + std::to_string(max_degree) + " with integer coefficients in [-" +
           std::to_string(coeff_bound) + ", " + std::to_string(coeff_bound) + "]";
}

RothScanReport roth_scan_ff(const FFXPoly& F, double epsilon, const std::vector<FFElement>& samples,
                            const std::string& description, unsigned jobs) {
    check_roth_hypotheses(F.degree(), F.degree() >= 1 && poly_gcd(F, F.derivative()).is_constant());
    if (!(epsilon > 0)) throw InputError("epsilon must be positive");
    RothScanReport rep;
    {
        std::ostringstream os;
        bool first = true;
        for (int k = F.degree(); k >= 0; --k) {
            const FFElement& c = F.coeff(static_cast<std::size_t>(k));
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << to_string(c) << ")";
            if (k > 0) os << "*x^" << k;
        }
        rep.F = os.str();
    }
    rep.degree = static_cast<unsigned>(F.degree());
    rep.epsilon = epsilon;
    rep.sample_description = description;
    const double slope = static_cast<double>(rep.degree) - 2.0 - epsilon;

    std::vector<std::optional<RothSample>> out(samples.size());
    parallel_for(samples.size(), jobs, [&](std::size_t i) {
        const FFElement w = F(samples[i]);
        if (w.is_zero()) return;
        RothSample s;
        s.z = to_string(samples[i]);
        long places = squarefree_part(w.numer()).degree();
        if (w.denom().degree() > w.numer().degree()) ++places;
        s.radsum = static_cast<double>(places);
        s.height = static_cast<double>(ff_height(samples[i]));
        s.margin = s.radsum - slope * s.height;
        out[i] = std::move(s);
    });
    double max_h = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (out[i]) {
            max_h = std::max(max_h, out[i]->height);
            rep.samples.push_back(std::move(*out[i]));
        } else {
            rep.skipped_roots.push_back(to_string(samples[i]));
        }
    }
    rep.empirical_constant = finish(rep);
    rep.sanity_bound = -static_cast<double>(rep.degree) * max_h;
    for (const auto& s : rep.samples) rep.sanity_ok = rep.sanity_ok && s.margin >= *rep.sanity_bound;
    return rep;
}

RothScanReport roth_scan_ff(const FFXPoly& F, double epsilon, const FFSampleFamily& family, unsigned jobs) {
    return roth_scan_ff(F, epsilon, family.enumerate(), family.describe(), jobs);
}

std::string margins_csv(const RothScanReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "z,radsum,height,margin,exact\n";
    for (const auto& s : report.samples)
        os << '"' << s.z << "\"," << s.radsum << ',' << s.height << ',' << s.margin << ','
           << (s.exact ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace arithdyn
