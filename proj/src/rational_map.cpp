#include "arithdyn/rational_map.hpp"

#include "arithdyn/error.hpp"
#include "arithdyn/expr.hpp"
#include "arithdyn/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace arithdyn {

struct RationalMap::Cache {
    std::mutex mutex;
    std::vector<IterateRep> iterates;
};

namespace {

Form multiply_forms(const Form& a, const Form& b) {
    Form out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

/// f(A, B) for a form f of degree d and forms A, B of equal degree.
Form compose_form(const Form& f, const Form& A, const Form& B) {
    const std::size_t d = f.size() - 1;
    std::vector<Form> apow{Form{1}}, bpow{Form{1}};
    for (std::size_t k = 1; k <= d; ++k) {
        apow.push_back(multiply_forms(apow.back(), A));
        bpow.push_back(multiply_forms(bpow.back(), B));
    }
    const std::size_t out_degree = d * (A.size() - 1);
    Form out(out_degree + 1, 0);
    for (std::size_t k = 0; k <= d; ++k) {
        if (f[k] == 0) continue;
        const Form term = multiply_forms(apow[k], bpow[d - k]);
        for (std::size_t j = 0; j < term.size(); ++j) out[j] += f[k] * term[j];
    }
    return out;
}

/// Rational function kept as an unreduced quotient, so that common factors
/// written in the input stay visible.
struct Quotient {
    QPoly num, den;

    Quotient(QPoly n = {}, QPoly d = QPoly(Rat(1))) : num(std::move(n)), den(std::move(d)) {}
    friend Quotient operator+(const Quotient& a, const Quotient& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Quotient operator-(const Quotient& a, const Quotient& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Quotient operator*(const Quotient& a, const Quotient& b) { return {a.num * b.num, a.den * b.den}; }
    friend Quotient operator/(const Quotient& a, const Quotient& b) { return {a.num * b.den, a.den * b.num}; }
    friend bool operator==(const Quotient& a, const Quotient& b) { return a.num * b.den == b.num * a.den; }
};

// ---- arithmetic over F_p on ascending coefficient lists ----

using FpPoly = std::vector<Int>;

FpPoly reduce_poly(const std::vector<Int>& f, const Int& p) {
    FpPoly out;
    for (const auto& c : f) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        out.push_back(r);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, const Int& p) {
    Int inv;
    mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
    while (a.size() >= b.size()) {
        Int c = a.back() * inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            Int v = a[shift + j] - c * b[j];
            mpz_fdiv_r(a[shift + j].get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

/// Degree of gcd over F_p; -1 for gcd(0, 0).
int fp_gcd_degree(FpPoly a, FpPoly b, const Int& p) {
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

Residue residue_from_projective(const Int& a, const Int& b, const Int& p) {
    Int ra, rb;
    mpz_fdiv_r(ra.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    mpz_fdiv_r(rb.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t());
    if (rb == 0) {
        if (ra == 0) throw InvariantError("reduction produced (0:0) at a good prime");
        return Residue::infinity();
    }
    Int inv;
    mpz_invert(inv.get_mpz_t(), rb.get_mpz_t(), p.get_mpz_t());
    return Residue{Int(ra * inv % p)};
}

void check_digits(const Form& f, const MapLimits& limits) {
    for (const auto& c : f) {
        if (static_cast<double>(bit_length(c)) * 0.30103 > static_cast<double>(limits.max_coeff_digits))
            throw ResourceCapError("iterate coefficient exceeds " + std::to_string(limits.max_coeff_digits) +
                                   " digits");
    }
}

}  // namespace

RationalMap::RationalMap(Form p, Form q, unsigned d, MapLimits limits)
    : p_(std::move(p)), q_(std::move(q)), degree_(d), limits_(limits), cache_(std::make_shared<Cache>()) {
    cache_->iterates.push_back(IterateRep{1, p_, q_});
}

RationalMap RationalMap::from_polys(const QPoly& P, const QPoly& Q, const MapLimits& limits) {
    if (Q.is_zero()) throw InputError("denominator is zero");
    const QPoly g = poly_gcd(P, Q);
    const int d = std::max(P.degree(), Q.degree());
    if (!g.is_constant()) {
        const int reduced = std::max(exact_div(P, g).degree(), exact_div(Q, g).degree());
        throw InputError("numerator and denominator share the factor " + to_string(g) +
                         "; the reduced map has degree " + std::to_string(reduced));
    }
    if (d <= 1) throw InputError("map has degree " + std::to_string(std::max(d, 0)) + "; degree > 1 required");

    Int den = 1;
    for (const auto* poly : {&P, &Q})
        for (const auto& c : poly->coeffs()) den = lcm(den, c.get_den());
    Form p(static_cast<std::size_t>(d) + 1, 0), q(static_cast<std::size_t>(d) + 1, 0);
    Int content = 0;
    for (int k = 0; k <= d; ++k) {
        const auto i = static_cast<std::size_t>(k);
        p[i] = Rat(P.coeff(i) * den).get_num();
        q[i] = Rat(Q.coeff(i) * den).get_num();
        content = gcd(content, gcd(p[i], q[i]));
    }
    for (const auto& c : q) {
        if (c == 0) continue;
        if (c < 0) content = -content;
        break;
    }
    for (auto& c : p) c /= content;
    for (auto& c : q) c /= content;
    return RationalMap(std::move(p), std::move(q), static_cast<unsigned>(d), limits);
}

RationalMap RationalMap::parse(const std::string& expr, const MapLimits& limits) {
    const ExprPtr e = parse_expression(expr);
    const Quotient value = evaluate<Quotient>(
        *e, [](const Int& n) { return Quotient(QPoly(Rat(n))); },
        [](const Expr& v) -> Quotient {
            if (v.name != "x") throw ParseError("unknown variable '" + v.name + "' (expected x)", v.position);
            return Quotient(QPoly::x());
        });
    if (value.den.is_zero()) throw InputError("expression has a zero denominator");
    return from_polys(value.num, value.den, limits);
}

QPoly parse_polynomial(const std::string& expr) {
    const ExprPtr e = parse_expression(expr);
    const Quotient value = evaluate<Quotient>(
        *e, [](const Int& n) { return Quotient(QPoly(Rat(n))); },
        [](const Expr& v) -> Quotient {
            if (v.name != "x") throw ParseError("unknown variable '" + v.name + "' (expected x)", v.position);
            return Quotient(QPoly::x());
        });
    const auto [q, r] = divmod(value.num, value.den);
    if (!r.is_zero()) throw InputError("expected a polynomial in x: '" + expr + "'");
    return q;
}

std::string RationalMap::str() const {
    const std::string num = to_string(P());
    const QPoly Qp = Q();
    if (Qp == QPoly(Rat(1))) return num;
    auto wrap = [](const std::string& s) {
        return s.find_first_of("+-*/", 1) != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(num) + "/" + wrap(to_string(Qp));
}

Int RationalMap::homogeneous_resultant() const { return sylvester_resultant(p_, q_); }

IterateRep RationalMap::iterate(unsigned i) const {
    if (i == 0) throw InputError("iterate index must be >= 1");
    {
        std::lock_guard lock(cache_->mutex);
        if (i <= cache_->iterates.size()) return cache_->iterates[i - 1];
    }
    unsigned long deg = 1;
    for (unsigned k = 0; k < i; ++k) {
        deg *= degree_;
        if (deg > limits_.max_iterate_degree)
            throw ResourceCapError("iterate degree " + std::to_string(degree_) + "^" + std::to_string(i) +
                                   " exceeds cap " + std::to_string(limits_.max_iterate_degree));
    }
    std::lock_guard lock(cache_->mutex);
    while (cache_->iterates.size() < i) {
        const IterateRep& prev = cache_->iterates.back();
        IterateRep next{prev.index + 1, compose_form(p_, prev.p, prev.q), compose_form(q_, prev.p, prev.q)};
        check_digits(next.p, limits_);
        check_digits(next.q, limits_);
        cache_->iterates.push_back(std::move(next));
    }
    return cache_->iterates[i - 1];
}

Int evaluate_form(const Form& f, const Int& a, const Int& b) {
    const std::size_t D = f.size() - 1;
    std::vector<Int> bpow(D + 1);
    bpow[0] = 1;
    for (std::size_t k = 1; k <= D; ++k) bpow[k] = bpow[k - 1] * b;
    Int acc = 0;
    for (std::size_t k = D + 1; k-- > 0;) acc = acc * a + f[k] * bpow[D - k];
    return acc;
}

std::pair<Int, Int> RationalMap::evaluate_projective(const Int& a, const Int& b) const {
    return {evaluate_form(p_, a, b), evaluate_form(q_, a, b)};
}

ExtRational RationalMap::operator()(const ExtRational& z) const {
    auto [pa, qa] = evaluate_projective(z.numerator(), z.denominator());
    return ExtRational::from_projective(pa, qa);
}

bool has_good_reduction(const RationalMap& map, const Int& p) {
    if (!is_probable_prime(p)) throw InputError(to_string(p) + " is not prime");
    const FpPoly P = reduce_poly(map.p_form(), p), Q = reduce_poly(map.q_form(), p);
    if (fp_gcd_degree(P, Q, p) >= 1) return false;
    const Form rp(map.p_form().rbegin(), map.p_form().rend());
    const Form rq(map.q_form().rbegin(), map.q_form().rend());
    return fp_gcd_degree(reduce_poly(rp, p), reduce_poly(rq, p), p) < 1;
}

BadReduction bad_reduction_primes(const RationalMap& map, const FactorBudget& budget) {
    BadReduction out;
    out.resultant = map.homogeneous_resultant();
    if (out.resultant == 0) throw InvariantError("resultant of a constructed map vanished");
    const FactoredValue f = factor(out.resultant, budget);
    for (const auto& pp : f.prime_powers)
        if (!has_good_reduction(map, pp.prime)) out.primes.push_back(pp.prime);
    out.unresolved = !f.complete();
    return out;
}

Residue reduce_mod(const ExtRational& z, const Int& p) {
    if (z.is_infinity()) return Residue::infinity();
    if (mpz_divisible_p(z.denominator().get_mpz_t(), p.get_mpz_t())) return Residue::infinity();
    return residue_from_projective(z.numerator(), z.denominator(), p);
}

Residue step_mod(const RationalMap& map, const Residue& r, const Int& p) {
    const Int a = r.value ? *r.value : Int(1);
    const Int b = r.value ? Int(1) : Int(0);
    auto [pa, qa] = map.evaluate_projective(a, b);
    return residue_from_projective(pa, qa, p);
}

std::pair<Residue, Residue> reduce_and_step(const RationalMap& map, const ExtRational& z, const Int& p) {
    if (!has_good_reduction(map, p)) throw InputError(to_string(p) + " is a prime of bad reduction");
    return {step_mod(map, reduce_mod(z, p), p), reduce_mod(map(z), p)};
}

ResidueCycle residue_cycle(const RationalMap& map, const Residue& start, const Int& p) {
    if (!has_good_reduction(map, p)) throw InputError(to_string(p) + " is a prime of bad reduction");
    if (start.value && (*start.value < 0 || *start.value >= p)) throw InputError("residue out of range");
    std::map<Residue, unsigned long> seen;
    Residue r = start;
    for (unsigned long n = 0;; ++n) {
        auto [it, inserted] = seen.emplace(r, n);
        if (!inserted) return ResidueCycle{p, start, it->second, n - it->second};
        r = step_mod(map, r, p);
    }
}

bool is_power_map(const RationalMap& map) {
    auto single_term_at = [](const Form& f, std::size_t k) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if ((f[i] != 0) != (i == k)) return false;
        return true;
    };
    const std::size_t d = map.degree();
    const Form &p = map.p_form(), &q = map.q_form();
    return (single_term_at(p, d) && single_term_at(q, 0)) || (single_term_at(p, 0) && single_term_at(q, d));
}

unsigned long preimage_count(const RationalMap& map, const ExtRational& beta, unsigned n) {
    const IterateRep it = map.iterate(n);
    const Int b = beta.numerator(), c = beta.denominator();
    Form f(it.p.size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = c * it.p[k] - b * it.q[k];
    const QPoly affine = from_integers(f);
    if (affine.is_zero()) throw InvariantError("p_n and q_n proportional");
    const unsigned long at_infinity = static_cast<unsigned long>(affine.degree()) < it.degree() ? 1 : 0;
    return static_cast<unsigned long>(squarefree_part(affine).degree()) + at_infinity;
}

bool is_exceptional(const RationalMap& map, const ExtRational& beta) {
    return preimage_count(map, beta, 2) == 1 && map(map(beta)) == beta;
}

RamificationProfile ramification_profile(const RationalMap& map, unsigned n) {
    const IterateRep it = map.iterate(n);
    RamificationProfile prof;
    prof.level = n;
    const QPoly Pn = it.P();
    prof.infinity_multiplicity = it.degree() - static_cast<unsigned long>(Pn.degree());
    const auto parts = squarefree_decomposition(Pn);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].is_constant()) continue;
        prof.finite_multiplicities.push_back(
            {i + 1, static_cast<unsigned long>(parts[i].degree()), parts[i]});
    }
    // deg(sf) - deg(gcd(sf, g)) with g = gcd(Pn, Pn'), sf = Pn / g.
    const QPoly g = poly_gcd(Pn, Pn.derivative());
    const QPoly sf = exact_div(Pn, g);
    prof.simple_root_count = static_cast<unsigned long>(sf.degree() - poly_gcd(sf, g).degree());
    if (prof.infinity_multiplicity == 1) ++prof.simple_root_count;
    return prof;
}

std::string to_string(RamificationVerdict v) {
    switch (v) {
        case RamificationVerdict::NotDynamicallyRamified: return "NotDynamicallyRamified";
        case RamificationVerdict::LikelyDynamicallyRamified: return "LikelyDynamicallyRamified";
        case RamificationVerdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

RamificationReport dynamical_ramification_verdict(const RationalMap& map, unsigned depth,
                                                  std::optional<unsigned long> threshold) {
    if (depth == 0) throw InputError("depth must be >= 1");
    RamificationReport rep;
    rep.threshold = threshold.value_or(map.degree() + 2UL);
    for (unsigned n = 1; n <= depth; ++n) {
        const unsigned long count = ramification_profile(map, n).simple_root_count;
        rep.simple_counts.push_back(count);
        rep.cumulative_simple += count;
        if (!rep.witness_level && count > rep.threshold) rep.witness_level = n;
    }
    if (rep.witness_level) rep.verdict = RamificationVerdict::NotDynamicallyRamified;
    else if (rep.cumulative_simple == 0) rep.verdict = RamificationVerdict::LikelyDynamicallyRamified;
    else rep.verdict = RamificationVerdict::Inconclusive;
    return rep;
}

}  // namespace arithdyn
