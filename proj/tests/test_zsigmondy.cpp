#include "arithdyn/zsigmondy.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace arithdyn;

namespace {

std::vector<ExtRational> values_of(const std::string& map, long alpha, unsigned long n) {
    return orbit(RationalMap::parse(map), Rat(alpha), n).values;
}

std::vector<std::string> strs(const std::vector<ExtRational>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

const std::vector<std::pair<std::string, std::string>> kCorpus{
    {"x^2+1", "1"},    {"x^2-2", "3"},        {"x^2+1/2", "1"},      {"(x^2+1)/x", "2"},
    {"x^3+x+1", "1"},  {"(2x^2-3)/(5x+7)", "1"}, {"x^2-x+3", "-1"},  {"(x^2-3)/(x+1)", "2"},
    {"x^2", "2"},      {"(x-1)^2", "3"},      {"1/x^2", "3"},        {"x^2+x", "1/2"},
};

}  // namespace

TEST_CASE("orbit examples") {
    auto o = orbit(RationalMap::parse("x^2+1"), Rat(1), 5);
    CHECK(strs(o.values) == std::vector<std::string>{"2", "5", "26", "677", "458330"});
    CHECK(o.termination.kind == TerminationKind::ReachedN);

    o = orbit(RationalMap::parse("x^2-1"), Rat(0), 4);
    CHECK(strs(o.values) == std::vector<std::string>{"-1", "0", "-1", "0"});
    CHECK(o.termination.kind == TerminationKind::Preperiodic);
    CHECK(o.termination.tail == 0);
    CHECK(o.termination.period == 2);

    o = orbit(RationalMap::parse("x^2"), Rat(2), 3);
    CHECK(strs(o.values) == std::vector<std::string>{"4", "16", "256"});

    // 0 -> 1 -> 2 -> 5 ... alpha = 0 itself is not part of phi^1..phi^N.
    o = orbit(RationalMap::parse("x^2+1"), Rat(0), 5);
    CHECK(o.termination.kind == TerminationKind::ReachedN);

    o = orbit(RationalMap::parse("x^2-2x"), Rat(2), 5);
    CHECK(o.termination.kind == TerminationKind::Preperiodic);

    o = orbit(RationalMap::parse("x^2-4"), Rat(2), 5);
    CHECK(o.termination.kind == TerminationKind::HitZero);
    CHECK(o.termination.zero_index == 1);
    CHECK(o.values.size() == 1);

    o = orbit(RationalMap::parse("x^2+1"), Rat(1), 40, OrbitLimits{200});
    CHECK(o.termination.kind == TerminationKind::ResourceCap);
    CHECK(o.values.size() < 40);
}

TEST_CASE("primitive_part examples") {
    const auto v = values_of("x^2+1", 1, 5);
    CHECK(primitive_part(v, 3) == 13);
    CHECK(primitive_part(v, 5) == 45833);
    CHECK(primitive_part(values_of("x^2", 2, 3), 2) == 1);
    CHECK_THROWS_AS(primitive_part(values_of("x^2-1", 0, 4), 2), InputError);
    CHECK_THROWS_AS(primitive_part(v, 6), InputError);
}

TEST_CASE("primitive_prime_factors and squarefree_primitive_prime") {
    const auto v = values_of("x^2+1", 1, 5);
    CHECK(primitive_prime_factors(v, 3).primes == std::vector<Int>{13});
    CHECK(primitive_prime_factors(v, 4).primes == std::vector<Int>{677});
    CHECK(primitive_prime_factors(values_of("x^2", 2, 3), 3).primes.empty());

    CHECK(squarefree_primitive_prime(v, 3).prime == Int(13));
    CHECK(squarefree_primitive_prime(v, 2).prime == Int(5));
    const auto sq = squarefree_primitive_prime(values_of("(x-1)^2", 3, 3), 2);
    CHECK(!sq.prime);
    CHECK(!sq.unresolved);
}

TEST_CASE("denominator primes do not block primitivity") {
    // 1/2 -> 5/4 -> 41/16 -> 1937/256: 2 only ever divides denominators.
    const auto v = orbit(RationalMap::parse("x^2+1"), Rat(1, 2), 3).values;
    CHECK(primitive_part(v, 1) == 5);
    CHECK(primitive_part(v, 2) == 41);
    CHECK(primitive_part(v, 3) == 1937);
}

TEST_CASE("zsigmondy_report examples") {
    ZsigmondyOptions opts;
    opts.max_n = 10;
    auto rep = zsigmondy_report(RationalMap::parse("x^2+1"), Rat(1), opts);
    CHECK(rep.zsigmondy_set.empty());
    CHECK(rep.squarefree_zsigmondy_set.empty());
    CHECK(rep.squarefree_unresolved.empty());
    CHECK(!rep.hypotheses.power_map);

    opts.max_n = 6;
    rep = zsigmondy_report(RationalMap::parse("x^2"), Rat(2), opts);
    CHECK(rep.zsigmondy_set == std::vector<unsigned long>{2, 3, 4, 5, 6});
    CHECK(rep.hypotheses.power_map);
    CHECK(!rep.hypotheses.warnings.empty());

    rep = zsigmondy_report(RationalMap::parse("(x-1)^2"), Rat(3), opts);
    CHECK(rep.squarefree_zsigmondy_set == std::vector<unsigned long>{1, 2, 3, 4, 5, 6});
    CHECK(rep.hypotheses.ramification.verdict == RamificationVerdict::LikelyDynamicallyRamified);
}

TEST_CASE("report output does not depend on the worker count") {
    ZsigmondyOptions a, b;
    a.max_n = b.max_n = 9;
    a.squarefree_max_n = b.squarefree_max_n = 6;
    b.jobs = 4;
    const auto map = RationalMap::parse("x^3+x+1");
    const auto r1 = zsigmondy_report(map, Rat(1), a);
    const auto r2 = zsigmondy_report(map, Rat(1), b);
    REQUIRE(r1.records.size() == r2.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i) {
        CHECK(r1.records[i].primitive_part == r2.records[i].primitive_part);
        CHECK(r1.records[i].primitive_primes == r2.records[i].primitive_primes);
        CHECK(r1.records[i].squarefree_prime == r2.records[i].squarefree_prime);
    }
}

TEST_CASE("gcd detector agrees with the definitional oracle on the corpus") {
    for (const auto& [m, a] : kCorpus) {
        CAPTURE(m);
        const auto map = RationalMap::parse(m);
        const auto orb = orbit(map, ExtRational::parse(a), 8);
        for (unsigned long n = 1; n <= orb.values.size(); ++n) {
            CAPTURE(n);
            const auto& v = orb.values[n - 1];
            if (v.is_zero() || v.is_infinity()) continue;
            const auto ref = oracle::definitional(orb.values, n, FactorBudget{1 << 16, 200000});
            const auto rec = make_record(orb.values, n, n <= 5, FactorBudget{1 << 16, 200000});
            REQUIRE(ref.has_primitive.has_value());
            CHECK(rec.has_primitive == *ref.has_primitive);
            // Invariants of the record.
            CHECK(mpz_divisible_p(v.numerator().get_mpz_t(), rec.primitive_part.get_mpz_t()));
            for (unsigned long k = 1; k < n; ++k)
                if (!orb.values[k - 1].is_infinity() && !orb.values[k - 1].is_zero())
                    CHECK(gcd(rec.primitive_part, orb.values[k - 1].numerator()) == 1);
            if (rec.has_squarefree_primitive) CHECK(rec.has_primitive);
            if (rec.squarefree_checked && !rec.unresolved && ref.has_squarefree_primitive)
                CHECK(rec.has_squarefree_primitive == *ref.has_squarefree_primitive);
        }
    }
}

TEST_CASE("primitive primes satisfy the definition verbatim") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto map = testing::random_map_retry(rng, 2, 4);
        const auto orb = orbit(map, testing::random_rational(rng, 5), 5);
        for (unsigned long n = 1; n <= orb.values.size(); ++n) {
            const auto& v = orb.values[n - 1];
            if (v.is_zero() || v.is_infinity()) continue;
            for (const auto& p : primitive_prime_factors(orb.values, n).primes) {
                CHECK(valuation(v.value(), p) > 0);
                for (unsigned long m = 1; m < n; ++m)
                    if (!orb.values[m - 1].is_infinity()) CHECK(valuation(orb.values[m - 1].value(), p) <= 0);
            }
        }
    }
}

TEST_CASE("unresolved square-free verdicts are reported, not guessed") {
    // 2^61-1 squared times a large semiprime: trial division and a tiny rho
    // budget cannot split the semiprime.
    const Int p("100000000000000000000000000319"), q("100000000000000000010000000381");
    std::vector<ExtRational> v{Rat(p * p * q)};
    FactorBudget tiny;
    tiny.trial_bound = 100;
    tiny.rho_effort = 10;
    const auto rec = make_record(v, 1, true, tiny);
    CHECK(rec.has_primitive);
    CHECK(!rec.has_squarefree_primitive);
    CHECK(rec.unresolved);
}

TEST_CASE("prop_old_diagnostic examples") {
    const auto map = RationalMap::parse("x^2+1");
    const QPoly F = QPoly::x() * QPoly::x() + QPoly(Rat(1));
    const auto rep = prop_old_diagnostic(map, Rat(1), F, 1, 6, 0.5);
    REQUIRE(rep.rows.size() == 6);
    CHECK(rep.rows[0].mass == 0.0);
    CHECK(rep.rows[1].z_primes.empty());
    CHECK(rep.rows[2].z_primes == std::vector<Int>{2});
    CHECK(rep.rows[2].mass == doctest::Approx(std::log(2.0)));
    CHECK(rep.zero_screen_passed);
    CHECK(rep.periodic_screen_passed);

    CHECK_THROWS_AS(prop_old_diagnostic(map, Rat(1), QPoly::x() - QPoly(Rat(1)), 1, 4, 0.5), InputError);
}

TEST_CASE("prop_old Z matches the valuation predicate") {
    const auto map = RationalMap::parse("x^2-2");
    const auto P2 = map.iterate(2).P();
    const auto rep = prop_old_diagnostic(map, Rat(3), P2, 2, 7, 0.25);
    const auto vals = orbit(map, Rat(3), 7).values;
    for (const auto& row : rep.rows) {
        const ExtRational z = row.n == 2 ? ExtRational(Rat(3)) : vals[row.n - 3];
        const Rat w = P2(z.value());
        // Every prime of Z has min(v_p(phi^m), v_p(F(z))) > 0 for some m < n.
        for (const auto& p : row.z_primes) {
            bool hit = false;
            for (unsigned long m = 1; m < row.n; ++m)
                hit = hit || (valuation(vals[m - 1].value(), p) > 0 && valuation(w, p) > 0);
            CHECK(hit);
        }
        // And no prime outside Z does: check every prime of the earlier numerators.
        for (unsigned long m = 1; m < row.n; ++m) {
            for (const auto& pe : factor(vals[m - 1].numerator()).prime_powers) {
                const bool in_z = std::find(row.z_primes.begin(), row.z_primes.end(), pe.prime) != row.z_primes.end();
                if (valuation(w, pe.prime) > 0) CHECK(in_z);
            }
        }
    }
}

TEST_CASE("function field detectors on x^2+t") {
    const FFMap map = FFMap::parse("x^2+t");
    const auto rep = ff_zsigmondy_report(map, FFElement::t(), 5);
    REQUIRE(rep.records.size() == 5);
    // t -> t^2+t -> t^4+2t^3+t^2+t ...: numerators t(t+1), t(t^3+2t^2+t+1), ...
    CHECK(to_string(rep.records[0].value->numer(), "t") == "t^2+t");
    CHECK(rep.records[0].has_primitive);
    CHECK(to_string(rep.records[1].primitive_part, "t") == "t^3+2*t^2+t+1");
    CHECK(rep.zsigmondy_set.empty());
    CHECK(rep.squarefree_zsigmondy_set.empty());
    for (const auto& r : rep.records)
        if (r.has_squarefree_primitive) CHECK(r.has_primitive);

    // Specialising t = 1 gives x^2+1 at alpha = 1: the orbits must match.
    const auto q = orbit(RationalMap::parse("x^2+1"), Rat(1), 5).values;
    for (std::size_t i = 0; i < 5; ++i) CHECK(ExtRational(rep.records[i].value->numer()(Rat(1))) == q[i]);
}

TEST_CASE("function field power map has no primitive places") {
    const auto rep = ff_zsigmondy_report(FFMap::parse("x^2"), FFElement::t(), 4);
    CHECK(rep.zsigmondy_set == std::vector<unsigned long>{2, 3, 4});
    const auto sq = ff_zsigmondy_report(FFMap::parse("(x-t)^2"), FFElement::t() + FFElement(1), 4);
    CHECK(sq.squarefree_zsigmondy_set == std::vector<unsigned long>{1, 2, 3, 4});
    CHECK_THROWS_AS(FFMap::parse("(x-t)*x/(x-t)"), InputError);
    CHECK_THROWS_AS(FFMap::parse("x^2+s"), ParseError);
}
