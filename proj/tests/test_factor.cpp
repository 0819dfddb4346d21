#include "arithdyn/factor.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace arithdyn;

TEST_CASE("factor: small worked values") {
    // Oracle: trial division.
    const auto oracle = testing::trial_factor(458330);
    REQUIRE(oracle.size() == 3);
    CHECK(oracle[2].first == 45833);

    const FactoredValue f = factor(Int(458330));
    REQUIRE(f.complete());
    REQUIRE(f.prime_powers.size() == 3);
    CHECK(f.prime_powers[0] == PrimePower{Int(2), 1});
    CHECK(f.prime_powers[1] == PrimePower{Int(5), 1});
    CHECK(f.prime_powers[2] == PrimePower{Int(45833), 1});

    CHECK(testing::trial_factor(677).size() == 1);
    const FactoredValue p = factor(Int(677));
    REQUIRE(p.prime_powers.size() == 1);
    CHECK(p.prime_powers[0].prime == 677);

    const FactoredValue one = factor(Int(1));
    CHECK(one.prime_powers.empty());
    CHECK(one.sign == 1);
    CHECK(one.complete());

    const FactoredValue neg = factor(Int(-72));
    CHECK(neg.sign == -1);
    CHECK(neg.exponent_of(Int(2)) == 3);
    CHECK(neg.exponent_of(Int(3)) == 2);
    CHECK_THROWS_AS(factor(Int(0)), InputError);
}

TEST_CASE("factor: agrees with trial division below 10^7") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<unsigned long> dist(2, 10'000'000);
    for (int i = 0; i < 2000; ++i) {
        const unsigned long n = dist(rng);
        const FactoredValue f = factor(Int(n));
        const auto oracle = testing::trial_factor(n);
        REQUIRE(f.prime_powers.size() == oracle.size());
        for (std::size_t k = 0; k < oracle.size(); ++k) {
            CHECK(f.prime_powers[k].prime == oracle[k].first);
            CHECK(f.prime_powers[k].exponent == oracle[k].second);
        }
    }
}

TEST_CASE("factor: reconstruction identity on 10^4 integers up to 10^18") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<unsigned long long> dist(1, 1'000'000'000'000'000'000ULL);
    for (int i = 0; i < 10'000; ++i) {
        const Int n(std::to_string(dist(rng)));
        const FactoredValue f = factor(n);
        CHECK(f.reconstruct() == n);
        CHECK(f.complete());
        for (std::size_t k = 0; k < f.prime_powers.size(); ++k) {
            CHECK(is_probable_prime(f.prime_powers[k].prime));
            if (k) CHECK(f.prime_powers[k - 1].prime < f.prime_powers[k].prime);
        }
    }
}

TEST_CASE("factor: budget exhaustion leaves an unresolved cofactor") {
    // Product of two 30-digit primes; with a tiny budget rho cannot split it.
    const Int p("100000000000000000000000000319", 10);
    const Int q("100000000000000000010000000381", 10);
    REQUIRE(is_probable_prime(p));
    REQUIRE(is_probable_prime(q));
    const FactoredValue f = factor(Int(12) * p * q, FactorBudget{1000, 100});
    CHECK_FALSE(f.complete());
    CHECK(*f.cofactor == p * q);
    CHECK(f.reconstruct() == Int(12) * p * q);
    const LogMass m = radical_logmass(f);
    CHECK_FALSE(m.exact);
    CHECK(m.radical == 6);
}

TEST_CASE("primality") {
    CHECK(is_probable_prime(Int(2)));
    CHECK_FALSE(is_probable_prime(Int(1)));
    CHECK_FALSE(is_probable_prime(Int(561)));                 // Carmichael
    CHECK_FALSE(is_probable_prime(Int("3215031751", 10)));    // strong pseudoprime to 2,3,5,7
    CHECK(is_probable_prime(Int("170141183460469231731687303715884105727", 10)));  // 2^127 - 1
    CHECK_FALSE(is_probable_prime(Int("3317044064679887385961981", 10)));
}

TEST_CASE("valuation") {
    CHECK(valuation(Int(26), Int(13)) == 1);
    CHECK(valuation(Rat(5, 8), Int(2)) == -3);
    CHECK(valuation(Int(26), Int(3)) == 0);
    CHECK_THROWS_AS(valuation(Int(26), Int(4)), InputError);
    CHECK_THROWS_AS(valuation(Rat(0), Int(2)), InputError);
}

TEST_CASE("radical log mass") {
    const LogMass m12 = radical_logmass(factor(Int(12)));
    CHECK(m12.value == doctest::Approx(1.791759469228055).epsilon(1e-12));
    CHECK(m12.radical == 6);
    CHECK(m12.exact);
    CHECK(radical_logmass(factor(Int(1))).value == 0.0);
    CHECK(radical_logmass(factor(Int(677))).value == doctest::Approx(6.517671272912275).epsilon(1e-12));
}

TEST_CASE("finite part of the height: sum v_p log p = log |numerator|") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Rat q = testing::random_rational(rng, 1'000'000);
        if (q == 0) continue;
        double sum = 0;
        for (const auto& pp : factor(q.get_num()).prime_powers) {
            const long v = valuation(q, pp.prime);
            CHECK(v > 0);
            sum += static_cast<double>(v) * log_abs(pp.prime);
        }
        CHECK(sum == doctest::Approx(q.get_num() == 1 || q.get_num() == -1 ? 0.0 : log_abs(q.get_num())).epsilon(1e-12));
    }
}

TEST_CASE("coprime basis") {
    auto sorted = [](std::vector<Int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(coprime_basis({Int(6), Int(15)}).elements == sorted({Int(2), Int(3), Int(5)}));
    const CoprimeBasis b48 = coprime_basis({Int(4), Int(8)});
    CHECK(b48.elements == std::vector<Int>{Int(2)});
    CHECK(b48.exponents[0] == std::vector<unsigned long>{2});
    CHECK(b48.exponents[1] == std::vector<unsigned long>{3});
    CHECK(coprime_basis({Int(26), Int(5), Int(2)}).elements == sorted({Int(2), Int(13), Int(5)}));

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> dist(-100000, 100000);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> values;
        for (int k = 0; k < 5; ++k) {
            long v = dist(rng);
            values.emplace_back(v == 0 ? 1 : v);
        }
        const CoprimeBasis b = coprime_basis(values);
        for (std::size_t i = 0; i < b.elements.size(); ++i)
            for (std::size_t j = i + 1; j < b.elements.size(); ++j) CHECK(gcd(b.elements[i], b.elements[j]) == 1);
        for (std::size_t i = 0; i < values.size(); ++i) {
            Int r = b.signs[i];
            for (std::size_t j = 0; j < b.elements.size(); ++j) r *= pow_int(b.elements[j], b.exponents[i][j]);
            CHECK(r == values[i]);
        }
        // Refining by factor(): each prime's valuation in an input is its
        // basis element's exponent times the prime's exponent in that element.
        for (std::size_t j = 0; j < b.elements.size(); ++j) {
            for (const auto& pp : factor(b.elements[j]).prime_powers) {
                for (std::size_t i = 0; i < values.size(); ++i)
                    CHECK(valuation(values[i], pp.prime) ==
                          static_cast<long>(pp.exponent * b.exponents[i][j]));
            }
        }
    }
}
