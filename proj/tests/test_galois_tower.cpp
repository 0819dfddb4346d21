#include "arithdyn/galois_tower.hpp"

#include "arithdyn/linalg.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace arithdyn;

namespace {

/// Disc by the Sylvester determinant: an oracle independent of the
/// Euclidean resultant.
Int disc_oracle(const QPoly& g) {
    std::vector<Int> a, b;
    for (const auto& c : g.coeffs()) a.push_back(c.get_num());
    const QPoly dg = g.derivative();
    for (const auto& c : dg.coeffs()) b.push_back(c.get_num());
    const long d = g.degree();
    Int r = sylvester_resultant(a, b);
    if ((d * (d - 1) / 2) % 2 == 1) r = -r;
    return r / a.back();
}

}  // namespace

TEST_CASE("discriminant examples") {
    CHECK(discriminant(QPoly(std::vector<Rat>{1, 0, 1})) == -4);
    CHECK(discriminant(QPoly(std::vector<Rat>{-2, 0, 1})) == 8);
    CHECK(discriminant(QPoly(std::vector<Rat>{3, 1})) == 1);
    CHECK(discriminant(QPoly(std::vector<Rat>{2, 0, 2, 0, 1})) == 512);
    // x^3 + p x + q: -4p^3 - 27q^2
    CHECK(discriminant(QPoly(std::vector<Rat>{5, -2, 0, 1})) == -4 * -8 - 27 * 25);
    CHECK_THROWS_AS(discriminant(QPoly(Rat(7))), InputError);
}

TEST_CASE("discriminant agrees with the Sylvester oracle") {
    for (long a = -6; a <= 6; ++a) {
        if (a == 0) continue;
        for (unsigned m = 1; m <= 3; ++m) {
            const QPoly g = quadratic_iterate(a, m);
            CHECK(discriminant(g) == disc_oracle(g));
        }
    }
}

TEST_CASE("disc recursion: literal form, squared form, prime support") {
    auto r = disc_recursion_check(1, 2);
    CHECK(r.lhs == 512);
    CHECK(r.literal_rhs == -128);
    CHECK(!r.literal_holds);
    CHECK(r.squared_holds);
    CHECK(r.prime_support_agrees);

    r = disc_recursion_check(1, 1);
    CHECK(r.lhs == -4);
    CHECK(r.literal_rhs == -4);
    CHECK(r.literal_holds);

    for (long a = -10; a <= 10; ++a) {
        if (a == 0) continue;
        for (unsigned m = 1; m <= 4; ++m) {
            CAPTURE(a);
            CAPTURE(m);
            r = disc_recursion_check(a, m);
            CHECK(r.squared_holds);
            CHECK(r.prime_support_agrees);
        }
    }
    CHECK_THROWS_AS(disc_recursion_check(1, 0), InputError);
    CHECK_THROWS_AS(disc_recursion_check(1, 9, 8), ResourceCapError);
}

TEST_CASE("stoll_certificate examples") {
    auto r = stoll_certificate(1, 2);
    CHECK(r.critical_value == 5);
    CHECK(r.certificate == Int(5));
    CHECK(r.status == CertificateStatus::Certified);
    r = stoll_certificate(1, 3);
    CHECK(r.critical_value == 26);
    CHECK(r.certificate == Int(13));
    r = stoll_certificate(-5, 1);
    CHECK(r.critical_value == 20);
    CHECK(r.status == CertificateStatus::NoCertificateFound);
    // f^2(0) = 2 for a = 1: only the excluded prime 2.
    CHECK(stoll_certificate(1, 1).status == CertificateStatus::NoCertificateFound);

    CHECK_THROWS_AS(stoll_certificate(0, 2), InputError);
    CHECK_THROWS_AS(stoll_certificate(-2, 2), InputError);
    CHECK_THROWS_AS(stoll_certificate(-1, 2), InputError);
}

TEST_CASE("tower_report") {
    auto rep = tower_report(2, 3);
    REQUIRE(rep.records.size() == 4);
    CHECK(rep.records[3].critical_value == 1446);
    CHECK(rep.records[3].certificate == Int(241));
    for (unsigned n = 1; n <= 3; ++n) CHECK(rep.records[n].status == CertificateStatus::Certified);
    CHECK(rep.stoll_guarantee);

    rep = tower_report(-5, 1);
    CHECK(rep.records[1].status == CertificateStatus::NoCertificateFound);
    CHECK(!rep.stoll_guarantee);
    CHECK(rep.hypotheses_hold);
    CHECK(!tower_report(-4, 2).hypotheses_hold);

    // Certificates re-validate against the definition, with worker threads.
    rep = tower_report(6, 5, {}, 3);
    for (const auto& rec : rep.records) {
        if (!rec.certificate) continue;
        const Int p = *rec.certificate;
        CHECK(p != 2);
        CHECK(valuation(rec.critical_value, p) == 1);
        for (unsigned m = 1; m <= rec.n; ++m) CHECK(valuation(critical_orbit_value(6, m), p) == 0);
    }
}
