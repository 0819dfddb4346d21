#include "arithdyn/expr.hpp"
#include "arithdyn/linalg.hpp"
#include "arithdyn/poly.hpp"

#include <doctest.h>

#include <random>

using namespace arithdyn;

namespace {

QPoly random_int_poly(std::mt19937_64& rng, int degree, int bound) {
    std::uniform_int_distribution<int> coef(-bound, bound);
    std::vector<Rat> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0) c.back() = 1;
    return QPoly(c);
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    const QPoly x = QPoly::x();
    const QPoly f = x * x + QPoly(Rat(1));
    CHECK(f.degree() == 2);
    CHECK(f(Rat(7)) == 50);
    CHECK(f.compose(f) == x.pow(4) + QPoly(Rat(2)) * x * x + QPoly(Rat(2)));
    auto [q, r] = divmod(x.pow(3) - QPoly(Rat(1)), x - QPoly(Rat(1)));
    CHECK(r.is_zero());
    CHECK(q == x * x + x + QPoly(Rat(1)));
    CHECK(to_string(x.pow(4) + QPoly(Rat(2)) * x * x + QPoly(Rat(2))) == "x^4+2*x^2+2");
    CHECK(to_string(QPoly(Rat(1, 2)) * x - QPoly(Rat(3))) == "1/2*x-3");
    CHECK(to_string(-x * x) == "-x^2");
}

TEST_CASE("gcd and squarefree machinery") {
    const QPoly t = QPoly::x();
    const QPoly one(Rat(1));
    CHECK(squarefree_part(t * t * (t + one)) == t * (t + one));
    CHECK(squarefree_part(t * t + one) == t * t + one);
    CHECK(squarefree_part((t - one).pow(4)) == t - one);
    CHECK_THROWS_AS(squarefree_part(QPoly()), InputError);

    const QPoly g = QPoly(Rat(3)) * t.pow(2) * (t + one).pow(3) * (t * t + one);
    const auto parts = squarefree_decomposition(g);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == t * t + one);
    CHECK(parts[1] == t);
    CHECK(parts[2] == t + one);
}

TEST_CASE("Euclidean resultant agrees with the Sylvester determinant") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const QPoly a = random_int_poly(rng, 1 + trial % 6, 9);
        const QPoly b = random_int_poly(rng, 1 + (trial / 6) % 5, 9);
        const Rat euclid = resultant(a, b);
        std::vector<Int> ai, bi;
        for (const auto& c : a.coeffs()) ai.push_back(c.get_num());
        for (const auto& c : b.coeffs()) bi.push_back(c.get_num());
        CHECK(euclid == Rat(sylvester_resultant(ai, bi)));
    }
}

TEST_CASE("expression parser") {
    CHECK_NOTHROW(parse_expression("x^2+1"));
    CHECK_NOTHROW(parse_expression("(x^2-1)/(x-1)"));
    CHECK_NOTHROW(parse_expression("2x^2 - 3(x+1)"));
    try {
        parse_expression("x^2+*1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_expression("(x+1"), ParseError);
    CHECK_THROWS_AS(parse_expression("x^"), ParseError);
}

TEST_CASE("Bareiss determinant and rational solve") {
    IntMatrix m{{2, 0, 1}, {1, 3, 2}, {1, 1, 2}};
    CHECK(bareiss_determinant(m) == 6);
    const auto x = solve_rational(m, {Int(3), Int(6), Int(4)});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    CHECK((*x)[2] == 1);
    CHECK_FALSE(solve_rational(IntMatrix{{1, 2}, {2, 4}}, {Int(1), Int(2)}));
}
