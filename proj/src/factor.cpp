#include "arithdyn/factor.hpp"

#include "arithdyn/error.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>

namespace arithdyn {

namespace {

constexpr unsigned long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

std::shared_ptr<const std::vector<unsigned long>> small_primes(unsigned long bound) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<unsigned long>> cached;
    static unsigned long sieved = 0;
    std::lock_guard lock(mutex);
    if (bound > sieved) {
        std::vector<bool> composite(bound + 1, false);
        auto primes = std::make_shared<std::vector<unsigned long>>();
        for (unsigned long i = 2; i <= bound; ++i) {
            if (composite[i]) continue;
            primes->push_back(i);
            for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
        }
        cached = std::move(primes);
        sieved = bound;
    }
    return cached;
}

bool miller_rabin_round(const Int& n, const Int& d, unsigned long s, const Int& a) {
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Int n1 = n - 1;
    if (x == 1 || x == n1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n1) return true;
        if (x == 1) return false;
    }
    return false;
}

/// Brent's rho with product batching. Returns a nontrivial factor or 0.
Int brent_rho(const Int& n, unsigned long& effort) {
    if (n % 2 == 0) return 2;
    constexpr unsigned long kBatch = 128;
    for (unsigned long c = 1; effort > 0; ++c) {
        Int y = 2, x, ys, q = 1, g = 1;
        unsigned long r = 1;
        do {
            x = y;
            for (unsigned long i = 0; i < r && effort > 0; ++i, --effort) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1 && effort > 0) {
                ys = y;
                const unsigned long steps = std::min(kBatch, r - k);
                for (unsigned long i = 0; i < steps && effort > 0; ++i, --effort) {
                    y = (y * y + c) % n;
                    q = q * abs_int(x - y) % n;
                }
                g = gcd(q, n);
                k += steps;
            }
            r *= 2;
        } while (g == 1 && effort > 0);
        if (g == n) {
            // Batch overshot; replay single steps from the batch start.
            do {
                if (effort == 0) return 0;
                --effort;
                ys = (ys * ys + c) % n;
                g = gcd(abs_int(x - ys), n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

/// If n = b^k with k > 1 maximal, returns (b, k); otherwise (n, 1).
std::pair<Int, unsigned long> perfect_power(const Int& n) {
    if (!mpz_perfect_power_p(n.get_mpz_t()) || n < 4) return {n, 1};
    for (unsigned long k = bit_length(n); k >= 2; --k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return {root, k};
    }
    return {n, 1};
}

}  // namespace

const Int& deterministic_mr_limit() {
    static const Int limit("3317044064679887385961981", 10);
    return limit;
}

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned long p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned long s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (unsigned long a : kWitnesses)
        if (!miller_rabin_round(n, d, s, Int(a))) return false;
    if (n < deterministic_mr_limit()) return true;
    std::mt19937_64 rng(static_cast<std::uint64_t>(mpz_fdiv_ui(n.get_mpz_t(), 0xFFFFFFFFUL)) ^ 0x9E3779B97F4A7C15ULL);
    gmp_randclass gen(gmp_randinit_mt);
    gen.seed(static_cast<unsigned long>(rng()));
    for (int round = 0; round < 12; ++round) {
        const Int a = gen.get_z_range(n - 3) + 2;
        if (!miller_rabin_round(n, d, s, a)) return false;
    }
    return true;
}

Int FactoredValue::reconstruct() const {
    Int r = sign;
    for (const auto& pp : prime_powers) r *= pow_int(pp.prime, pp.exponent);
    if (cofactor) r *= *cofactor;
    return r;
}

unsigned long FactoredValue::exponent_of(const Int& p) const {
    for (const auto& pp : prime_powers)
        if (pp.prime == p) return pp.exponent;
    return 0;
}

FactoredValue factor(const Int& n, const FactorBudget& budget) {
    if (n == 0) throw InputError("factor: zero has no factorization");
    FactoredValue out;
    out.sign = n < 0 ? -1 : 1;
    Int m = abs_int(n);
    std::map<Int, unsigned long> found;

    const auto primes = small_primes(budget.trial_bound);
    for (unsigned long p : *primes) {
        if (p > budget.trial_bound) break;
        if (m == 1) break;
        if (Int(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            Int prime(p);
            found[prime] += mpz_remove(m.get_mpz_t(), m.get_mpz_t(), prime.get_mpz_t());
        }
    }

    unsigned long effort = budget.rho_effort;
    std::vector<std::pair<Int, unsigned long>> pending;
    if (m > 1) pending.emplace_back(m, 1);
    std::vector<std::pair<Int, unsigned long>> unresolved;
    while (!pending.empty()) {
        auto [c, mult] = pending.back();
        pending.pop_back();
        for (const auto& [p, e] : found) {
            if (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()))
                found[p] += mult * mpz_remove(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        }
        if (c == 1) continue;
        if (is_probable_prime(c)) {
            found[c] += mult;
            continue;
        }
        auto [root, k] = perfect_power(c);
        if (k > 1) {
            pending.emplace_back(root, mult * k);
            continue;
        }
        Int d = brent_rho(c, effort);
        if (d == 0) {
            unresolved.emplace_back(c, mult);
            continue;
        }
        Int rest = c / d;
        Int g = gcd(d, rest);
        if (g > 1 && g < d) {
            // Split into coprime-ish pieces to keep multiplicities exact.
            pending.emplace_back(c / g, mult);
            pending.emplace_back(g, mult);
        } else {
            pending.emplace_back(d, mult);
            pending.emplace_back(rest, mult);
        }
    }

    Int cof = 1;
    for (auto& [c, mult] : unresolved) {
        for (const auto& [p, e] : found) {
            if (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()))
                found[p] += mult * mpz_remove(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        }
        if (c == 1) continue;
        if (is_probable_prime(c)) {
            found[c] += mult;
            continue;
        }
        cof *= pow_int(c, mult);
    }

    for (const auto& [p, e] : found) {
        out.prime_powers.push_back({p, e});
        if (p >= deterministic_mr_limit()) out.primes_certified = false;
    }
    if (cof > 1) out.cofactor = cof;
    if (out.reconstruct() != n) throw InvariantError("factor: reconstruction mismatch");
    return out;
}

long valuation(const Int& n, const Int& p) {
    if (n == 0) throw InputError("valuation of zero");
    if (!is_probable_prime(p)) throw InputError("valuation: " + to_string(p) + " is not prime");
    Int m = n;
    return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& q, const Int& p) {
    if (q == 0) throw InputError("valuation of zero");
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

LogMass radical_logmass(const FactoredValue& f) {
    LogMass m;
    for (const auto& pp : f.prime_powers) {
        m.radical *= pp.prime;
        m.value += log_abs(pp.prime);
    }
    m.exact = f.complete();
    return m;
}

CoprimeBasis coprime_basis(const std::vector<Int>& values) {
    std::vector<Int> work;
    for (const auto& v : values) {
        if (v == 0) throw InputError("coprime_basis: zero input");
        Int a = abs_int(v);
        if (a > 1) work.push_back(a);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < work.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
                const Int g = gcd(work[i], work[j]);
                if (g == 1) continue;
                Int a = work[i] / g, b = work[j] / g;
                work.erase(work.begin() + static_cast<long>(j));
                work.erase(work.begin() + static_cast<long>(i));
                for (Int* piece : {&a, &b})
                    if (*piece > 1) work.push_back(*piece);
                work.push_back(g);
                changed = true;
            }
        }
    }
    std::sort(work.begin(), work.end());
    CoprimeBasis basis;
    basis.elements = work;
    for (const auto& v : values) {
        Int rest = abs_int(v);
        std::vector<unsigned long> exps;
        for (const auto& b : basis.elements)
            exps.push_back(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), b.get_mpz_t()));
        if (rest != 1) throw InvariantError("coprime_basis: input not generated by basis");
        basis.exponents.push_back(std::move(exps));
        basis.signs.push_back(v < 0 ? -1 : 1);
    }
    return basis;
}

}  // namespace arithdyn
