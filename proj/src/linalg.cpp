#include "arithdyn/linalg.hpp"

#include "arithdyn/error.hpp"

#include <utility>

namespace arithdyn {

Int bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& a, const std::vector<Int>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw InputError("dimension mismatch in linear solve");
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n] = b[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            const Rat f = m[i][col] / m[col][col];
            for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return x;
}

IntMatrix sylvester_matrix(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.empty() || b.empty()) throw InputError("empty coefficient list");
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    const std::size_t size = m + n;
    IntMatrix s(size, std::vector<Int>(size, 0));
    // Rows hold coefficients in descending order, shifted per row.
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
    return s;
}

Int sylvester_resultant(const std::vector<Int>& a, const std::vector<Int>& b) {
    return bareiss_determinant(sylvester_matrix(a, b));
}

}  // namespace arithdyn
