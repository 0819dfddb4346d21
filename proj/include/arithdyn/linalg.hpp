#pragma once

#include "arithdyn/bigint.hpp"

#include <optional>
#include <vector>

namespace arithdyn {

using IntMatrix = std::vector<std::vector<Int>>;

/// Determinant by fraction-free (Bareiss) elimination.
Int bareiss_determinant(IntMatrix m);

/// Solves A x = b over Q; nullopt when A is singular.
std::optional<std::vector<Rat>> solve_rational(const IntMatrix& a, const std::vector<Int>& b);

/// Sylvester matrix of two coefficient lists (ascending) treated as having
/// formal degrees m = a.size()-1 and n = b.size()-1 (leading zeros allowed).
IntMatrix sylvester_matrix(const std::vector<Int>& a, const std::vector<Int>& b);

/// Res_{m,n}(a, b) as the Sylvester determinant. With padded coefficient
/// lists this is the resultant of the binary forms.
Int sylvester_resultant(const std::vector<Int>& a, const std::vector<Int>& b);

}  // namespace arithdyn
