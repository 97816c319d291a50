#pragma once

#include <optional>
#include <utility>

#include "quadidem/quad_ring.hpp"

namespace quadidem {

/// A non-unit z dividing both x and y, if any exists. Candidates are drawn
/// from solve_norm_equation over the divisors n >= 2 of gcd(|norm x|, |norm y|)
/// in ascending order, each expanded by small unit translates; within one n
/// candidates are tried by lexicographic (a, b). Deterministic.
std::optional<QuadInt> common_divisor(const QuadInt& x, const QuadInt& y);

/// (u, v) with x*u + y*v = 1 iff xD + yD = D, via an exact 2x4 integer lattice
/// solve over the integral-basis coordinates. The witness is verified by
/// multiplication before it is returned.
std::optional<std::pair<QuadInt, QuadInt>> comaximal_witness(const QuadInt& x, const QuadInt& y);

/// A generator g with xD + yD = gD when the pair ideal is principal; empty
/// otherwise. Peels common divisors greedily, then tests comaximality of the
/// fully peeled pair.
std::optional<QuadInt> is_pair_principal(const QuadInt& x, const QuadInt& y);

}  // namespace quadidem
