#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadidem/mat2.hpp"

namespace quadidem {

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> failures;
};

/// Checks that every factor is exactly idempotent and that the ordered exact
/// product equals the target. The product is computed here from QuadInt
/// arithmetic alone, independent of the factorizer's matrix code.
VerifyReport verify(const std::vector<Mat2>& factors, const Mat2& target);

/// All idempotent matrices with coordinate heights <= height: the zero matrix,
/// the identity, and the trace-1 family (a b; c 1-a) with bc = a(1-a).
/// Sorted lexicographically by entry coordinates.
std::vector<Mat2> enumerate_idempotents(const RingSpec& ring, long height);

/// Bounded search for a product of idempotents equal to target, factors drawn
/// from enumerate_idempotents(ring, height_bound), product length <= max_len.
/// Returns the lexicographically least factor list of minimal length, or
/// empty. Deterministic.
std::optional<std::vector<IdempotentMat>> brute_force_factor(const Mat2& target,
                                                             long height_bound,
                                                             unsigned max_len);

}  // namespace quadidem
