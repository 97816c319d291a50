#pragma once

#include <optional>
#include <vector>

#include "quadidem/mat2.hpp"
#include "quadidem/quad_ring.hpp"

namespace quadidem {

/// A terminating division chain r_i = q_{i+1} r_{i+1} + r_{i+2} with
/// r_{-1} = x, r_0 = y and r_n = 0. No norm-descent requirement; replay
/// validity is checked whenever a chain is built.
struct WeakChain {
    std::vector<QuadInt> remainders;  // r_{-1} .. r_n, size n + 2
    std::vector<QuadInt> quotients;   // q_0 .. q_{n-1}, size n

    size_t length() const { return quotients.size(); }
    const QuadInt& x() const { return remainders.front(); }
    const QuadInt& y() const { return remainders[1]; }

    /// Re-runs every division; InvalidChain when the recurrence or the final
    /// zero remainder fails.
    void validate() const;
};

enum class QuotientMode {
    /// Nearest integral-basis rounding with -1/0/+1 offsets, plus unit-twisted
    /// candidates when no child descends in |norm|.
    NearestWithOffsets,
    /// Exact floor division of both basis coordinates only (classical Euclid
    /// on rational integers).
    FloorOnly,
};

/// Bounded depth-first search for a weak chain from (x, y), y != 0. Chain
/// length is at most `budget`. Deterministic; empty when the search fails.
std::optional<WeakChain> find_weak_chain(const QuadInt& x, const QuadInt& y, unsigned budget,
                                         QuotientMode mode = QuotientMode::NearestWithOffsets);

/// Replays a chain into idempotent factors F_1..F_k whose exact product is
/// (x y; 0 0). One factor per odd-position division plus the two-factor
/// closed form for the terminal zero remainder.
std::vector<IdempotentMat> chain_to_idempotents(const WeakChain& chain);

/// Rebuilds the chain determined by a list of alternating elementary
/// quotients: r_1 = x - y q_0, r_{i+2} = r_i - r_{i+1} q_{i+1}. The final
/// remainder must be zero (NonTerminatingReplay otherwise). Leading pairs of
/// zero quotients are dropped when the replay stays valid.
WeakChain elementary_to_weak_chain(const std::vector<QuadInt>& quotients, const QuadInt& x,
                                   const QuadInt& y);

}  // namespace quadidem
