#pragma once

// r-closure of a bipartite graph: while some r+1 rows and r+1 columns span a
// block with exactly one missing edge, add that edge. The graph is r-closable
// when this ends at the complete bipartite graph.

#include "rankclose/mask.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rankclose {

enum class BlockStrategy { exhaustive, heuristic };

struct ClosureOptions {
    BlockStrategy strategy = BlockStrategy::exhaustive;
    std::size_t retries_per_hole = 50; // heuristic only
    std::uint64_t seed = 0;            // heuristic only
};

/// One closure step: every pair of rows x cols is present except `added`.
struct ClosureStep {
    std::vector<Index> rows; // r+1, ascending, contains added.row
    std::vector<Index> cols; // r+1, ascending, contains added.col
    Entry added;
};

struct ClosureTrace {
    Mask initial;
    std::vector<ClosureStep> steps;
    Mask final_mask;

    bool closable() const noexcept { return final_mask.is_full(); }
};

/// First completable block in row-major hole order (exhaustive) or the heuristic's
/// first hit. Empty when rank + 1 > min(m, n) or no block exists.
std::optional<ClosureStep> find_completable_block(const Mask &mask, Index rank,
                                                  const ClosureOptions &options = {});

/// Applies closure steps until none fires. With the exhaustive strategy the final
/// mask is the r-closure; the heuristic may stop early at a subset of it.
ClosureTrace r_closure(const Mask &mask, Index rank, const ClosureOptions &options = {});

/// The exhaustive r-closure is the full mask.
bool is_r_closable(const Mask &mask, Index rank);

/// Replays the trace on its initial mask, checking that every step fires.
/// Throws InputError on an invalid step.
Mask replay(const ClosureTrace &trace);

} // namespace rankclose
