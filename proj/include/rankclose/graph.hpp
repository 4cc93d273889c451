#pragma once

// Combinatorial necessary conditions for generic finiteness of a mask, read on
// its bipartite adjacency graph (rows = red vertices, columns = blue vertices).

#include "rankclose/mask.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rankclose {

struct Vertex {
    enum class Side : std::uint8_t { row, col };
    Side side = Side::row;
    Index index = 0;

    static Vertex row(Index i) { return {Side::row, i}; }
    static Vertex col(Index j) { return {Side::col, j}; }

    friend auto operator<=>(const Vertex &, const Vertex &) = default;
};

/// Throws InputError unless 1 <= rank <= min(rows, cols).
void check_rank(const Mask &mask, Index rank);

/// alpha >= r (m + n - r).
bool edge_count_condition(const Mask &mask, Index rank);

struct DegreeCheck {
    bool ok = true;
    std::vector<Vertex> violating; // rows first, then columns, ascending
};

/// Every row and column carries at least `rank` observed entries.
DegreeCheck min_degree_condition(const Mask &mask, Index rank);

/// Maximum flow between two vertices when every edge of the adjacency graph is an
/// undirected unit-capacity arc. Stops early once `limit` is reached.
Index max_flow(const Mask &mask, Vertex source, Vertex sink, Index limit = -1);

struct ConnectivityCheck {
    bool ok = true;
    Index min_flow = 0;       // min over the m+n-1 flows (capped at rank)
    std::vector<Entry> cut;   // separating edge set, size < rank, when !ok
};

/// The graph stays connected after deleting any rank-1 edges. Decided with m+n-1
/// unit-capacity max-flows from row 0.
ConnectivityCheck is_r_connected(const Mask &mask, Index rank);

/// Global edge connectivity (exact min over the m+n-1 flows).
Index edge_connectivity(const Mask &mask);

/// Vertex partition of the adjacency graph into bipartite blocks.
struct BipartitePartition {
    struct Block {
        std::vector<Index> rows;
        std::vector<Index> cols;
    };
    std::vector<Block> blocks;

    /// Throws InputError unless the blocks are nonempty and partition rows and columns exactly.
    void validate(Index rows, Index cols) const;
};

struct PartitionBound {
    Index cross_edges = 0; // alpha minus edges internal to a block
    Index required = 0;    // r (m + n - r) - sum_i (m_i n_i - (m_i - r)_+ (n_i - r)_+)
    bool holds() const noexcept { return cross_edges >= required; }
};

PartitionBound partition_bound(const Mask &mask, Index rank, const BipartitePartition &partition);
bool partition_bound_holds(const Mask &mask, Index rank, const BipartitePartition &partition);

struct PartitionSearch {
    std::optional<BipartitePartition> violating;
    /// True when every partition was covered, so an empty result proves the bound.
    bool exhaustive = false;
};

/// Searches for a partition violating the partition bound.
///
/// `budget` counts elementary evaluation steps. When the exact subset dynamic
/// program fits (about 3^(m+n)/2 steps, and m+n <= 20) the search is exhaustive;
/// otherwise structured candidates (singletons, connected components) are tried
/// together with seeded random partitions refined by single-vertex moves.
PartitionSearch search_violating_partition(const Mask &mask, Index rank, std::uint64_t budget,
                                           std::uint64_t seed = 0);

inline constexpr std::uint64_t kDefaultPartitionBudget = 50'000'000;

} // namespace rankclose
