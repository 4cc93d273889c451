#pragma once

// Search for (r+1) x (r+1) blocks with a single unobserved cell, shared by the
// graph closure and the numeric completion.

#include "rankclose/closure.hpp"
#include "rankclose/rng.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

namespace rankclose::detail {

/// The r other rows and r other columns of a block anchored at a hole.
struct Block {
    std::vector<Index> rows;
    std::vector<Index> cols;
};

class BlockSearch {
  public:
    BlockSearch(const Mask &mask, Index rank, const ClosureOptions &options);

    bool observed(Index i, Index j) const { return row_bits_[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(j)); }

    /// Marks (i, j) as observed and appends it to the edge log.
    void add(Entry e);

    /// Up to `max_count` blocks completing `hole`. Exhaustive strategy: lexicographic
    /// over row subsets, first r common columns. Heuristic: greedy growth from
    /// high-degree neighbours with seeded retries.
    std::vector<Block> candidates(Entry hole, std::size_t max_count);

    /// Repeated sweeps over the remaining holes in row-major order. `try_fill(hole)`
    /// returns true after it called add(hole). A hole is re-examined only after an
    /// edge that can belong to one of its blocks was added. Stops after a sweep with
    /// no progress.
    template <typename TryFill>
    void run(TryFill &&try_fill) {
        std::vector<Entry> pending = holes_;
        std::vector<std::size_t> checked_at(pending.size(), kNever);
        bool progress = true;
        while (progress && !pending.empty()) {
            progress = false;
            for (std::size_t h = 0; h < pending.size(); ++h) {
                const Entry hole = pending[h];
                if (observed(hole.row, hole.col))
                    continue;
                if (checked_at[h] != kNever && !relevant_since(hole, checked_at[h])) {
                    checked_at[h] = log_.size();
                    continue;
                }
                checked_at[h] = log_.size();
                if (try_fill(hole))
                    progress = true;
            }
            std::size_t w = 0;
            for (std::size_t h = 0; h < pending.size(); ++h)
                if (!observed(pending[h].row, pending[h].col)) {
                    pending[w] = pending[h];
                    checked_at[w] = checked_at[h];
                    ++w;
                }
            pending.resize(w);
            checked_at.resize(w);
        }
    }

    const std::vector<Entry> &holes() const noexcept { return holes_; }
    Mask to_mask() const;

  private:
    static constexpr std::size_t kNever = static_cast<std::size_t>(-1);

    bool relevant_since(Entry hole, std::size_t since) const;
    void exhaustive_blocks(Entry hole, std::size_t max_count, std::vector<Block> &out) const;
    void heuristic_blocks(Entry hole, std::size_t max_count, std::vector<Block> &out);

    Index rows_;
    Index cols_;
    Index rank_;
    ClosureOptions options_;
    Rng rng_;
    std::vector<boost::dynamic_bitset<>> row_bits_; // row i -> observed columns
    std::vector<boost::dynamic_bitset<>> col_bits_; // column j -> observed rows
    std::vector<Index> row_degree_;
    std::vector<Index> col_degree_;
    std::vector<Entry> holes_;
    std::vector<Entry> log_;
};

} // namespace rankclose::detail
