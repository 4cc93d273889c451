#include "block_search.hpp"

#include <algorithm>

namespace rankclose::detail {

BlockSearch::BlockSearch(const Mask &mask, Index rank, const ClosureOptions &options)
    : rows_(mask.rows()), cols_(mask.cols()), rank_(rank), options_(options), rng_(options.seed),
      row_bits_(static_cast<std::size_t>(rows_), boost::dynamic_bitset<>(static_cast<std::size_t>(cols_))),
      col_bits_(static_cast<std::size_t>(cols_), boost::dynamic_bitset<>(static_cast<std::size_t>(rows_))),
      row_degree_(mask.row_degrees()), col_degree_(mask.col_degrees()), holes_(mask.holes()) {
    for (const auto &e : mask.entries()) {
        row_bits_[static_cast<std::size_t>(e.row)].set(static_cast<std::size_t>(e.col));
        col_bits_[static_cast<std::size_t>(e.col)].set(static_cast<std::size_t>(e.row));
    }
}

void BlockSearch::add(Entry e) {
    row_bits_[static_cast<std::size_t>(e.row)].set(static_cast<std::size_t>(e.col));
    col_bits_[static_cast<std::size_t>(e.col)].set(static_cast<std::size_t>(e.row));
    ++row_degree_[static_cast<std::size_t>(e.row)];
    ++col_degree_[static_cast<std::size_t>(e.col)];
    log_.push_back(e);
}

bool BlockSearch::relevant_since(Entry hole, std::size_t since) const {
    for (std::size_t k = since; k < log_.size(); ++k) {
        const Entry e = log_[k];
        if ((e.row == hole.row || observed(e.row, hole.col)) && (e.col == hole.col || observed(hole.row, e.col)))
            return true;
    }
    return false;
}

std::vector<Block> BlockSearch::candidates(Entry hole, std::size_t max_count) {
    std::vector<Block> out;
    if (max_count == 0 || rank_ + 1 > std::min(rows_, cols_))
        return out;
    if (options_.strategy == BlockStrategy::exhaustive)
        exhaustive_blocks(hole, max_count, out);
    else
        heuristic_blocks(hole, max_count, out);
    return out;
}

void BlockSearch::exhaustive_blocks(Entry hole, std::size_t max_count, std::vector<Block> &out) const {
    const auto r = static_cast<std::size_t>(rank_);
    auto common = row_bits_[static_cast<std::size_t>(hole.row)];
    common.reset(static_cast<std::size_t>(hole.col));
    if (common.count() < r)
        return;
    std::vector<Index> pool;
    const auto &col = col_bits_[static_cast<std::size_t>(hole.col)];
    for (auto i = col.find_first(); i != col.npos; i = col.find_next(i))
        if (static_cast<Index>(i) != hole.row)
            pool.push_back(static_cast<Index>(i));
    if (pool.size() < r)
        return;

    // depth-first over r-subsets of the pool, carrying the running column intersection
    std::vector<Index> chosen;
    std::vector<boost::dynamic_bitset<>> inter{common};
    chosen.reserve(r);
    inter.reserve(r + 1);
    const auto descend = [&](auto &&self, std::size_t start) -> bool {
        if (chosen.size() == r) {
            Block b;
            b.rows = chosen;
            const auto &cols = inter.back();
            for (auto j = cols.find_first(); j != cols.npos && b.cols.size() < r; j = cols.find_next(j))
                b.cols.push_back(static_cast<Index>(j));
            out.push_back(std::move(b));
            return out.size() >= max_count;
        }
        for (std::size_t p = start; p + (r - chosen.size()) <= pool.size(); ++p) {
            auto next = inter.back() & row_bits_[static_cast<std::size_t>(pool[p])];
            if (next.count() < r)
                continue;
            chosen.push_back(pool[p]);
            inter.push_back(std::move(next));
            const bool done = self(self, p + 1);
            chosen.pop_back();
            inter.pop_back();
            if (done)
                return true;
        }
        return false;
    };
    descend(descend, 0);
}

void BlockSearch::heuristic_blocks(Entry hole, std::size_t max_count, std::vector<Block> &out) {
    const auto r = static_cast<std::size_t>(rank_);
    auto common = row_bits_[static_cast<std::size_t>(hole.row)];
    common.reset(static_cast<std::size_t>(hole.col));
    if (common.count() < r)
        return;
    std::vector<Index> pool;
    const auto &col = col_bits_[static_cast<std::size_t>(hole.col)];
    for (auto i = col.find_first(); i != col.npos; i = col.find_next(i))
        if (static_cast<Index>(i) != hole.row)
            pool.push_back(static_cast<Index>(i));
    if (pool.size() < r)
        return;
    std::stable_sort(pool.begin(), pool.end(), [&](Index a, Index b) {
        return row_degree_[static_cast<std::size_t>(a)] > row_degree_[static_cast<std::size_t>(b)];
    });

    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    std::vector<char> used(pool.size());
    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(options_.retries_per_hole, 1) &&
                                  out.size() < max_count;
         ++attempt) {
        std::fill(used.begin(), used.end(), 0);
        Block b;
        auto inter = common;
        if (attempt > 0) {
            // seed the block with one of the highest-degree neighbours
            const std::size_t top = std::min<std::size_t>(pool.size(), 4);
            const auto p = std::uniform_int_distribution<std::size_t>(0, top - 1)(rng_);
            auto next = inter & row_bits_[static_cast<std::size_t>(pool[p])];
            if (next.count() < r)
                continue;
            used[p] = 1;
            b.rows.push_back(pool[p]);
            inter = std::move(next);
        }
        while (b.rows.size() < r) {
            std::size_t best = pool.size();
            std::size_t best_count = 0;
            double best_tie = -1.0;
            for (std::size_t p = 0; p < pool.size(); ++p) {
                if (used[p])
                    continue;
                const auto c = (inter & row_bits_[static_cast<std::size_t>(pool[p])]).count();
                if (c < r)
                    continue;
                const double tie = attempt > 0 ? jitter(rng_) : 0.0;
                if (c > best_count || (c == best_count && tie > best_tie)) {
                    best = p;
                    best_count = c;
                    best_tie = tie;
                }
            }
            if (best == pool.size())
                break;
            used[best] = 1;
            b.rows.push_back(pool[best]);
            inter &= row_bits_[static_cast<std::size_t>(pool[best])];
        }
        if (b.rows.size() < r)
            continue;

        std::vector<Index> cols;
        for (auto j = inter.find_first(); j != inter.npos; j = inter.find_next(j))
            cols.push_back(static_cast<Index>(j));
        std::stable_sort(cols.begin(), cols.end(), [&](Index a, Index c) {
            return col_degree_[static_cast<std::size_t>(a)] > col_degree_[static_cast<std::size_t>(c)];
        });
        cols.resize(r);
        std::sort(cols.begin(), cols.end());
        std::sort(b.rows.begin(), b.rows.end());
        b.cols = std::move(cols);
        const bool seen = std::any_of(out.begin(), out.end(), [&](const Block &o) {
            return o.rows == b.rows && o.cols == b.cols;
        });
        if (!seen)
            out.push_back(std::move(b));
    }
}

Mask BlockSearch::to_mask() const {
    std::vector<Entry> entries;
    for (Index i = 0; i < rows_; ++i) {
        const auto &bits = row_bits_[static_cast<std::size_t>(i)];
        for (auto j = bits.find_first(); j != bits.npos; j = bits.find_next(j))
            entries.push_back({i, static_cast<Index>(j)});
    }
    return Mask(rows_, cols_, std::move(entries));
}

} // namespace rankclose::detail
