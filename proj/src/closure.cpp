#include "rankclose/closure.hpp"

#include "block_search.hpp"
#include "rankclose/graph.hpp"

#include <algorithm>

namespace rankclose {

namespace {

ClosureStep make_step(Entry hole, const detail::Block &b) {
    ClosureStep s;
    s.rows = b.rows;
    s.rows.push_back(hole.row);
    std::sort(s.rows.begin(), s.rows.end());
    s.cols = b.cols;
    s.cols.push_back(hole.col);
    std::sort(s.cols.begin(), s.cols.end());
    s.added = hole;
    return s;
}

} // namespace

std::optional<ClosureStep> find_completable_block(const Mask &mask, Index rank, const ClosureOptions &options) {
    check_rank(mask, rank);
    detail::BlockSearch search(mask, rank, options);
    for (const auto &hole : search.holes()) {
        auto found = search.candidates(hole, 1);
        if (!found.empty())
            return make_step(hole, found.front());
    }
    return std::nullopt;
}

ClosureTrace r_closure(const Mask &mask, Index rank, const ClosureOptions &options) {
    check_rank(mask, rank);
    ClosureTrace trace;
    trace.initial = mask;
    detail::BlockSearch search(mask, rank, options);
    search.run([&](Entry hole) {
        auto found = search.candidates(hole, 1);
        if (found.empty())
            return false;
        trace.steps.push_back(make_step(hole, found.front()));
        search.add(hole);
        return true;
    });
    trace.final_mask = search.to_mask();
    return trace;
}

bool is_r_closable(const Mask &mask, Index rank) { return r_closure(mask, rank).closable(); }

Mask replay(const ClosureTrace &trace) {
    const Mask &start = trace.initial;
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(start.rows() * start.cols()), 0);
    for (const auto &e : start.entries())
        grid[static_cast<std::size_t>(e.row * start.cols() + e.col)] = 1;
    std::vector<Entry> added;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto &s = trace.steps[k];
        const auto bad = [&](const std::string &why) {
            return InputError("closure step " + std::to_string(k + 1) + ": " + why);
        };
        if (s.rows.size() != s.cols.size() || s.rows.empty())
            throw bad("block is not square");
        if (!std::binary_search(s.rows.begin(), s.rows.end(), s.added.row) ||
            !std::binary_search(s.cols.begin(), s.cols.end(), s.added.col))
            throw bad("added entry outside its block");
        for (Index i : s.rows)
            for (Index j : s.cols) {
                if (i < 0 || i >= start.rows() || j < 0 || j >= start.cols())
                    throw bad("block index out of range");
                const bool present = grid[static_cast<std::size_t>(i * start.cols() + j)] != 0;
                const bool is_added = (Entry{i, j} == s.added);
                if (present == is_added)
                    throw bad(is_added ? "added entry already present" : "block has more than one hole");
            }
        grid[static_cast<std::size_t>(s.added.row * start.cols() + s.added.col)] = 1;
        added.push_back(s.added);
    }
    return start.with_entries(added);
}

} // namespace rankclose
