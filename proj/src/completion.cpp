#include "rankclose/completion.hpp"

#include "block_search.hpp"
#include "rankclose/graph.hpp"
#include "rankclose/rng.hpp"

#include <algorithm>
#include <numeric>

namespace rankclose {

namespace {

struct SampledBlock {
    std::vector<Index> rows;
    std::vector<Index> cols;
};

SampledBlock sample_block(Index m, Index n, Index size, Rng &rng) {
    SampledBlock b;
    std::vector<Index> all(static_cast<std::size_t>(std::max(m, n)));
    std::iota(all.begin(), all.end(), Index{0});
    std::sample(all.begin(), all.begin() + m, std::back_inserter(b.rows), size, rng);
    std::sample(all.begin(), all.begin() + n, std::back_inserter(b.cols), size, rng);
    return b;
}

double max_sampled_minor(const DenseMatrix &a, Index rank, std::size_t samples, std::uint64_t seed,
                         bool relative) {
    const Index k = rank + 1;
    if (k > std::min(a.rows(), a.cols()))
        return 0.0;
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto b = sample_block(a.rows(), a.cols(), k, rng);
        const DenseMatrix sub = a(b.rows, b.cols);
        double det = std::abs(determinant(sub));
        if (relative) {
            const double scale = sub.cwiseAbs().maxCoeff();
            det = scale > 0.0 ? det / std::pow(scale, double(k)) : 0.0;
        }
        worst = std::max(worst, det);
    }
    return worst;
}

} // namespace

CompletionResult complete(const MaskedMatrix &masked, Index rank, const CompletionOptions &options) {
    const Mask &mask = masked.mask();
    check_rank(mask, rank);

    CompletionResult result;
    result.matrix = masked.dense();

    if (options.precheck) {
        std::string failed;
        if (!edge_count_condition(mask, rank))
            failed += " (i) edge count";
        if (!min_degree_condition(mask, rank).ok)
            failed += " (ii) minimum degree";
        if (options.precheck_connectivity && !is_r_connected(mask, rank).ok)
            failed += " (iii) r-connectivity";
        if (!failed.empty()) {
            result.status = CompletionStatus::precheck_failed;
            result.diagnostic = "necessary condition failed:" + failed;
            return result;
        }
    }

    ClosureOptions search_options;
    search_options.strategy = options.strategy;
    search_options.retries_per_hole = options.retries_per_hole;
    search_options.seed = options.seed;
    detail::BlockSearch search(mask, rank, search_options);

    search.run([&](Entry hole) {
        const auto candidates = search.candidates(hole, std::max<std::size_t>(options.candidates_per_step, 1));
        double best_quality = 0.0;
        DenseMatrix best_block;
        InferredEntry best;
        Index best_ur = 0, best_uc = 0;
        for (const auto &c : candidates) {
            std::vector<Index> rows = c.rows, cols = c.cols;
            rows.push_back(hole.row);
            cols.push_back(hole.col);
            std::sort(rows.begin(), rows.end());
            std::sort(cols.begin(), cols.end());
            const auto ur = std::find(rows.begin(), rows.end(), hole.row) - rows.begin();
            const auto uc = std::find(cols.begin(), cols.end(), hole.col) - cols.begin();
            DenseMatrix block = result.matrix(rows, cols);
            block(ur, uc) = 0.0;
            const double q = block_pivot_quality(block, ur, uc);
            if (!(q > options.degenerate_tol)) {
                ++result.degenerate_skips;
                continue;
            }
            if (q > best_quality) {
                best_quality = q;
                best_block = std::move(block);
                best_ur = ur;
                best_uc = uc;
                best.rows = std::move(rows);
                best.cols = std::move(cols);
            }
        }
        if (best_quality == 0.0)
            return false;
        best.entry = hole;
        best.pivot = best_quality;
        best.value = solve_block_entry(best_block, best_ur, best_uc, options.degenerate_tol);
        result.matrix(hole.row, hole.col) = best.value;
        result.inferred.push_back(std::move(best));
        search.add(hole);
        return true;
    });

    const auto known = static_cast<std::size_t>(mask.edge_count()) + result.inferred.size();
    if (known != static_cast<std::size_t>(mask.rows() * mask.cols())) {
        result.status = CompletionStatus::no_completable_block;
        result.diagnostic = "no completable block for " +
                            std::to_string(mask.rows() * mask.cols() - static_cast<Index>(known)) +
                            " remaining entries";
        if (result.degenerate_skips > 0)
            result.diagnostic += " (" + std::to_string(result.degenerate_skips) +
                                 " degenerate blocks skipped; input may be non-generic)";
        return result;
    }
    result.status = CompletionStatus::completed;
    result.residual_max_minor = max_sampled_minor(result.matrix, rank, options.residual_samples,
                                                  derive_seed(options.seed, {0x7265736964ULL}), false);
    return result;
}

bool verify_completion(const DenseMatrix &matrix, Index rank, std::size_t sample_budget, std::uint64_t seed,
                       double tol) {
    if (!matrix.allFinite())
        return false;
    if (numerical_rank(matrix, tol) > rank)
        return false;
    return max_sampled_minor(matrix, rank, sample_budget, seed, true) <= tol;
}

} // namespace rankclose
