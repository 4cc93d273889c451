#pragma once

// Exact completion of a generic rank-r matrix along its r-closure: each step
// picks an (r+1) x (r+1) block with one unknown cell and solves the vanishing
// (r+1)-minor equation for it.

#include "rankclose/closure.hpp"
#include "rankclose/linalg.hpp"
#include "rankclose/mask.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankclose {

/// The complementary r x r minor of the unknown cell is (numerically) singular.
class DegenerateBlock : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Conditioning of a block's pivot: |det(minor)| / scale^r with scale the largest
/// known |entry|. Zero for an all-zero block.
template <typename Derived>
double block_pivot_quality(const Eigen::MatrixBase<Derived> &block, Index unknown_row, Index unknown_col);

/// The value x making det(block) = 0, where block(unknown_row, unknown_col) is x.
///
/// det is affine in x, det = c x + d with c the signed cofactor of the unknown
/// cell. Writing the block with the unknown moved to the corner as [[M, b], [a, x]]
/// gives c x + d = det(M) (x - a M^-1 b), so x = a M^-1 b, solved with a
/// partially pivoted LU of M. The entry at the unknown position is ignored.
/// Throws DegenerateBlock when the pivot quality is at most `tol`.
template <typename Derived>
double solve_block_entry(const Eigen::MatrixBase<Derived> &block, Index unknown_row, Index unknown_col,
                         double tol = 1e-10) {
    const Index k = block.rows();
    if (k != block.cols() || k < 1)
        throw InputError("block must be square and nonempty");
    if (unknown_row < 0 || unknown_row >= k || unknown_col < 0 || unknown_col >= k)
        throw InputError("unknown cell outside block");
    const Index r = k - 1;
    if (r == 0)
        return 0.0; // a rank-0 matrix vanishes identically
    DenseMatrix minor(r, r);
    Vector a(r), b(r);
    for (Index i = 0, ii = 0; i < k; ++i) {
        if (i == unknown_row)
            continue;
        for (Index j = 0, jj = 0; j < k; ++j) {
            if (j == unknown_col)
                continue;
            minor(ii, jj++) = block(i, j);
        }
        b(ii++) = block(i, unknown_col);
    }
    for (Index j = 0, jj = 0; j < k; ++j)
        if (j != unknown_col)
            a(jj++) = block(unknown_row, j);

    const double quality = block_pivot_quality(block, unknown_row, unknown_col);
    if (!(quality > tol))
        throw DegenerateBlock("complementary minor is singular (pivot quality " + std::to_string(quality) + ")");
    Eigen::PartialPivLU<DenseMatrix> lu(minor);
    return a.dot(lu.solve(b));
}

template <typename Derived>
double block_pivot_quality(const Eigen::MatrixBase<Derived> &block, Index unknown_row, Index unknown_col) {
    const Index k = block.rows();
    double scale = 0.0;
    DenseMatrix minor(k - 1, k - 1);
    for (Index i = 0, ii = 0; i < k; ++i) {
        for (Index j = 0, jj = 0; j < k; ++j) {
            if (i == unknown_row && j == unknown_col)
                continue;
            scale = std::max(scale, std::abs(double(block(i, j))));
            if (i != unknown_row && j != unknown_col)
                minor(ii, jj++) = block(i, j);
        }
        if (i != unknown_row)
            ++ii;
    }
    if (scale == 0.0)
        return 0.0;
    return std::abs(determinant(minor)) / std::pow(scale, double(k - 1));
}

struct CompletionOptions {
    BlockStrategy strategy = BlockStrategy::exhaustive;
    std::size_t retries_per_hole = 50;
    /// Candidate blocks compared per inferred entry; the best-conditioned one is used.
    std::size_t candidates_per_step = 8;
    double degenerate_tol = 1e-10;
    /// Reject up front unless conditions (i) and (ii) hold.
    bool precheck = true;
    /// Also require r-connectivity (iii) in the precheck.
    bool precheck_connectivity = false;
    /// Random (r+1)-blocks sampled for residual_max_minor.
    std::size_t residual_samples = 64;
    std::uint64_t seed = 0;
};

enum class CompletionStatus { completed, precheck_failed, no_completable_block };

struct InferredEntry {
    Entry entry;
    double value = 0.0;
    std::vector<Index> rows; // the r+1 rows of the block used, ascending
    std::vector<Index> cols; // the r+1 columns, ascending
    double pivot = 0.0;      // block_pivot_quality of that block
};

struct CompletionResult {
    CompletionStatus status = CompletionStatus::no_completable_block;
    std::string diagnostic;
    /// Full matrix on success; otherwise the partial completion with NaN holes.
    DenseMatrix matrix;
    std::vector<InferredEntry> inferred; // in inference order
    double residual_max_minor = 0.0;     // largest sampled |(r+1)-minor|
    std::size_t degenerate_skips = 0;    // candidate blocks rejected as degenerate

    bool ok() const noexcept { return status == CompletionStatus::completed; }
};

/// Completes `masked` at rank `rank` or reports why it cannot.
/// Throws InputError for an invalid rank.
CompletionResult complete(const MaskedMatrix &masked, Index rank, const CompletionOptions &options = {});

/// numerical_rank(matrix) <= rank and |det| <= tol * scale^(rank+1) on
/// `sample_budget` random (rank+1)-blocks.
bool verify_completion(const DenseMatrix &matrix, Index rank, std::size_t sample_budget,
                       std::uint64_t seed = 0, double tol = 1e-8);

} // namespace rankclose
