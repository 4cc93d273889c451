#pragma once

#include "rankclose/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rankclose {

/// Set of observed positions of an m x n matrix.
///
/// Also read as the bipartite adjacency graph: rows are the red vertices,
/// columns the blue ones, one edge per observed entry. Entries are kept in
/// row-major sorted order; every downstream tie-break uses this order.
class Mask {
  public:
    Mask() = default;

    /// Throws InputError on out-of-range or duplicate entries. Order of `entries` is irrelevant.
    Mask(Index rows, Index cols, std::vector<Entry> entries);

    static Mask full(Index rows, Index cols);
    static Mask empty(Index rows, Index cols);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }

    /// Number of observed entries (alpha).
    Index edge_count() const noexcept { return static_cast<Index>(entries_.size()); }

    const std::vector<Entry> &entries() const noexcept { return entries_; }

    bool contains(Index i, Index j) const noexcept {
        return i >= 0 && j >= 0 && i < rows_ && j < cols_ &&
               grid_[static_cast<std::size_t>(i * cols_ + j)] != 0;
    }
    bool contains(Entry e) const noexcept { return contains(e.row, e.col); }

    bool is_full() const noexcept { return edge_count() == rows_ * cols_; }

    std::vector<Index> row_degrees() const;
    std::vector<Index> col_degrees() const;

    /// Unobserved positions in row-major order.
    std::vector<Entry> holes() const;

    /// The 0/1 mask matrix.
    DenseMatrix to_dense() const;

    /// Copy with `extra` added; entries already present are ignored.
    Mask with_entries(std::span<const Entry> extra) const;

    /// Every entry of *this is also in `other` (same shape required).
    bool is_subset_of(const Mask &other) const;

    friend bool operator==(const Mask &a, const Mask &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

  private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Entry> entries_;
    std::vector<std::uint8_t> grid_;
};

/// A mask together with real values at exactly its entries.
class MaskedMatrix {
  public:
    MaskedMatrix() = default;

    /// `values[k]` belongs to `mask.entries()[k]`. Values must be finite.
    MaskedMatrix(Mask mask, std::span<const double> values);

    const Mask &mask() const noexcept { return mask_; }
    Index rows() const noexcept { return mask_.rows(); }
    Index cols() const noexcept { return mask_.cols(); }

    /// Values in canonical mask order.
    std::vector<double> values() const;

    /// Throws InputError if (i, j) is not observed.
    double value(Index i, Index j) const;

    /// Dense view with NaN at unobserved positions.
    const DenseMatrix &dense() const noexcept { return data_; }

    friend bool operator==(const MaskedMatrix &a, const MaskedMatrix &b);

  private:
    Mask mask_;
    DenseMatrix data_;
};

/// Mask from a 0/1 grid. Any other entry value is rejected.
Mask mask_from_dense(const DenseMatrix &grid);

/// Uniformly random k-subset of the m*n cells.
Mask random_mask(Index rows, Index cols, Index count, std::uint64_t seed);

/// Restriction of `a` to the entries of `mask`.
MaskedMatrix apply_mask(const DenseMatrix &a, const Mask &mask);

} // namespace rankclose
