#include "rankclose/mask.hpp"

#include "rankclose/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rankclose {

namespace {

void check_shape(Index rows, Index cols) {
    if (rows < 0 || cols < 0)
        throw InputError("negative matrix dimension");
}

} // namespace

Mask::Mask(Index rows, Index cols, std::vector<Entry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape(rows, cols);
    grid_.assign(static_cast<std::size_t>(rows * cols), 0);
    for (const auto &e : entries_) {
        if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
            throw InputError("mask entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                             ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        auto &cell = grid_[static_cast<std::size_t>(e.row * cols + e.col)];
        if (cell)
            throw InputError("duplicate mask entry (" + std::to_string(e.row) + ", " +
                             std::to_string(e.col) + ")");
        cell = 1;
    }
    std::sort(entries_.begin(), entries_.end());
}

Mask Mask::full(Index rows, Index cols) {
    check_shape(rows, cols);
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(rows * cols));
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            entries.push_back({i, j});
    return Mask(rows, cols, std::move(entries));
}

Mask Mask::empty(Index rows, Index cols) { return Mask(rows, cols, {}); }

std::vector<Index> Mask::row_degrees() const {
    std::vector<Index> deg(static_cast<std::size_t>(rows_), 0);
    for (const auto &e : entries_)
        ++deg[static_cast<std::size_t>(e.row)];
    return deg;
}

std::vector<Index> Mask::col_degrees() const {
    std::vector<Index> deg(static_cast<std::size_t>(cols_), 0);
    for (const auto &e : entries_)
        ++deg[static_cast<std::size_t>(e.col)];
    return deg;
}

std::vector<Entry> Mask::holes() const {
    std::vector<Entry> out;
    out.reserve(static_cast<std::size_t>(rows_ * cols_) - entries_.size());
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cols_; ++j)
            if (!contains(i, j))
                out.push_back({i, j});
    return out;
}

DenseMatrix Mask::to_dense() const {
    DenseMatrix grid = DenseMatrix::Zero(rows_, cols_);
    for (const auto &e : entries_)
        grid(e.row, e.col) = 1.0;
    return grid;
}

Mask Mask::with_entries(std::span<const Entry> extra) const {
    std::vector<Entry> merged = entries_;
    std::vector<std::uint8_t> seen = grid_;
    for (const auto &e : extra) {
        if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_)
            throw InputError("entry outside mask shape");
        auto &cell = seen[static_cast<std::size_t>(e.row * cols_ + e.col)];
        if (!cell) {
            cell = 1;
            merged.push_back(e);
        }
    }
    return Mask(rows_, cols_, std::move(merged));
}

bool Mask::is_subset_of(const Mask &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        return false;
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const Entry &e) { return other.contains(e); });
}

MaskedMatrix::MaskedMatrix(Mask mask, std::span<const double> values)
    : mask_(std::move(mask)),
      data_(DenseMatrix::Constant(mask_.rows(), mask_.cols(),
                                  std::numeric_limits<double>::quiet_NaN())) {
    if (values.size() != mask_.entries().size())
        throw InputError("value count " + std::to_string(values.size()) + " does not match " +
                         std::to_string(mask_.entries().size()) + " mask entries");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k]))
            throw InputError("non-finite value in masked matrix");
        const auto &e = mask_.entries()[k];
        data_(e.row, e.col) = values[k];
    }
}

std::vector<double> MaskedMatrix::values() const {
    std::vector<double> out;
    out.reserve(mask_.entries().size());
    for (const auto &e : mask_.entries())
        out.push_back(data_(e.row, e.col));
    return out;
}

double MaskedMatrix::value(Index i, Index j) const {
    if (!mask_.contains(i, j))
        throw InputError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not observed");
    return data_(i, j);
}

bool operator==(const MaskedMatrix &a, const MaskedMatrix &b) {
    if (!(a.mask_ == b.mask_))
        return false;
    for (const auto &e : a.mask_.entries())
        if (a.data_(e.row, e.col) != b.data_(e.row, e.col))
            return false;
    return true;
}

Mask mask_from_dense(const DenseMatrix &grid) {
    std::vector<Entry> entries;
    for (Index i = 0; i < grid.rows(); ++i)
        for (Index j = 0; j < grid.cols(); ++j) {
            const double v = grid(i, j);
            if (v == 1.0)
                entries.push_back({i, j});
            else if (v != 0.0)
                throw InputError("mask grid entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") is neither 0 nor 1");
        }
    return Mask(grid.rows(), grid.cols(), std::move(entries));
}

Mask random_mask(Index rows, Index cols, Index count, std::uint64_t seed) {
    check_shape(rows, cols);
    const Index cells = rows * cols;
    if (count < 0 || count > cells)
        throw InputError("cannot sample " + std::to_string(count) + " entries from " +
                         std::to_string(cells) + " cells");
    std::vector<Index> all(static_cast<std::size_t>(cells));
    std::iota(all.begin(), all.end(), Index{0});
    std::vector<Index> picked;
    picked.reserve(static_cast<std::size_t>(count));
    Rng rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(picked), count, rng);

    std::vector<Entry> entries;
    entries.reserve(picked.size());
    for (Index cell : picked)
        entries.push_back({cell / cols, cell % cols});
    return Mask(rows, cols, std::move(entries));
}

MaskedMatrix apply_mask(const DenseMatrix &a, const Mask &mask) {
    if (a.rows() != mask.rows() || a.cols() != mask.cols())
        throw InputError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " but mask is " + std::to_string(mask.rows()) + "x" +
                         std::to_string(mask.cols()));
    std::vector<double> values;
    values.reserve(mask.entries().size());
    for (const auto &e : mask.entries())
        values.push_back(a(e.row, e.col));
    return MaskedMatrix(mask, values);
}

} // namespace rankclose
