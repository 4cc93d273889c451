#pragma once

// Slow, obviously-correct reference implementations used only by the tests.
// None of them call into the library beyond the Mask container.

#include "rankclose/linalg.hpp"
#include "rankclose/mask.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

using rankclose::DenseMatrix;
using rankclose::Entry;
using rankclose::Index;
using rankclose::Mask;

/// Laplace expansion along the first row.
inline double cofactor_det(const DenseMatrix &a) {
    const Index n = a.rows();
    if (n == 0)
        return 1.0;
    if (n == 1)
        return a(0, 0);
    double sum = 0.0;
    for (Index j = 0; j < n; ++j) {
        DenseMatrix minor(n - 1, n - 1);
        for (Index i = 1; i < n; ++i)
            for (Index k = 0, kk = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, kk++) = a(i, k);
        sum += ((j % 2 == 0) ? 1.0 : -1.0) * a(0, j) * cofactor_det(minor);
    }
    return sum;
}

/// Value x at (ur, uc) making the determinant vanish, from det = c x + d.
inline double vanishing_entry(DenseMatrix block, Index ur, Index uc) {
    block(ur, uc) = 0.0;
    const double d = cofactor_det(block);
    block(ur, uc) = 1.0;
    const double c = cofactor_det(block) - d;
    return -d / c;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix a) {
    const Index n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (off < 1e-30 * std::max(1.0, a.squaredNorm()))
            break;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

/// Singular values as square roots of the Gram eigenvalues, descending.
inline std::vector<double> singular_values(const DenseMatrix &a) {
    const DenseMatrix g = a.rows() <= a.cols() ? DenseMatrix(a * a.transpose()) : DenseMatrix(a.transpose() * a);
    auto ev = jacobi_eigenvalues(g);
    for (double &x : ev)
        x = std::sqrt(std::max(0.0, x));
    return ev;
}

// ---- graphs -----------------------------------------------------------------

/// Vertices 0..m-1 rows, m..m+n-1 columns. Connected-component labels with
/// edges listed in `skip` removed.
inline std::vector<int> components(const Mask &mask, const std::vector<Entry> &skip = {}) {
    const Index m = mask.rows(), v = m + mask.cols();
    std::vector<int> parent(static_cast<std::size_t>(v));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const Entry &e : mask.entries()) {
        if (std::find(skip.begin(), skip.end(), e) != skip.end())
            continue;
        parent[find(int(e.row))] = find(int(m + e.col));
    }
    std::vector<int> label(static_cast<std::size_t>(v));
    for (int x = 0; x < int(v); ++x)
        label[x] = find(x);
    return label;
}

inline bool connected(const Mask &mask, const std::vector<Entry> &skip = {}) {
    const auto label = components(mask, skip);
    return std::all_of(label.begin(), label.end(), [&](int l) { return l == label[0]; });
}

/// Calls f on every k-subset of {0..n-1}; stops when f returns false.
inline bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int> &)> &f) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::function<bool(int, int)> rec = [&](int pos, int start) {
        if (pos == k)
            return f(idx);
        for (int x = start; x <= n - (k - pos); ++x) {
            idx[pos] = x;
            if (!rec(pos + 1, x + 1))
                return false;
        }
        return true;
    };
    return rec(0, 0);
}

/// Smallest number of edges whose removal disconnects the graph (capped at `cap`).
inline Index edge_connectivity(const Mask &mask, Index cap) {
    const auto &edges = mask.entries();
    for (Index k = 0; k < cap; ++k) {
        bool found = false;
        for_each_subset(int(edges.size()), int(k), [&](const std::vector<int> &sub) {
            std::vector<Entry> skip;
            for (int s : sub)
                skip.push_back(edges[s]);
            found = !connected(mask, skip);
            return !found;
        });
        if (found)
            return k;
    }
    return cap;
}

/// Smallest edge set separating vertices s and t (capped at `cap`).
inline Index min_cut(const Mask &mask, Index s, Index t, Index cap) {
    const auto &edges = mask.entries();
    for (Index k = 0; k < cap; ++k) {
        bool found = false;
        for_each_subset(int(edges.size()), int(k), [&](const std::vector<int> &sub) {
            std::vector<Entry> skip;
            for (int x : sub)
                skip.push_back(edges[x]);
            const auto label = components(mask, skip);
            found = label[s] != label[t];
            return !found;
        });
        if (found)
            return k;
    }
    return cap;
}

/// r-closure by scanning every (r+1) x (r+1) block until nothing changes.
inline Mask naive_closure(const Mask &mask, Index r) {
    const Index m = mask.rows(), n = mask.cols();
    if (r + 1 > std::min(m, n))
        return mask;
    std::vector<std::vector<char>> g(m, std::vector<char>(n, 0));
    for (const Entry &e : mask.entries())
        g[e.row][e.col] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for_each_subset(int(m), int(r + 1), [&](const std::vector<int> &rows) {
            for_each_subset(int(n), int(r + 1), [&](const std::vector<int> &cols) {
                int missing = 0, mi = -1, mj = -1;
                for (int i : rows)
                    for (int j : cols)
                        if (!g[i][j])
                            ++missing, mi = i, mj = j;
                if (missing == 1) {
                    g[mi][mj] = 1;
                    changed = true;
                }
                return true;
            });
            return true;
        });
    }
    std::vector<Entry> out;
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j)
            if (g[i][j])
                out.push_back({i, j});
    return Mask(m, n, out);
}

/// Minimum over all set partitions of the vertices of
///   sum_blocks (m_i n_i - (m_i - r)_+ (n_i - r)_+ - |E(block)|).
/// A partition violates the bound iff alpha + that sum < r (m + n - r).
/// Enumerates restricted growth strings, so keep m + n small.
inline Index min_partition_slack(const Mask &mask, Index r) {
    const Index m = mask.rows(), n = mask.cols();
    const int v = int(m + n);
    std::vector<int> label(static_cast<std::size_t>(v), 0);
    Index best = std::numeric_limits<Index>::max();
    const auto pos = [](Index x) { return std::max<Index>(x, 0); };
    std::function<void(int, int)> rec = [&](int k, int used) {
        if (k == v) {
            std::vector<Index> mi(used, 0), ni(used, 0), ei(used, 0);
            for (Index i = 0; i < m; ++i)
                ++mi[label[i]];
            for (Index j = 0; j < n; ++j)
                ++ni[label[m + j]];
            for (const Entry &e : mask.entries())
                if (label[e.row] == label[m + e.col])
                    ++ei[label[e.row]];
            Index sum = 0;
            for (int b = 0; b < used; ++b)
                sum += mi[b] * ni[b] - pos(mi[b] - r) * pos(ni[b] - r) - ei[b];
            best = std::min(best, sum);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            label[k] = b;
            rec(k + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return best;
}

inline bool partition_bound_violated(const Mask &mask, Index r) {
    return mask.edge_count() + min_partition_slack(mask, r) < r * (mask.rows() + mask.cols() - r);
}

/// Central finite differences of the masked product U V with respect to (U, V),
/// columns ordered U row-major then V row-major.
inline DenseMatrix finite_difference_jacobian(const Mask &mask, const DenseMatrix &u, const DenseMatrix &v,
                                              double h = 1e-6) {
    const Index m = u.rows(), r = u.cols(), n = v.cols();
    DenseMatrix jac(mask.edge_count(), (m + n) * r);
    const auto eval = [&](const DenseMatrix &uu, const DenseMatrix &vv) {
        const DenseMatrix p = uu * vv;
        rankclose::Vector out(mask.edge_count());
        for (Index k = 0; k < mask.edge_count(); ++k)
            out(k) = p(mask.entries()[k].row, mask.entries()[k].col);
        return out;
    };
    Index col = 0;
    for (Index i = 0; i < m; ++i)
        for (Index a = 0; a < r; ++a, ++col) {
            DenseMatrix up = u, um = u;
            up(i, a) += h;
            um(i, a) -= h;
            jac.col(col) = (eval(up, v) - eval(um, v)) / (2 * h);
        }
    for (Index a = 0; a < r; ++a)
        for (Index j = 0; j < n; ++j, ++col) {
            DenseMatrix vp = v, vm = v;
            vp(a, j) += h;
            vm(a, j) -= h;
            jac.col(col) = (eval(u, vp) - eval(u, vm)) / (2 * h);
        }
    return jac;
}

} // namespace oracle
