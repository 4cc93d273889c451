#include "rankclose/baselines.hpp"

#include "rankclose/graph.hpp"
#include "rankclose/linalg.hpp"
#include "rankclose/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rankclose {

void SolverConfig::validate() const {
    if (max_iters < 1)
        throw InputError("max_iters must be at least 1");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw InputError("solver tolerances must be positive");
    if (!(admm_rho > 0.0))
        throw InputError("admm_rho must be positive");
    if (restarts < 1)
        throw InputError("restarts must be at least 1");
}

NuclearNormResult nuclear_norm_complete(const MaskedMatrix &masked, const SolverConfig &config) {
    config.validate();
    const Mask &mask = masked.mask();
    if (mask.edge_count() == 0)
        throw InputError("nuclear norm completion needs at least one observed entry");
    const Index m = mask.rows(), n = mask.cols();
    const double rho = config.admm_rho;
    const double sqrt_size = std::sqrt(double(m * n));

    const auto project = [&](DenseMatrix &z) {
        for (const auto &e : mask.entries())
            z(e.row, e.col) = masked.dense()(e.row, e.col);
    };

    NuclearNormResult out;
    DenseMatrix z = DenseMatrix::Zero(m, n);
    project(z);
    DenseMatrix w = DenseMatrix::Zero(m, n);
    DenseMatrix x(m, n), z_prev(m, n);
    for (int it = 1; it <= config.max_iters; ++it) {
        x = singular_value_threshold(z - w, 1.0 / rho);
        z_prev = z;
        z = x + w;
        project(z);
        w += x - z;
        out.iterations = it;
        if (config.record_objective)
            out.objective.push_back(svd_compact(z).singular_values.sum());

        const double primal = (x - z).norm();
        const double dual = rho * (z - z_prev).norm();
        const double eps_primal = config.abs_tol * sqrt_size + config.rel_tol * std::max(x.norm(), z.norm());
        const double eps_dual = config.abs_tol * sqrt_size + config.rel_tol * rho * w.norm();
        if (primal <= eps_primal && dual <= eps_dual) {
            out.converged = true;
            break;
        }
    }
    out.matrix = std::move(z);
    return out;
}

namespace {

struct Observations {
    std::vector<std::vector<Index>> by_row; // row i -> observed columns
    std::vector<std::vector<Index>> by_col; // column j -> observed rows
};

Observations index_observations(const Mask &mask) {
    Observations obs{std::vector<std::vector<Index>>(static_cast<std::size_t>(mask.rows())),
                     std::vector<std::vector<Index>>(static_cast<std::size_t>(mask.cols()))};
    for (const auto &e : mask.entries()) {
        obs.by_row[static_cast<std::size_t>(e.row)].push_back(e.col);
        obs.by_col[static_cast<std::size_t>(e.col)].push_back(e.row);
    }
    return obs;
}

double observed_residual(const MaskedMatrix &masked, const DenseMatrix &u, const DenseMatrix &v) {
    double sum = 0.0;
    for (const auto &e : masked.mask().entries()) {
        const double d = u.row(e.row).dot(v.col(e.col)) - masked.dense()(e.row, e.col);
        sum += d * d;
    }
    return std::sqrt(sum);
}

// Minimum-norm least-squares solution of design * x = target.
Vector solve_restricted(const DenseMatrix &design, const Vector &target) {
    if (design.rows() == 0)
        return Vector::Zero(design.cols());
    Eigen::CompleteOrthogonalDecomposition<DenseMatrix> cod(design);
    return cod.solve(target);
}

RankFitResult fit_once(const MaskedMatrix &masked, const Observations &obs, Index rank, const SolverConfig &config,
                       std::uint64_t seed) {
    const Index m = masked.rows(), n = masked.cols();
    const auto &data = masked.dense();
    Rng rng(seed);
    DenseMatrix u = random_gaussian(m, rank, rng);
    DenseMatrix v(rank, n);

    RankFitResult out;
    for (const auto &o : obs.by_row)
        out.underdetermined |= static_cast<Index>(o.size()) < rank;
    for (const auto &o : obs.by_col)
        out.underdetermined |= static_cast<Index>(o.size()) < rank;

    double data_norm = 0.0;
    for (const auto &e : masked.mask().entries())
        data_norm += data(e.row, e.col) * data(e.row, e.col);
    data_norm = std::sqrt(data_norm);
    const double target = config.abs_tol * std::max(data_norm, std::numeric_limits<double>::min());

    constexpr int kStallWindow = 10;
    std::vector<double> per_iter;
    for (int it = 1; it <= config.max_iters; ++it) {
        for (Index j = 0; j < n; ++j) {
            const auto &rows = obs.by_col[static_cast<std::size_t>(j)];
            DenseMatrix design = u(rows, Eigen::all);
            Vector rhs = data(rows, j);
            v.col(j) = solve_restricted(design, rhs);
        }
        out.residual_history.push_back(observed_residual(masked, u, v));
        for (Index i = 0; i < m; ++i) {
            const auto &cols = obs.by_row[static_cast<std::size_t>(i)];
            DenseMatrix design = v(Eigen::all, cols).transpose();
            Vector rhs = data(i, cols).transpose();
            u.row(i) = solve_restricted(design, rhs).transpose();
        }
        const double res = observed_residual(masked, u, v);
        out.residual_history.push_back(res);
        per_iter.push_back(res);
        out.iterations = it;
        if (res <= target) {
            out.converged = true;
            break;
        }
        if (it > kStallWindow) {
            const double before = per_iter[per_iter.size() - 1 - kStallWindow];
            if (before - res <= config.rel_tol * before)
                break;
        }
    }
    out.residual = observed_residual(masked, u, v);
    out.matrix = u * v;
    return out;
}

} // namespace

std::vector<RankFitResult> rank_r_fit_restarts(const MaskedMatrix &masked, Index rank, const SolverConfig &config) {
    config.validate();
    check_rank(masked.mask(), rank);
    if (masked.mask().edge_count() == 0)
        throw InputError("rank-r fit needs at least one observed entry");
    const auto obs = index_observations(masked.mask());
    std::vector<RankFitResult> out;
    out.reserve(static_cast<std::size_t>(config.restarts));
    for (int k = 0; k < config.restarts; ++k)
        out.push_back(fit_once(masked, obs, rank, config, derive_seed(config.seed, {0x616c73ULL, std::uint64_t(k)})));
    return out;
}

RankFitResult rank_r_fit(const MaskedMatrix &masked, Index rank, const SolverConfig &config) {
    auto all = rank_r_fit_restarts(masked, rank, config);
    auto best = std::min_element(all.begin(), all.end(),
                                 [](const RankFitResult &a, const RankFitResult &b) { return a.residual < b.residual; });
    return std::move(*best);
}

bool success(const DenseMatrix &recovered, const DenseMatrix &truth, double threshold) {
    if (recovered.rows() != truth.rows() || recovered.cols() != truth.cols())
        throw InputError("success(): dimension mismatch");
    if (!recovered.allFinite())
        return false;
    return (recovered - truth).norm() <= threshold * truth.norm();
}

} // namespace rankclose
