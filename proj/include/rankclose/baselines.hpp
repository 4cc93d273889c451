#pragma once

// Optimisation baselines: nuclear-norm minimisation by ADMM and a rank-r
// least-squares fit by multi-restart alternating least squares (a stand-in for
// OptSpace, which minimises the same objective on the Grassmannian).

#include "rankclose/mask.hpp"

#include <cstdint>
#include <vector>

namespace rankclose {

struct SolverConfig {
    int max_iters = 2000;
    double abs_tol = 1e-7;
    double rel_tol = 1e-6;
    double admm_rho = 1.0;
    int restarts = 4; // rank_r_fit only
    std::uint64_t seed = 0;
    bool record_objective = false; // nuclear_norm_complete: one extra SVD per iteration

    /// Throws InputError on non-positive thresholds or max_iters < 1.
    void validate() const;
};

struct NuclearNormResult {
    DenseMatrix matrix; // feasible iterate: observed entries equal the data
    bool converged = false;
    int iterations = 0;
    std::vector<double> objective; // ||Z||_* per iteration, when config.record_objective
};

/// minimize ||X||_* s.t. X agrees with `masked` on its entries.
///
/// Splitting X = Z with Z constrained to the affine feasible set:
///   X <- SVT_{1/rho}(Z - W),  Z <- P_feasible(X + W),  W <- W + X - Z.
/// Stops when both primal ||X - Z|| and dual rho ||Z - Z_prev|| residuals are
/// below abs_tol sqrt(mn) + rel_tol * (matching scale).
NuclearNormResult nuclear_norm_complete(const MaskedMatrix &masked, const SolverConfig &config = {});

struct RankFitResult {
    DenseMatrix matrix;
    double residual = 0.0; // ||P_mask(U V - data)||_F
    bool converged = false;
    bool underdetermined = false; // some row or column had fewer than r observations
    int iterations = 0;
    std::vector<double> residual_history; // after every half-step
};

/// All restarts of the alternating least squares fit, in seed order.
std::vector<RankFitResult> rank_r_fit_restarts(const MaskedMatrix &masked, Index rank, const SolverConfig &config = {});

/// The restart with the smallest observed residual.
RankFitResult rank_r_fit(const MaskedMatrix &masked, Index rank, const SolverConfig &config = {});

/// ||recovered - truth||_F <= threshold * ||truth||_F.
bool success(const DenseMatrix &recovered, const DenseMatrix &truth, double threshold);

inline constexpr double kDefaultSuccessThreshold = 1e-4;

} // namespace rankclose
