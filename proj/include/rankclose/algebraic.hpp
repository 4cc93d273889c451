#pragma once

// Generic fiber dimension of a masking restricted to rank-r matrices, estimated
// from the rank of its Jacobian at a random point.
//
// The point is parametrised as U V with U (m x r), V (r x n). This chart carries
// an r^2-dimensional gauge (U G, G^-1 V), so the Jacobian rank never exceeds
// (m + n - r) r, the dimension of the variety, and the fiber is zero-dimensional
// exactly when that ceiling is attained.

#include "rankclose/linalg.hpp"
#include "rankclose/mask.hpp"

#include <cstdint>
#include <stdexcept>

namespace rankclose {

/// alpha x (m + n) r matrix of d(UV)_ij / d(U, V), rows in mask order, columns
/// U row-major then V row-major.
DenseMatrix masking_jacobian(const Mask &mask, const FactorPair &factors);

struct FiberReport {
    Index jacobian_rank = 0;
    Index target_dim = 0; // (m + n - r) r
    Index fiber_dim = 0;  // target_dim - jacobian_rank
    bool generically_finite = false;
};

struct FiberOptions {
    std::uint64_t seed = 0;
    double tol = kDefaultRankTol;
};

/// Two independent samples disagreeing on the rank. Signals numerical trouble.
class RankMismatch : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Jacobian rank at two Gaussian samples; throws RankMismatch if they differ.
FiberReport fiber_dimension_test(const Mask &mask, Index rank, const FiberOptions &options = {});

} // namespace rankclose
