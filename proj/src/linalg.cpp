#include "rankclose/linalg.hpp"

#include <algorithm>
#include <random>

namespace rankclose {

DenseMatrix random_gaussian(Index rows, Index cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseMatrix a(rows, cols);
    // fill row by row so the stream order matches the row-major reading of the matrix
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            a(i, j) = normal(rng);
    return a;
}

FactorPair random_factors(Index rows, Index cols, Index rank, std::uint64_t seed) {
    if (rank < 1 || rank > std::min(rows, cols))
        throw InputError("rank " + std::to_string(rank) + " outside [1, " +
                         std::to_string(std::min(rows, cols)) + "]");
    Rng rng(seed);
    FactorPair f;
    f.u = random_gaussian(rows, rank, rng);
    f.v = random_gaussian(rank, cols, rng);
    return f;
}

DenseMatrix random_rank_r(Index rows, Index cols, Index rank, std::uint64_t seed) {
    return random_factors(rows, cols, rank, seed).product();
}

} // namespace rankclose
