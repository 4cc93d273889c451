#include "rankclose/algebraic.hpp"

#include "rankclose/graph.hpp"
#include "rankclose/rng.hpp"

namespace rankclose {

DenseMatrix masking_jacobian(const Mask &mask, const FactorPair &factors) {
    const Index m = mask.rows(), n = mask.cols(), r = factors.u.cols();
    if (factors.u.rows() != m || factors.v.rows() != r || factors.v.cols() != n)
        throw InputError("factor shapes do not match the mask");
    DenseMatrix jac = DenseMatrix::Zero(mask.edge_count(), (m + n) * r);
    const Index v_offset = m * r;
    Index row = 0;
    for (const auto &e : mask.entries()) {
        for (Index k = 0; k < r; ++k) {
            jac(row, e.row * r + k) = factors.v(k, e.col);
            jac(row, v_offset + k * n + e.col) = factors.u(e.row, k);
        }
        ++row;
    }
    return jac;
}

FiberReport fiber_dimension_test(const Mask &mask, Index rank, const FiberOptions &options) {
    check_rank(mask, rank);
    const Index m = mask.rows(), n = mask.cols();
    Index ranks[2];
    for (int s = 0; s < 2; ++s) {
        const auto factors = random_factors(m, n, rank, derive_seed(options.seed, {0x6a61636fULL, std::uint64_t(s)}));
        ranks[s] = numerical_rank(masking_jacobian(mask, factors), options.tol);
    }
    if (ranks[0] != ranks[1])
        throw RankMismatch("Jacobian rank differs between samples (" + std::to_string(ranks[0]) + " vs " +
                           std::to_string(ranks[1]) + "); tolerance too tight or too loose");
    FiberReport rep;
    rep.jacobian_rank = ranks[0];
    rep.target_dim = (m + n - rank) * rank;
    rep.fiber_dim = rep.target_dim - rep.jacobian_rank;
    rep.generically_finite = rep.fiber_dim == 0;
    return rep;
}

} // namespace rankclose
