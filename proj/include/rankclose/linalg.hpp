#pragma once

// Small dense kernels. Everything is templated on the Eigen expression so that
// blocks, maps and other views can be passed without copies.

#include "rankclose/rng.hpp"
#include "rankclose/types.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cstdint>

namespace rankclose {

/// Relative rank tolerance used throughout unless overridden.
inline constexpr double kDefaultRankTol = 1e-9;

namespace detail {

// Divide-and-conquer SVD occasionally loses a deflated value (NaN, or a spectrum
// out of order) on matrices with many repeated singular values.
template <typename Vec>
bool well_formed(const Vec &s) {
    if (!s.allFinite())
        return false;
    for (Index k = 1; k < s.size(); ++k)
        if (s(k) > s(k - 1))
            return false;
    return true;
}

/// Singular values, falling back to one-sided Jacobi when divide-and-conquer misbehaves.
template <typename Matrix>
Eigen::Matrix<typename Eigen::NumTraits<typename Matrix::Scalar>::Real, Eigen::Dynamic, 1>
singular_values(const Matrix &a) {
    Eigen::BDCSVD<Matrix> svd(a);
    if (well_formed(svd.singularValues()))
        return svd.singularValues();
    return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

} // namespace detail

/// Determinant by LU with partial pivoting. Singular input yields 0 up to roundoff.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols())
        throw InputError("determinant of a non-square matrix");
    if (a.rows() == 0)
        return Scalar(1);
    Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(a.eval());
    return lu.determinant();
}

/// Number of singular values above `tol` times the largest one.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived> &a,
                     typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = kDefaultRankTol) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    if (tol <= Real(0))
        throw InputError("rank tolerance must be positive");
    if (a.size() == 0)
        return 0;
    const auto s = detail::singular_values(a.eval());
    if (s.size() == 0 || s(0) == Real(0))
        return 0;
    const Real cutoff = tol * s(0);
    Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff)
        ++rank;
    return rank;
}

template <typename Scalar>
struct CompactSvd {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> singular_values;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> u; // m x k
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> v; // n x k
};

/// Thin SVD, k = min(m, n); singular values non-increasing.
template <typename Derived>
CompactSvd<typename Derived::Scalar> svd_compact(const Eigen::MatrixBase<Derived> &a) {
    using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (!a.allFinite())
        throw InputError("svd of a matrix with non-finite entries");
    const Matrix m = a.eval();
    constexpr int opts = Eigen::ComputeThinU | Eigen::ComputeThinV;
    Eigen::BDCSVD<Matrix> svd(m, opts);
    if (detail::well_formed(svd.singularValues()))
        return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
    Eigen::JacobiSVD<Matrix> jacobi(m, opts);
    return {jacobi.singularValues(), jacobi.matrixU(), jacobi.matrixV()};
}

/// Soft-thresholds singular values by `tau`: the proximal map of tau * nuclear norm.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
singular_value_threshold(const Eigen::MatrixBase<Derived> &a, typename Derived::Scalar tau,
                         typename Derived::Scalar *nuclear_norm = nullptr) {
    auto svd = svd_compact(a);
    auto shrunk = (svd.singular_values.array() - tau).cwiseMax(0).matrix().eval();
    if (nuclear_norm)
        *nuclear_norm = shrunk.sum();
    return svd.u * shrunk.asDiagonal() * svd.v.transpose();
}

/// Factors U (m x r), V (r x n) of a point of the rank-r determinantal variety.
struct FactorPair {
    DenseMatrix u;
    DenseMatrix v;

    DenseMatrix product() const { return u * v; }
};

/// Matrix of independent standard-normal entries.
DenseMatrix random_gaussian(Index rows, Index cols, Rng &rng);

/// Gaussian factors; throws InputError unless 1 <= rank <= min(rows, cols).
FactorPair random_factors(Index rows, Index cols, Index rank, std::uint64_t seed);

/// U * V for Gaussian factors: a generic rank-r matrix.
DenseMatrix random_rank_r(Index rows, Index cols, Index rank, std::uint64_t seed);

} // namespace rankclose
