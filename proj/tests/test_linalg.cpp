#include "oracles.hpp"

#include "rankclose/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace rankclose;

TEST_CASE("determinant matches cofactor expansion") {
    Rng rng(31);
    for (Index n = 0; n <= 6; ++n) {
        for (int t = 0; t < 20; ++t) {
            const DenseMatrix a = random_gaussian(n, n, rng);
            const double ref = oracle::cofactor_det(a);
            CHECK(determinant(a) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
        }
    }
    DenseMatrix s(3, 3);
    s << 1, 2, 3, 2, 4, 6, 0, 1, 1;
    CHECK(std::abs(determinant(s)) < 1e-14);
    CHECK_THROWS_AS(determinant(DenseMatrix(2, 3)), InputError);
}

TEST_CASE("determinant accepts block expressions") {
    Rng rng(32);
    const DenseMatrix a = random_gaussian(5, 5, rng);
    const DenseMatrix sub = a.block(1, 1, 3, 3);
    CHECK(determinant(a.block(1, 1, 3, 3)) == doctest::Approx(oracle::cofactor_det(sub)));
}

TEST_CASE("singular values match Gram-matrix eigenvalues") {
    Rng rng(33);
    for (int t = 0; t < 30; ++t) {
        const Index m = 1 + Index(rng() % 6), n = 1 + Index(rng() % 6);
        const DenseMatrix a = random_gaussian(m, n, rng);
        const auto svd = svd_compact(a);
        const auto ref = oracle::singular_values(a);
        REQUIRE(svd.singular_values.size() == Index(ref.size()));
        for (std::size_t k = 0; k < ref.size(); ++k)
            CHECK(svd.singular_values(Index(k)) == doctest::Approx(ref[k]).epsilon(1e-8).scale(1.0));
        CHECK((svd.u * svd.singular_values.asDiagonal() * svd.v.transpose() - a).norm() < 1e-12 * (1 + a.norm()));
    }
}

TEST_CASE("numerical rank of products of Gaussian factors") {
    for (Index r = 1; r <= 5; ++r) {
        const DenseMatrix a = random_rank_r(7, 9, r, 100 + std::uint64_t(r));
        CHECK(numerical_rank(a) == r);
        CHECK(oracle::singular_values(a)[std::size_t(r) - 1] > 1e-6);
    }
    CHECK(numerical_rank(DenseMatrix::Zero(3, 4)) == 0);
    CHECK_THROWS_AS(numerical_rank(DenseMatrix::Identity(2, 2), 0.0), InputError);
}

TEST_CASE("singular value thresholding shrinks the spectrum") {
    Rng rng(34);
    const DenseMatrix a = random_gaussian(5, 4, rng);
    const auto sv = oracle::singular_values(a);
    const double tau = sv[1];
    double nuc = -1;
    const DenseMatrix s = singular_value_threshold(a, tau, &nuc);
    const auto out = oracle::singular_values(s);
    double expected_nuc = 0;
    for (std::size_t k = 0; k < sv.size(); ++k) {
        const double want = std::max(0.0, sv[k] - tau);
        expected_nuc += want;
        CHECK(out[k] == doctest::Approx(want).epsilon(1e-7).scale(1.0));
    }
    CHECK(nuc == doctest::Approx(expected_nuc));
    CHECK(numerical_rank(s) == 1);
}

TEST_CASE("random factors are seed-deterministic and validated") {
    const auto f = random_factors(4, 5, 2, 9);
    CHECK(f.u.rows() == 4);
    CHECK(f.u.cols() == 2);
    CHECK(f.v.rows() == 2);
    CHECK(f.v.cols() == 5);
    CHECK(f.product() == random_factors(4, 5, 2, 9).product());
    CHECK(random_rank_r(4, 5, 2, 9) == f.product());
    CHECK_THROWS_AS(random_factors(4, 5, 5, 0), InputError);
    CHECK_THROWS_AS(random_factors(4, 5, 0, 0), InputError);
}

TEST_CASE("gaussian sampler moments") {
    Rng rng(35);
    const DenseMatrix g = random_gaussian(200, 200, rng);
    const double mean = g.mean();
    const double var = (g.array() - mean).square().mean();
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
}
