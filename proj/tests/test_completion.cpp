#include "fixtures.hpp"
#include "oracles.hpp"

#include "rankclose/closure.hpp"
#include "rankclose/completion.hpp"

#include <doctest.h>

#include <random>

using namespace rankclose;

TEST_CASE("single block: the vanishing-minor value") {
    DenseMatrix b(2, 2);
    b << 1, 3, 4, 0;
    CHECK(solve_block_entry(b, 1, 1) == doctest::Approx(12.0).epsilon(1e-15));
    DenseMatrix c(1, 1);
    c << 5;
    CHECK(solve_block_entry(c, 0, 0) == 0.0);
}

TEST_CASE("block solve matches the cofactor formula") {
    Rng rng(51);
    for (int t = 0; t < 300; ++t) {
        const Index r = std::uniform_int_distribution<Index>(1, 4)(rng);
        DenseMatrix block = random_gaussian(r + 1, r + 1, rng);
        const Index ur = Index(rng() % (r + 1)), uc = Index(rng() % (r + 1));
        const double ref = oracle::vanishing_entry(block, ur, uc);
        const double got = solve_block_entry(block, ur, uc);
        CHECK(got == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
        block(ur, uc) = got;
        CHECK(std::abs(oracle::cofactor_det(block)) < 1e-9 * std::pow(block.cwiseAbs().maxCoeff(), double(r + 1)));
    }
}

TEST_CASE("block solve recovers the hidden entry of a rank-r block") {
    for (Index r = 1; r <= 4; ++r) {
        const DenseMatrix a = random_rank_r(r + 1, r + 1, r, 500 + std::uint64_t(r));
        DenseMatrix hidden = a;
        hidden(r, 0) = 1e6;
        CHECK(solve_block_entry(hidden, r, 0) == doctest::Approx(a(r, 0)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("degenerate blocks are rejected") {
    DenseMatrix b(2, 2);
    b << 0, 3, 4, 0;
    CHECK_THROWS_AS(solve_block_entry(b, 1, 1), DegenerateBlock);
    DenseMatrix z = DenseMatrix::Zero(3, 3);
    CHECK(block_pivot_quality(z, 0, 0) == 0.0);
    CHECK_THROWS_AS(solve_block_entry(DenseMatrix(2, 3), 0, 0), InputError);
    CHECK_THROWS_AS(solve_block_entry(DenseMatrix(2, 2), 2, 0), InputError);
}

TEST_CASE("A1 completes exactly, A2 does not") {
    const auto r1 = complete(fixture::a1(), 1);
    REQUIRE(r1.ok());
    DenseMatrix want(3, 3);
    want << 1, 2, 3, 2, 4, 6, 4, 8, 12;
    CHECK((r1.matrix - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(r1.inferred.size() == 4);
    CHECK(verify_completion(r1.matrix, 1, 64));

    const auto r2 = complete(fixture::a2(), 1);
    CHECK_FALSE(r2.ok());
    CHECK(r2.status == CompletionStatus::no_completable_block);
    CHECK(r2.diagnostic.rfind("no completable block", 0) == 0);
    CHECK(std::isnan(r2.matrix(0, 1)));
    CHECK(r2.matrix(2, 2) == 12.0);
}

TEST_CASE("precheck rejects too few entries") {
    const MaskedMatrix mm = apply_mask(random_rank_r(4, 4, 2, 1), random_mask(4, 4, 11, 2));
    const auto res = complete(mm, 2);
    CHECK(res.status == CompletionStatus::precheck_failed);
    CompletionOptions no_pre;
    no_pre.precheck = false;
    CHECK(complete(mm, 2, no_pre).status == CompletionStatus::no_completable_block);
    CHECK_THROWS_AS(complete(mm, 5), InputError);
}

TEST_CASE("random closable instances are recovered") {
    Rng rng(52);
    int done = 0;
    for (int t = 0; t < 200 && done < 60; ++t) {
        const Index m = std::uniform_int_distribution<Index>(3, 9)(rng);
        const Index n = std::uniform_int_distribution<Index>(3, 9)(rng);
        const Index r = std::uniform_int_distribution<Index>(1, std::min<Index>({m, n, 3}) - 1)(rng);
        const Mask mask = random_mask(m, n, std::uniform_int_distribution<Index>(r * (m + n - r), m * n)(rng), rng());
        if (!is_r_closable(mask, r))
            continue;
        ++done;
        const DenseMatrix truth = random_rank_r(m, n, r, rng());
        const MaskedMatrix mm = apply_mask(truth, mask);
        for (auto strategy : {BlockStrategy::exhaustive, BlockStrategy::heuristic}) {
            CompletionOptions opts;
            opts.strategy = strategy;
            const auto res = complete(mm, r, opts);
            if (strategy == BlockStrategy::heuristic && !res.ok())
                continue; // the heuristic may stop short; it never returns a wrong matrix
            REQUIRE(res.ok());
            CHECK((res.matrix - truth).norm() <= 1e-7 * truth.norm());
            CHECK(verify_completion(res.matrix, r, 64, std::uint64_t(t)));
            for (const Entry &e : mask.entries())
                CHECK(res.matrix(e.row, e.col) == truth(e.row, e.col));
            CHECK(Index(res.inferred.size()) == m * n - mask.edge_count());
            for (const auto &inf : res.inferred) {
                CHECK(std::binary_search(inf.rows.begin(), inf.rows.end(), inf.entry.row));
                CHECK(std::binary_search(inf.cols.begin(), inf.cols.end(), inf.entry.col));
                CHECK(inf.pivot > 1e-10);
            }
        }
    }
    CHECK(done == 60);
}

TEST_CASE("verify_completion rejects a full-rank matrix") {
    Rng rng(53);
    const DenseMatrix a = random_gaussian(5, 6, rng);
    CHECK_FALSE(verify_completion(a, 2, 64));
    CHECK(verify_completion(random_rank_r(5, 6, 2, 3), 2, 64));
}

TEST_CASE("full input is returned unchanged") {
    const DenseMatrix a = random_rank_r(4, 5, 2, 7);
    const auto res = complete(apply_mask(a, Mask::full(4, 5)), 2);
    REQUIRE(res.ok());
    CHECK(res.matrix == a);
    CHECK(res.inferred.empty());
}

TEST_CASE("block strategies agree and every inferred value zeroes its block") {
    Rng rng(54);
    int done = 0;
    for (int t = 0; t < 100 && done < 20; ++t) {
        const Mask mask = random_mask(8, 10, std::uniform_int_distribution<Index>(40, 70)(rng), rng());
        if (!is_r_closable(mask, 2))
            continue;
        const DenseMatrix truth = random_rank_r(8, 10, 2, rng());
        CompletionOptions h;
        h.strategy = BlockStrategy::heuristic;
        const auto a = complete(apply_mask(truth, mask), 2);
        const auto b = complete(apply_mask(truth, mask), 2, h);
        REQUIRE(a.ok());
        if (!b.ok())
            continue;
        ++done;
        CHECK((a.matrix - b.matrix).norm() <= 1e-7 * a.matrix.norm());
        for (const auto &inf : a.inferred) {
            DenseMatrix block(3, 3);
            for (Index i = 0; i < 3; ++i)
                for (Index j = 0; j < 3; ++j)
                    block(i, j) = a.matrix(inf.rows[std::size_t(i)], inf.cols[std::size_t(j)]);
            CHECK(std::abs(oracle::cofactor_det(block)) <= 1e-8 * std::pow(block.cwiseAbs().maxCoeff(), 3.0));
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("10x15 rank-3 recovery to 1e-8 relative per entry") {
    Rng rng(55);
    int done = 0;
    for (int t = 0; t < 200 && done < 10; ++t) {
        const Mask mask = random_mask(10, 15, std::uniform_int_distribution<Index>(80, 140)(rng), rng());
        if (!is_r_closable(mask, 3))
            continue;
        ++done;
        const DenseMatrix truth = random_rank_r(10, 15, 3, rng());
        const auto res = complete(apply_mask(truth, mask), 3);
        REQUIRE(res.ok());
        CHECK((res.matrix - truth).cwiseAbs().maxCoeff() <= 1e-8 * truth.cwiseAbs().maxCoeff());
    }
    CHECK(done == 10);
}

TEST_CASE("a perturbed completion fails verification") {
    auto res = complete(fixture::a1(), 1);
    REQUIRE(res.ok());
    res.matrix(2, 2) += 1.0;
    CHECK_FALSE(verify_completion(res.matrix, 1, 64));
}
