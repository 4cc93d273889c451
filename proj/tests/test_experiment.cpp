#include "rankclose/experiment.hpp"
#include "rankclose/graph.hpp"
#include "rankclose/json.hpp"

#include <doctest.h>

#include <set>

using namespace rankclose;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.rows = 6;
    c.cols = 7;
    c.rank = 2;
    c.measurement_counts = {30, 10, 20, 42};
    c.trials_per_count = 6;
    c.methods = {Method::min_degree, Method::connectivity, Method::closure, Method::jacobian, Method::nuclear,
                 Method::rank_fit};
    c.seed = 99;
    c.record_timing = false;
    return c;
}

} // namespace

TEST_CASE("method names round-trip") {
    for (Method m : {Method::connectivity, Method::min_degree, Method::closure, Method::jacobian, Method::nuclear,
                     Method::rank_fit})
        CHECK(parse_method(method_name(m)) == m);
    CHECK_FALSE(parse_method("optspace"));
}

TEST_CASE("config validation") {
    auto c = small_config();
    c.validate();
    CHECK(c.measurement_counts == std::vector<Index>{10, 20, 30, 42});
    c.measurement_counts.push_back(43);
    CHECK_THROWS_AS(c.validate(), InputError);
    c = small_config();
    c.rank = 7;
    CHECK_THROWS_AS(c.validate(), InputError);
    c = small_config();
    c.methods.push_back(Method::closure);
    CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("trial seeds are distinct per stream, alpha and trial") {
    std::set<std::uint64_t> seen;
    for (Index a : {10, 11})
        for (std::size_t t = 0; t < 50; ++t) {
            const auto s = trial_seeds(5, a, t);
            seen.insert({s.mask, s.matrix, s.solver});
        }
    CHECK(seen.size() == 300);
}

TEST_CASE("sweep outcomes are structurally sound") {
    const auto res = run_experiment(small_config());
    CHECK(res.failures.empty());
    CHECK(res.tallies.size() == 4 * 6);
    CHECK(res.trials.size() == 4 * 6);
    // Full mask: every method succeeds.
    for (Method m : res.config.methods)
        CHECK(res.find(42, m)->rate() == 1.0);
    // Below the counting bound nothing is identifiable.
    CHECK(res.find(10, Method::closure)->successes == 0);
    CHECK(res.find(10, Method::jacobian)->successes == 0);
    for (const auto &t : res.trials) {
        // closure success implies the necessary graph conditions and a finite fiber
        if (t.success[2]) {
            CHECK(t.success[0]);
            CHECK(t.success[1]);
            CHECK(t.success[3]);
        }
        if (t.success[1])
            CHECK(t.success[0]);
    }
}

TEST_CASE("results do not depend on the worker count") {
    auto c = small_config();
    const auto one = run_experiment(c);
    c.jobs = 3;
    const auto three = run_experiment(c);
    CHECK(experiment_csv(one) == experiment_csv(three));
    CHECK(to_json(one).dump() == to_json(three).dump());
    c.seed = 100;
    CHECK(experiment_csv(run_experiment(c)) != experiment_csv(one));
}

TEST_CASE("CSV round trip") {
    const auto res = run_experiment(small_config());
    const std::string csv = experiment_csv(res);
    CHECK(csv.rfind("# bound_i=22, full_id=38\nalpha,method,successes,trials,rate,seconds\n", 0) == 0);
    const auto rows = parse_experiment_csv(csv);
    REQUIRE(rows.size() == res.tallies.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].alpha == res.tallies[k].alpha);
        CHECK(rows[k].method == method_name(res.tallies[k].method));
        CHECK(rows[k].successes == res.tallies[k].successes);
        CHECK(rows[k].rate == res.tallies[k].rate());
        CHECK(rows[k].seconds == 0.0);
    }
    CHECK_THROWS_AS(parse_experiment_csv("alpha,method\n"), ParseError);
    CHECK_THROWS_AS(parse_experiment_csv("alpha,method,successes,trials,rate,seconds\n1,x,2\n"), ParseError);
}

TEST_CASE("presets") {
    for (const auto &name : preset_names()) {
        auto p = preset(name);
        REQUIRE(p);
        CHECK_NOTHROW(p->validate());
        CHECK(p->trials_per_count == 100);
        // the grid brackets both reference lines
        CHECK(p->measurement_counts.front() < p->bound_i());
        CHECK(p->measurement_counts.back() >= p->full_identifiable());
    }
    CHECK(preset("fig1a")->bound_i() == 66);
    CHECK(preset("fig1a")->full_identifiable() == 143);
    CHECK_FALSE(preset("fig2"));
}
