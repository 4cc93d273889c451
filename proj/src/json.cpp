#include "rankclose/json.hpp"

namespace rankclose {

using nlohmann::json;

namespace {

json one_based(const std::vector<Index> &idx) {
    json out = json::array();
    for (Index i : idx)
        out.push_back(i + 1);
    return out;
}

json entry_json(Entry e) { return json::array({e.row + 1, e.col + 1}); }

std::string_view status_name(PartitionStatus s) {
    switch (s) {
    case PartitionStatus::pass:
        return "pass";
    case PartitionStatus::violated:
        return "violated";
    case PartitionStatus::unknown:
        break;
    }
    return "unknown";
}

std::string_view status_name(CompletionStatus s) {
    switch (s) {
    case CompletionStatus::completed:
        return "completed";
    case CompletionStatus::precheck_failed:
        return "precheck_failed";
    case CompletionStatus::no_completable_block:
        break;
    }
    return "no_completable_block";
}

} // namespace

json to_json(const ConditionReport &r) {
    json vertices = json::array();
    for (const auto &v : r.violating_vertices)
        vertices.push_back({{v.side == Vertex::Side::row ? "row" : "col", v.index + 1}});
    json cut = json::array();
    for (const auto &e : r.violating_cut)
        cut.push_back(entry_json(e));
    json partition = nullptr;
    if (r.violating_partition) {
        partition = json::array();
        for (const auto &b : r.violating_partition->blocks)
            partition.push_back({{"rows", one_based(b.rows)}, {"cols", one_based(b.cols)}});
    }
    json out;
    out["alpha"] = r.alpha;
    out["bound_i"] = r.bound_i;
    out["cond_i"] = r.cond_i;
    out["cond_ii"] = r.cond_ii;
    out["violating_vertices"] = std::move(vertices);
    out["cond_iii"] = r.cond_iii;
    out["violating_cut"] = std::move(cut);
    out["cond_iv_status"] = status_name(r.cond_iv);
    out["violating_partition"] = std::move(partition);
    out["r_closable"] = r.r_closable ? json(*r.r_closable) : json(nullptr);
    out["jacobian_rank"] = r.jacobian_rank ? json(*r.jacobian_rank) : json(nullptr);
    out["jacobian_target"] = r.jacobian_target ? json(*r.jacobian_target) : json(nullptr);
    return out;
}

json to_json(const ClosureTrace &t) {
    json steps = json::array();
    for (const auto &s : t.steps)
        steps.push_back({{"rows", one_based(s.rows)}, {"cols", one_based(s.cols)}, {"added", entry_json(s.added)}});
    json out;
    out["initial_alpha"] = t.initial.edge_count();
    out["steps"] = std::move(steps);
    out["final_alpha"] = t.final_mask.edge_count();
    out["closable"] = t.closable();
    return out;
}

json to_json(const FiberReport &f) {
    return {{"jacobian_rank", f.jacobian_rank},
            {"jacobian_target", f.target_dim},
            {"fiber_dim", f.fiber_dim},
            {"generically_finite", f.generically_finite}};
}

json to_json(const CompletionResult &c) {
    json inferred = json::array();
    for (const auto &e : c.inferred)
        inferred.push_back({{"entry", entry_json(e.entry)},
                            {"value", e.value},
                            {"rows", one_based(e.rows)},
                            {"cols", one_based(e.cols)},
                            {"pivot", e.pivot}});
    json out;
    out["status"] = status_name(c.status);
    out["diagnostic"] = c.diagnostic;
    out["inferred"] = std::move(inferred);
    out["residual_max_minor"] = c.residual_max_minor;
    out["degenerate_skips"] = c.degenerate_skips;
    return out;
}

json to_json(const ExperimentResult &r) {
    const auto &c = r.config;
    json methods = json::array();
    for (Method m : c.methods)
        methods.push_back(method_name(m));
    json rows = json::array();
    for (const auto &t : r.tallies)
        rows.push_back({{"alpha", t.alpha},
                        {"method", method_name(t.method)},
                        {"successes", t.successes},
                        {"trials", t.trials},
                        {"rate", t.rate()},
                        {"seconds", t.seconds}});
    std::size_t fallbacks = 0;
    for (const auto &t : r.trials)
        fallbacks += t.closure_fallback ? 1 : 0;
    json out;
    out["config"] = {{"m", c.rows},
                     {"n", c.cols},
                     {"r", c.rank},
                     {"measurement_counts", c.measurement_counts},
                     {"trials_per_count", c.trials_per_count},
                     {"methods", std::move(methods)},
                     {"seed", c.seed},
                     {"success_threshold", c.success_threshold},
                     {"exhaustive_fallback_limit", c.exhaustive_fallback_limit}};
    out["bound_i"] = r.bound_i();
    out["full_id"] = r.full_identifiable();
    out["results"] = std::move(rows);
    out["closure_fallbacks"] = fallbacks;
    out["failures"] = r.failures;
    return out;
}

void merge_fiber(ConditionReport &report, const FiberReport &fiber) {
    report.jacobian_rank = fiber.jacobian_rank;
    report.jacobian_target = fiber.target_dim;
}

} // namespace rankclose
