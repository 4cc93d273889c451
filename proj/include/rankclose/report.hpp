#pragma once

#include "rankclose/graph.hpp"

#include <optional>

namespace rankclose {

enum class PartitionStatus { pass, violated, unknown };

/// Identifiability diagnostics for one mask and rank. Graph conditions are filled by
/// necessary_conditions_report(); closability and the Jacobian rank are added by
/// the closure and algebraic modules.
struct ConditionReport {
    Index rows = 0;
    Index cols = 0;
    Index rank = 0;

    Index alpha = 0;
    Index bound_i = 0;
    bool cond_i = false;

    bool cond_ii = false;
    std::vector<Vertex> violating_vertices;

    bool cond_iii = false;
    std::vector<Entry> violating_cut;

    PartitionStatus cond_iv = PartitionStatus::unknown;
    std::optional<BipartitePartition> violating_partition;

    std::optional<bool> r_closable;
    std::optional<Index> jacobian_rank;
    std::optional<Index> jacobian_target;
};

ConditionReport necessary_conditions_report(const Mask &mask, Index rank,
                                            std::uint64_t partition_budget = kDefaultPartitionBudget);

} // namespace rankclose
