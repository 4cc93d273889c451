#pragma once

// JSON views of the reports. All indices are 1-based.

#include "rankclose/algebraic.hpp"
#include "rankclose/closure.hpp"
#include "rankclose/completion.hpp"
#include "rankclose/experiment.hpp"
#include "rankclose/report.hpp"

#include <json.hpp>

namespace rankclose {

nlohmann::json to_json(const ConditionReport &report);
nlohmann::json to_json(const ClosureTrace &trace);
nlohmann::json to_json(const FiberReport &report);
nlohmann::json to_json(const CompletionResult &result);
nlohmann::json to_json(const ExperimentResult &result);

/// Adds the Jacobian fields of `fiber` to an existing condition report.
void merge_fiber(ConditionReport &report, const FiberReport &fiber);

} // namespace rankclose
