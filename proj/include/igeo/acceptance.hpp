#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace igeo::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
};

/// Run the full acceptance suite. Every tolerance is pinned in the
/// implementation; nothing is configurable from the outside.
std::vector<CriterionResult> run_all();

bool all_passed(const std::vector<CriterionResult>& results);

/// One "PASS/FAIL  <id>  <name>  <details>" line per criterion.
std::string to_table(const std::vector<CriterionResult>& results);

nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace igeo::acceptance
