#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gammaext {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

/// Runs criteria 1..7 in order; on_result is called as each finishes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

/// One line per criterion: "criterion N: PASS|FAIL  title  (detail, seconds)".
std::string format_result(const CriterionResult& r);

}  // namespace gammaext
