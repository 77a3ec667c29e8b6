#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vstool {

struct ValidationOptions {
    /// Quarter path counts and doubled tolerances.
    bool quick = false;
    /// Multiplies every tolerance; a test hook for the harness itself.
    double tolerance_scale = 1.0;
    std::uint64_t seed = 42;
    unsigned workers = 0;
    /// Criterion ids to run; empty runs all.
    std::vector<int> only;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string achieved;
    std::string tolerance;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::vector<std::string> details;
};

constexpr int kCriterionCount = 11;

std::vector<CriterionResult> run_validation(const ValidationOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 01 name | achieved ... | tolerance ... | 1.23 s / 60 s"
std::string format_result(const CriterionResult& r);

}  // namespace vstool
