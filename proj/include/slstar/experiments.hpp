#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "slstar/report.hpp"

namespace slstar {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::vector<std::string> experiment_names();

// runs one canned experiment end to end and returns its report
Report run_experiment(const std::string& name, uint64_t seed, bool parallel);

// the full acceptance sweep: one result line per criterion
struct CriterionResult {
    std::string name;
    bool pass;
    std::string detail;
};
std::vector<CriterionResult> run_acceptance(uint64_t seed, bool parallel);

// ring-core invariant suite: exhaustive below 81 elements, sampled above
Report ring_selftest(const std::string& descriptor, uint64_t samples, uint64_t seed);
Report classify_report(const std::string& descriptor);
Report divide_report(const std::string& descriptor, const std::string& a_text,
                     const std::string& c_text, uint64_t seed);

}  // namespace slstar
