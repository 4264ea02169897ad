#ifndef FERMIEOS_TOOLS_VERIFY_SUITES_HPP
#define FERMIEOS_TOOLS_VERIFY_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cli {

struct SuiteResult {
    std::string check;
    int instances = 0;
    int failures = 0;
    double worst_slack = 0.0; // max over instances of (bound side - certified side)
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> failing_seeds;
    std::vector<std::string> notes;
};

/// Runs the inequality suites. `filter` selects one suite by name (empty =
/// all); `instance_override` > 0 replaces each suite's default count.
/// `inject_failure` appends a self-test suite with one synthetic violation.
std::vector<SuiteResult> run_verify_suites(const std::string& filter, int instance_override,
                                           std::uint64_t seed, bool inject_failure);

const std::vector<std::string>& suite_names();

} // namespace cli

#endif
