// verify.hpp — self-check suites behind `rabisim verify`: operator algebra,
// analytic/numeric oracle equivalence, spectrum symmetries, figure-preset
// reproduction, and golden-file comparison. `fast` stays under a few seconds
// (N <= 40); `full` re-runs the figure-scale checks (N = 100-700).

#pragma once

#include <nlohmann/json_fwd.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace rabisim {

enum class VerifyLevel { Fast, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    VerifyLevel level = VerifyLevel::Fast;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

VerifyReport run_verify(VerifyLevel level, int threads = 0);

// One "[PASS]/[FAIL] name (x.xx s) detail" line per check plus a summary.
void print_report(const VerifyReport& report, std::ostream& os);

nlohmann::json report_to_json(const VerifyReport& report);

}  // namespace rabisim
