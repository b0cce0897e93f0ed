#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace qlab {

using json = nlohmann::ordered_json;

/// One verified quantity: what was expected, what came out, how close it had
/// to be, and where the expected value comes from.
struct CheckResult {
    std::string name;
    json expected;
    json observed;
    double tol = 0.0;
    std::string provenance;  // "closed-form", "identity", "exact", "constructed", "bound"
    bool pass = false;
};

CheckResult check_close(const std::string& name, double expected, double observed, double tol,
                        const std::string& provenance);
CheckResult check_true(const std::string& name, bool observed, const std::string& provenance);
CheckResult check_equal(const std::string& name, const std::string& expected,
                        const std::string& observed, const std::string& provenance);
/// pass iff observed > threshold
CheckResult check_above(const std::string& name, double threshold, double observed,
                        const std::string& provenance);

struct CsvFile {
    std::string filename;
    std::string content;  // header row first, e.g. "L,estimate"
};

struct DemoReport {
    std::string demo;
    json params;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    double duration_ms = 0.0;
    std::vector<CsvFile> plots;  // written next to the JSON unless suppressed

    bool all_passed() const;
    json to_json() const;  // schema: {demo, params, seed, checks, duration_ms}
};

}  // namespace qlab
