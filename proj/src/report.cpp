#include "qlab/report.hpp"

#include <cmath>

namespace qlab {

CheckResult check_close(const std::string& name, double expected, double observed, double tol,
                        const std::string& provenance) {
    CheckResult c;
    c.name = name;
    c.expected = expected;
    c.observed = observed;
    c.tol = tol;
    c.provenance = provenance;
    c.pass = std::isfinite(observed) && std::abs(observed - expected) <= tol;
    return c;
}

CheckResult check_true(const std::string& name, bool observed, const std::string& provenance) {
    CheckResult c;
    c.name = name;
    c.expected = true;
    c.observed = observed;
    c.tol = 0.0;
    c.provenance = provenance;
    c.pass = observed;
    return c;
}

CheckResult check_equal(const std::string& name, const std::string& expected,
                        const std::string& observed, const std::string& provenance) {
    CheckResult c;
    c.name = name;
    c.expected = expected;
    c.observed = observed;
    c.tol = 0.0;
    c.provenance = provenance;
    c.pass = expected == observed;
    return c;
}

CheckResult check_above(const std::string& name, double threshold, double observed,
                        const std::string& provenance) {
    CheckResult c;
    c.name = name;
    c.expected = threshold;
    c.observed = observed;
    c.tol = 0.0;
    c.provenance = provenance;
    c.pass = std::isfinite(observed) && observed > threshold;
    return c;
}

bool DemoReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

json DemoReport::to_json() const {
    json j;
    j["demo"] = demo;
    j["params"] = params;
    j["seed"] = seed;
    j["checks"] = json::array();
    for (const auto& c : checks) {
        json jc;
        jc["name"] = c.name;
        jc["expected"] = c.expected;
        jc["observed"] = c.observed;
        jc["tol"] = c.tol;
        jc["provenance"] = c.provenance;
        jc["pass"] = c.pass;
        j["checks"].push_back(jc);
    }
    j["duration_ms"] = duration_ms;
    return j;
}

}  // namespace qlab
