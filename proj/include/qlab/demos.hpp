#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qlab/report.hpp"

namespace qlab {

struct DemoOptions {
    std::uint64_t seed = 42;
    double grid_l = 8.0;
    int grid_n = 1024;
    std::string out_dir = "reports";
    bool json_only = false;
};

struct DemoSpec {
    std::string name;
    std::string summary;  // one line, what the demonstration shows
    std::string claim;    // the formula or statement being exercised
    std::function<DemoReport(const DemoOptions&)> run;
};

/// Fixed catalog of named demonstrations, stable order.
const std::vector<DemoSpec>& demo_catalog();

/// Runs one demo by name. Throws std::invalid_argument for unknown names.
DemoReport run_demo(const std::string& name, const DemoOptions& options);

/// Per-demo seed, derived so concurrent demos stay independent.
std::uint64_t demo_seed(std::uint64_t base_seed, const std::string& demo_name);

}  // namespace qlab
