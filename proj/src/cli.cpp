#include "qlab/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "qlab/demos.hpp"

namespace qlab {

namespace {

void write_report_files(const DemoReport& report, const DemoOptions& opts) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);
    {
        std::ofstream out(fs::path(opts.out_dir) / (report.demo + ".json"));
        out << report.to_json().dump(2) << "\n";
    }
    if (!opts.json_only) {
        for (const auto& plot : report.plots) {
            std::ofstream out(fs::path(opts.out_dir) / plot.filename);
            out << plot.content;
        }
    }
}

void print_summary(const DemoReport& report) {
    int passed = 0;
    for (const auto& c : report.checks) {
        if (c.pass) ++passed;
    }
    std::cout << report.demo << ": " << (report.all_passed() ? "PASS" : "FAIL") << " (" << passed
              << "/" << report.checks.size() << " checks, " << report.duration_ms << " ms)\n";
    for (const auto& c : report.checks) {
        if (!c.pass) {
            std::cout << "  failed: " << c.name << " expected " << c.expected.dump()
                      << " observed " << c.observed.dump() << " tol " << c.tol << "\n";
        }
    }
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"desk-scale checks of state-space geometry, divergent moments, and "
                 "rapidly-decreasing-function classification"};
    app.require_subcommand(1);

    DemoOptions opts;
    bool parallel = false;
    app.add_option("--seed", opts.seed, "random seed for the seeded demos")
        ->default_val(std::uint64_t{42});
    app.add_option("--out-dir", opts.out_dir, "directory for JSON reports and CSV plot data")
        ->default_val("reports");
    app.add_option("--grid-n", opts.grid_n, "reference grid point count")->default_val(1024);
    app.add_option("--grid-l", opts.grid_l, "reference grid half-width")->default_val(8.0);
    app.add_flag("--json-only", opts.json_only, "suppress CSV plot files");
    app.add_flag("--parallel", parallel, "run the requested demos concurrently");

    auto* list_cmd = app.add_subcommand("list", "list the demo catalog");
    auto* run_cmd = app.add_subcommand("run", "run one or more demos ('all' for the catalog)");
    std::vector<std::string> requested;
    run_cmd->add_option("demos", requested, "demo names, or 'all'")->required();

    try {
        std::vector<const char*> argv;
        argv.push_back("qlab");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list_cmd->parsed()) {
        std::cout << demo_catalog().size() << " demos:\n";
        for (const auto& spec : demo_catalog()) {
            std::cout << "  " << spec.name << "\n      " << spec.summary << "\n      "
                      << spec.claim << "\n";
        }
        return 0;
    }

    std::vector<std::string> names;
    for (const auto& r : requested) {
        if (r == "all") {
            for (const auto& spec : demo_catalog()) names.push_back(spec.name);
        } else {
            names.push_back(r);
        }
    }
    for (const auto& name : names) {
        bool known = false;
        for (const auto& spec : demo_catalog()) known = known || spec.name == name;
        if (!known) {
            std::cerr << "unknown demo '" << name << "'; valid names:";
            for (const auto& spec : demo_catalog()) std::cerr << " " << spec.name;
            std::cerr << "\n";
            return 2;
        }
    }

    bool all_passed = true;
    try {
        if (parallel) {
            std::vector<std::future<DemoReport>> futures;
            futures.reserve(names.size());
            for (const auto& name : names) {
                futures.push_back(std::async(std::launch::async,
                                             [&, name] { return run_demo(name, opts); }));
            }
            for (auto& f : futures) {
                DemoReport report = f.get();
                write_report_files(report, opts);
                print_summary(report);
                all_passed = all_passed && report.all_passed();
            }
        } else {
            for (const auto& name : names) {
                DemoReport report = run_demo(name, opts);
                write_report_files(report, opts);
                print_summary(report);
                all_passed = all_passed && report.all_passed();
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    }
    return all_passed ? 0 : 1;
}

}  // namespace qlab
