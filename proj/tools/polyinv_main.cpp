#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "polyinv/cli_core.hpp"

using namespace polyinv;

namespace {

void add_common(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--seed", opts.seed, "deterministic RNG seed");
    cmd->add_option("--budget-ms", [&opts](const CLI::results_t& res) {
        opts.budget_ms = std::stoull(res[0]);
        return true;
    }, "wall-clock budget for certification algebra");
}

void emit(const RunReport& report, const std::string& json_path) {
    std::string dump = report.payload.dump(2) + "\n";
    if (json_path.empty()) {
        std::cout << dump;
    } else {
        std::ofstream out(json_path, std::ios::binary);
        out << dump;
    }
    // Short human summary on stderr; scripts read the JSON.
    std::cerr << "[polyinv] " << report.payload["command"].get<std::string>() << ": "
              << report.payload["status"].get<std::string>() << " (exit " << report.exit_code
              << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial loop invariant generation and certification"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string json_path;
    app.add_option("--json", json_path, "write the JSON report to a file instead of stdout");

    auto* parse = app.add_subcommand("parse", "parse a loop file and echo the normalized form");
    parse->add_option("loop", opts.loop_file, "loop file")->required();
    add_common(parse, opts);

    auto* sample = app.add_subcommand("sample", "emulate the loop and emit exact sample points");
    sample->add_option("loop", opts.loop_file)->required();
    sample->add_option("--mode", opts.mode, "plain|inductive|absolute");
    sample->add_option("--depth", opts.depth);
    sample->add_option("--initials", opts.initials);
    add_common(sample, opts);

    auto* infer = app.add_subcommand("infer", "interpolate and certify invariants");
    infer->add_option("loop", opts.loop_file)->required();
    auto* deg = infer->add_option("--degree", opts.degree, "total degree of the dense template");
    auto* dep = infer->add_option("--depth", opts.depth);
    auto* ini = infer->add_option("--initials", opts.initials);
    infer->add_option("--mode", opts.mode, "plain|inductive|absolute");
    infer->add_option("--engine", opts.engine, "direct|modular");
    infer->add_option("--max-images", opts.max_images, "modular images to allow");
    infer->add_option("--monomials", [&opts](const CLI::results_t& res) {
        opts.monomials_file = res[0];
        return true;
    }, "file with an explicit monomial template, one per line");
    infer->add_option("--lattice", [&opts](const CLI::results_t& res) {
        opts.lattice_file = res[0];
        return true;
    }, "relation lattice file for --analyze-first");
    infer->add_flag("--analyze-first", opts.analyze_first,
                    "derive the degree from the recurrence analysis bound");
    add_common(infer, opts);

    auto* check = app.add_subcommand("check", "certify a list of candidate invariants");
    check->add_option("loop", opts.loop_file)->required();
    check->add_option("invariants", opts.invariants_file, "one polynomial per line")->required();
    check->add_option("--mode", opts.mode);
    check->add_option("--depth", opts.depth);
    add_common(check, opts);

    auto* analyze = app.add_subcommand("analyze", "degree/dimension bounds and triviality verdicts");
    analyze->add_option("loop", opts.loop_file)->required();
    analyze->add_option("--lattice", [&opts](const CLI::results_t& res) {
        opts.lattice_file = res[0];
        return true;
    }, "user-supplied multiplicative relation lattice, one integer row per line");
    add_common(analyze, opts);

    CLI11_PARSE(app, argc, argv);

    opts.degree_explicit = deg->count() > 0;
    opts.depth_explicit = dep->count() > 0;
    opts.initials_explicit = ini->count() > 0;

    RunReport report;
    if (*parse) report = run_parse(opts);
    if (*sample) report = run_sample(opts);
    if (*infer) report = run_infer(opts);
    if (*check) report = run_check(opts);
    if (*analyze) report = run_analyze(opts);

    emit(report, json_path);
    return report.exit_code;
}
