#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "polyinv/interpolate.hpp"
#include "polyinv/loop_model.hpp"
#include "polyinv/recurrence.hpp"

namespace polyinv {

struct CliOptions {
    std::string loop_file;
    std::string invariants_file;           // check
    std::optional<std::string> monomials_file;  // infer
    std::optional<std::string> lattice_file;    // analyze / infer --analyze-first
    unsigned degree = 2;
    bool degree_explicit = false;
    std::string mode = "inductive";
    std::string engine = "modular";
    std::size_t max_images = 8;
    std::size_t depth = 12;
    bool depth_explicit = false;
    std::size_t initials = 3;
    bool initials_explicit = false;
    std::uint64_t seed = 1;
    std::size_t margin = 5;
    bool analyze_first = false;
    std::optional<std::uint64_t> budget_ms;
};

struct RunReport {
    nlohmann::json payload;
    int exit_code = 0;
};

/// The five subcommand entry points; each reads the inputs named in opts and
/// produces the full JSON report. Input problems come back as exit code 3
/// reports rather than exceptions.
RunReport run_parse(const CliOptions& opts);
RunReport run_sample(const CliOptions& opts);
RunReport run_infer(const CliOptions& opts);
RunReport run_check(const CliOptions& opts);
RunReport run_analyze(const CliOptions& opts);

/// JSON views shared by the subcommands.
nlohmann::json loop_to_json(const LoopSystem& loop);
nlohmann::json interp_result_to_json(const InterpResult& r, const LoopSystem& loop);
nlohmann::json analyze_report_to_json(const AnalyzeReport& rep, const LoopSystem& loop);

std::string read_file(const std::string& path);
std::vector<Polynomial> read_polynomial_list(const std::string& path, const LoopSystem& loop);
std::vector<std::vector<Integer>> read_lattice_file(const std::string& path);

/// FNV-1a 64 digest used as the input fingerprint in reports.
std::string content_digest(const std::string& bytes);

}  // namespace polyinv
