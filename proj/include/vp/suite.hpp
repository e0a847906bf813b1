#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vp/report.hpp"

#include "json.hpp"

namespace vp {

// One manifest entry: a named check, its parameters (check-specific: body
// file or inline body, direction, samples, ...), and a mandatory seed.
struct ManifestCheck {
    std::string name;
    nlohmann::json params;
    std::uint64_t seed = 0;
};

struct RunManifest {
    std::vector<ManifestCheck> checks;
    std::string output_path; // empty writes to stdout
    std::string format = "json";
};

// Parses and validates a manifest: every referenced file must exist and
// parse before any check runs; a missing seed is an error, never a default.
RunManifest manifest_from_json(const nlohmann::json& j, const std::string& base_dir);
RunManifest manifest_from_file(const std::string& path);

struct RunRow {
    CheckReport report;
    double wall_ms = 0.0;
};

struct RunResult {
    std::vector<RunRow> rows;
    bool all_pass = true;
};

// Executes the checks (up to `jobs` concurrently); rows are assembled in
// manifest order regardless of scheduling.
RunResult run_manifest(const RunManifest& manifest, int jobs = 1);

// Dispatch a single named check (the same table the manifest runner uses).
std::vector<CheckReport> run_named_check(const std::string& name, const nlohmann::json& params,
                                         std::uint64_t seed);

// vp-report-v1 CSV: name,lhs,rhs,relation,tolerance,pass,seed,samples,wall_ms.
std::string report_csv(const std::vector<RunRow>& rows);
// Deterministic "rows" block (identical manifest + seeds give identical
// bytes); timings live in the separate metadata block.
nlohmann::json report_json(const std::vector<RunRow>& rows);

struct SuiteOptions {
    std::uint64_t seed = 20240808;
    bool quick = false; // divide sample budgets by 10 (tolerances widen via sigma)
};

// The full verification battery with pinned tolerances; one report per line
// of the printed table.
std::vector<CheckReport> paper_suite(const SuiteOptions& opts = {});

} // namespace vp
