#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "l2ext/cli/config.hpp"
#include "l2ext/cli/report.hpp"

namespace l2ext::cli {

/// Runs the selected suites (concurrently when cfg.parallel) and assembles
/// the report in suite order.
VerificationReport run(const RunConfig& cfg);

/// Writes report.json, timing.json and one CSV per table into cfg.out_dir.
void write_outputs(const VerificationReport& report, const std::filesystem::path& dir);

/// Writes `name`.csv into dir, overwriting; rejects empty or ragged tables.
/// Returns the written path.
std::filesystem::path emit_sweep(const std::filesystem::path& dir, const Table& table);

/// Builds the data table of a named sweep. Known names are listed by
/// sweep_names(); `params` holds optional overrides such as weight=...
Table build_sweep(const std::string& name, const std::map<std::string, std::string>& params);
const std::map<std::string, std::string>& sweep_names();

}  // namespace l2ext::cli
