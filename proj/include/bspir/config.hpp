#pragma once

#include <string>

#include "bspir/experiment.hpp"
#include "bspir/report.hpp"

namespace bspir {

/// Everything the `run` command needs.
struct RunSettings {
  ExperimentConfig experiment;
  std::string out;  // empty: stdout
  ReportFormat format = ReportFormat::Csv;
};

/// Applies one `key = value` setting. Keys are case-insensitive and treat '-'
/// and '_' alike, so `k-messages` and `k_messages` name the same field.
/// Throws ConfigError naming the key on unknown keys or unparsable values.
void apply_setting(RunSettings& settings, const std::string& key, const std::string& value);

/// One `key = value` per line; blank lines and '#' comments are skipped.
void apply_config_text(RunSettings& settings, const std::string& text);
void apply_config_file(RunSettings& settings, const std::string& path);

}  // namespace bspir
