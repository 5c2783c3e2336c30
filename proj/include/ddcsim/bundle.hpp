#pragma once

#include <filesystem>
#include <string>

#include "ddcsim/analytics.hpp"
#include "ddcsim/engine.hpp"

namespace ddcsim {

struct BundleOptions {
  bool include_timeseries = true;
  bool include_plot_script = true;
  std::size_t ccdf_max_points = 10000;
};

// Files written for one run. Paths are empty for files the options skipped.
struct OutputBundle {
  std::filesystem::path dir;
  std::filesystem::path timeseries;
  std::filesystem::path ccdf_points;
  std::filesystem::path summary;
  std::filesystem::path manifest;
  std::filesystem::path plot_script;
  RunSummary stats;
};

// Serializes one run into `dir` (created if needed): timeseries.csv,
// ccdf.csv (log-rank decimated), summary.json, manifest.json and a gnuplot
// script. Every file is written to a temporary name and renamed into place.
OutputBundle write_bundle(const RunOutput& output,
                          const std::filesystem::path& dir,
                          const BundleOptions& options = {});

std::string summary_to_json(const RunSummary& summary, int indent = 2);

// Writes text to `path` atomically (temp file + rename).
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace ddcsim
