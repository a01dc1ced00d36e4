// Experiment orchestration: flat key=value configs, deterministic seeded
// runs, atomic JSON reports with per-value provenance, and plot-data export.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "projlab/rational.hpp"

namespace projlab {

struct ExperimentConfig {
  std::string experiment;                  // E1..E5
  std::map<std::string, std::string> kv;   // canonical: defaults filled in
  u64 seed{1};
  std::string out_dir;

  const std::string& get(const std::string& key) const;
  i64 get_i64(const std::string& key) const;
  Rational get_rat(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::vector<i64> get_i64_list(const std::string& key) const;

  std::string canonical_text() const;  // sorted key=value lines
  std::string hash_hex() const;        // fnv1a64 of the canonical text
};

// Flat "key = value" lines; '#' comments; optional [section] headers prefix
// the keys that follow ("section.key"). Unknown keys and missing required
// keys are errors that name the offending keys; defaults are filled and
// recorded so the hash covers the effective configuration.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<inline>");

struct ExperimentReport {
  std::string report_path;
  std::string trials_path;
  std::string json_text;
  bool pass{false};
};

// Runs the configured experiment, writes <out_dir>/report.json and
// <out_dir>/trials.jsonl atomically, and returns the report. Reruns with an
// identical config produce byte-identical files. Infeasible configurations
// (cap breaches) throw before any output is written.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Writes per-figure two-column .dat files plus plot_manifest.json next to
// the report; returns the list of files written.
std::vector<std::string> emit_plot_data(const std::string& report_path);

// Bounded parallel map: applies fn(i) for i in [0, n) on up to LAB_THREADS
// workers (default: hardware concurrency); results land in caller-indexed
// slots so the output order never depends on scheduling.
void parallel_for_indexed(u64 n, const std::function<void(u64)>& fn);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace projlab
