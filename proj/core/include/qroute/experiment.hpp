#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qroute/vqe.hpp"

namespace qroute {

enum class HamiltonianMode { Fixed, Variable };

std::string mode_name(HamiltonianMode mode);  // "fixed", "variable"
HamiltonianMode mode_from_name(const std::string& name);

/// One table cell: T independent optimization runs of a single
/// (encoding, layers, optimizer) combination on n(n-1)-qubit instances.
struct ExperimentConfig {
  int cities = 3;
  int vehicles = 2;
  EncodingFamily encoding = EncodingFamily::Angle;
  int layers = 1;
  OptimizerFamily optimizer = OptimizerFamily::Cobyla;
  HamiltonianMode mode = HamiltonianMode::Fixed;
  int runs = 50;
  std::uint64_t master_seed = 0;
  double penalty_a = 0.0;        ///< <= 0 selects the instance default
  int max_evaluations = 5000;
  double tolerance = 1e-6;
  int threads = 1;
  double time_limit_s = 1800.0;  ///< wall-clock guard for the whole cell
  bool allow_large_amplitude = false;

  int qubits() const { return cities * (cities - 1); }
};

struct AccuracyReport {
  ExperimentConfig config;
  std::vector<VqeRunRecord> records;
  int succeeded = 0;      ///< runs whose argmax state hit the exhaustive minimum
  double acc = 0.0;       ///< succeeded / runs
  double err = 0.0;       ///< (runs - succeeded) / runs
  double mean_gap = 0.0;  ///< mean argmax-energy excess over the minimum
  double wall_s = 0.0;
  bool truncated = false; ///< cell hit the time limit; records are partial
  std::string status = "ok";
};

/// Weight matrix for one run.  Fixed mode draws a single matrix from the
/// master seed and reuses it for every run; variable mode draws a fresh
/// matrix from the run's own stream.  Entries are uniform in [0, 1).
VrpInstance draw_instance(const ExperimentConfig& config, int run_index);

/// Runs the whole cell.  Runs are independent and keyed by run index, so the
/// records (and every derived number) are identical for any thread count.
AccuracyReport run_experiment(const ExperimentConfig& config);

/// Runs each cell in turn; a cell that throws is recorded as a skipped
/// report (status carries the reason) and the sweep continues.
std::vector<AccuracyReport> sweep(const std::vector<ExperimentConfig>& cells);

/// Per-run CSV: header rows describing the cell, the per-run table, and
/// accuracy footer rows.  Output bytes are a pure function of the config.
std::string report_csv(const AccuracyReport& report);
std::string report_markdown(const AccuracyReport& report);

/// One row per cell, mirroring the accuracy tables:
/// encoding, optimizer, layers, iterations, no-deviation and with-deviation
/// counts, Acc, Err.
std::string summary_csv(const std::vector<AccuracyReport>& reports);
std::string summary_markdown(const std::vector<AccuracyReport>& reports);

}  // namespace qroute
