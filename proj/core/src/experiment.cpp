#include "qroute/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qroute/rng.hpp"

namespace qroute {

namespace {

constexpr std::uint64_t kWeightStream = 0x77656967;  // tags the weight draws

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_percent(int part, int total) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g%%", total > 0 ? (100.0 * part) / total : 0.0);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

ExperimentConfig normalized(ExperimentConfig config) {
  if (config.encoding == EncodingFamily::Amplitude) config.layers = 1;
  return config;
}

}  // namespace

std::string mode_name(HamiltonianMode mode) {
  return mode == HamiltonianMode::Fixed ? "fixed" : "variable";
}

HamiltonianMode mode_from_name(const std::string& name) {
  if (name == "fixed") return HamiltonianMode::Fixed;
  if (name == "variable") return HamiltonianMode::Variable;
  throw std::invalid_argument("unknown hamiltonian mode: " + name);
}

VrpInstance draw_instance(const ExperimentConfig& config, int run_index) {
  VrpInstance inst;
  inst.n = config.cities;
  inst.k = config.vehicles;
  inst.penalty_a = config.penalty_a;
  const std::uint64_t run_component =
      config.mode == HamiltonianMode::Fixed ? 0 : static_cast<std::uint64_t>(run_index) + 1;
  const CounterRng rng(hash_combine(config.master_seed, kWeightStream, run_component));
  inst.weights.assign(static_cast<std::size_t>(inst.n) * inst.n, 0.0);
  for (int q = 0; q < inst.var_count(); ++q) {
    const auto [i, j] = var_pair(inst.n, q);
    inst.weights[static_cast<std::size_t>(i) * inst.n + j] = rng.uniform(q);
  }
  validate(inst);
  return inst;
}

AccuracyReport run_experiment(const ExperimentConfig& raw_config) {
  const ExperimentConfig config = normalized(raw_config);
  if (config.runs < 1) throw std::invalid_argument("cell needs at least one run");
  if (config.layers < 1) throw std::invalid_argument("cell needs at least one layer");
  if (config.max_evaluations < 1) throw std::invalid_argument("budget must be positive");
  if (config.threads < 1) throw std::invalid_argument("thread count must be positive");
  const int qubits = config.qubits();
  if (qubits > 20) throw std::invalid_argument("register would exceed the 20-qubit simulator cap");
  if (config.encoding == EncodingFamily::Amplitude && qubits > 6 &&
      !config.allow_large_amplitude)
    throw std::invalid_argument(
        "amplitude encoding is refused above 6 qubits; set allow_large_amplitude to override");

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_s = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  OptimizerSpec optimizer;
  optimizer.family = config.optimizer;
  optimizer.max_evaluations = config.max_evaluations;
  optimizer.tolerance = config.tolerance;

  // Fixed mode compiles one shared problem; variable mode rebuilds per run.
  IsingModel shared_model;
  double shared_min = 0.0;
  CircuitTemplate shared_circuit;
  if (config.mode == HamiltonianMode::Fixed) {
    const VrpInstance inst = draw_instance(config, 0);
    shared_model = qubo_to_ising(compile_qubo(inst));
    shared_min = brute_force_minimum(shared_model).min_energy;
    shared_circuit = build_encoding(config.encoding, qubits, config.layers, &shared_model,
                                    config.allow_large_amplitude);
  }

  std::vector<VqeRunRecord> slots(static_cast<std::size_t>(config.runs));
  std::vector<char> done(static_cast<std::size_t>(config.runs), 0);
  std::atomic<int> next{0};
  std::atomic<bool> timed_out{false};
  std::atomic<bool> aborted{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      if (aborted.load()) return;
      const int r = next.fetch_add(1);
      if (r >= config.runs) return;
      if (elapsed_s() > config.time_limit_s) {
        timed_out.store(true);
        return;
      }
      try {
        VqeOptions options;
        options.optimizer = optimizer;
        options.run_index = r;
        options.master_seed = config.master_seed;
        if (config.mode == HamiltonianMode::Fixed) {
          slots[r] = run_vqe(shared_circuit, shared_model, shared_min, options);
        } else {
          const VrpInstance inst = draw_instance(config, r);
          const IsingModel model = qubo_to_ising(compile_qubo(inst));
          const double oracle_min = brute_force_minimum(model).min_energy;
          const CircuitTemplate circuit = build_encoding(
              config.encoding, qubits, config.layers, &model, config.allow_large_amplitude);
          slots[r] = run_vqe(circuit, model, oracle_min, options);
        }
        done[r] = 1;
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        aborted.store(true);
        return;
      }
    }
  };

  const int workers = std::max(1, std::min(config.threads, config.runs));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  AccuracyReport report;
  report.config = config;
  for (int r = 0; r < config.runs; ++r)
    if (done[r]) report.records.push_back(slots[r]);
  report.truncated = timed_out.load() ||
                     static_cast<int>(report.records.size()) != config.runs;
  const int total = static_cast<int>(report.records.size());
  for (const VqeRunRecord& rec : report.records) {
    if (rec.reached_minimum) ++report.succeeded;
    report.mean_gap += rec.oracle_gap;
  }
  if (total > 0) {
    report.acc = static_cast<double>(report.succeeded) / total;
    report.err = static_cast<double>(total - report.succeeded) / total;
    report.mean_gap /= total;
  }
  report.wall_s = elapsed_s();
  return report;
}

std::vector<AccuracyReport> sweep(const std::vector<ExperimentConfig>& cells) {
  std::vector<AccuracyReport> reports;
  reports.reserve(cells.size());
  for (const ExperimentConfig& cell : cells) {
    try {
      reports.push_back(run_experiment(cell));
    } catch (const std::exception& e) {
      AccuracyReport skipped;
      skipped.config = normalized(cell);
      skipped.status = std::string("skipped: ") + e.what();
      reports.push_back(std::move(skipped));
    }
  }
  return reports;
}

std::string report_csv(const AccuracyReport& report) {
  const ExperimentConfig& c = report.config;
  std::ostringstream out;
  out << "# cities," << c.cities << '\n';
  out << "# vehicles," << c.vehicles << '\n';
  out << "# qubits," << c.qubits() << '\n';
  out << "# encoding," << family_name(c.encoding) << '\n';
  out << "# layers," << c.layers << '\n';
  out << "# optimizer," << optimizer_name(c.optimizer) << '\n';
  out << "# hamiltonian," << mode_name(c.mode) << '\n';
  out << "# runs," << c.runs << '\n';
  out << "# master_seed," << c.master_seed << '\n';
  out << "# penalty_a," << (c.penalty_a > 0.0 ? format_double(c.penalty_a) : "default") << '\n';
  out << "# max_evaluations," << c.max_evaluations << '\n';
  out << "# status," << csv_escape(report.status) << '\n';
  out << "# truncated," << (report.truncated ? 1 : 0) << '\n';
  out << vqe_csv_header() << '\n';
  for (const VqeRunRecord& rec : report.records) out << vqe_csv_row(rec) << '\n';
  const int total = static_cast<int>(report.records.size());
  out << "# succeeded," << report.succeeded << '\n';
  out << "# acc," << format_double(report.acc) << '\n';
  out << "# err," << format_double(report.err) << '\n';
  out << "# mean_gap," << format_double(report.mean_gap) << '\n';
  return out.str();
}

namespace {

std::string summary_table_markdown(const std::vector<AccuracyReport>& reports) {
  std::ostringstream out;
  out << "| Encoding | Optimizer | Layers | Iterations | No Devn. | With Devn | Acc | Err | "
         "Status |\n";
  out << "| --- | --- | --- | --- | --- | --- | --- | --- | --- |\n";
  for (const AccuracyReport& report : reports) {
    const ExperimentConfig& c = report.config;
    const int total = static_cast<int>(report.records.size());
    out << "| " << family_name(c.encoding) << " | " << optimizer_name(c.optimizer) << " | "
        << c.layers << " | " << c.runs << " | ";
    if (report.status == "ok" && total > 0) {
      out << report.succeeded << " | " << (total - report.succeeded) << " | "
          << format_percent(report.succeeded, total) << " | "
          << format_percent(total - report.succeeded, total) << " | ok |\n";
    } else {
      out << "- | - | - | - | " << report.status << " |\n";
    }
  }
  return out.str();
}

}  // namespace

std::string report_markdown(const AccuracyReport& report) {
  const ExperimentConfig& c = report.config;
  std::ostringstream out;
  out << "## " << family_name(c.encoding) << " / " << optimizer_name(c.optimizer) << " / layers "
      << c.layers << " / " << mode_name(c.mode) << "\n\n";
  out << "- cities " << c.cities << ", vehicles " << c.vehicles << ", qubits " << c.qubits()
      << '\n';
  out << "- runs " << c.runs << ", master seed " << c.master_seed << ", budget "
      << c.max_evaluations << '\n';
  out << "- mean gap " << format_double(report.mean_gap) << '\n';
  out << '\n' << summary_table_markdown({report});
  return out.str();
}

std::string summary_csv(const std::vector<AccuracyReport>& reports) {
  std::ostringstream out;
  out << "encoding,optimizer,layers,iterations,no_devn,with_devn,acc,err,status\n";
  for (const AccuracyReport& report : reports) {
    const ExperimentConfig& c = report.config;
    const int total = static_cast<int>(report.records.size());
    out << family_name(c.encoding) << ',' << optimizer_name(c.optimizer) << ',' << c.layers
        << ',' << c.runs << ',';
    if (report.status == "ok" && total > 0) {
      out << report.succeeded << ',' << (total - report.succeeded) << ','
          << format_double(report.acc) << ',' << format_double(report.err) << ",ok\n";
    } else {
      out << ",,,," << csv_escape(report.status) << '\n';
    }
  }
  return out.str();
}

std::string summary_markdown(const std::vector<AccuracyReport>& reports) {
  std::ostringstream out;
  out << "# Accuracy summary\n\n" << summary_table_markdown(reports);
  return out.str();
}

}  // namespace qroute
