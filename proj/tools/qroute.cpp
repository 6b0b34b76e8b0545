#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qroute/experiment.hpp"
#include "qroute/kernel.hpp"

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  return cfg;
}

/// Fills a value from the config file unless the flag was given on the
/// command line (flags override the file).
template <typename T>
void merge_config(const CLI::App& cmd, const json& cfg, const std::string& flag,
                  const std::string& key, T& value) {
  if (cmd.count(flag) > 0) return;
  const auto it = cfg.find(key);
  if (it == cfg.end()) return;
  try {
    value = it->get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config key '" + key + "' has the wrong type");
  }
}

struct CommonArgs {
  int cities = 3;
  int vehicles = 2;
  std::string encoding = "angle";
  int layers = 1;
  std::string optimizer = "cobyla";
  int runs = 50;
  std::uint64_t seed = 0;
  std::string hamiltonian = "fixed";
  double penalty_a = 0.0;
  std::string out;
  std::string config;
  int threads = 1;
  int budget = 5000;
  double tolerance = 1e-6;
  double time_limit_s = 1800.0;
  bool allow_large_amplitude = false;
};

void add_instance_flags(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("--cities", args.cities, "number of cities including the depot");
  cmd.add_option("--vehicles", args.vehicles, "vehicles leaving / entering the depot");
  cmd.add_option("--seed", args.seed, "master seed for all pseudo-random draws");
  cmd.add_option("--penalty-a", args.penalty_a,
                 "constraint penalty weight (0 selects n * (1 + max weight))");
  cmd.add_option("--config", args.config, "JSON file with defaults; flags override it");
}

void add_budget_flags(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("--runs", args.runs, "independent restarts per cell");
  cmd.add_option("--hamiltonian", args.hamiltonian,
                 "fixed (one instance for all runs) | variable (fresh instance per run)");
  cmd.add_option("--threads", args.threads, "worker threads (results are thread-count independent)");
  cmd.add_option("--budget", args.budget, "objective evaluation budget per run");
  cmd.add_option("--tolerance", args.tolerance, "optimizer convergence tolerance");
  cmd.add_option("--time-limit", args.time_limit_s, "wall-clock limit per cell in seconds");
  cmd.add_flag("--allow-large-amplitude", args.allow_large_amplitude,
               "permit amplitude encoding above 6 qubits");
}

void add_run_flags(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("--encoding", args.encoding,
                 "amplitude | angle | higher-order | iqp | qaoa");
  cmd.add_option("--layers", args.layers, "ansatz repetitions");
  cmd.add_option("--optimizer", args.optimizer, "cobyla | lbfgs | slsqp");
  add_budget_flags(cmd, args);
}

/// Applies config-file values to every field whose flag the subcommand knows
/// about and the user did not pass.
void merge_common(const CLI::App& cmd, CommonArgs& args) {
  if (args.config.empty()) return;
  const json cfg = load_config(args.config);
  const auto merge = [&](const std::string& flag, const std::string& key, auto& value) {
    if (cmd.get_option_no_throw(flag) == nullptr) return;
    merge_config(cmd, cfg, flag, key, value);
  };
  merge("--cities", "cities", args.cities);
  merge("--vehicles", "vehicles", args.vehicles);
  if (cfg.contains("layers") && cfg.at("layers").is_number_integer())
    merge("--layers", "layers", args.layers);
  merge("--runs", "runs", args.runs);
  merge("--seed", "seed", args.seed);
  merge("--hamiltonian", "hamiltonian", args.hamiltonian);
  merge("--penalty-a", "penalty_a", args.penalty_a);
  merge("--out", "out", args.out);
  merge("--threads", "threads", args.threads);
  merge("--budget", "budget", args.budget);
  merge("--tolerance", "tolerance", args.tolerance);
  merge("--time-limit", "time_limit_s", args.time_limit_s);
  merge("--allow-large-amplitude", "allow_large_amplitude", args.allow_large_amplitude);
  const CLI::Option* encoding_opt = cmd.get_option_no_throw("--encoding");
  if (encoding_opt != nullptr && encoding_opt->count() == 0 && cfg.contains("encoding") &&
      cfg.at("encoding").is_string())
    args.encoding = cfg.at("encoding").get<std::string>();
  const CLI::Option* optimizer_opt = cmd.get_option_no_throw("--optimizer");
  if (optimizer_opt != nullptr && optimizer_opt->count() == 0 && cfg.contains("optimizer") &&
      cfg.at("optimizer").is_string())
    args.optimizer = cfg.at("optimizer").get<std::string>();
}

qroute::ExperimentConfig to_experiment_config(const CommonArgs& args) {
  qroute::ExperimentConfig config;
  config.cities = args.cities;
  config.vehicles = args.vehicles;
  config.encoding = qroute::family_from_name(args.encoding);
  config.layers = args.layers;
  config.optimizer = qroute::optimizer_from_name(args.optimizer);
  config.mode = qroute::mode_from_name(args.hamiltonian);
  config.runs = args.runs;
  config.master_seed = args.seed;
  config.penalty_a = args.penalty_a;
  config.max_evaluations = args.budget;
  config.tolerance = args.tolerance;
  config.threads = args.threads;
  config.time_limit_s = args.time_limit_s;
  config.allow_large_amplitude = args.allow_large_amplitude;
  return config;
}

qroute::VrpInstance resolve_instance(const CommonArgs& args, const std::string& instance_path) {
  if (!instance_path.empty()) {
    qroute::VrpInstance inst = qroute::load_instance_json(instance_path);
    if (args.penalty_a > 0.0) inst.penalty_a = args.penalty_a;
    return inst;
  }
  qroute::ExperimentConfig config = to_experiment_config(args);
  config.mode = qroute::HamiltonianMode::Fixed;
  return qroute::draw_instance(config, 0);
}

std::string bit_string(std::uint64_t z, int m) {
  std::string bits(static_cast<std::size_t>(m), '0');
  for (int q = 0; q < m; ++q)
    if ((z >> q) & 1u) bits[static_cast<std::size_t>(q)] = '1';
  return bits;
}

int cmd_compile(const CLI::App& cmd, CommonArgs args, const std::string& instance_path) {
  merge_common(cmd, args);
  const qroute::VrpInstance inst = resolve_instance(args, instance_path);
  const qroute::IsingModel model = qroute::qubo_to_ising(qroute::compile_qubo(inst));
  write_text(args.out, qroute::export_ising_text(model));
  return 0;
}

int cmd_oracle(const CLI::App& cmd, CommonArgs args, const std::string& instance_path,
               const std::string& ising_path) {
  merge_common(cmd, args);
  std::optional<qroute::VrpInstance> inst;
  qroute::IsingModel model;
  if (!ising_path.empty()) {
    model = qroute::load_ising_text(ising_path);
  } else {
    inst = resolve_instance(args, instance_path);
    model = qroute::qubo_to_ising(qroute::compile_qubo(*inst));
  }
  const qroute::OracleResult oracle = qroute::brute_force_minimum(model);

  std::ostringstream out;
  char buf[64];
  out << "qubits: " << model.m << '\n';
  std::snprintf(buf, sizeof(buf), "%.12g", oracle.min_energy);
  out << "minimum: " << buf << '\n';
  out << "argmin count: " << oracle.argmin.size() << '\n';
  for (const std::uint64_t z : oracle.argmin) {
    out << "argmin: z=" << z << " bits=" << bit_string(z, model.m);
    if (inst) {
      const qroute::Assignment edges = qroute::assignment_from_bits(z, model.m);
      if (qroute::is_feasible(*inst, edges)) {
        std::snprintf(buf, sizeof(buf), "%.12g", qroute::route_cost(*inst, edges));
        out << " feasible cost=" << buf;
      } else {
        out << " infeasible";
      }
    }
    out << '\n';
  }
  write_text(args.out, out.str());
  return 0;
}

int cmd_vqe(const CLI::App& cmd, CommonArgs args) {
  merge_common(cmd, args);
  const qroute::AccuracyReport report = qroute::run_experiment(to_experiment_config(args));
  if (args.out.empty()) {
    std::cout << qroute::report_csv(report);
  } else {
    write_text(args.out, qroute::report_csv(report));
    std::cout << qroute::report_markdown(report);
  }
  return 0;
}

int cmd_sweep(const CLI::App& cmd, CommonArgs args, std::vector<std::string> encodings,
              std::vector<std::string> optimizers, std::vector<int> layer_counts,
              const std::string& report_dir) {
  if (!args.config.empty()) {
    const json cfg = load_config(args.config);
    merge_common(cmd, args);
    if (cmd.count("--encoding") == 0 && cfg.contains("encodings"))
      encodings = cfg.at("encodings").get<std::vector<std::string>>();
    if (cmd.count("--optimizer") == 0 && cfg.contains("optimizers"))
      optimizers = cfg.at("optimizers").get<std::vector<std::string>>();
    if (cmd.count("--layers") == 0 && cfg.contains("layers"))
      layer_counts = cfg.at("layers").get<std::vector<int>>();
  }

  std::vector<qroute::ExperimentConfig> cells;
  for (const std::string& encoding : encodings) {
    const qroute::EncodingFamily family = qroute::family_from_name(encoding);
    for (const std::string& optimizer : optimizers) {
      bool amplitude_emitted = false;
      for (const int layers : layer_counts) {
        // Amplitude ignores the layer setting, so one cell per optimizer.
        if (family == qroute::EncodingFamily::Amplitude && amplitude_emitted) continue;
        if (family == qroute::EncodingFamily::Amplitude) amplitude_emitted = true;
        qroute::ExperimentConfig cell = to_experiment_config(args);
        cell.encoding = family;
        cell.layers = layers;
        cell.optimizer = qroute::optimizer_from_name(optimizer);
        cells.push_back(cell);
      }
    }
  }

  const std::vector<qroute::AccuracyReport> reports = qroute::sweep(cells);
  if (!report_dir.empty()) {
    std::filesystem::create_directories(report_dir);
    for (const qroute::AccuracyReport& report : reports) {
      const qroute::ExperimentConfig& c = report.config;
      const std::string name = qroute::family_name(c.encoding) + "_" +
                               qroute::optimizer_name(c.optimizer) + "_L" +
                               std::to_string(c.layers) + ".csv";
      write_text(report_dir + "/" + name, qroute::report_csv(report));
    }
  }
  if (args.out.empty()) {
    std::cout << qroute::summary_csv(reports);
  } else {
    write_text(args.out, qroute::summary_csv(reports));
    std::cout << qroute::summary_markdown(reports);
  }
  return 0;
}

int cmd_kernel(const CLI::App& cmd, CommonArgs args, const std::string& data_path, int qubits,
               double gamma) {
  merge_common(cmd, args);
  if (data_path.empty()) throw std::invalid_argument("kernel requires --data");
  const qroute::Dataset dataset = qroute::load_dataset_csv(data_path);
  const int features = static_cast<int>(dataset.x.front().size());
  const qroute::EncodingFamily family = qroute::family_from_name(args.encoding);
  if (family == qroute::EncodingFamily::QaoaCostMixer)
    throw std::invalid_argument("qaoa is not a data encoding; pick amplitude, angle, "
                                "higher-order, or iqp");

  std::vector<std::vector<double>> points = dataset.x;
  if (family == qroute::EncodingFamily::Amplitude) {
    int n = 0;
    while ((1 << n) < features) ++n;
    if ((1 << n) != features)
      throw std::invalid_argument("amplitude encoding needs a power-of-two feature count");
    if (qubits == 0) qubits = std::max(1, n);
    if ((1 << qubits) != features)
      throw std::invalid_argument("--qubits disagrees with the feature count");
    for (std::vector<double>& row : points) {
      double norm = 0.0;
      for (const double v : row) norm += v * v;
      norm = std::sqrt(norm);
      if (!(norm > 0.0))
        throw std::invalid_argument("amplitude encoding cannot embed an all-zero row");
      for (double& v : row) v /= norm;
      row = qroute::amplitude_angles(row);
    }
  } else {
    if (qubits == 0) {
      if (features % args.layers != 0)
        throw std::invalid_argument("feature count is not a multiple of --layers");
      qubits = features / args.layers;
    }
    if (qubits * args.layers != features)
      throw std::invalid_argument("encoding expects layers * qubits feature values per row");
  }

  const qroute::CircuitTemplate encoder = qroute::build_encoding(
      family, qubits, args.layers, nullptr, args.allow_large_amplitude);
  const qroute::KernelMatrix gram = qroute::gram_matrix(encoder, points, args.threads);
  const qroute::LsSvmSolution solution = qroute::solve_ls_svm(gram, dataset.y, gamma);

  int correct = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double value = qroute::decision_value(encoder, points, solution, points[i]);
    if ((value >= 0.0 ? 1.0 : -1.0) == dataset.y[i]) ++correct;
  }

  char buf[64];
  std::cout << "examples: " << gram.m << ", features: " << features << ", qubits: " << qubits
            << ", encoding: " << qroute::family_name(family) << '\n';
  std::snprintf(buf, sizeof(buf), "%.12g", solution.bias);
  std::cout << "bias: " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.3g", solution.residual);
  std::cout << "residual: " << buf << '\n';
  std::cout << "training accuracy: " << correct << "/" << gram.m << '\n';
  if (!args.out.empty()) write_text(args.out, qroute::gram_csv(gram));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VRP-to-Ising compiler with a statevector VQE / QSVM harness"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string instance_path;
  std::string ising_path;
  std::string data_path;
  std::vector<std::string> encodings = {"amplitude", "angle", "higher-order", "iqp"};
  std::vector<std::string> optimizers = {"cobyla", "lbfgs", "slsqp"};
  std::vector<int> layer_counts = {1, 2};
  std::string report_dir;
  int qubits = 0;
  double gamma = 1e6;

  CLI::App* compile = app.add_subcommand("compile", "compile an instance to an Ising export");
  add_instance_flags(*compile, args);
  compile->add_option("--instance", instance_path, "instance JSON file (otherwise drawn from --seed)");
  compile->add_option("--out", args.out, "output file (stdout when omitted)");

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive minimum of a compiled model");
  add_instance_flags(*oracle, args);
  oracle->add_option("--instance", instance_path, "instance JSON file");
  oracle->add_option("--ising", ising_path, "previously exported Ising text file");
  oracle->add_option("--out", args.out, "output file (stdout when omitted)");

  CLI::App* vqe = app.add_subcommand("vqe", "run one experiment cell");
  add_instance_flags(*vqe, args);
  add_run_flags(*vqe, args);
  vqe->add_option("--out", args.out, "per-run CSV file (stdout when omitted)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a grid of experiment cells");
  add_instance_flags(*sweep_cmd, args);
  add_budget_flags(*sweep_cmd, args);
  sweep_cmd->add_option("--encoding", encodings, "encodings to sweep (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--optimizer", optimizers, "optimizers to sweep (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--layers", layer_counts, "layer counts to sweep (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--report-dir", report_dir, "directory for per-cell CSV reports");
  sweep_cmd->add_option("--out", args.out, "summary CSV file (stdout when omitted)");

  CLI::App* kernel = app.add_subcommand("kernel", "Gram matrix and LS-SVM fit for a dataset");
  kernel->add_option("--data", data_path, "CSV of feature columns with a +1/-1 label last");
  kernel->add_option("--encoding", args.encoding, "amplitude | angle | higher-order | iqp");
  kernel->add_option("--layers", args.layers, "encoder repetitions");
  kernel->add_option("--qubits", qubits, "register width (inferred from the data when 0)");
  kernel->add_option("--gamma", gamma, "LS-SVM regularization");
  kernel->add_option("--threads", args.threads, "worker threads for the Gram matrix");
  kernel->add_option("--config", args.config, "JSON file with defaults; flags override it");
  kernel->add_flag("--allow-large-amplitude", args.allow_large_amplitude,
                   "permit amplitude encoding above 6 qubits");
  kernel->add_option("--out", args.out, "Gram matrix CSV file");

  try {
    app.parse(argc, argv);
    if (compile->parsed()) return cmd_compile(*compile, args, instance_path);
    if (oracle->parsed()) return cmd_oracle(*oracle, args, instance_path, ising_path);
    if (vqe->parsed()) return cmd_vqe(*vqe, args);
    if (sweep_cmd->parsed())
      return cmd_sweep(*sweep_cmd, args, encodings, optimizers, layer_counts, report_dir);
    if (kernel->parsed()) return cmd_kernel(*kernel, args, data_path, qubits, gamma);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
