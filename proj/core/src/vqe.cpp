#include "qroute/vqe.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qroute/rng.hpp"

namespace qroute {

namespace {

constexpr std::uint64_t kParamStream = 0x70617261;  // tags the init-param draws

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace

double evaluate_cost(const CircuitTemplate& circuit, std::span<const double> params,
                     const IsingModel& model) {
  if (circuit.n_qubits != model.m)
    throw std::invalid_argument("circuit and model register sizes differ");
  Statevector state(circuit.n_qubits);
  state.apply(circuit.bind(params));
  return expectation(state, DiagonalObservable(model));
}

std::vector<double> finite_diff_gradient(const Objective& objective,
                                         std::span<const double> x, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double fp = objective(probe);
    probe[i] = x[i] - step;
    const double fm = objective(probe);
    probe[i] = x[i];
    grad[i] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

VqeRunRecord run_vqe(const CircuitTemplate& circuit, const IsingModel& model,
                     double oracle_min, const VqeOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::uint64_t seed =
      hash_combine(options.master_seed, static_cast<std::uint64_t>(options.run_index));
  const CounterRng rng(seed, kParamStream);
  std::vector<double> initial(static_cast<std::size_t>(circuit.param_count));
  for (std::size_t i = 0; i < initial.size(); ++i)
    initial[i] = rng.uniform(i, 0.0, 2.0 * std::numbers::pi);

  const Objective objective = [&](std::span<const double> params) {
    return evaluate_cost(circuit, params, model);
  };
  OptimizerSpec optimizer = options.optimizer;
  optimizer.restart_key = seed;
  const OptimizeResult opt = minimize(objective, initial, optimizer);

  VqeRunRecord record;
  record.run_index = options.run_index;
  record.seed = seed;
  record.encoding = circuit.family;
  record.layers = circuit.layers;
  record.optimizer = options.optimizer.family;
  record.initial_params = initial;
  record.final_params = opt.best_params;
  record.final_expectation = opt.best_value;
  record.evaluations_used = opt.evaluations;
  record.failed = opt.failed;

  Statevector state(circuit.n_qubits);
  state.apply(circuit.bind(opt.best_params));
  record.argmax_bits = argmax_bitstring(state);
  record.argmax_energy =
      ising_energy(model, assignment_from_bits(record.argmax_bits, model.m));
  record.oracle_min = oracle_min;
  record.oracle_gap = record.argmax_energy - oracle_min;
  record.reached_minimum = !opt.failed && std::abs(record.oracle_gap) <= 1e-6;

  record.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

std::string vqe_csv_header() {
  return "run_index,seed,encoding,layers,optimizer,final_expectation,argmax_energy,"
         "oracle_min,reached_minimum,evaluations_used";
}

std::string vqe_csv_row(const VqeRunRecord& record) {
  std::ostringstream out;
  out << record.run_index << ',' << record.seed << ',' << family_name(record.encoding) << ','
      << record.layers << ',' << optimizer_name(record.optimizer) << ','
      << format_double(record.final_expectation) << ',' << format_double(record.argmax_energy)
      << ',' << format_double(record.oracle_min) << ',' << (record.reached_minimum ? 1 : 0)
      << ',' << record.evaluations_used;
  return out.str();
}

}  // namespace qroute
