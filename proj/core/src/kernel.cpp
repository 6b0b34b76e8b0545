#include "qroute/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace qroute {

void KernelMatrix::set(int i, int j, double value) {
  k[static_cast<std::size_t>(i) * m + j] = value;
  k[static_cast<std::size_t>(j) * m + i] = value;
}

double kernel_entry(const CircuitTemplate& encoder, std::span<const double> x,
                    std::span<const double> z) {
  return overlap_probability(encoder.bind(x), encoder.bind(z), encoder.n_qubits);
}

KernelMatrix gram_matrix(const CircuitTemplate& encoder,
                         const std::vector<std::vector<double>>& data, int threads) {
  const int m = static_cast<int>(data.size());
  if (m < 1) throw std::invalid_argument("gram matrix needs at least one sample");
  KernelMatrix gram;
  gram.m = m;
  gram.k.assign(static_cast<std::size_t>(m) * m, 0.0);

  std::vector<std::pair<int, int>> entries;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) entries.emplace_back(i, j);

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(entries.size())));
  const auto fill = [&](int worker) {
    for (std::size_t t = worker; t < entries.size(); t += workers) {
      const auto [i, j] = entries[t];
      gram.set(i, j, i == j ? 1.0 : kernel_entry(encoder, data[i], data[j]));
    }
  };
  if (workers == 1) {
    fill(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(fill, w);
    for (std::thread& t : pool) t.join();
  }
  return gram;
}

LsSvmSolution solve_ls_svm(const KernelMatrix& gram, const std::vector<double>& y,
                           double gamma) {
  const int m = gram.m;
  if (m < 1) throw std::invalid_argument("ls-svm needs at least one sample");
  if (static_cast<int>(y.size()) != m)
    throw std::invalid_argument("label count must match the gram matrix");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be positive and finite");

  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  for (int i = 0; i < m; ++i) {
    f(0, i + 1) = 1.0;
    f(i + 1, 0) = 1.0;
    rhs(i + 1) = y[i];
    for (int j = 0; j < m; ++j) f(i + 1, j + 1) = gram.at(i, j);
    f(i + 1, i + 1) += 1.0 / gamma;
  }

  const Eigen::VectorXd u = f.partialPivLu().solve(rhs);
  const double rhs_norm = std::max(rhs.norm(), 1e-300);
  const double residual = (f * u - rhs).norm() / rhs_norm;

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(f);
  const double smin = svd.singularValues().minCoeff();
  const double cond = smin > 0.0 ? svd.singularValues().maxCoeff() / smin
                                 : std::numeric_limits<double>::infinity();
  if (!u.allFinite() || residual > 1e-6 || cond > 1e14) {
    std::ostringstream msg;
    msg << "ls-svm system is numerically singular (condition ~" << cond << ", residual "
        << residual << ")";
    throw std::runtime_error(msg.str());
  }

  LsSvmSolution solution;
  solution.bias = u(0);
  solution.alpha.assign(u.data() + 1, u.data() + 1 + m);
  solution.residual = residual;
  return solution;
}

double decision_value(const CircuitTemplate& encoder,
                      const std::vector<std::vector<double>>& train_x,
                      const LsSvmSolution& solution, std::span<const double> x) {
  if (train_x.size() != solution.alpha.size())
    throw std::invalid_argument("training set and alpha sizes differ");
  double value = solution.bias;
  for (std::size_t i = 0; i < train_x.size(); ++i)
    value += solution.alpha[i] * kernel_entry(encoder, train_x[i], x);
  return value;
}

Dataset parse_dataset_csv(const std::string& text) {
  Dataset data;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> fields;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        fields.push_back(v);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad dataset value on line " + std::to_string(line_no) +
                                    ": " + cell);
      }
    }
    if (fields.size() < 2)
      throw std::invalid_argument("dataset rows need at least one feature and a label (line " +
                                  std::to_string(line_no) + ")");
    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw std::invalid_argument("ragged dataset row on line " + std::to_string(line_no));
    const double label = fields.back();
    if (label != 1.0 && label != -1.0)
      throw std::invalid_argument("labels must be +1 or -1 (line " + std::to_string(line_no) +
                                  ")");
    fields.pop_back();
    data.x.push_back(std::move(fields));
    data.y.push_back(label);
  }
  if (data.x.empty()) throw std::invalid_argument("dataset is empty");
  return data;
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_csv(buf.str());
}

std::string gram_csv(const KernelMatrix& gram) {
  std::ostringstream out;
  char buf[64];
  for (int i = 0; i < gram.m; ++i) {
    for (int j = 0; j < gram.m; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", gram.at(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qroute
