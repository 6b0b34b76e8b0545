#include "qroute/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qroute/rng.hpp"

namespace qroute {

std::string optimizer_name(OptimizerFamily family) {
  switch (family) {
    case OptimizerFamily::Cobyla: return "cobyla";
    case OptimizerFamily::LbfgsFd: return "lbfgs";
    case OptimizerFamily::Slsqp: return "slsqp";
  }
  throw std::invalid_argument("unknown optimizer family");
}

OptimizerFamily optimizer_from_name(const std::string& name) {
  if (name == "cobyla") return OptimizerFamily::Cobyla;
  if (name == "lbfgs") return OptimizerFamily::LbfgsFd;
  if (name == "slsqp") return OptimizerFamily::Slsqp;
  throw std::invalid_argument("unknown optimizer family: " + name);
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// Objective wrapper enforcing the evaluation budget and tracking the best
/// point seen; a non-finite value poisons the search permanently.
struct Budget {
  const Objective* objective;
  int limit;
  int used = 0;
  bool failed = false;
  bool has_best = false;
  double best_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> best_x;

  bool eval(const std::vector<double>& x, double& out) {
    if (failed || used >= limit) return false;
    ++used;
    const double v = (*objective)(std::span<const double>(x));
    if (!std::isfinite(v)) {
      failed = true;
      return false;
    }
    if (!has_best || v < best_value) {
      has_best = true;
      best_value = v;
      best_x = x;
    }
    out = v;
    return true;
  }
};

/// In-place Gaussian elimination with partial pivoting; false when singular.
bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
    if (std::abs(a[pivot * n + col]) < 1e-14) return false;
    if (pivot != col) {
      for (int k = col; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(b[col], b[pivot]);
    }
    for (int row = col + 1; row < n; ++row) {
      const double factor = a[row * n + col] / a[col * n + col];
      if (factor == 0.0) continue;
      for (int k = col; k < n; ++k) a[row * n + k] -= factor * a[col * n + k];
      b[row] -= factor * b[col];
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    double sum = b[row];
    for (int k = row + 1; k < n; ++k) sum -= a[row * n + k] * b[k];
    b[row] = sum / a[row * n + row];
  }
  return true;
}

/// Derivative-free trust region: keep n+1 points, fit a linear interpolation
/// model around the best one, step against its gradient at the current
/// radius, and shrink the radius when such steps stop paying off.
void run_cobyla(Budget& budget, const std::vector<double>& x0, const OptimizerSpec& spec) {
  const int n = static_cast<int>(x0.size());
  double rho = spec.initial_step;
  // Objective changes scale with rho^2 near a minimum, so a step tolerance of
  // sqrt(tolerance) already resolves the requested objective change.
  const double rho_floor =
      std::max({spec.tolerance, std::sqrt(spec.tolerance) * 0.1, 1e-12});

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(static_cast<std::size_t>(n) + 1, 0.0);
  if (!budget.eval(pts[0], fv[0])) return;
  for (int i = 1; i <= n; ++i) {
    pts[i][i - 1] += rho;
    if (!budget.eval(pts[i], fv[i])) return;
  }

  // Cap one descent so slow plateau crawls cannot starve the restarts.
  const int descent_cap = budget.used + 25 * n + 1;
  int axis = 0;
  std::vector<double> mat(static_cast<std::size_t>(n) * n);
  std::vector<double> grad(static_cast<std::size_t>(n));
  while (rho > rho_floor && budget.used < descent_cap) {
    int ib = 0;
    for (int i = 1; i <= n; ++i)
      if (fv[i] < fv[ib]) ib = i;

    int row = 0;
    for (int i = 0; i <= n; ++i) {
      if (i == ib) continue;
      for (int k = 0; k < n; ++k) mat[row * n + k] = pts[i][k] - pts[ib][k];
      grad[row] = fv[i] - fv[ib];
      ++row;
    }
    const bool fit_ok = solve_linear(mat, grad, n);
    const double gnorm = fit_ok ? norm(grad) : 0.0;

    bool progressed = false;
    if (fit_ok && gnorm > 1e-14) {
      const std::vector<double> base = pts[ib];
      const auto try_scale = [&](double scale, std::vector<double>& out_x, double& out_f) {
        out_x = base;
        for (int k = 0; k < n; ++k) out_x[k] -= scale * rho * grad[k] / gnorm;
        return budget.eval(out_x, out_f);
      };
      std::vector<double> xn;
      double fn;
      if (!try_scale(1.0, xn, fn)) return;
      if (fn < fv[ib]) {
        // The model direction pays off: extend the ray while it keeps helping.
        std::vector<double> xe;
        double fe;
        for (double scale = 2.0; scale <= 8.0; scale *= 2.0) {
          if (!try_scale(scale, xe, fe)) return;
          if (fe >= fn) break;
          xn = std::move(xe);
          fn = fe;
        }
      }
      int iw = 0;
      for (int i = 1; i <= n; ++i)
        if (fv[i] > fv[iw]) iw = i;
      if (fn < fv[ib]) {
        pts[iw] = std::move(xn);
        fv[iw] = fn;
        progressed = true;
      } else if (fn < fv[iw]) {
        pts[iw] = std::move(xn);
        fv[iw] = fn;
      }
    }
    if (progressed) continue;

    int ifar = ib == 0 ? 1 : 0;
    double dmax = 0.0;
    for (int i = 0; i <= n; ++i) {
      if (i == ib) continue;
      double dist2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double dk = pts[i][k] - pts[ib][k];
        dist2 += dk * dk;
      }
      if (dist2 > dmax) {
        dmax = dist2;
        ifar = i;
      }
    }
    if (!fit_ok || dmax > 4.0 * rho * rho) {
      pts[ifar] = pts[ib];
      pts[ifar][axis] += rho;
      axis = (axis + 1) % n;
      if (!budget.eval(pts[ifar], fv[ifar])) return;
    } else {
      rho *= 0.5;
    }
  }
}

bool forward_gradient(Budget& budget, const std::vector<double>& x, double fx, double step,
                      std::vector<double>& g) {
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    double fp;
    if (!budget.eval(probe, fp)) return false;
    g[i] = (fp - fx) / step;
    probe[i] = x[i];
  }
  return true;
}

/// Limited-memory BFGS on forward-difference gradients with a backtracking
/// Armijo line search.
void run_lbfgs(Budget& budget, const std::vector<double>& x0, const OptimizerSpec& spec) {
  const int n = static_cast<int>(x0.size());
  const double step = std::max(spec.fd_step, 1e-10);
  constexpr int kHistory = 8;

  std::vector<double> x = x0;
  double fx;
  if (!budget.eval(x, fx)) return;
  std::vector<double> g(n);
  if (!forward_gradient(budget, x, fx, step, g)) return;

  std::deque<std::pair<std::vector<double>, std::vector<double>>> hist;  // (s, y)
  std::vector<double> d(n), alpha(kHistory);
  int stall = 0;
  for (;;) {
    // Two-loop recursion for d = -H g.
    d = g;
    int idx = 0;
    for (auto it = hist.rbegin(); it != hist.rend(); ++it, ++idx) {
      const auto& [s, y] = *it;
      const double a = dot(s, d) / dot(s, y);
      alpha[idx] = a;
      for (int k = 0; k < n; ++k) d[k] -= a * y[k];
    }
    if (!hist.empty()) {
      const auto& [s, y] = hist.back();
      const double scale = dot(s, y) / dot(y, y);
      for (int k = 0; k < n; ++k) d[k] *= scale;
    }
    for (auto it = hist.begin(); it != hist.end(); ++it) {
      const auto& [s, y] = *it;
      const double b = dot(y, d) / dot(s, y);
      const double a = alpha[--idx];
      for (int k = 0; k < n; ++k) d[k] += (a - b) * s[k];
    }
    for (int k = 0; k < n; ++k) d[k] = -d[k];

    double dg = dot(d, g);
    if (!(dg < 0.0)) {
      for (int k = 0; k < n; ++k) d[k] = -g[k];
      dg = -dot(g, g);
    }
    if (norm(g) <= 1e-10) break;

    double t = hist.empty() ? std::min(1.0, 1.0 / std::max(1.0, norm(g))) : 1.0;
    std::vector<double> xn(n);
    double fn = fx;
    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries) {
      for (int k = 0; k < n; ++k) xn[k] = x[k] + t * d[k];
      if (!budget.eval(xn, fn)) return;
      if (fn <= fx + 1e-4 * t * dg) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> gn(n);
    if (!forward_gradient(budget, xn, fn, step, gn)) return;
    std::vector<double> s(n), y(n);
    for (int k = 0; k < n; ++k) {
      s[k] = xn[k] - x[k];
      y[k] = gn[k] - g[k];
    }
    if (dot(s, y) > 1e-12 * norm(s) * norm(y)) {
      hist.emplace_back(std::move(s), std::move(y));
      if (static_cast<int>(hist.size()) > kHistory) hist.pop_front();
    }

    const double delta = fx - fn;
    x = std::move(xn);
    fx = fn;
    g = std::move(gn);
    if (delta <= spec.tolerance * (1.0 + std::abs(fn))) {
      if (++stall >= 2) break;
    } else {
      stall = 0;
    }
  }
}

/// In-place Cholesky solve of B d = rhs; false when B is not positive definite.
bool cholesky_solve(std::vector<double> b, std::vector<double>& rhs, int n) {
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= i; ++k) {
      double sum = b[i * n + k];
      for (int t = 0; t < k; ++t) sum -= b[i * n + t] * b[k * n + t];
      if (i == k) {
        if (sum <= 1e-14) return false;
        b[i * n + i] = std::sqrt(sum);
      } else {
        b[i * n + k] = sum / b[k * n + k];
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    double sum = rhs[i];
    for (int k = 0; k < i; ++k) sum -= b[i * n + k] * rhs[k];
    rhs[i] = sum / b[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double sum = rhs[i];
    for (int k = i + 1; k < n; ++k) sum -= b[k * n + i] * rhs[k];
    rhs[i] = sum / b[i * n + i];
  }
  return true;
}

/// Full-memory damped BFGS with a quadratic-interpolation line search on
/// central-difference gradients: the unconstrained quadratic subproblem step
/// of a sequential quadratic programming method.
void run_slsqp(Budget& budget, const std::vector<double>& x0, const OptimizerSpec& spec) {
  const int n = static_cast<int>(x0.size());
  const double step = std::max(spec.fd_step, 1e-10);

  std::vector<double> x = x0;
  double fx;
  if (!budget.eval(x, fx)) return;
  std::vector<double> g(n);
  if (!forward_gradient(budget, x, fx, step, g)) return;

  std::vector<double> b(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) b[i * n + i] = 1.0;

  int stall = 0;
  for (;;) {
    if (norm(g) <= 1e-10) break;
    std::vector<double> d(n);
    for (int k = 0; k < n; ++k) d[k] = -g[k];
    if (!cholesky_solve(b, d, n)) {
      std::fill(b.begin(), b.end(), 0.0);
      for (int i = 0; i < n; ++i) b[i * n + i] = 1.0;
      for (int k = 0; k < n; ++k) d[k] = -g[k];
    }
    double dg = dot(d, g);
    if (!(dg < 0.0)) {
      for (int k = 0; k < n; ++k) d[k] = -g[k];
      dg = -dot(g, g);
    }

    double t = 1.0;
    std::vector<double> xn(n);
    double fn = fx;
    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries) {
      for (int k = 0; k < n; ++k) xn[k] = x[k] + t * d[k];
      if (!budget.eval(xn, fn)) return;
      if (fn <= fx + 1e-4 * t * dg) {
        accepted = true;
        break;
      }
      // Minimizer of the quadratic through f(x), f'(x) and f(x + t d).
      const double denom = fn - fx - t * dg;
      double tq = denom > 0.0 ? -0.5 * dg * t * t / denom : 0.5 * t;
      t = std::clamp(tq, 0.1 * t, 0.5 * t);
    }
    if (!accepted) break;

    std::vector<double> gn(n);
    if (!forward_gradient(budget, xn, fn, step, gn)) return;

    std::vector<double> s(n), y(n), bs(n);
    for (int k = 0; k < n; ++k) {
      s[k] = xn[k] - x[k];
      y[k] = gn[k] - g[k];
    }
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += b[i * n + k] * s[k];
      bs[i] = sum;
    }
    const double sbs = dot(s, bs);
    double sy = dot(s, y);
    if (sbs > 1e-14) {
      if (sy < 0.2 * sbs) {
        // Powell damping keeps the update positive definite.
        const double theta = 0.8 * sbs / (sbs - sy);
        for (int k = 0; k < n; ++k) y[k] = theta * y[k] + (1.0 - theta) * bs[k];
        sy = dot(s, y);
      }
      if (sy > 1e-14)
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k)
            b[i * n + k] += y[i] * y[k] / sy - bs[i] * bs[k] / sbs;
    }

    const double delta = fx - fn;
    x = std::move(xn);
    fx = fn;
    g = std::move(gn);
    if (delta <= spec.tolerance * (1.0 + std::abs(fn))) {
      if (++stall >= 2) break;
    } else {
      stall = 0;
    }
  }
}

}  // namespace

OptimizeResult minimize(const Objective& objective, std::span<const double> x0,
                        const OptimizerSpec& spec) {
  if (x0.empty()) throw std::invalid_argument("empty parameter vector");
  for (const double v : x0)
    if (!std::isfinite(v)) throw std::invalid_argument("starting point must be finite");
  if (spec.max_evaluations < 1) throw std::invalid_argument("evaluation budget must be positive");
  if (!(spec.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  if (!(spec.initial_step > 0.0) || !(spec.fd_step > 0.0))
    throw std::invalid_argument("steps must be positive");

  Budget budget{&objective, spec.max_evaluations};
  const std::vector<double> start(x0.begin(), x0.end());
  const int n = static_cast<int>(start.size());
  const CounterRng restarts(hash_combine(spec.restart_key, 0x726573746172ull));
  std::vector<double> point = start;
  int descents = 0;
  while (budget.used < spec.max_evaluations && !budget.failed) {
    switch (spec.family) {
      case OptimizerFamily::Cobyla: run_cobyla(budget, point, spec); break;
      case OptimizerFamily::LbfgsFd: run_lbfgs(budget, point, spec); break;
      case OptimizerFamily::Slsqp: run_slsqp(budget, point, spec); break;
    }
    for (int k = 0; k < n; ++k)
      point[k] = start[k] + restarts.uniform(static_cast<std::uint64_t>(descents) * n + k, 0.0,
                                             2.0 * std::numbers::pi);
    ++descents;
  }

  OptimizeResult result;
  result.evaluations = budget.used;
  result.failed = budget.failed;
  result.best_params = budget.has_best ? budget.best_x : start;
  result.best_value = budget.best_value;
  char note[96];
  if (budget.failed) {
    result.message = "objective returned a non-finite value";
  } else {
    std::snprintf(note, sizeof(note), "ran %d descent%s over %d evaluations", descents,
                  descents == 1 ? "" : "s", budget.used);
    result.message = note;
  }
  return result;
}

}  // namespace qroute
