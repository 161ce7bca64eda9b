#include "tenclass/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tenclass {

namespace {

double ipow(double x, int e) {
  double p = 1.0;
  for (int k = 0; k < e; ++k) p *= x;
  return p;
}

// Best lower bound over the principal subtensors spanned by the k largest
// coordinates of x; valid because rho(B_J) <= rho(B).
double truncated_lower(const Tensor& b, const Vector& x) {
  const Index n = b.dim();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return x[i] > x[j]; });
  double best = 0.0;
  for (Index k = 1; k <= n; ++k) {
    if (!(x[order[k - 1]] > 0.0)) break;
    std::vector<Index> idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(idx.begin(), idx.end());
    const IndexSet j(idx);
    const Vector xs = restrict_to(x, j);
    best = std::max(best, collatz_wielandt_bounds(principal_subtensor(b, j), xs).first);
  }
  return best;
}

struct PowerRun {
  Vector x;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

PowerRun power_iterate(const Tensor& b, double tol, int max_iter) {
  const Index n = b.dim();
  const int d = b.order() - 1;
  const double shift = max_abs(b);
  PowerRun run;
  run.x.assign(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= max_iter; ++it) {
    run.iterations = it;
    const Vector f = tenclass::apply(b, run.x);
    bool positive = true;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double xp = ipow(run.x[i], d);
      if (!(xp > 0.0)) {
        positive = false;
        break;
      }
      lo = std::min(lo, f[i] / xp);
      hi = std::max(hi, f[i] / xp);
    }
    if (positive) {
      run.lower = std::max(run.lower, lo);
      run.upper = std::min(run.upper, hi);
    }
    if (run.upper - run.lower <= tol * std::max(1.0, run.upper)) {
      run.converged = true;
      break;
    }
    double sum = 0.0;
    Vector next(n);
    for (Index i = 0; i < n; ++i) {
      const double y = f[i] + shift * ipow(run.x[i], d);
      next[i] = std::pow(std::max(y, 0.0), 1.0 / d);
      sum += next[i];
    }
    if (!(sum > 0.0)) break;
    for (double& v : next) v /= sum;
    run.x = std::move(next);
  }
  run.lower = std::max(run.lower, truncated_lower(b, run.x));
  if (run.upper - run.lower <= tol * std::max(1.0, run.upper)) run.converged = true;
  return run;
}

double m_norm(const Vector& x, int m) {
  double s = 0.0;
  for (double v : x) s += ipow(v, m);
  return std::pow(s, 1.0 / m);
}

bool normalize_m(Vector& x, int m) {
  const double s = m_norm(x, m);
  if (!(s > 0.0) || !std::isfinite(s)) return false;
  for (double& v : x) v /= s;
  return true;
}

// Projected gradient on {x >= 0, sum x^m = 1} for the form A x^m.
Vector descend(const Tensor& a, Vector x, int max_iter) {
  const int m = a.order();
  double g = form_value(a, x);
  for (int it = 0; it < max_iter; ++it) {
    Vector grad = tenclass::apply(a, x);
    for (double& v : grad) v *= m;
    bool moved = false;
    double alpha = 1.0;
    for (int k = 0; k < 40; ++k, alpha *= 0.5) {
      Vector z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = std::max(x[i] - alpha * grad[i], 0.0);
      if (!normalize_m(z, m)) continue;
      double step2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) step2 += (z[i] - x[i]) * (z[i] - x[i]);
      if (step2 < 1e-30) break;
      const double gz = form_value(a, z);
      if (gz <= g - 1e-4 * step2 / alpha) {
        x = std::move(z);
        g = gz;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return x;
}

double eigen_defect(const Tensor& a, const Vector& x, double lambda) {
  const Vector f = tenclass::apply(a, x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r = std::max(r, std::abs(f[i] - lambda * ipow(x[i], a.order() - 1)));
  }
  double s = 0.0;
  for (double v : x) s += ipow(v, a.order());
  return std::max(r, std::abs(s - 1.0));
}

// Newton on A x^{m-1} = lambda x^{[m-1]}, sum x^m = 1.
Vector newton_refine(const Tensor& a, Vector x) {
  const int m = a.order();
  const auto n = static_cast<Eigen::Index>(x.size());
  double lambda = form_value(a, x);
  double defect = eigen_defect(a, x, lambda);
  for (int it = 0; it < 50 && defect > 0.0; ++it) {
    const Vector f = tenclass::apply(a, x);
    const auto jac = apply_jacobian(a, x);
    Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      for (Eigen::Index j = 0; j < n; ++j) jm(i, j) = jac[ui * x.size() + static_cast<std::size_t>(j)];
      jm(i, i) -= lambda * (m - 1) * ipow(x[ui], m - 2);
      jm(i, n) = -ipow(x[ui], m - 1);
      jm(n, i) = m * ipow(x[ui], m - 1);
      rhs(i) = -(f[ui] - lambda * ipow(x[ui], m - 1));
      s += ipow(x[ui], m);
    }
    rhs(n) = -(s - 1.0);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jm);
    if (!lu.isInvertible()) break;
    const Eigen::VectorXd step = lu.solve(rhs);
    bool improved = false;
    double alpha = 1.0;
    for (int k = 0; k < 20; ++k, alpha *= 0.5) {
      Vector z(x.size());
      bool ok = true;
      for (Eigen::Index i = 0; i < n; ++i) {
        z[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + alpha * step(i);
        ok = ok && std::isfinite(z[static_cast<std::size_t>(i)]) && z[static_cast<std::size_t>(i)] >= 0.0;
      }
      const double lz = lambda + alpha * step(n);
      if (!ok) continue;
      const double dz = eigen_defect(a, z, lz);
      if (dz < defect) {
        x = std::move(z);
        lambda = lz;
        defect = dz;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return x;
}

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::pair<double, double> collatz_wielandt_bounds(const Tensor& b, std::span<const double> x) {
  const Vector f = tenclass::apply(b, x);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xp = ipow(x[i], b.order() - 1);
    if (!(xp > 0.0)) throw std::invalid_argument("collatz_wielandt_bounds: x must be positive");
    lo = std::min(lo, f[i] / xp);
    hi = std::max(hi, f[i] / xp);
  }
  return {lo, hi};
}

RadiusEnclosure spectral_radius_nonneg(const Tensor& b, double tol, int max_iter) {
  if (!is_nonneg(b)) throw std::invalid_argument("spectral_radius_nonneg: negative entry");
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_radius_nonneg: tol must be positive");
  if (max_abs(b) == 0.0) return {0.0, 0.0, 0, true};
  PowerRun run = power_iterate(b, tol, max_iter);
  RadiusEnclosure enc{run.lower, run.upper, run.iterations, run.converged};
  if (!run.converged) {
    for (double eta : {1e-8, 1e-10}) {
      const Tensor perturbed = add(b, scale(Tensor::ones(b.order(), b.dim()), eta));
      PowerRun pr = power_iterate(perturbed, tol, max_iter);
      enc.iterations += pr.iterations;
      enc.upper = std::min(enc.upper, pr.upper);
      if (std::all_of(pr.x.begin(), pr.x.end(), [](double v) { return v > 0.0; })) {
        enc.upper = std::min(enc.upper, collatz_wielandt_bounds(b, pr.x).second);
      }
      enc.lower = std::max(enc.lower, truncated_lower(b, pr.x));
    }
    enc.converged = enc.upper - enc.lower <= tol * std::max(1.0, enc.upper);
  }
  // Outward rounding: each quotient sums row_size nonnegative products of m-1
  // factors and divides by a power, so its relative error stays below this.
  const double rel = static_cast<double>(b.row_size() + 2 * static_cast<Index>(b.order()) + 4) *
                     std::numeric_limits<double>::epsilon();
  enc.lower = std::max(enc.lower * (1.0 - rel), 0.0);
  enc.upper = std::max(enc.upper * (1.0 + rel), enc.lower);
  return enc;
}

Vector perron_vector(const Tensor& b, double tol, int max_iter) {
  if (!is_nonneg(b)) throw std::invalid_argument("perron_vector: negative entry");
  if (max_abs(b) == 0.0) return Vector(b.dim(), 1.0 / static_cast<double>(b.dim()));
  return power_iterate(b, tol, max_iter).x;
}

double residual(const Tensor& a, const EigenPair& pair) {
  const Vector f = tenclass::apply(a, pair.x);
  double r = 0.0;
  for (std::size_t i = 0; i < pair.x.size(); ++i) {
    r = std::max(r, std::abs(f[i] - pair.lambda * ipow(pair.x[i], a.order() - 1)));
  }
  return r;
}

std::optional<EigenPair> find_negative_hpp_eigenpair(const Tensor& a, EigenMode mode,
                                                     const EigenSearchConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("find_negative_hpp_eigenpair: tol must be positive");
  if (!is_symmetric(a, 1e-12 * max_abs(a))) {
    throw std::invalid_argument("symmetric required");
  }
  const Index n = a.dim();
  const int m = a.order();
  std::vector<Vector> starts;
  starts.emplace_back(n, 1.0);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  for (int k = 0; k < cfg.restarts; ++k) {
    Vector s(n);
    for (double& v : s) v = unif(rng);
    starts.push_back(std::move(s));
  }
  std::optional<EigenPair> best;
  for (Vector x : starts) {
    if (!normalize_m(x, m)) continue;
    x = descend(a, std::move(x), cfg.max_iter);
    x = newton_refine(a, std::move(x));
    if (*std::min_element(x.begin(), x.end()) < cfg.interior_margin) continue;
    double s = 0.0;
    for (double v : x) s += ipow(v, m);
    EigenPair pair{form_value(a, x) / s, x, 0.0};
    pair.residual = residual(a, pair);
    if (!(pair.residual <= cfg.tol)) continue;
    const bool wanted =
        mode == EigenMode::Negative ? pair.lambda < -cfg.tol : pair.lambda <= cfg.tol;
    if (!wanted) continue;
    if (!best || pair.lambda < best->lambda ||
        (pair.lambda == best->lambda && lex_less(pair.x, best->x))) {
      best = std::move(pair);
    }
  }
  return best;
}

}  // namespace tenclass
