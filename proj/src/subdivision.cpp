#include "tenclass/subdivision.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace tenclass {

namespace {

constexpr double kVertexTol = 1e-12;
constexpr double kMinNormalizedVolume = 1e-14;
constexpr double kSnapCoord = 1e-9;
constexpr int kMaxPolishes = 64;
constexpr std::size_t kMaxPivots = 16;
constexpr double kPivotSlack = 1e-3;
constexpr Index kMaxGameSize = 20000;

// Orbits of multi-indices in {0..r-1}^order under permutation of positions.
struct OrbitTable {
  std::vector<std::uint32_t> orbit;
  std::vector<double> count;
};

const OrbitTable& orbit_table(int order, Index r) {
  static std::mutex mu;
  static std::map<std::pair<int, Index>, OrbitTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({order, r});
  if (it != cache.end()) return it->second;
  OrbitTable table;
  std::map<MultiIndex, std::uint32_t> ids;
  Index total = 1;
  for (int k = 0; k < order; ++k) total *= r;
  MultiIndex key(static_cast<std::size_t>(order));
  for (Index lin = 0; lin < total; ++lin) {
    Index rest = lin;
    for (std::size_t p = key.size(); p-- > 0;) {
      key[p] = rest % r;
      rest /= r;
    }
    std::sort(key.begin(), key.end());
    auto [pos, inserted] = ids.emplace(key, static_cast<std::uint32_t>(ids.size()));
    if (inserted) table.count.push_back(0.0);
    table.orbit.push_back(pos->second);
    table.count[pos->second] += 1.0;
  }
  return cache.emplace(std::make_pair(order, r), std::move(table)).first->second;
}

// t has shape (pre, n, post); contracts the middle mode against the vertex
// coordinates, giving shape (pre, r, post).
std::vector<double> contract_mode(const std::vector<double>& t, Index pre, Index n, Index post,
                                  const std::vector<Vector>& verts) {
  const Index r = verts.size();
  std::vector<double> out(pre * r * post, 0.0);
  for (Index p = 0; p < pre; ++p) {
    for (Index j = 0; j < r; ++j) {
      double* dst = out.data() + (p * r + j) * post;
      for (Index i = 0; i < n; ++i) {
        const double w = verts[j][i];
        if (w == 0.0) continue;
        const double* src = t.data() + (p * n + i) * post;
        for (Index q = 0; q < post; ++q) dst[q] += w * src[q];
      }
    }
  }
  return out;
}

Index ipow(Index b, int e) {
  Index p = 1;
  for (int k = 0; k < e; ++k) p *= b;
  return p;
}

// Coefficients with modes 1..m-1 contracted: shape (n, r, ..., r).
std::vector<double> partial_coeffs(const Tensor& a, const Simplex& s) {
  if (s.dim() == 0 || s.vertex(0).size() != a.dim()) {
    throw std::invalid_argument("simplex and tensor dimensions differ");
  }
  const Index n = a.dim();
  const Index r = s.dim();
  const int m = a.order();
  std::vector<double> t(a.entries().begin(), a.entries().end());
  for (int q = 1; q < m; ++q) {
    t = contract_mode(t, n * ipow(r, q - 1), n, ipow(n, m - 1 - q), s.vertices());
  }
  return t;
}

// Orbit-averaged coefficients of each component: row k, one column per orbit.
std::vector<double> averaged_component_coeffs(const Tensor& a, const Simplex& s, Index& cols) {
  const std::vector<double> t = partial_coeffs(a, s);
  const Index r = s.dim();
  const Index block = ipow(r, a.order() - 1);
  const OrbitTable& orbits = orbit_table(a.order() - 1, r);
  cols = orbits.count.size();
  std::vector<double> c(a.dim() * cols, 0.0);
  for (Index k = 0; k < a.dim(); ++k) {
    double* row = c.data() + k * cols;
    for (Index j = 0; j < block; ++j) row[orbits.orbit[j]] += t[k * block + j];
    for (Index o = 0; o < cols; ++o) row[o] /= orbits.count[o];
  }
  return c;
}

// Mixed strategy w of the row player in the game with payoff m (rows x cols,
// row player maximizing); found with a dense simplex on the shifted covering
// LP. Any returned w is a valid mixed strategy even if the LP stops early.
Vector game_weights(const std::vector<double>& m, Index rows, Index cols) {
  const double lo = *std::min_element(m.begin(), m.end());
  const double shift = 1.0 - lo;
  const Index width = cols + rows + 1;
  std::vector<double> tab(rows * width, 0.0);
  std::vector<double> obj(width, 0.0);
  std::vector<Index> basis(rows);
  for (Index k = 0; k < rows; ++k) {
    for (Index o = 0; o < cols; ++o) tab[k * width + o] = m[k * cols + o] + shift;
    tab[k * width + cols + k] = 1.0;
    tab[k * width + width - 1] = 1.0;
    basis[k] = cols + k;
  }
  for (Index o = 0; o < cols; ++o) obj[o] = -1.0;
  const Index max_iter = 50 * (cols + rows);
  for (Index it = 0; it < max_iter; ++it) {
    Index enter = width;
    for (Index j = 0; j + 1 < width; ++j) {
      if (obj[j] < -1e-12) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    Index leave = rows;
    double best = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < rows; ++k) {
      const double piv = tab[k * width + enter];
      if (piv <= 1e-12) continue;
      const double ratio = tab[k * width + width - 1] / piv;
      if (ratio < best || (ratio == best && basis[k] < basis[leave])) {
        best = ratio;
        leave = k;
      }
    }
    if (leave == rows) break;
    double* prow = tab.data() + leave * width;
    const double piv = prow[enter];
    for (Index j = 0; j < width; ++j) prow[j] /= piv;
    for (Index k = 0; k < rows; ++k) {
      if (k == leave) continue;
      double* row = tab.data() + k * width;
      const double f = row[enter];
      if (f == 0.0) continue;
      for (Index j = 0; j < width; ++j) row[j] -= f * prow[j];
    }
    const double f = obj[enter];
    for (Index j = 0; j < width; ++j) obj[j] -= f * prow[j];
    basis[leave] = enter;
  }
  Vector w(rows);
  double total = 0.0;
  for (Index k = 0; k < rows; ++k) {
    w[k] = std::max(obj[cols + k], 0.0);
    total += w[k];
  }
  if (!(total > 0.0)) return Vector(rows, 1.0 / static_cast<double>(rows));
  for (double& v : w) v /= total;
  return w;
}

Vector project_simplex(const Vector& v) {
  Vector u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cs = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cs += u[j];
    const double t = (cs - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  Vector x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::max(v[i] - tau, 0.0);
  return x;
}

void renormalize(Vector& y) {
  double s = 0.0;
  for (double& v : y) {
    v = std::max(v, 0.0);
    s += v;
  }
  for (double& v : y) v /= s;
}

// Moves y toward the barycenter until every coordinate is at least `margin`.
Vector nudge(const Vector& y, double margin) {
  if (margin <= 0.0) return y;
  const double lo = *std::min_element(y.begin(), y.end());
  if (lo >= margin) return y;
  const double r = static_cast<double>(y.size());
  const double s = std::min(1.0, (margin - lo) / (1.0 / r - lo));
  Vector z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = (1.0 - s) * y[i] + s / r;
  for (double& v : z) v = std::max(v, margin);
  return z;
}

enum class Objective { MaxComponent, Form };

struct Problem {
  const Tensor* a;
  Objective kind;
  Tensor sym;  // symmetric part, used for form gradients
  double theta;
  bool strict;
  double min_coord;
  double scale;
  EngineConfig cfg;
};

double phi(const Problem& p, const Vector& y) {
  if (p.kind == Objective::Form) return form_value(*p.a, y);
  const Vector f = tenclass::apply(*p.a, y);
  return *std::max_element(f.begin(), f.end());
}

bool meets(const Problem& p, double v) { return p.strict ? v < p.theta : v <= p.theta; }

// Lower bound of max_k f_k over the simplex. Every convex combination of the
// components is a lower bound for the max, so besides the best single
// component the bound also tries the weights of the coefficient game, which
// keeps the bound tight near points where several components vanish.
double node_bound(const Problem& p, const Simplex& s) {
  if (p.kind == Objective::Form) return form_bounds(*p.a, s).first;
  const Index rows = p.a->dim();
  Index cols = 0;
  const std::vector<double> c = averaged_component_coeffs(*p.a, s, cols);
  double single = -std::numeric_limits<double>::infinity();
  for (Index k = 0; k < rows; ++k) {
    single = std::max(single, *std::min_element(c.begin() + static_cast<std::ptrdiff_t>(k * cols),
                                                c.begin() + static_cast<std::ptrdiff_t>((k + 1) * cols)));
  }
  if (single > p.theta || rows < 2 || rows * cols > kMaxGameSize) return single;
  const Vector w = game_weights(c, rows, cols);
  double mixed = std::numeric_limits<double>::infinity();
  for (Index o = 0; o < cols; ++o) {
    double v = 0.0;
    for (Index k = 0; k < rows; ++k) v += w[k] * c[k * cols + o];
    mixed = std::min(mixed, v);
  }
  return std::max(single, mixed);
}

// Largest step in [0, 1] keeping y + alpha*dy nonnegative.
double feasible_step(const Vector& y, const Vector& dy) {
  double alpha = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (dy[i] < 0.0) alpha = std::min(alpha, -y[i] / dy[i]);
  }
  return std::max(alpha, 0.0);
}

// Newton direction on the equalized/stationarity system; empty on failure.
Vector newton_direction(const Problem& p, const Vector& y) {
  const Index r = y.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r + 1),
                                            static_cast<Eigen::Index>(r + 1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(r + 1));
  if (p.kind == Objective::MaxComponent) {
    const Vector f = tenclass::apply(*p.a, y);
    const double t = *std::max_element(f.begin(), f.end());
    const auto jac = apply_jacobian(*p.a, y);
    for (Index k = 0; k < r; ++k) {
      for (Index i = 0; i < r; ++i) m(k, i) = jac[k * r + i];
      m(k, r) = -1.0;
      rhs(k) = -(f[k] - t);
    }
  } else {
    const double order = p.a->order();
    const Vector grad = tenclass::apply(p.sym, y);
    const auto jac = apply_jacobian(p.sym, y);
    for (Index k = 0; k < r; ++k) {
      for (Index i = 0; i < r; ++i) m(k, i) = order * jac[k * r + i];
      m(k, r) = -1.0;
      rhs(k) = -order * grad[k];
    }
  }
  for (Index i = 0; i < r; ++i) m(r, i) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) return {};
  const Eigen::VectorXd sol = lu.solve(rhs);
  Vector dy(r);
  for (Index i = 0; i < r; ++i) {
    dy[i] = sol(i);
    if (!std::isfinite(dy[i])) return {};
  }
  return dy;
}

Vector descent_gradient(const Problem& p, const Vector& y) {
  const Index r = y.size();
  if (p.kind == Objective::Form) {
    Vector g = tenclass::apply(p.sym, y);
    for (double& v : g) v *= p.a->order();
    return g;
  }
  const Vector f = tenclass::apply(*p.a, y);
  const auto k = static_cast<Index>(std::max_element(f.begin(), f.end()) - f.begin());
  const auto jac = apply_jacobian(*p.a, y);
  return Vector(jac.begin() + static_cast<std::ptrdiff_t>(k * r),
                jac.begin() + static_cast<std::ptrdiff_t>((k + 1) * r));
}

// Local descent of phi from y, staying on the simplex.
Vector polish(const Problem& p, Vector y) {
  double value = phi(p, y);
  for (int it = 0; it < p.cfg.polish_steps; ++it) {
    bool moved = false;
    const Vector dy = newton_direction(p, y);
    if (!dy.empty()) {
      double alpha = feasible_step(y, dy);
      for (int k = 0; k < 30 && alpha > 1e-14; ++k, alpha *= 0.5) {
        Vector z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] + alpha * dy[i];
        renormalize(z);
        const double vz = phi(p, z);
        if (vz < value) {
          y = std::move(z);
          value = vz;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      const Vector g = descent_gradient(p, y);
      double alpha = 1.0;
      for (int k = 0; k < 40; ++k, alpha *= 0.5) {
        Vector z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] - alpha * g[i];
        z = project_simplex(z);
        double step2 = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) step2 += (z[i] - y[i]) * (z[i] - y[i]);
        if (step2 == 0.0) break;
        const double vz = phi(p, z);
        if (vz <= value - 1e-4 * step2 / alpha) {
          y = std::move(z);
          value = vz;
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;
  }
  return y;
}

enum class Outcome { Found, Certified, Exhausted };

struct SearchResult {
  Outcome outcome = Outcome::Exhausted;
  Vector point;
  SearchStats stats;
  std::string reason;
};

class Search {
 public:
  explicit Search(const Problem& p) : p_(p) {}

  SearchResult run() {
    const Index r = p_.a->dim();
    Simplex root = Simplex::standard(r);
    if (try_candidate(root.centroid())) return found();
    for (const auto& v : root.vertices()) {
      if (try_candidate(v)) return found();
    }
    if (r == 1) {
      // A single point: the bound is exact and the candidate already failed.
      result_.outcome = Outcome::Certified;
      result_.stats.worst_bound = phi(p_, root.vertex(0));
      return result_;
    }
    push(std::move(root));
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), later);
      Node node = std::move(heap_.back());
      heap_.pop_back();
      result_.stats.worst_bound = node.bound;
      if (p_.cfg.bound_trace != nullptr) p_.cfg.bound_trace->push_back(node.bound);
      if (node.bound > p_.theta) {
        result_.outcome = Outcome::Certified;
        return result_;
      }
      if (result_.stats.nodes >= p_.cfg.node_budget) return exhausted("node budget exhausted");
      if (node.simplex.depth() >= p_.cfg.max_depth) return exhausted("maximum depth reached");
      ++result_.stats.nodes;
      result_.stats.depth = std::max(result_.stats.depth, node.simplex.depth());
      if (try_candidate(node.simplex.centroid())) return found();
      for (auto& child : split(node.simplex)) push(std::move(child));
    }
    result_.outcome = Outcome::Certified;
    return result_;
  }

 private:
  struct Node {
    Simplex simplex;
    double bound;
    std::uint64_t seq;
  };

  // Heap comparator: smallest bound first, then insertion order.
  static bool later(const Node& x, const Node& y) {
    if (x.bound != y.bound) return x.bound > y.bound;
    return x.seq > y.seq;
  }

  void push(Simplex s) {
    const double b = node_bound(p_, s);
    heap_.push_back(Node{std::move(s), b, seq_++});
    std::push_heap(heap_.begin(), heap_.end(), later);
  }

  SearchResult found() {
    result_.outcome = Outcome::Found;
    result_.stats.worst_bound = heap_.empty() ? result_.stats.worst_bound
                                              : std::min(result_.stats.worst_bound,
                                                         heap_.front().bound);
    return result_;
  }

  SearchResult exhausted(const char* why) {
    result_.outcome = Outcome::Exhausted;
    result_.reason = why;
    return result_;
  }

  bool accept(const Vector& y) {
    const Vector z = nudge(y, p_.min_coord);
    if (meets(p_, phi(p_, z))) {
      result_.point = z;
      return true;
    }
    return false;
  }

  bool try_candidate(const Vector& y) {
    if (accept(y)) return true;
    const double v = phi(p_, y);
    if (!(v < best_ - 1e-12 * p_.scale) || polishes_ >= kMaxPolishes) {
      best_ = std::min(best_, v);
      return false;
    }
    ++polishes_;
    const Vector q = polish(p_, y);
    if (accept(q)) return true;
    const double vq = phi(p_, q);
    best_ = std::min(v, vq);
    if (vq <= p_.theta + kPivotSlack * p_.scale) add_pivot(q);
    return false;
  }

  void add_pivot(const Vector& q) {
    if (pivots_.size() >= kMaxPivots) return;
    for (const auto& v : pivots_) {
      if (max_norm_diff(v, q) < 1e-9) return;
    }
    pivots_.push_back(q);
  }

  static double max_norm_diff(const Vector& a, const Vector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
  }

  std::vector<Simplex> split(const Simplex& s) {
    for (const auto& pivot : pivots_) {
      Vector lambda = s.barycentric(pivot);
      if (*std::min_element(lambda.begin(), lambda.end()) < -kVertexTol) continue;
      int positive = 0;
      for (double& l : lambda) {
        if (l < kSnapCoord) l = 0.0;
        else ++positive;
      }
      if (positive < 2) continue;
      double total = 0.0;
      for (double l : lambda) total += l;
      for (double& l : lambda) l /= total;
      const Vector centre = s.point(lambda);
      std::vector<Simplex> children;
      bool ok = true;
      for (Index j = 0; j < s.dim() && ok; ++j) {
        if (lambda[j] == 0.0) continue;
        std::vector<Vector> verts = s.vertices();
        verts[j] = centre;
        if (normalized_volume(verts) <= kMinNormalizedVolume) {
          ok = false;
          break;
        }
        children.emplace_back(std::move(verts), s.depth() + 1);
      }
      if (ok) return children;
    }
    auto [c1, c2] = refine(s);
    std::vector<Simplex> children;
    children.push_back(std::move(c1));
    children.push_back(std::move(c2));
    return children;
  }

  const Problem& p_;
  std::vector<Node> heap_;
  std::uint64_t seq_ = 0;
  std::vector<Vector> pivots_;
  double best_ = std::numeric_limits<double>::infinity();
  int polishes_ = 0;
  SearchResult result_;
};

void validate_config(const EngineConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (cfg.max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
}

Problem make_problem(const Tensor& a, Objective kind, double theta, bool strict, double min_coord,
                     double scale, const EngineConfig& cfg) {
  Tensor sym = kind == Objective::Form ? symmetrize(a) : Tensor(1, 1);
  return Problem{&a, kind, std::move(sym), theta, strict, min_coord, scale, cfg};
}

}  // namespace

// ----------------------------------------------------------------- Simplex

Simplex::Simplex(std::vector<Vector> vertices, int depth)
    : vertices_(std::move(vertices)), depth_(depth) {
  const Index r = vertices_.size();
  if (r == 0) throw std::invalid_argument("Simplex: no vertices");
  for (const auto& v : vertices_) {
    if (v.size() != r) throw std::invalid_argument("Simplex: vertex dimension mismatch");
    double s = 0.0;
    for (double c : v) {
      if (!std::isfinite(c) || c < -kVertexTol) {
        throw std::invalid_argument("Simplex: vertex outside the standard simplex");
      }
      s += c;
    }
    if (std::abs(s - 1.0) > kVertexTol) {
      throw std::invalid_argument("Simplex: vertex coordinates do not sum to 1");
    }
  }
  if (r > 1 && normalized_volume(vertices_) <= kMinNormalizedVolume) {
    throw std::invalid_argument("Simplex: degenerate vertex set");
  }
}

Simplex Simplex::standard(Index r) {
  std::vector<Vector> verts(r, Vector(r, 0.0));
  for (Index j = 0; j < r; ++j) verts[j][j] = 1.0;
  return Simplex(std::move(verts));
}

double Simplex::diameter() const {
  double d = 0.0;
  for (Index a = 0; a < dim(); ++a) {
    for (Index b = a + 1; b < dim(); ++b) {
      double s = 0.0;
      for (Index i = 0; i < dim(); ++i) {
        const double t = vertices_[a][i] - vertices_[b][i];
        s += t * t;
      }
      d = std::max(d, std::sqrt(s));
    }
  }
  return d;
}

Vector Simplex::centroid() const {
  Vector c(dim(), 0.0);
  for (const auto& v : vertices_) {
    for (Index i = 0; i < dim(); ++i) c[i] += v[i];
  }
  for (double& x : c) x /= static_cast<double>(dim());
  return c;
}

Vector Simplex::barycentric(std::span<const double> x) const {
  const auto r = static_cast<Eigen::Index>(dim());
  if (x.size() != dim()) throw std::invalid_argument("Simplex::barycentric: dimension mismatch");
  Eigen::MatrixXd m(r, r);
  Eigen::VectorXd rhs(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) m(i, j) = vertices_[j][i];
    rhs(i) = x[i];
  }
  const Eigen::VectorXd l = m.partialPivLu().solve(rhs);
  return Vector(l.data(), l.data() + r);
}

Vector Simplex::point(std::span<const double> lambda) const {
  if (lambda.size() != dim()) throw std::invalid_argument("Simplex::point: dimension mismatch");
  Vector x(dim(), 0.0);
  for (Index j = 0; j < dim(); ++j) {
    for (Index i = 0; i < dim(); ++i) x[i] += lambda[j] * vertices_[j][i];
  }
  return x;
}

double normalized_volume(const std::vector<Vector>& vertices) {
  const Index r = vertices.size();
  if (r <= 1) return 1.0;
  const Index n = vertices[0].size();
  Eigen::MatrixXd e(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r - 1));
  double lengths = 1.0;
  for (Index j = 1; j < r; ++j) {
    double len2 = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double d = vertices[j][i] - vertices[0][i];
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = d;
      len2 += d * d;
    }
    if (len2 == 0.0) return 0.0;
    lengths *= std::sqrt(len2);
  }
  const double gram = (e.transpose() * e).determinant();
  return gram <= 0.0 ? 0.0 : std::sqrt(gram) / lengths;
}

std::pair<Simplex, Simplex> refine(const Simplex& s) {
  const Index r = s.dim();
  if (r < 2) throw std::invalid_argument("refine: a single point cannot be bisected");
  Index best_a = 0;
  Index best_b = 1;
  double best = -1.0;
  for (Index a = 0; a < r; ++a) {
    for (Index b = a + 1; b < r; ++b) {
      double d = 0.0;
      for (Index i = 0; i < r; ++i) {
        const double t = s.vertex(a)[i] - s.vertex(b)[i];
        d += t * t;
      }
      if (d > best) {
        best = d;
        best_a = a;
        best_b = b;
      }
    }
  }
  Vector mid(r);
  for (Index i = 0; i < r; ++i) mid[i] = 0.5 * (s.vertex(best_a)[i] + s.vertex(best_b)[i]);
  std::vector<Vector> first = s.vertices();
  std::vector<Vector> second = s.vertices();
  first[best_b] = mid;
  second[best_a] = mid;
  return {Simplex(std::move(first), s.depth() + 1), Simplex(std::move(second), s.depth() + 1)};
}

// ------------------------------------------------------------ coefficients

std::vector<Vector> component_coeffs(const Tensor& a, const Simplex& s) {
  const std::vector<double> t = partial_coeffs(a, s);
  const Index block = ipow(s.dim(), a.order() - 1);
  std::vector<Vector> out(a.dim());
  for (Index k = 0; k < a.dim(); ++k) {
    out[k].assign(t.begin() + static_cast<std::ptrdiff_t>(k * block),
                  t.begin() + static_cast<std::ptrdiff_t>((k + 1) * block));
  }
  return out;
}

Vector form_coeffs(const Tensor& a, const Simplex& s) {
  const std::vector<double> t = partial_coeffs(a, s);
  return contract_mode(t, 1, a.dim(), ipow(s.dim(), a.order() - 1), s.vertices());
}

ComponentBounds component_bounds(const Tensor& a, const Simplex& s) {
  Index cols = 0;
  const std::vector<double> c = averaged_component_coeffs(a, s, cols);
  ComponentBounds b{Vector(a.dim()), Vector(a.dim())};
  for (Index k = 0; k < a.dim(); ++k) {
    const auto [lo, hi] = std::minmax_element(c.begin() + static_cast<std::ptrdiff_t>(k * cols),
                                              c.begin() + static_cast<std::ptrdiff_t>((k + 1) * cols));
    b.lower[k] = *lo;
    b.upper[k] = *hi;
  }
  return b;
}

std::pair<double, double> form_bounds(const Tensor& a, const Simplex& s) {
  const Vector c = form_coeffs(a, s);
  const OrbitTable& orbits = orbit_table(a.order(), s.dim());
  std::vector<double> sums(orbits.count.size(), 0.0);
  for (Index j = 0; j < c.size(); ++j) sums[orbits.orbit[j]] += c[j];
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t o = 0; o < sums.size(); ++o) {
    const double v = sums[o] / orbits.count[o];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double tolerance_scale(const Tensor& a) {
  const double m = max_abs(a);
  return m > 0.0 ? m : 1.0;
}

// ------------------------------------------------------------------ decide

Verdict decide_all_components_negative(const Tensor& a, bool strict, const EngineConfig& cfg,
                                       double scale) {
  validate_config(cfg);
  const double sc = scale > 0.0 ? scale : tolerance_scale(a);
  const double eps = cfg.epsilon * sc;
  const double theta = strict ? -eps : eps;
  const Problem p =
      make_problem(a, Objective::MaxComponent, theta, strict, cfg.interior_margin, sc, cfg);
  Search search(p);
  const SearchResult res = search.run();
  switch (res.outcome) {
    case Outcome::Found: {
      const Claim claim{Claim::Kind::SupportComponentsBelow, theta, strict,
                        cfg.interior_margin * (1.0 - 1e-9)};
      return Verdict::fails(a, res.point, claim, cfg.epsilon, res.stats);
    }
    case Outcome::Certified:
      return Verdict::holds(cfg.epsilon, res.stats);
    case Outcome::Exhausted:
      break;
  }
  return Verdict::inconclusive(res.reason, cfg.epsilon, res.stats);
}

Verdict decide_form_nonneg(const Tensor& a, bool strict, const EngineConfig& cfg, double scale) {
  validate_config(cfg);
  const double sc = scale > 0.0 ? scale : tolerance_scale(a);
  const double eps = cfg.epsilon * sc;
  const double theta = strict ? eps : -eps;
  const Problem p = make_problem(a, Objective::Form, theta, !strict, 0.0, sc, cfg);
  Search search(p);
  const SearchResult res = search.run();
  switch (res.outcome) {
    case Outcome::Found: {
      const Claim claim{Claim::Kind::FormBelow, theta, !strict, 0.0};
      return Verdict::fails(a, res.point, claim, cfg.epsilon, res.stats);
    }
    case Outcome::Certified:
      return Verdict::holds(cfg.epsilon, res.stats);
    case Outcome::Exhausted:
      break;
  }
  return Verdict::inconclusive(res.reason, cfg.epsilon, res.stats);
}

Verdict decide_positive_image(const Tensor& a, bool strict, const EngineConfig& cfg, double scale,
                              bool certify_absence) {
  validate_config(cfg);
  const double sc = scale > 0.0 ? scale : tolerance_scale(a);
  const double eps = cfg.epsilon * sc;
  const Tensor neg = negate(a);
  EngineConfig run_cfg = cfg;
  if (!certify_absence) run_cfg.node_budget = std::min<std::size_t>(cfg.node_budget, 2000);
  const double theta = strict ? -eps : eps;
  const double margin = strict ? cfg.interior_margin : 0.0;
  const Problem p = make_problem(neg, Objective::MaxComponent, theta, strict, margin, sc, run_cfg);
  Search search(p);
  const SearchResult res = search.run();
  switch (res.outcome) {
    case Outcome::Found: {
      const Claim claim{Claim::Kind::ComponentsAbove, -theta, strict, margin * (1.0 - 1e-9)};
      if (!claim_satisfied(a, res.point, claim)) {
        throw std::logic_error("solution does not satisfy the claimed predicate");
      }
      return Verdict::holds(cfg.epsilon, res.stats, res.point);
    }
    case Outcome::Certified:
      if (certify_absence) {
        return Verdict::refuted("no solution on the closed simplex", cfg.epsilon, res.stats);
      }
      return Verdict::inconclusive("nonexistence not certified at this dimension", cfg.epsilon,
                                   res.stats);
    case Outcome::Exhausted:
      break;
  }
  return Verdict::inconclusive(res.reason, cfg.epsilon, res.stats);
}

}  // namespace tenclass
