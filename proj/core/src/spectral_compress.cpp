#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/spectral.hpp"

namespace cayley {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

int env_thread_count() {
  const char* raw = std::getenv("CAYLEY_THREADS");
  if (!raw) return 1;
  const int v = std::atoi(raw);
  if (v < 1) return 1;
  return std::min(v, 64);
}

// Deterministic parallel loop: item i is computed by exactly one thread and
// written to its own slot, so results do not depend on the thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

int CompressedOperator::window_index(const GroupElement& g) const {
  // The window is ordered by BFS layer, not globally sorted; linear scan.
  for (std::size_t i = 0; i < window.size(); ++i)
    if (window[i] == g) return static_cast<int>(i);
  return -1;
}

CompressedOperator compress(const RingMatrix& a, int radius) {
  if (a.rows != a.cols) fail("compression needs a square matrix");
  CompressedOperator out;
  out.spec = a.spec;
  out.copies = a.rows;
  out.radius = radius;
  out.window = ball(a.spec, radius);

  std::map<GroupElement, int> pos;
  for (std::size_t i = 0; i < out.window.size(); ++i)
    pos.emplace(out.window[i], static_cast<int>(i));

  const int k = out.copies;
  for (int pg = 0; pg < static_cast<int>(out.window.size()); ++pg) {
    const GroupElement& g = out.window[pg];
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i) {
        const RingElement& entry = a.at(i, j);
        for (const auto& [u, c] : entry.coeffs) {
          const GroupElement h = multiply(a.spec, u, g);
          auto it = pos.find(h);
          if (it == pos.end()) continue;
          out.exact[{it->second * k + i, pg * k + j}] += c;
        }
      }
  }

  const int dim = out.dim();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(out.exact.size());
  for (auto it = out.exact.begin(); it != out.exact.end();) {
    if (it->second == 0) {
      it = out.exact.erase(it);
      continue;
    }
    trips.emplace_back(it->first.first, it->first.second, to_double(it->second));
    ++it;
  }
  out.op.resize(dim, dim);
  out.op.setFromTriplets(trips.begin(), trips.end());
  return out;
}

namespace {

// e^{-t M} applied to the identity-block columns by uniformization, then
// summed over the window members of the class of g. See spectral.hpp.
double heat_value_on_compression(const CompressedOperator& comp, double nu, double t,
                                 const std::vector<int>& class_positions) {
  const int dim = comp.dim();
  const int k = comp.copies;

  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, k);
  for (int j = 0; j < k; ++j) v(0 * k + j, j) = 1.0;  // identity sits at window position 0

  if (nu <= 0.0) {
    // Zero operator: the semigroup is the identity.
    double total = 0.0;
    for (int p : class_positions)
      for (int j = 0; j < k; ++j) total += v(p * k + j, j);
    return total;
  }

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, k);
  const double nt = nu * t;
  double weight = std::exp(-nt);  // Poisson weight j = 0
  double cumulative = 0.0;
  const long jmax = static_cast<long>(nt + 40.0 * std::sqrt(nt + 1.0) + 100.0);
  for (long j = 0;; ++j) {
    acc += weight * v;
    cumulative += weight;
    if (1.0 - cumulative < 1e-14 || j >= jmax) break;
    // v <- P v with P = I - M/nu.
    v = v - (comp.op * v) / nu;
    weight *= nt / static_cast<double>(j + 1);
  }

  double total = 0.0;
  for (int p : class_positions)
    for (int j = 0; j < k; ++j) total += acc(p * k + j, j);
  return total;
}

std::vector<int> class_positions_in_window(const CompressedOperator& comp,
                                           const GroupElement& g) {
  const GroupElement key = conjugacy_key(comp.spec, g);
  std::vector<int> hits;
  for (std::size_t i = 0; i < comp.window.size(); ++i)
    if (conjugacy_key(comp.spec, comp.window[i]) == key) hits.push_back(static_cast<int>(i));
  return hits;
}

// l1 bound of the compressed operator itself (max of column/row absolute
// sums); dominated by the full matrix's l1 norm, and still >= the operator
// norm of the compression.
double compressed_l1(const CompressedOperator& comp) {
  std::vector<Rational> col(comp.dim(), Rational(0)), row(comp.dim(), Rational(0));
  for (const auto& [rc, v] : comp.exact) {
    const Rational a = v < 0 ? Rational(-v) : v;
    row[rc.first] += a;
    col[rc.second] += a;
  }
  Rational best = 0;
  for (const auto& s : col)
    if (s > best) best = s;
  for (const auto& s : row)
    if (s > best) best = s;
  return to_double(best);
}

}  // namespace

double heat_trace_numeric(const RingMatrix& delta, double t, const GroupElement& g,
                          int radius) {
  if (t < 0) fail("heat time must be >= 0");
  const CompressedOperator comp = compress(delta, radius);
  const double nu = to_double(l1_norm(delta)) * (1.0 + 1e-12);
  return heat_value_on_compression(comp, nu, t, class_positions_in_window(comp, g));
}

std::vector<double> heat_values_numeric(const CompressedOperator& comp, double t,
                                        const std::vector<GroupElement>& classes) {
  if (t < 0) fail("heat time must be >= 0");
  const double nu = compressed_l1(comp) * (1.0 + 1e-12);

  std::vector<std::vector<int>> members;
  members.reserve(classes.size());
  for (const auto& g : classes) members.push_back(class_positions_in_window(comp, g));

  const int dim = comp.dim();
  const int k = comp.copies;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, k);
  for (int j = 0; j < k; ++j) v(j, j) = 1.0;  // identity at window position 0

  auto read_values = [&](const Eigen::MatrixXd& acc) {
    std::vector<double> out;
    out.reserve(members.size());
    for (const auto& positions : members) {
      double total = 0.0;
      for (int p : positions)
        for (int j = 0; j < k; ++j) total += acc(p * k + j, j);
      out.push_back(total);
    }
    return out;
  };

  if (nu <= 0.0) return read_values(v);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, k);
  const double nt = nu * t;
  double weight = std::exp(-nt);
  double cumulative = 0.0;
  const long jmax = static_cast<long>(nt + 40.0 * std::sqrt(nt + 1.0) + 100.0);
  for (long j = 0;; ++j) {
    acc += weight * v;
    cumulative += weight;
    if (1.0 - cumulative < 1e-14 || j >= jmax) break;
    v = v - (comp.op * v) / nu;
    weight *= nt / static_cast<double>(j + 1);
  }
  return read_values(acc);
}

HeatScan heat_limit_scan(const RingMatrix& delta, const GroupElement& g,
                         const std::vector<double>& ts, const std::vector<int>& radii,
                         double tol) {
  if (ts.empty() || radii.empty()) fail("heat scan needs at least one t and one radius");
  for (double t : ts)
    if (t < 0) fail("heat time must be >= 0");
  if (tol <= 0) fail("heat scan tolerance must be positive");

  HeatScan scan;
  scan.ts = ts;
  scan.radii = radii;
  scan.values.assign(ts.size(), std::vector<double>(radii.size(), 0.0));

  const double nu = to_double(l1_norm(delta)) * (1.0 + 1e-12);
  const int threads = env_thread_count();
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const CompressedOperator comp = compress(delta, radii[ri]);
    const std::vector<int> members = class_positions_in_window(comp, g);
    parallel_for(static_cast<int>(ts.size()), threads, [&](int ti) {
      scan.values[ti][ri] = heat_value_on_compression(comp, nu, ts[ti], members);
    });
  }

  if (radii.size() >= 2) {
    const auto& last_t_row = scan.values.back();
    const double d = std::abs(last_t_row[radii.size() - 1] - last_t_row[radii.size() - 2]);
    scan.converged = d < tol;
  } else {
    scan.converged = false;
  }
  scan.status = scan.converged ? "converged" : "not-converged";
  return scan;
}

GapProbe spectral_gap_probe(const RingMatrix& delta, int radius) {
  const CompressedOperator comp = compress(delta, radius);
  const int dim = comp.dim();
  if (dim < 2) fail("spectral probe needs a window with at least two coordinates");
  if (dim > 6000)
    throw unsupported_error("window too large for a dense spectral probe (dim " +
                            std::to_string(dim) + ")");
  Eigen::MatrixXd dense = Eigen::MatrixXd(comp.op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  GapProbe probe;
  probe.dim = dim;
  probe.lambda1 = solver.eigenvalues()(0);
  probe.lambda2 = solver.eigenvalues()(1);
  return probe;
}

}  // namespace cayley
