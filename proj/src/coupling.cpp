#include "opcorr/coupling.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "opcorr/error.hpp"

namespace opcorr {

namespace {

SpaceRef resolve_target(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2, SpaceRef target) {
  if (!target) return FiniteSpace::product(nu1.space(), nu2.space());
  require_same_space(target->left(), nu1.space(), "coupling (left factor)");
  require_same_space(target->right(), nu2.space(), "coupling (right factor)");
  return target;
}

std::vector<std::size_t> resolve_order(const std::vector<std::size_t>& order, std::size_t n, std::string_view what) {
  if (order.empty()) {
    std::vector<std::size_t> natural(n);
    std::iota(natural.begin(), natural.end(), std::size_t{0});
    return natural;
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (sorted.size() != n || sorted[i] != i) {
      throw Error(ErrorKind::ValidationError, std::string(what) + " is not a permutation of the space's points");
    }
  }
  return order;
}

// Vertices of the transportation polytope restricted to the supports of the
// two marginals. Each vertex has forest support; repeatedly saturating one
// cell by min(row mass, column mass) and retiring the exhausted line reaches
// every vertex, and any such sequence ends on a vertex. Supports are
// collected as bitmasks over the m×n local grid and memoized per residual
// subproblem.
class VertexEnumerator {
 public:
  VertexEnumerator(std::vector<Rational> rows, std::vector<Rational> cols)
      : rows_(std::move(rows)), cols_(std::move(cols)) {}

  std::set<std::uint64_t> run() {
    const std::uint32_t all_rows = static_cast<std::uint32_t>((std::uint64_t{1} << rows_.size()) - 1);
    const std::uint32_t all_cols = static_cast<std::uint32_t>((std::uint64_t{1} << cols_.size()) - 1);
    return solve(all_rows, all_cols, rows_, cols_);
  }

  /// Recovers cell values from a forest support by leaf elimination.
  std::map<std::size_t, Rational> values(std::uint64_t support) const {
    const std::size_t n = cols_.size();
    std::vector<Rational> r = rows_, c = cols_;
    std::map<std::size_t, Rational> out;
    std::uint64_t live = support;
    while (live) {
      bool progressed = false;
      for (std::size_t i = 0; i < rows_.size() && !progressed; ++i) {
        std::uint64_t row_cells = live & row_mask(i);
        if (std::popcount(row_cells) == 1) {
          const std::size_t cell = static_cast<std::size_t>(std::countr_zero(row_cells));
          const std::size_t j = cell % n;
          out[cell] = r[i];
          c[j] -= r[i];
          r[i] = 0;
          live &= ~row_cells;
          progressed = true;
        }
      }
      for (std::size_t j = 0; j < n && !progressed; ++j) {
        std::uint64_t col_cells = live & col_mask(j);
        if (std::popcount(col_cells) == 1) {
          const std::size_t cell = static_cast<std::size_t>(std::countr_zero(col_cells));
          const std::size_t i = cell / n;
          out[cell] = c[j];
          r[i] -= c[j];
          c[j] = 0;
          live &= ~col_cells;
          progressed = true;
        }
      }
      if (!progressed) throw Error(ErrorKind::InternalInvariant, "vertex support is not a forest");
    }
    return out;
  }

 private:
  std::uint64_t row_mask(std::size_t i) const {
    const std::size_t n = cols_.size();
    return ((n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1)) << (i * n);
  }

  std::uint64_t col_mask(std::size_t j) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) m |= std::uint64_t{1} << (i * cols_.size() + j);
    return m;
  }

  static std::string key(std::uint32_t live_rows, std::uint32_t live_cols, const std::vector<Rational>& r,
                         const std::vector<Rational>& c) {
    std::string k = std::to_string(live_rows) + ":" + std::to_string(live_cols);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (live_rows >> i & 1u) k += "|" + r[i].get_str();
    }
    k += "#";
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (live_cols >> j & 1u) k += "|" + c[j].get_str();
    }
    return k;
  }

  std::set<std::uint64_t> solve(std::uint32_t live_rows, std::uint32_t live_cols, const std::vector<Rational>& r,
                                const std::vector<Rational>& c) {
    if (live_rows == 0) return {0};
    const std::string k = key(live_rows, live_cols, r, c);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    std::set<std::uint64_t> result;
    const std::size_t n = cols_.size();
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!(live_rows >> i & 1u)) continue;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (!(live_cols >> j & 1u)) continue;
        std::vector<Rational> r2 = r, c2 = c;
        std::uint32_t rows2 = live_rows, cols2 = live_cols;
        const Rational v = std::min(r[i], c[j]);
        r2[i] -= v;
        c2[j] -= v;
        if (r2[i] == 0) rows2 &= ~(1u << i);
        if (c2[j] == 0) cols2 &= ~(1u << j);
        const std::uint64_t cell = std::uint64_t{1} << (i * n + j);
        for (std::uint64_t s : solve(rows2, cols2, r2, c2)) result.insert(s | cell);
      }
    }
    memo_.emplace(k, result);
    return result;
  }

  std::vector<Rational> rows_;
  std::vector<Rational> cols_;
  std::map<std::string, std::set<std::uint64_t>> memo_;
};

}  // namespace

Coupling::Coupling(ProbabilityMeasure joint, ProbabilityMeasure nu1, ProbabilityMeasure nu2)
    : joint_(std::move(joint)), nu1_(std::move(nu1)), nu2_(std::move(nu2)) {
  for (int index : {1, 2}) {
    const auto m = marginal(joint_, index);
    const auto& expected = index == 1 ? nu1_ : nu2_;
    if (!(m == expected)) {
      throw Error(ErrorKind::MarginalMismatch, "coupling marginal " + std::to_string(index) + " is " + describe(m) +
                                                   ", expected " + describe(expected));
    }
  }
}

Coupling product_coupling(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2, SpaceRef target) {
  target = resolve_target(nu1, nu2, std::move(target));
  return Coupling(product(nu1, nu2, target), nu1, nu2);
}

Coupling comonotone_coupling(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2,
                             const std::vector<std::size_t>& order1, const std::vector<std::size_t>& order2,
                             SpaceRef target) {
  target = resolve_target(nu1, nu2, std::move(target));
  const auto o1 = resolve_order(order1, nu1.space()->size(), "first order");
  const auto o2 = resolve_order(order2, nu2.space()->size(), "second order");
  WeightMap w;
  std::size_t a = 0, b = 0;
  Rational r = nu1.weight(o1[0]);
  Rational s = nu2.weight(o2[0]);
  while (a < o1.size() && b < o2.size()) {
    if (r == 0) {
      if (++a < o1.size()) r = nu1.weight(o1[a]);
      continue;
    }
    if (s == 0) {
      if (++b < o2.size()) s = nu2.weight(o2[b]);
      continue;
    }
    const Rational v = std::min(r, s);
    w[target->join(o1[a], o2[b])] += v;
    r -= v;
    s -= v;
  }
  return Coupling(make_probability_measure(target, std::move(w)), nu1, nu2);
}

std::vector<Coupling> vertex_couplings(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2,
                                       std::size_t bound, SpaceRef target) {
  const std::size_t cells = nu1.space()->size() * nu2.space()->size();
  if (cells > bound) {
    throw Error(ErrorKind::EnumerationBoundExceeded,
                std::to_string(cells) + " cells exceed the enumeration bound " + std::to_string(bound));
  }
  target = resolve_target(nu1, nu2, std::move(target));
  const auto rows = nu1.support();
  const auto cols = nu2.support();
  if (rows.size() * cols.size() > 64 || rows.size() > 32 || cols.size() > 32) {
    throw Error(ErrorKind::EnumerationBoundExceeded,
                std::to_string(rows.size() * cols.size()) + " support cells exceed the 64-cell enumerator limit");
  }
  std::vector<Rational> rmass, cmass;
  for (auto i : rows) rmass.push_back(nu1.weight(i));
  for (auto j : cols) cmass.push_back(nu2.weight(j));

  VertexEnumerator enumerator(std::move(rmass), std::move(cmass));
  std::vector<std::pair<std::vector<std::size_t>, WeightMap>> found;
  for (std::uint64_t support : enumerator.run()) {
    WeightMap w;
    for (const auto& [cell, v] : enumerator.values(support)) {
      w.emplace(target->join(rows[cell / cols.size()], cols[cell % cols.size()]), v);
    }
    std::vector<std::size_t> key;
    for (const auto& [p, v] : w) key.push_back(p);
    found.emplace_back(std::move(key), std::move(w));
  }
  std::sort(found.begin(), found.end());

  std::vector<Coupling> out;
  out.reserve(found.size());
  for (auto& [key, w] : found) out.emplace_back(make_probability_measure(target, std::move(w)), nu1, nu2);
  return out;
}

Rational total_variation(const Measure& a, const Measure& b) {
  require_same_space(a.space(), b.space(), "total_variation");
  Rational sum = 0;
  for (const auto& [p, w] : a.weights()) sum += abs(w - b.weight(p));
  for (const auto& [p, w] : b.weights()) {
    if (!a.in_support(p)) sum += w;
  }
  return sum / 2;
}

ExtremalCoupling most_entangling_row(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2,
                                     const Coupling& reference, std::size_t bound) {
  auto vertices = vertex_couplings(nu1, nu2, bound, reference.measure().space());
  std::size_t best = 0;
  Rational best_distance = -1;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    Rational d = total_variation(vertices[k].measure(), reference.measure());
    if (d > best_distance) {
      best_distance = d;
      best = k;
    }
  }
  return ExtremalCoupling{std::move(vertices[best]), best_distance};
}

}  // namespace opcorr
