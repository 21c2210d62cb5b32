#include "udg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "udg/parallel.hpp"

namespace udg {

namespace {

constexpr double kShortlistTolerance = 1e-6;

struct Approx {
  double x;
  double y;
};

std::int64_t cell_key(std::int64_t cx, std::int64_t cy) { return (cx << 32) ^ (cy & 0xffffffff); }

}  // namespace

std::vector<Edge> unit_edges(const std::vector<ExactPoint>& points, EdgeMode mode, unsigned jobs) {
  const std::size_t n = points.size();
  std::vector<Edge> edges;
  if (mode == EdgeMode::exhaustive) {
    auto rows = parallel_map(n, jobs, [&](std::size_t i) {
      std::vector<Edge> row;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (is_unit(points[i], points[j])) row.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
      return row;
    });
    for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
    return edges;
  }

  std::vector<Approx> approx(n);
  std::unordered_map<std::int64_t, std::vector<int>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    approx[i] = {points[i].re.to_double(), points[i].im.to_double()};
    const auto cx = static_cast<std::int64_t>(std::floor(approx[i].x));
    const auto cy = static_cast<std::int64_t>(std::floor(approx[i].y));
    cells[cell_key(cx, cy)].push_back(static_cast<int>(i));
  }
  auto rows = parallel_map(n, jobs, [&](std::size_t i) {
    std::vector<Edge> row;
    const auto cx = static_cast<std::int64_t>(std::floor(approx[i].x));
    const auto cy = static_cast<std::int64_t>(std::floor(approx[i].y));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells.find(cell_key(cx + dx, cy + dy));
        if (it == cells.end()) continue;
        for (int j : it->second) {
          if (static_cast<std::size_t>(j) <= i) continue;
          const double ddx = approx[i].x - approx[static_cast<std::size_t>(j)].x;
          const double ddy = approx[i].y - approx[static_cast<std::size_t>(j)].y;
          if (std::abs(ddx * ddx + ddy * ddy - 1.0) > kShortlistTolerance) continue;
          if (is_unit(points[i], points[static_cast<std::size_t>(j)])) row.emplace_back(static_cast<int>(i), j);
        }
      }
    }
    std::sort(row.begin(), row.end());
    return row;
  });
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return edges;
}

UnitGraph UnitGraph::from_points(std::vector<ExactPoint> points, EdgeMode mode, unsigned jobs) {
  // Dedupe first; exact hashing makes this linear.
  std::unordered_map<ExactPoint, int, ExactPointHash> seen;
  std::vector<ExactPoint> unique;
  unique.reserve(points.size());
  for (auto& p : points) {
    if (seen.emplace(p, 0).second) unique.push_back(std::move(p));
  }

  struct Key {
    ExactReal norm;
    double approx;
    std::string text;
  };
  std::vector<Key> keys = parallel_map(unique.size(), jobs, [&](std::size_t i) {
    ExactReal n = unique[i].norm_sq();
    const double a = n.to_double();
    return Key{std::move(n), a, unique[i].to_string()};
  });
  std::vector<int> order(unique.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Key& ka = keys[static_cast<std::size_t>(a)];
    const Key& kb = keys[static_cast<std::size_t>(b)];
    const double scale = std::max({1.0, std::abs(ka.approx), std::abs(kb.approx)});
    if (std::abs(ka.approx - kb.approx) > 1e-9 * scale) return ka.approx < kb.approx;
    const int c = compare(ka.norm, kb.norm);
    if (c != 0) return c < 0;
    return ka.text < kb.text;
  });

  UnitGraph g;
  g.vertices_.reserve(unique.size());
  for (int idx : order) g.vertices_.push_back(std::move(unique[static_cast<std::size_t>(idx)]));
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) g.index_.emplace(g.vertices_[i], static_cast<int>(i));
  g.edges_ = unit_edges(g.vertices_, mode, jobs);
  g.adjacency_.assign(g.vertices_.size(), {});
  for (const auto& [u, v] : g.edges_) {
    g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& row : g.adjacency_) std::sort(row.begin(), row.end());
  return g;
}

bool UnitGraph::adjacent(int u, int v) const {
  const auto& row = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(row.begin(), row.end(), v);
}

std::optional<int> UnitGraph::index_of(const ExactPoint& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

UnitGraph UnitGraph::induced(std::span<const int> keep) const {
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> remap(vertices_.size(), -1);
  UnitGraph g;
  g.vertices_.reserve(sorted.size());
  for (int old : sorted) {
    remap[static_cast<std::size_t>(old)] = static_cast<int>(g.vertices_.size());
    g.index_.emplace(vertices_[static_cast<std::size_t>(old)], static_cast<int>(g.vertices_.size()));
    g.vertices_.push_back(vertices_[static_cast<std::size_t>(old)]);
  }
  g.adjacency_.assign(sorted.size(), {});
  for (const auto& [u, v] : edges_) {
    const int a = remap[static_cast<std::size_t>(u)];
    const int b = remap[static_cast<std::size_t>(v)];
    if (a < 0 || b < 0) continue;
    g.edges_.emplace_back(a, b);
    g.adjacency_[static_cast<std::size_t>(a)].push_back(b);
    g.adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  for (auto& row : g.adjacency_) std::sort(row.begin(), row.end());
  return g;
}

UnitGraph UnitGraph::without(std::span<const int> removed) const {
  std::vector<char> drop(vertices_.size(), 0);
  for (int r : removed) drop[static_cast<std::size_t>(r)] = 1;
  std::vector<int> keep;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!drop[i]) keep.push_back(static_cast<int>(i));
  }
  return induced(keep);
}

UnitGraph UnitGraph::transformed(const Transform& t) const {
  std::vector<ExactPoint> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(t.apply(v));
  return from_points(std::move(pts));
}

bool UnitGraph::audit_strictness() const { return unit_edges(vertices_, EdgeMode::exhaustive) == edges_; }

UnitGraph from_points(std::vector<ExactPoint> points) { return UnitGraph::from_points(std::move(points)); }

UnitGraph minkowski(const UnitGraph& g1, const UnitGraph& g2, unsigned jobs) {
  std::vector<ExactPoint> pts;
  pts.reserve(g1.size() * g2.size());
  for (const auto& a : g1.vertices()) {
    for (const auto& b : g2.vertices()) pts.push_back(a + b);
  }
  return UnitGraph::from_points(std::move(pts), EdgeMode::shortlist, jobs);
}

UnitGraph minkowski_power(const UnitGraph& g, int n, unsigned jobs) {
  if (n < 1) throw std::invalid_argument("Minkowski power needs n >= 1");
  UnitGraph acc = g;
  for (int i = 1; i < n; ++i) acc = minkowski(acc, g, jobs);
  return acc;
}

UnitGraph graph_union(const UnitGraph& g1, const UnitGraph& g2, unsigned jobs) {
  std::vector<ExactPoint> pts = g1.vertices();
  pts.insert(pts.end(), g2.vertices().begin(), g2.vertices().end());
  return UnitGraph::from_points(std::move(pts), EdgeMode::shortlist, jobs);
}

UnitGraph rotation_set(const UnitGraph& g, std::span<const int> exponents, unsigned jobs) {
  const ExactPoint eta = rotor(RotorName::eta).multiplier;
  std::vector<ExactPoint> pts;
  for (int e : exponents) {
    const ExactPoint m = power(eta, e);
    for (const auto& v : g.vertices()) pts.push_back(m * v);
  }
  return UnitGraph::from_points(std::move(pts), EdgeMode::shortlist, jobs);
}

UnitGraph rotation_power(const UnitGraph& g, int m, unsigned jobs) {
  if (m < 0) throw std::invalid_argument("rotation power must be non-negative");
  std::vector<int> exps;
  for (int e = -m; e <= m; ++e) exps.push_back(e);
  return rotation_set(g, exps, jobs);
}

UnitGraph trim(const UnitGraph& g, const ExactReal& r_sq) {
  if (r_sq.sign() < 0) throw std::invalid_argument("trim radius must be non-negative");
  std::vector<int> keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (compare(g.vertices()[i].norm_sq(), r_sq) <= 0) keep.push_back(static_cast<int>(i));
  }
  return g.induced(keep);
}

UnitGraph wheel() {
  const ExactReal half(Rational(1, 2));
  const ExactReal h3 = ExactReal::sqrt_of(3, Rational(1, 2));
  return from_points({{0, 0}, {1, 0}, {-1, 0}, {half, h3}, {half, -h3}, {-half, h3}, {-half, -h3}});
}

UnitGraph rhombus() {
  const ExactReal half(Rational(1, 2));
  const ExactReal h3 = ExactReal::sqrt_of(3, Rational(1, 2));
  return from_points({{0, 0}, {half, h3}, {-half, h3}, {0, ExactReal::sqrt_of(3)}});
}

UnitGraph moser() {
  const UnitGraph d = rhombus();
  const ExactPoint eta2 = power(rotor(RotorName::eta).multiplier, 2);
  Transform t;
  t.multiplier = eta2;
  return graph_union(d, d.transformed(t));
}

std::optional<UnitGraph> named_graph(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, UnitGraph> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(name); it != cache.end()) return it->second;

  auto scaled = [](const UnitGraph& g, RotorName r) { return g.transformed(rotor(r)); };
  std::optional<UnitGraph> g;
  if (name == "H") {
    g = wheel();
  } else if (name == "D") {
    g = rhombus();
  } else if (name == "MOSER") {
    g = moser();
  } else if (name == "V25") {
    g = graph_union(rotation_power(wheel(), 1), scaled(wheel(), RotorName::i_over_sqrt3));
  } else if (name == "V31") {
    g = rotation_power(wheel(), 2);
  } else if (name == "V31S") {
    // S-side 31-vertex graph: H^1 ∪ i√3·H^{-1,1}. The scaled copy has no unit
    // edges of its own; it only attaches to H^1.
    const std::vector<int> exps{-1, 1};
    const Transform i_sqrt3{Transform::Kind::multiply, ExactPoint(0, ExactReal::sqrt_of(3))};
    g = graph_union(rotation_power(wheel(), 1), rotation_set(wheel(), exps).transformed(i_sqrt3));
  } else if (name == "V37") {
    const UnitGraph h1 = rotation_power(wheel(), 1);
    g = graph_union(h1, scaled(h1, RotorName::i_over_sqrt3));
  } else if (name == "V37T") {
    const UnitGraph h1 = rotation_power(wheel(), 1);
    g = graph_union(h1, scaled(h1, RotorName::rho));
  } else if (name == "V49") {
    g = graph_union(rotation_power(wheel(), 2), scaled(rotation_power(wheel(), 1), RotorName::i_over_sqrt3));
  }
  if (g) cache.emplace(name, *g);
  return g;
}

}  // namespace udg
