#pragma once

// Small minimization instances shared by the unit and acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include "udg/expr.hpp"
#include "udg/graph.hpp"

namespace toy {

inline udg::UnitGraph moser_with_isolated(int count) {
  std::vector<udg::ExactPoint> pts = udg::moser().vertices();
  for (int i = 0; i < count; ++i) pts.emplace_back(udg::ExactReal(10 + 3 * i), udg::ExactReal(7));
  return udg::UnitGraph::from_points(pts);
}

/// MOSER plus `count` points of MOSER ⊕ H picked by a seeded shuffle, so the
/// noise is attached to the spindle by unit edges.
inline std::vector<udg::ExactPoint> planted_noise(int count, unsigned seed) {
  const udg::UnitGraph base = udg::moser();
  const udg::UnitGraph sums = udg::minkowski(base, udg::wheel());
  std::vector<udg::ExactPoint> pool;
  for (const auto& p : sums.vertices()) {
    if (!base.contains(p)) pool.push_back(p);
  }
  std::mt19937 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

inline udg::UnitGraph moser_with_noise(int count, unsigned seed) {
  std::vector<udg::ExactPoint> pts = udg::moser().vertices();
  for (const auto& p : planted_noise(count, seed)) pts.push_back(p);
  return udg::UnitGraph::from_points(pts);
}

/// Two disjoint spindles three units apart joined by one bridge vertex.
inline udg::UnitGraph twin_spindles() {
  std::vector<udg::ExactPoint> pts = udg::moser().vertices();
  const udg::UnitGraph second = udg::moser();
  for (const auto& p : second.vertices()) pts.push_back(p + udg::ExactPoint(3, 0));
  pts.emplace_back(udg::ExactReal(udg::Rational(3, 2)), udg::ExactReal::sqrt_of(3, udg::Rational(1, 2)));
  return udg::UnitGraph::from_points(pts);
}

}  // namespace toy
