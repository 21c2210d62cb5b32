#include "udg/symmetry.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace udg {

namespace {

long halve(long x) {
  if (x % 2 != 0) throw std::domain_error("τ rotation left the integer lattice: not a base-graph point");
  return x / 2;
}

long scale_for(int h) {
  long s = 4;
  for (int i = 0; i < h; ++i) s *= 3;
  return s;
}

std::optional<long> integral(const Rational& q) {
  if (q.get_den() != 1) return std::nullopt;
  if (!q.get_num().fits_slong_p()) return std::nullopt;
  return q.get_num().get_si();
}

auto member_key(const BaseCoord& v) {
  int nonzero = 0;
  int negative = 0;
  for (long x : v.abcd) {
    nonzero += x != 0;
    negative += x < 0;
  }
  return std::tuple(nonzero, negative, v.abcd);
}

struct BaseCoordHash {
  std::size_t operator()(const BaseCoord& v) const {
    std::size_t h = static_cast<std::size_t>(v.h);
    for (long x : v.abcd) h = h * 1000003u ^ static_cast<std::size_t>(x + (1L << 20));
    return h;
  }
};

ExactReal radius_sq(const BaseCoord& v) { return v.to_point().norm_sq(); }

// Orbit order shared by decomposition and tables.
bool orbit_before(std::size_t size_a, const ExactReal& r_a, const BaseCoord& rep_a, std::size_t size_b,
                  const ExactReal& r_b, const BaseCoord& rep_b) {
  if (size_a != size_b) return size_a < size_b;
  const int c = compare(r_a, r_b);
  if (c != 0) return c < 0;
  return rep_b < rep_a;
}

ExactReal min_radius(const BaseCoord& rep) {
  ExactReal r1 = radius_sq(rep);
  ExactReal r2 = radius_sq(tau_apply(5, rep));
  return compare(r1, r2) <= 0 ? r1 : r2;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
  return r;
}

}  // namespace

bool BaseCoord::satisfies_parity() const { return (((a() - b() + c() + d()) % 4) + 4) % 4 == 0; }

ExactPoint BaseCoord::to_point() const {
  const Rational inv(1, scale_for(h));
  ExactReal re = ExactReal(Rational(a()) * inv) + ExactReal::sqrt_of(33, Rational(b()) * inv);
  ExactReal im = ExactReal::sqrt_of(3, Rational(c()) * inv) + ExactReal::sqrt_of(11, Rational(d()) * inv);
  return {std::move(re), std::move(im)};
}

std::string BaseCoord::to_string() const {
  std::ostringstream os;
  os << '(' << a() << ',' << b() << ',' << c() << ',' << d() << ')';
  if (h != 1) os << "/h" << h;
  return os.str();
}

std::optional<BaseCoord> to_base_coord(const ExactPoint& p, std::optional<int> h) {
  for (const auto& t : p.re.terms()) {
    if (t.radicand != 1 && t.radicand != 33) return std::nullopt;
  }
  for (const auto& t : p.im.terms()) {
    if (t.radicand != 3 && t.radicand != 11) return std::nullopt;
  }
  std::vector<int> tries;
  if (h) {
    tries.push_back(*h);
  } else {
    tries = {1, 0, 2, 3, 4, 5, 6};
  }
  for (int hh : tries) {
    const Rational s(scale_for(hh));
    auto a = integral(p.re.coeff(1) * s);
    auto b = integral(p.re.coeff(33) * s);
    auto c = integral(p.im.coeff(3) * s);
    auto d = integral(p.im.coeff(11) * s);
    if (a && b && c && d) return BaseCoord{{*a, *b, *c, *d}, hh};
  }
  return std::nullopt;
}

BaseCoord tau_apply(int k, const BaseCoord& v) {
  const long a = v.a(), b = v.b(), c = v.c(), d = v.d();
  BaseCoord r = v;
  switch (k) {
    case 0:
      break;
    case 1:
      r.abcd = {halve(-a - 3 * c), halve(-b - d), halve(a - c), halve(3 * b - d)};
      break;
    case 2:
      r.abcd = {halve(-a + 3 * c), halve(-b + d), halve(-a - c), halve(-3 * b - d)};
      break;
    case 3:
      r.abcd = {-a, -b, c, d};
      break;
    case 4:
      r.abcd = {a, b, -c, -d};
      break;
    case 5:
      r.abcd = {a, -b, c, -d};
      break;
    default:
      throw std::invalid_argument("τ index must be in 0..5");
  }
  return r;
}

std::vector<BaseCoord> orbit_members(const BaseCoord& v) {
  std::vector<BaseCoord> out{v};
  std::set<BaseCoord> seen{v};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int k : {1, 3, 4, 5}) {
      BaseCoord w = tau_apply(k, out[i]);
      if (seen.insert(w).second) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end(), [](const BaseCoord& x, const BaseCoord& y) { return member_key(x) < member_key(y); });
  return out;
}

BaseCoord orbit_representative(const BaseCoord& v) { return orbit_members(v).front(); }

std::vector<Orbit> orbit_decompose(std::span<const BaseCoord> points) {
  std::map<BaseCoord, std::size_t> slot;
  std::vector<Orbit> orbits;
  std::unordered_map<BaseCoord, BaseCoord, BaseCoordHash> rep_of;
  for (const auto& p : points) {
    BaseCoord rep;
    if (auto it = rep_of.find(p); it != rep_of.end()) {
      rep = it->second;
    } else {
      const auto members = orbit_members(p);
      rep = members.front();
      for (const auto& m : members) rep_of.emplace(m, rep);
      if (!slot.count(rep)) {
        slot.emplace(rep, orbits.size());
        Orbit o;
        o.representative = rep;
        o.full_size = members.size();
        o.min_radius_sq = min_radius(rep);
        orbits.push_back(std::move(o));
      }
    }
    auto& members = orbits[slot.at(rep)].members;
    if (std::find(members.begin(), members.end(), p) == members.end()) members.push_back(p);
  }
  for (auto& o : orbits) std::sort(o.members.begin(), o.members.end());
  std::sort(orbits.begin(), orbits.end(), [](const Orbit& x, const Orbit& y) {
    return orbit_before(x.full_size, x.min_radius_sq, x.representative, y.full_size, y.min_radius_sq,
                        y.representative);
  });
  return orbits;
}

std::vector<BaseCoord> base_graph_coords(int n, int m) {
  if (n < 1 || m < 0 || m > 2) throw std::invalid_argument("base graph needs n >= 1 and 0 <= m <= 2");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<BaseCoord>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find({n, m}); it != cache.end()) return it->second;

  std::vector<BaseCoord> unit;
  const UnitGraph hm = rotation_power(wheel(), m);
  for (const auto& p : hm.vertices()) {
    auto bc = to_base_coord(p, 1);
    if (!bc) throw std::logic_error("H^m vertex without base form");
    unit.push_back(*bc);
  }
  std::unordered_set<BaseCoord, BaseCoordHash> acc(unit.begin(), unit.end());
  for (int i = 1; i < n; ++i) {
    std::unordered_set<BaseCoord, BaseCoordHash> next;
    next.reserve(acc.size() * 8);
    for (const auto& x : acc) {
      for (const auto& y : unit) {
        BaseCoord s;
        for (int k = 0; k < 4; ++k) s.abcd[static_cast<std::size_t>(k)] = x.abcd[static_cast<std::size_t>(k)] + y.abcd[static_cast<std::size_t>(k)];
        next.insert(s);
      }
    }
    acc = std::move(next);
  }
  std::vector<BaseCoord> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  cache.emplace(std::pair{n, m}, out);
  return out;
}

std::vector<Orbit> enumerate_disk_orbits(const Rational& r, int n, int m) {
  if (sgn(r) <= 0) throw std::invalid_argument("disk radius must be positive");
  const ExactReal r_sq(r * r);
  const auto coords = base_graph_coords(n, m);
  std::set<BaseCoord> reps;
  std::unordered_set<BaseCoord, BaseCoordHash> visited;
  for (const auto& p : coords) {
    if (visited.count(p)) continue;
    const auto members = orbit_members(p);
    visited.insert(members.begin(), members.end());
    reps.insert(members.front());
  }
  std::vector<Orbit> out;
  for (const auto& rep : reps) {
    ExactReal rr = min_radius(rep);
    if (compare(rr, r_sq) > 0) continue;
    Orbit o;
    o.representative = rep;
    o.members = orbit_members(rep);
    o.full_size = o.members.size();
    o.min_radius_sq = std::move(rr);
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const Orbit& x, const Orbit& y) {
    return orbit_before(x.full_size, x.min_radius_sq, x.representative, y.full_size, y.min_radius_sq,
                        y.representative);
  });
  return out;
}

DiskOrbitReport abcd_report(const std::vector<Orbit>& orbits, std::span<const BaseCoord> selected_reps) {
  DiskOrbitReport r;
  r.orbits = orbits.size();
  r.selected = selected_reps.size();
  for (const auto& rep : selected_reps) {
    if (rep.a() * rep.b() * rep.c() * rep.d() == 0) ++r.selected_with_zero_product;
  }
  return r;
}

PermGroup PermGroup::trivial(std::size_t degree) { return generated_by({}, degree); }

PermGroup PermGroup::generated_by(std::vector<Permutation> generators, std::size_t degree) {
  PermGroup g;
  g.degree_ = degree;
  Permutation identity(degree);
  for (std::size_t i = 0; i < degree; ++i) identity[i] = static_cast<int>(i);
  std::erase_if(generators, [&](const Permutation& p) { return p == identity; });
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  g.generators_ = generators;
  std::set<Permutation> seen{identity};
  g.elements_.push_back(identity);
  for (std::size_t i = 0; i < g.elements_.size(); ++i) {
    for (const auto& gen : g.generators_) {
      Permutation next = compose(gen, g.elements_[i]);
      if (seen.insert(next).second) g.elements_.push_back(std::move(next));
    }
  }
  std::sort(g.elements_.begin() + 1, g.elements_.end());
  return g;
}

std::vector<int> PermGroup::orbit_of(int point) const {
  std::vector<int> out;
  for (const auto& e : elements_) out.push_back(e[static_cast<std::size_t>(point)]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExactPoint PlaneSymmetry::apply(const ExactPoint& p) const {
  static const ExactPoint omega{ExactReal(Rational(-1, 2)), ExactReal::sqrt_of(3, Rational(1, 2))};
  static const ExactPoint eta = rotor(RotorName::eta).multiplier;
  ExactPoint q = eta_power == 0 ? p : power(eta, eta_power) * p;
  if (conjugate) q = conj_sqrt33(q);
  if (reflect_horizontal) q = q.conj();
  if (reflect_vertical) q = {-q.re, q.im};
  for (int i = 0; i < rotation; ++i) q = omega * q;
  return q;
}

std::vector<PlaneSymmetry> candidate_symmetries(bool with_eta) {
  std::vector<PlaneSymmetry> out;
  const int eta_max = with_eta ? 4 : 0;
  for (int k = -eta_max; k <= eta_max; ++k) {
    for (int r = 0; r < 3; ++r) {
      for (int mask = 0; mask < 8; ++mask) {
        out.push_back({r, (mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0, k});
      }
    }
  }
  return out;
}

PermGroup geometric_auts(const UnitGraph& g) {
  std::vector<Permutation> perms;
  for (const auto& sym : candidate_symmetries()) {
    Permutation perm(g.size());
    bool ok = true;
    for (std::size_t i = 0; i < g.size() && ok; ++i) {
      auto j = g.index_of(sym.apply(g.vertices()[i]));
      if (!j) {
        ok = false;
      } else {
        perm[i] = *j;
      }
    }
    if (ok) perms.push_back(std::move(perm));
  }
  return PermGroup::generated_by(std::move(perms), g.size());
}

PermGroup setwise_stabilizer(const PermGroup& group, std::span<const int> fixed) {
  std::vector<int> base(fixed.begin(), fixed.end());
  std::sort(base.begin(), base.end());
  std::vector<Permutation> keep;
  for (const auto& e : group.elements()) {
    std::vector<int> image;
    for (int f : base) image.push_back(e[static_cast<std::size_t>(f)]);
    std::sort(image.begin(), image.end());
    if (image == base) keep.push_back(e);
  }
  return PermGroup::generated_by(std::move(keep), group.degree());
}

std::vector<int> canonical_subset(std::span<const int> subset, const PermGroup& group) {
  std::vector<int> best(subset.begin(), subset.end());
  std::sort(best.begin(), best.end());
  std::vector<int> image(best.size());
  for (const auto& e : group.elements()) {
    for (std::size_t i = 0; i < best.size(); ++i) image[i] = e[static_cast<std::size_t>(subset[i])];
    std::sort(image.begin(), image.end());
    if (image < best) best = image;
  }
  return best;
}

std::vector<std::vector<int>> canonicalize_subsets(std::vector<std::vector<int>> subsets, const PermGroup& group) {
  for (auto& s : subsets) s = canonical_subset(s, group);
  std::sort(subsets.begin(), subsets.end());
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
  return subsets;
}

std::vector<OrbitRow> orbit_table(const UnitGraph& a, const UnitGraph& m, const std::vector<UnitGraph>& set_m) {
  auto rep_of = [](const ExactPoint& p) {
    auto bc = to_base_coord(p, 1);
    if (!bc) throw std::invalid_argument("vertex " + p.to_string() + " has no base-graph coordinates");
    return orbit_representative(*bc);
  };
  struct Acc {
    OrbitRow row;
    ExactReal radius;
    std::vector<std::size_t> per_graph;
    int a_degree = 0;
  };
  std::map<BaseCoord, Acc> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const BaseCoord rep = rep_of(a.vertices()[i]);
    auto [it, fresh] = rows.try_emplace(rep);
    Acc& acc = it->second;
    if (fresh) {
      acc.row.orbit = rep;
      acc.row.full_size = orbit_members(rep).size();
      acc.radius = min_radius(rep);
      acc.per_graph.assign(set_m.size(), 0);
    }
    ++acc.row.in_a;
    acc.a_degree = std::max(acc.a_degree, a.degree(static_cast<int>(i)));
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto it = rows.find(rep_of(m.vertices()[i]));
    if (it == rows.end()) throw std::invalid_argument("M is not a subgraph of A");
    ++it->second.row.in_m;
    it->second.row.max_degree = std::max(it->second.row.max_degree, m.degree(static_cast<int>(i)));
  }
  for (std::size_t g = 0; g < set_m.size(); ++g) {
    for (const auto& v : set_m[g].vertices()) {
      auto it = rows.find(rep_of(v));
      if (it == rows.end()) throw std::invalid_argument("{M} member is not a subgraph of A");
      ++it->second.per_graph[g];
    }
  }
  std::vector<Acc*> order;
  for (auto& [rep, acc] : rows) {
    if (acc.row.in_m == 0) acc.row.max_degree = acc.a_degree;
    if (acc.per_graph.empty()) {
      acc.row.setm_min = acc.row.setm_max = acc.row.in_m;
    } else {
      acc.row.setm_min = *std::min_element(acc.per_graph.begin(), acc.per_graph.end());
      acc.row.setm_max = *std::max_element(acc.per_graph.begin(), acc.per_graph.end());
    }
    acc.row.filled = acc.row.in_m == acc.row.full_size;
    order.push_back(&acc);
  }
  std::sort(order.begin(), order.end(), [](const Acc* x, const Acc* y) {
    return orbit_before(x->row.full_size, x->radius, x->row.orbit, y->row.full_size, y->radius, y->row.orbit);
  });
  std::vector<OrbitRow> out;
  for (const Acc* acc : order) out.push_back(acc->row);
  return out;
}

std::string format_orbit_table(const std::vector<OrbitRow>& rows, std::size_t m_order, std::size_t a_order) {
  std::ostringstream os;
  os << "orbit\tdeg\tM=G" << m_order << "\t{M}\tA=G" << a_order << "\tfilled\n";
  for (const auto& r : rows) {
    os << r.orbit.to_string() << '\t' << r.max_degree << '\t' << r.in_m << '\t';
    if (r.setm_min == r.setm_max) {
      os << r.setm_min;
    } else {
      os << r.setm_min << '-' << r.setm_max;
    }
    os << '\t' << r.in_a << '\t' << (r.filled ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace udg
