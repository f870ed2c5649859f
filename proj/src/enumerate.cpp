#include "emptystar/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "combinatorics.hpp"
#include "emptystar/special.hpp"

namespace emptystar {
namespace {

using detail::first_combination;
using detail::next_combination;

// Above this many counters a k-tuple table is refused.
constexpr std::uint64_t kMaxTupleTable = std::uint64_t{1} << 28;

void check_enumerable(const PointSet& X) {
  if (X.size() < static_cast<std::size_t>(X.dim()) + 1)
    throw std::invalid_argument("need at least d+1 = " + std::to_string(X.dim() + 1) + " points, got " +
                                std::to_string(X.size()));
  if (X.size() > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("too many points");
}

// Above this many bytes the facet-side table is not built.
constexpr std::size_t kMaxSideTableBytes = std::size_t{1} << 28;

// Side-of-facet bitsets: for every d-subset F (colex rank) the points strictly
// on the positive and on the negative side of aff(F). A point lies in the
// open simplex iff, for each facet, it is on the side of the opposite vertex.
template <class Emit>
bool naive_enumerate_tabled(const PointSet& X, Emit& emit) {
  const int d = X.dim();
  const auto n = static_cast<std::uint32_t>(X.size());
  const std::size_t words = (n + 63) / 64;
  const double facets = binomial(n, static_cast<unsigned>(d));
  if (facets * static_cast<double>(words) * 16.0 > static_cast<double>(kMaxSideTableBytes)) return false;

  const auto dd = static_cast<std::size_t>(d);
  std::vector<std::uint64_t> binom((n + 1) * (dd + 1), 0);
  for (std::size_t v = 0; v <= n; ++v) {
    binom[v * (dd + 1)] = 1;
    for (std::size_t j = 1; j <= dd && j <= v; ++j)
      binom[v * (dd + 1) + j] = binom[(v - 1) * (dd + 1) + j - 1] + binom[(v - 1) * (dd + 1) + j];
  }
  auto rank = [&](const std::uint32_t* f) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < dd; ++i) r += binom[static_cast<std::size_t>(f[i]) * (dd + 1) + i + 1];
    return r;
  };

  const auto count = static_cast<std::size_t>(facets);
  std::vector<std::uint64_t> pos(count * words, 0), neg(count * words, 0);
  std::vector<const double*> ptrs(dd + 1);
  auto facet = first_combination(dd);
  do {
    const std::uint64_t r = rank(facet.data());
    for (std::size_t i = 0; i < dd; ++i) ptrs[i] = X.data(facet[i]);
    std::size_t next_member = 0;
    for (std::uint32_t p = 0; p < n; ++p) {
      // Facet vertices sit on the facet; skip the (slow, exact) zero case.
      if (next_member < dd && facet[next_member] == p) {
        ++next_member;
        continue;
      }
      ptrs[dd] = X.data(p);
      const int sgn = orientation_raw(ptrs, d);
      if (sgn > 0) pos[r * words + p / 64] |= std::uint64_t{1} << (p % 64);
      else if (sgn < 0) neg[r * words + p / 64] |= std::uint64_t{1} << (p % 64);
    }
  } while (next_combination(facet, n));

  auto side_of = [&](std::uint64_t r, std::uint32_t p) -> const std::uint64_t* {
    const std::uint64_t bit = std::uint64_t{1} << (p % 64);
    return (pos[r * words + p / 64] & bit) ? &pos[r * words] : &neg[r * words];
  };
  std::vector<std::uint64_t> inside(words);
  std::vector<std::uint32_t> f(dd);
  std::vector<const std::uint64_t*> masks(dd + 1);
  auto simplex = first_combination(dd + 1);
  do {
    for (std::size_t i = 0; i <= dd; ++i) {
      std::size_t t = 0;
      for (std::size_t j = 0; j <= dd; ++j)
        if (j != i) f[t++] = simplex[j];
      masks[i] = side_of(rank(f.data()), simplex[i]);
    }
    bool empty = true;
    for (std::size_t w = 0; w < words && empty; ++w) {
      std::uint64_t acc = masks[0][w];
      for (std::size_t i = 1; i <= dd && acc; ++i) acc &= masks[i][w];
      empty = acc == 0;
    }
    if (empty) emit(std::span<const std::uint32_t>(simplex));
  } while (next_combination(simplex, n));
  return true;
}

template <class Emit>
void naive_enumerate(const PointSet& X, Emit&& emit) {
  require_general_position(X);
  if (naive_enumerate_tabled(X, emit)) return;
  const int d = X.dim();
  const auto n = static_cast<std::uint32_t>(X.size());
  std::vector<int> side(n);
  std::vector<const double*> ptrs(static_cast<std::size_t>(d) + 1);
  std::vector<std::uint32_t> simplex(static_cast<std::size_t>(d) + 1);

  // Every simplex is a d-prefix plus a larger last vertex. For one prefix the
  // side of each point relative to the prefix facet is computed once; a point
  // can only lie inside if it is on the same side as the last vertex.
  auto prefix = first_combination(static_cast<std::size_t>(d));
  do {
    if (prefix.back() + 1 >= n) continue;
    for (int i = 0; i < d; ++i) ptrs[i] = X.data(prefix[i]);
    for (std::uint32_t p = 0; p < n; ++p) {
      ptrs[d] = X.data(p);
      side[p] = std::find(prefix.begin(), prefix.end(), p) != prefix.end() ? 0 : orientation_raw(ptrs, d);
    }
    std::copy(prefix.begin(), prefix.end(), simplex.begin());
    for (std::uint32_t last = prefix.back() + 1; last < n; ++last) {
      const int s = side[last];
      simplex[d] = last;
      bool empty = true;
      for (std::uint32_t p = 0; p < n && empty; ++p) {
        if (side[p] != s || p == last) continue;
        const double* q = X.data(p);
        bool inside = true;
        for (int i = 0; i < d && inside; ++i) {
          for (int j = 0; j < d; ++j) ptrs[j] = X.data(simplex[j]);
          ptrs[d] = X.data(last);
          ptrs[i] = q;
          inside = orientation_raw(ptrs, d) == s;
        }
        if (inside) empty = false;
      }
      if (empty) emit(std::span<const std::uint32_t>(simplex));
    }
  } while (next_combination(prefix, n));
}

// Angular visibility sweep. For each anchor p (in lexicographic order) the
// points after it lie in an open-closed half-plane; sorted by angle around p
// they form a star-shaped polygon whose visibility edges (i, j) are exactly
// the empty triangles (p, q_i, q_j).
template <class Emit>
class PlanarVisibility {
 public:
  PlanarVisibility(const PointSet& X, Emit& emit) : X_(X), emit_(emit) {}

  void run() {
    const auto n = static_cast<std::uint32_t>(X_.size());
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const double* pa = X_.data(a);
      const double* pb = X_.data(b);
      return pa[0] < pb[0] || (pa[0] == pb[0] && pa[1] < pb[1]);
    });
    for (std::uint32_t a = 0; a + 2 < n; ++a) {
      anchor_ = order[a];
      const double* p = X_.data(anchor_);
      q_.assign(order.begin() + a + 1, order.end());
      std::sort(q_.begin(), q_.end(),
                [&](std::uint32_t u, std::uint32_t v) { return orient2d(p, X_.data(u), X_.data(v)) > 0; });
      const std::size_t m = q_.size();
      for (std::size_t i = 0; i + 1 < m; ++i) {
        if (orient2d(p, X_.data(q_[i]), X_.data(q_[i + 1])) == 0) {
          std::vector<std::uint32_t> bad{anchor_, q_[i], q_[i + 1]};
          std::sort(bad.begin(), bad.end());
          throw DegenerateInput("points not in general position: collinear triple {" + std::to_string(bad[0]) +
                                    ", " + std::to_string(bad[1]) + ", " + std::to_string(bad[2]) + "}",
                                bad);
        }
      }
      queues_.assign(m, {});
      head_.assign(m, 0);
      for (std::size_t i = 0; i + 1 < m; ++i) proceed(i, i + 1);
    }
  }

 private:
  void proceed(std::size_t i, std::size_t j) {
    auto& qi = queues_[i];
    const double* pi = X_.data(q_[i]);
    const double* pj = X_.data(q_[j]);
    while (head_[i] < qi.size() && orient2d(X_.data(q_[qi[head_[i]]]), pi, pj) > 0) {
      proceed(qi[head_[i]], j);
      ++head_[i];
    }
    std::array<std::uint32_t, 3> t{anchor_, q_[i], q_[j]};
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    if (t[1] > t[2]) std::swap(t[1], t[2]);
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    emit_(std::span<const std::uint32_t>(t));
    queues_[j].push_back(static_cast<std::uint32_t>(i));
  }

  const PointSet& X_;
  Emit& emit_;
  std::uint32_t anchor_ = 0;
  std::vector<std::uint32_t> q_;
  std::vector<std::vector<std::uint32_t>> queues_;
  std::vector<std::size_t> head_;
};

template <class Emit>
void planar_enumerate(const PointSet& X, Emit&& emit) {
  if (X.dim() != 2) throw std::invalid_argument("fast planar enumeration needs d = 2");
  // Collinear triples are detected by the sweep itself.
  PlanarVisibility<std::remove_reference_t<Emit>> sweep(X, emit);
  sweep.run();
}

template <class Emit>
void dispatch(const PointSet& X, EnumerationMethod method, Emit&& emit) {
  check_enumerable(X);
  switch (method) {
    case EnumerationMethod::kAuto:
      if (X.dim() == 2) return planar_enumerate(X, emit);
      return naive_enumerate(X, emit);
    case EnumerationMethod::kNaive:
      return naive_enumerate(X, emit);
    case EnumerationMethod::kFastPlanar:
      return planar_enumerate(X, emit);
  }
}

std::vector<SimplexKey> collect_sorted(const PointSet& X, EnumerationMethod method) {
  std::vector<SimplexKey> out;
  dispatch(X, method, [&](std::span<const std::uint32_t> s) {
    out.emplace_back(std::vector<std::uint32_t>(s.begin(), s.end()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

void check_tuple(const SimplexKey& S, const PointSet& X) {
  if (S.size() < 1 || S.size() > static_cast<std::size_t>(X.dim()))
    throw std::invalid_argument("tuple size must be in [1, d]");
  for (auto i : S.indices())
    if (i >= X.size()) throw std::invalid_argument("tuple index " + std::to_string(i) + " out of range");
}

// Calls f(simplex) for every empty simplex containing S, in lexicographic
// order of the completing vertices.
template <class F>
void for_each_completion(const SimplexKey& S, const PointSet& X, F&& f) {
  check_tuple(S, X);
  require_general_position(X);
  const std::size_t need = static_cast<std::size_t>(X.dim()) + 1 - S.size();
  std::vector<std::uint32_t> rest;
  for (std::uint32_t i = 0; i < X.size(); ++i)
    if (!S.contains(i)) rest.push_back(i);
  if (rest.size() < need) return;
  auto pick = first_combination(need);
  std::vector<std::uint32_t> simplex;
  do {
    simplex.assign(S.indices().begin(), S.indices().end());
    for (auto c : pick) simplex.push_back(rest[c]);
    std::sort(simplex.begin(), simplex.end());
    if (is_empty_simplex(X, simplex)) f(simplex);
  } while (next_combination(pick, static_cast<std::uint32_t>(rest.size())));
}

// Neighbor lists (j > i, |x_i - x_j| <= r), built from a grid of cell size r.
std::vector<std::vector<std::uint32_t>> close_pairs(const PointSet& X, double r) {
  const std::size_t n = X.size();
  const int d = X.dim();
  std::vector<std::vector<std::uint32_t>> adj(n);
  if (!(r > 0.0) || n < 2) return adj;
  const double r2 = r * r;
  auto close = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (int c = 0; c < d; ++c) {
      const double t = X.data(i)[c] - X.data(j)[c];
      s += t * t;
    }
    return s <= r2;
  };

  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) {
      lo[c] = std::min(lo[c], X.data(i)[c]);
      hi[c] = std::max(hi[c], X.data(i)[c]);
    }
  bool brute = std::pow(3.0, d) >= static_cast<double>(n);
  for (int c = 0; c < d; ++c)
    if (!((hi[c] - lo[c]) / r < 1e15)) brute = true;
  if (brute) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (close(i, j)) adj[i].push_back(static_cast<std::uint32_t>(j));
    return adj;
  }

  std::vector<std::int64_t> cell(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) cell[i * d + c] = static_cast<std::int64_t>(std::floor((X.data(i)[c] - lo[c]) / r));
  auto key = [&](std::size_t i) { return std::span<const std::int64_t>(cell.data() + i * d, d); };
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto ka = key(a), kb = key(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
  });

  std::vector<std::int64_t> target(d);
  std::vector<int> off(d, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(off.begin(), off.end(), -1);
    while (true) {
      for (int c = 0; c < d; ++c) target[c] = cell[i * d + c] + off[c];
      auto less_key = [&](std::uint32_t a, const std::vector<std::int64_t>& t) {
        auto ka = key(a);
        return std::lexicographical_compare(ka.begin(), ka.end(), t.begin(), t.end());
      };
      auto it = std::lower_bound(order.begin(), order.end(), target, less_key);
      for (; it != order.end() && std::equal(target.begin(), target.end(), key(*it).begin()); ++it)
        if (*it > i && close(i, *it)) adj[i].push_back(*it);
      int c = 0;
      while (c < d && off[c] == 1) off[c++] = -1;
      if (c == d) break;
      ++off[c];
    }
    std::sort(adj[i].begin(), adj[i].end());
  }
  return adj;
}

// Depth-first clique extension over the forward neighbor lists.
template <class F>
void for_each_clique(const std::vector<std::vector<std::uint32_t>>& adj, int size, F&& f) {
  std::vector<std::uint32_t> clique;
  auto adjacent = [&](std::uint32_t a, std::uint32_t b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(clique.size()) == size) {
      f(std::span<const std::uint32_t>(clique));
      return;
    }
    for (auto v : adj[clique.back()]) {
      bool ok = true;
      for (std::size_t t = 0; t + 1 < clique.size() && ok; ++t) ok = adjacent(clique[t], v);
      if (!ok) continue;
      clique.push_back(v);
      self(self);
      clique.pop_back();
    }
  };
  for (std::uint32_t i = 0; i < adj.size(); ++i) {
    clique.assign(1, i);
    extend(extend);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

TupleDegrees::TupleDegrees(std::size_t n, int k) : n_(n), k_(k) {
  if (k < 1) throw std::invalid_argument("tuple size must be >= 1");
  const auto kk = static_cast<std::size_t>(k);
  binom_.assign((n + 1) * (kk + 1), 0);
  for (std::size_t v = 0; v <= n; ++v) {
    binom_[v * (kk + 1)] = 1;
    for (std::size_t j = 1; j <= kk && j <= v; ++j) {
      const std::uint64_t a = binom_[(v - 1) * (kk + 1) + j - 1];
      const std::uint64_t b = binom_[(v - 1) * (kk + 1) + j];
      if (a > kMaxTupleTable || b > kMaxTupleTable || a + b > kMaxTupleTable)
        binom_[v * (kk + 1) + j] = kMaxTupleTable + 1;
      else
        binom_[v * (kk + 1) + j] = a + b;
    }
  }
  const std::uint64_t total = binom_[n * (kk + 1) + kk];
  if (total > kMaxTupleTable)
    throw std::invalid_argument("degree table for C(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") tuples is too large");
  counts_.assign(total, 0);
}

std::uint64_t TupleDegrees::rank(std::span<const std::uint32_t> tuple) const {
  const auto kk = static_cast<std::size_t>(k_);
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < kk; ++i) r += binom_[static_cast<std::size_t>(tuple[i]) * (kk + 1) + i + 1];
  return r;
}

void TupleDegrees::add_simplex(std::span<const std::uint32_t> simplex) {
  const auto kk = static_cast<std::size_t>(k_);
  if (kk > simplex.size()) return;
  std::array<std::uint32_t, 32> sub{};
  std::array<std::uint32_t, 32> pick{};
  if (kk > sub.size()) throw std::invalid_argument("tuple size too large");
  for (std::size_t i = 0; i < kk; ++i) pick[i] = static_cast<std::uint32_t>(i);
  const std::size_t m = simplex.size();
  while (true) {
    for (std::size_t i = 0; i < kk; ++i) sub[i] = simplex[pick[i]];
    ++counts_[rank({sub.data(), kk})];
    std::size_t i = kk;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (pick[i] < m - kk + i) {
        ++pick[i];
        for (std::size_t j = i + 1; j < kk; ++j) pick[j] = pick[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
}

std::uint32_t TupleDegrees::at(std::span<const std::uint32_t> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(k_)) throw std::invalid_argument("tuple has wrong size");
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= n_) throw std::invalid_argument("tuple index out of range");
    if (i > 0 && tuple[i] <= tuple[i - 1]) throw std::invalid_argument("tuple must be strictly increasing");
  }
  return counts_[rank(tuple)];
}

std::uint64_t TupleDegrees::sum() const noexcept {
  std::uint64_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

std::pair<std::uint32_t, SimplexKey> TupleDegrees::max_with_witness() const {
  if (counts_.empty()) return {0, SimplexKey{}};
  const std::uint32_t best = *std::max_element(counts_.begin(), counts_.end());
  auto c = first_combination(static_cast<std::size_t>(k_));
  do {
    if (counts_[rank(c)] == best) return {best, SimplexKey(c)};
  } while (next_combination(c, static_cast<std::uint32_t>(n_)));
  return {best, SimplexKey{}};
}

void TupleDegrees::for_each_nonzero(
    const std::function<void(std::span<const std::uint32_t>, std::uint32_t)>& f) const {
  if (counts_.empty()) return;
  auto c = first_combination(static_cast<std::size_t>(k_));
  do {
    if (auto v = counts_[rank(c)]; v != 0) f(c, v);
  } while (next_combination(c, static_cast<std::uint32_t>(n_)));
}

// ---------------------------------------------------------------------------

void for_each_empty_simplex(const PointSet& X, const SimplexVisitor& visit, EnumerationMethod method) {
  dispatch(X, method, [&](std::span<const std::uint32_t> s) { visit(s); });
}

std::vector<SimplexKey> enumerate_empty_simplices_naive(const PointSet& X) {
  return collect_sorted(X, EnumerationMethod::kNaive);
}

std::vector<SimplexKey> fast_planar_empty_triangles(const PointSet& X) {
  return collect_sorted(X, EnumerationMethod::kFastPlanar);
}

bool is_empty_simplex(const PointSet& X, std::span<const std::uint32_t> simplex) {
  const int s = orientation(X, simplex);
  if (s == 0) throw DegenerateInput("flat simplex", {simplex.begin(), simplex.end()});
  for (std::uint32_t p = 0; p < X.size(); ++p) {
    if (std::find(simplex.begin(), simplex.end(), p) != simplex.end()) continue;
    if (point_in_open_simplex(X, p, simplex, s)) return false;
  }
  return true;
}

EmptySimplexReport count_empty_simplices(const PointSet& X, int k, EnumerationMethod method) {
  if (k < 1 || k > X.dim()) throw std::invalid_argument("k must be in [1, d]");
  EmptySimplexReport r;
  r.n = X.size();
  r.dim = X.dim();
  r.k = k;
  r.per_vertex_degree.assign(X.size(), 0);
  r.per_tuple_degree = TupleDegrees(X.size(), k);
  dispatch(X, method, [&](std::span<const std::uint32_t> s) {
    ++r.total;
    for (auto v : s) ++r.per_vertex_degree[v];
    r.per_tuple_degree.add_simplex(s);
  });
  auto [best, witness] = r.per_tuple_degree.max_with_witness();
  r.max_degree = best;
  r.witness = std::move(witness);
  return r;
}

std::uint64_t deg_tuple(const SimplexKey& S, const PointSet& X) {
  std::uint64_t count = 0;
  for_each_completion(S, X, [&](std::span<const std::uint32_t>) { ++count; });
  return count;
}

std::vector<SimplexKey> star(const SimplexKey& S, const PointSet& X) {
  std::vector<SimplexKey> out;
  for_each_completion(S, X, [&](std::span<const std::uint32_t> s) {
    out.emplace_back(std::vector<std::uint32_t>(s.begin(), s.end()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

DegreeMax deg_k_max(const PointSet& X, int k) {
  auto r = count_empty_simplices(X, k);
  return {r.max_degree, r.witness};
}

GammaFunctionalResult gamma_functionals(const PointSet& X, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be positive");
  require_general_position(X);
  GammaFunctionalResult g;
  g.gamma = gamma;
  const double n = static_cast<double>(X.size());
  g.threshold = std::pow(gamma * n, -1.0 / (X.dim() - 1));
  g.qualifying_bases = close_subsets(X, g.threshold, X.dim());
  g.n_count = g.qualifying_bases.size();
  for (const auto& b : g.qualifying_bases) g.f_value += deg_tuple(b, X);
  return g;
}

std::vector<SimplexKey> close_subsets(const PointSet& X, double threshold, int size) {
  if (size < 1) throw std::invalid_argument("subset size must be >= 1");
  std::vector<SimplexKey> out;
  if (size == 1) {
    for (std::uint32_t i = 0; i < X.size(); ++i) out.push_back(SimplexKey{i});
    return out;
  }
  for_each_clique(close_pairs(X, threshold), size, [&](std::span<const std::uint32_t> c) {
    out.emplace_back(std::vector<std::uint32_t>(c.begin(), c.end()));
  });
  return out;
}

std::uint64_t count_close_subsets(const PointSet& X, double threshold, int size) {
  if (size < 1) throw std::invalid_argument("subset size must be >= 1");
  if (size == 1) return X.size();
  std::uint64_t count = 0;
  for_each_clique(close_pairs(X, threshold), size, [&](std::span<const std::uint32_t>) { ++count; });
  return count;
}

}  // namespace emptystar
