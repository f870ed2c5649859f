#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "emptystar/geom.hpp"

namespace emptystar {

enum class EnumerationMethod {
  kAuto,        ///< output-sensitive planar path for d = 2, naive otherwise
  kNaive,       ///< definition-level check of every (d+1)-subset
  kFastPlanar,  ///< d = 2 only
};

/// Called once per empty simplex with its d+1 vertex indices, increasing.
using SimplexVisitor = std::function<void(std::span<const std::uint32_t>)>;

/// Counters for every k-subset of {0..n-1}, addressed by colex rank.
class TupleDegrees {
 public:
  TupleDegrees(std::size_t n, int k);

  std::size_t n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::uint64_t tuple_count() const noexcept { return counts_.size(); }

  /// Adds one to every k-subset of the (sorted) simplex vertex list.
  void add_simplex(std::span<const std::uint32_t> simplex);

  /// Degree of a sorted k-tuple.
  std::uint32_t at(std::span<const std::uint32_t> tuple) const;

  /// Sum over all k-subsets.
  std::uint64_t sum() const noexcept;

  /// Maximum degree and the lexicographically smallest tuple attaining it.
  std::pair<std::uint32_t, SimplexKey> max_with_witness() const;

  /// Visits (tuple, degree) for every nonzero entry in lexicographic order.
  void for_each_nonzero(const std::function<void(std::span<const std::uint32_t>, std::uint32_t)>& f) const;

 private:
  std::uint64_t rank(std::span<const std::uint32_t> tuple) const;

  std::size_t n_;
  int k_;
  std::vector<std::uint64_t> binom_;  // binom_[v * (k+1) + j] = C(v, j)
  std::vector<std::uint32_t> counts_;
};

/// Counts, degrees and the maximal star for one point set.
struct EmptySimplexReport {
  std::size_t n = 0;
  int dim = 0;
  std::uint64_t total = 0;                     ///< number of empty simplices
  std::vector<std::uint64_t> per_vertex_degree;  ///< deg_1 of each point
  int k = 1;                                   ///< tuple size of the table below
  TupleDegrees per_tuple_degree{0, 1};
  SimplexKey witness;                          ///< a k-tuple of maximal degree
  std::uint64_t max_degree = 0;                ///< deg_k(X)
};

/// Outcome of the closeness functionals for one point set.
struct GammaFunctionalResult {
  double gamma = 0.0;
  double threshold = 0.0;  ///< (gamma n)^(-1/(d-1))
  std::uint64_t n_count = 0;
  std::uint64_t f_value = 0;
  std::vector<SimplexKey> qualifying_bases;
};

/// Streams every empty simplex of X. Requires general position (verified if
/// X is not flagged) and n >= d+1.
void for_each_empty_simplex(const PointSet& X, const SimplexVisitor& visit,
                            EnumerationMethod method = EnumerationMethod::kAuto);

/// All empty simplices by direct definition, in lexicographic order.
std::vector<SimplexKey> enumerate_empty_simplices_naive(const PointSet& X);

/// All empty triangles of a planar set via angular visibility, in
/// lexicographic order. O(n^2 log n + T) for T output triangles.
std::vector<SimplexKey> fast_planar_empty_triangles(const PointSet& X);

/// True iff the open hull of the indexed d+1 points contains no point of X.
bool is_empty_simplex(const PointSet& X, std::span<const std::uint32_t> simplex);

/// One enumeration pass producing N, per-vertex degrees and the degree table
/// for tuples of size k (1 <= k <= d).
EmptySimplexReport count_empty_simplices(const PointSet& X, int k = 1,
                                         EnumerationMethod method = EnumerationMethod::kAuto);

/// Number of ways to complete the k-tuple S to an empty simplex.
std::uint64_t deg_tuple(const SimplexKey& S, const PointSet& X);

/// The empty simplices containing S, in lexicographic order.
std::vector<SimplexKey> star(const SimplexKey& S, const PointSet& X);

struct DegreeMax {
  std::uint64_t value = 0;
  SimplexKey witness;
};

/// deg_k(X) with its lexicographically smallest witness.
DegreeMax deg_k_max(const PointSet& X, int k);

/// N_{gamma n}(X) and F_{gamma n}(X).
GammaFunctionalResult gamma_functionals(const PointSet& X, double gamma);

/// The `size`-subsets of X whose pairwise distances are all <= threshold,
/// in lexicographic order (grid bucketing, no general-position requirement).
std::vector<SimplexKey> close_subsets(const PointSet& X, double threshold, int size);

/// Count-only variant of close_subsets.
std::uint64_t count_close_subsets(const PointSet& X, double threshold, int size);

}  // namespace emptystar
