#include "emptystar/geom.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "expansion.hpp"

namespace emptystar {

namespace {

using detail::Expansion;

constexpr double kEps = 0x1p-53;
// Forward error bounds for the straightforward double evaluation of the 2x2
// and 3x3 edge-vector determinants (Shewchuk's A-stage bounds).
constexpr double kOrient2dBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kOrient3dBound = (7.0 + 56.0 * kEps) * kEps;

// Determinant by first-row Laplace expansion over column subsets, memoized
// on the bitmask of columns still in use. Rows are consumed top-down.
template <typename T, typename Entry, typename Mul>
T laplace_det(int k, Entry entry, Mul mul, T one) {
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<T> memo(full + 1);
  memo[0] = one;
  // Iterate masks by increasing popcount so sub-results are ready.
  for (int c = 1; c <= k; ++c) {
    for (std::size_t mask = 1; mask <= full; ++mask) {
      if (std::popcount(mask) != c) continue;
      const int row = k - c;
      T acc{};
      bool first = true;
      int pos = 0;
      for (int j = 0; j < k; ++j) {
        const std::size_t bit = std::size_t{1} << j;
        if (!(mask & bit)) continue;
        T term = mul(entry(row, j), memo[mask & ~bit]);
        if (pos % 2 == 1) term = -term;
        if (first) {
          acc = term;
          first = false;
        } else {
          acc += term;
        }
        ++pos;
      }
      memo[mask] = acc;
    }
  }
  return memo[full];
}

int exact_projected_sign(std::span<const double* const> pts, std::span<const int> cols) {
  const int k = static_cast<int>(cols.size());
  std::vector<Expansion> m(static_cast<std::size_t>(k * k));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      m[static_cast<std::size_t>(r * k + c)] =
          Expansion::difference(pts[static_cast<std::size_t>(r + 1)][cols[static_cast<std::size_t>(c)]],
                                pts[0][cols[static_cast<std::size_t>(c)]]);
  const Expansion det = laplace_det<Expansion>(
      k, [&](int r, int c) -> const Expansion& { return m[static_cast<std::size_t>(r * k + c)]; },
      [](const Expansion& a, const Expansion& b) { return a * b; }, Expansion(1.0));
  return det.sign();
}

std::string format_subset(std::span<const std::uint32_t> s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

void check_simplex_dims(std::span<const Coords> simplex) {
  if (simplex.empty()) throw DimensionMismatch("empty simplex");
  const std::size_t d = simplex[0].size();
  if (simplex.size() != d + 1)
    throw DimensionMismatch("simplex needs d+1 points of dimension d");
  for (const auto& p : simplex)
    if (p.size() != d) throw DimensionMismatch("points of a simplex differ in dimension");
}

std::optional<std::vector<std::uint32_t>> planar_collinear_triple(const PointSet& X) {
  const std::size_t n = X.size();
  struct Dir {
    std::uint32_t idx;
    int flip;
  };
  std::vector<Dir> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double* p = X.data(i);
    dirs.clear();
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* q = X.data(j);
      // The sign of a rounded difference is the sign of the exact difference.
      const double dx = q[0] - p[0];
      const double dy = q[1] - p[1];
      const bool flip = dy < 0.0 || (dy == 0.0 && dx < 0.0);
      dirs.push_back({static_cast<std::uint32_t>(j), flip ? -1 : 1});
    }
    auto cross = [&](const Dir& a, const Dir& b) {
      return orient2d(p, X.data(a.idx), X.data(b.idx)) * a.flip * b.flip;
    };
    std::sort(dirs.begin(), dirs.end(), [&](const Dir& a, const Dir& b) { return cross(a, b) > 0; });
    for (std::size_t t = 0; t + 1 < dirs.size(); ++t) {
      if (cross(dirs[t], dirs[t + 1]) == 0) {
        std::vector<std::uint32_t> s{static_cast<std::uint32_t>(i), dirs[t].idx, dirs[t + 1].idx};
        std::sort(s.begin(), s.end());
        return s;
      }
    }
  }
  return std::nullopt;
}

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// PointSet / SimplexKey

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 2) throw std::invalid_argument("point dimension must be at least 2");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
    throw std::invalid_argument("coordinate count is not a multiple of the dimension");
  for (double v : coords_)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");

  const std::size_t n = size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  auto lex_less = [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(data(a), data(a) + dim_, data(b), data(b) + dim_);
  };
  std::sort(order.begin(), order.end(), lex_less);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::equal(data(order[i]), data(order[i]) + dim_, data(order[i + 1]))) {
      auto a = std::min(order[i], order[i + 1]);
      auto b = std::max(order[i], order[i + 1]);
      throw DegenerateInput("repeated point " + format_subset(std::array{a, b}), {a, b});
    }
  }
}

PointSet PointSet::from_rows(const std::vector<Point>& rows) {
  if (rows.empty()) throw std::invalid_argument("cannot infer dimension of an empty point list");
  const std::size_t d = rows[0].size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw DimensionMismatch("points differ in dimension");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return PointSet(static_cast<int>(d), std::move(flat));
}

PointSet certify_general_position(PointSet points) {
  if (!points.general_position_checked_) {
    if (auto bad = find_degenerate_subset(points))
      throw DegenerateInput("points not in general position: subset " + format_subset(*bad), *bad);
    points.general_position_checked_ = true;
  }
  return points;
}

SimplexKey::SimplexKey(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 1; i < indices_.size(); ++i)
    if (indices_[i - 1] >= indices_[i])
      throw std::invalid_argument("simplex key indices must be strictly increasing");
}

SimplexKey SimplexKey::from_unsorted(std::vector<std::uint32_t> indices) {
  std::sort(indices.begin(), indices.end());
  return SimplexKey(std::move(indices));
}

bool SimplexKey::contains(std::uint32_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

// ---------------------------------------------------------------------------
// Predicates

int orient2d(const double* a, const double* b, const double* c) {
  const double l = (b[0] - a[0]) * (c[1] - a[1]);
  const double r = (b[1] - a[1]) * (c[0] - a[0]);
  const double det = l - r;
  const double bound = kOrient2dBound * (std::fabs(l) + std::fabs(r));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  const std::array<const double*, 3> pts{a, b, c};
  constexpr std::array<int, 2> cols{0, 1};
  return exact_projected_sign(pts, cols);
}

int orient3d(const double* a, const double* b, const double* c, const double* d) {
  const double bx = b[0] - a[0], by = b[1] - a[1], bz = b[2] - a[2];
  const double cx = c[0] - a[0], cy = c[1] - a[1], cz = c[2] - a[2];
  const double dx = d[0] - a[0], dy = d[1] - a[1], dz = d[2] - a[2];
  const double cydz = cy * dz, czdy = cz * dy;
  const double czdx = cz * dx, cxdz = cx * dz;
  const double cxdy = cx * dy, cydx = cy * dx;
  const double det = bx * (cydz - czdy) + by * (czdx - cxdz) + bz * (cxdy - cydx);
  const double perm = std::fabs(bx) * (std::fabs(cydz) + std::fabs(czdy)) +
                      std::fabs(by) * (std::fabs(czdx) + std::fabs(cxdz)) +
                      std::fabs(bz) * (std::fabs(cxdy) + std::fabs(cydx));
  const double bound = kOrient3dBound * perm;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  const std::array<const double*, 4> pts{a, b, c, d};
  constexpr std::array<int, 3> cols{0, 1, 2};
  return exact_projected_sign(pts, cols);
}

int projected_orientation(std::span<const double* const> pts, std::span<const int> cols) {
  const int k = static_cast<int>(cols.size());
  if (pts.size() != cols.size() + 1) throw DimensionMismatch("need k+1 points for a k-dimensional orientation");
  if (k == 0) return 1;
  if (k > 20) throw std::invalid_argument("orientation dimension too large");

  // Floating filter: Laplace value and its permanent (sum of |terms|).
  std::vector<double> m(static_cast<std::size_t>(k * k));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      m[static_cast<std::size_t>(r * k + c)] =
          pts[static_cast<std::size_t>(r + 1)][cols[static_cast<std::size_t>(c)]] -
          pts[0][cols[static_cast<std::size_t>(c)]];
  struct ValPerm {
    double v = 0.0, p = 0.0;
    ValPerm operator-() const { return {-v, p}; }
    ValPerm& operator+=(const ValPerm& o) {
      v += o.v;
      p += o.p;
      return *this;
    }
  };
  const ValPerm det = laplace_det<ValPerm>(
      k, [&](int r, int c) { return m[static_cast<std::size_t>(r * k + c)]; },
      [](double a, const ValPerm& b) { return ValPerm{a * b.v, std::fabs(a) * b.p}; }, ValPerm{1.0, 1.0});
  const double bound = static_cast<double>(k * k + 2 * k + 2) * 2.0 * kEps * det.p;
  if (det.v > bound) return 1;
  if (-det.v > bound) return -1;
  return exact_projected_sign(pts, cols);
}

int orientation_raw(std::span<const double* const> pts, int dim) {
  if (pts.size() != static_cast<std::size_t>(dim) + 1) throw DimensionMismatch("need d+1 points");
  if (dim == 2) return orient2d(pts[0], pts[1], pts[2]);
  if (dim == 3) return orient3d(pts[0], pts[1], pts[2], pts[3]);
  std::vector<int> cols(static_cast<std::size_t>(dim));
  std::iota(cols.begin(), cols.end(), 0);
  return projected_orientation(pts, cols);
}

int orientation(std::span<const Coords> simplex) {
  check_simplex_dims(simplex);
  std::vector<const double*> ptrs;
  ptrs.reserve(simplex.size());
  for (const auto& p : simplex) ptrs.push_back(p.data());
  return orientation_raw(ptrs, static_cast<int>(simplex[0].size()));
}

int orientation(const PointSet& X, std::span<const std::uint32_t> indices) {
  if (indices.size() != static_cast<std::size_t>(X.dim()) + 1) throw DimensionMismatch("need d+1 indices");
  std::array<const double*, 16> buf{};
  std::vector<const double*> heap;
  std::span<const double*> ptrs;
  if (indices.size() <= buf.size()) {
    ptrs = std::span<const double*>(buf.data(), indices.size());
  } else {
    heap.resize(indices.size());
    ptrs = heap;
  }
  for (std::size_t i = 0; i < indices.size(); ++i) ptrs[i] = X.data(indices[i]);
  return orientation_raw(ptrs, X.dim());
}

double simplex_volume(std::span<const Coords> simplex) {
  check_simplex_dims(simplex);
  if (orientation(simplex) == 0) return 0.0;
  const std::size_t d = simplex[0].size();
  std::vector<double> m(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m[r * d + c] = simplex[r + 1][c] - simplex[0][c];
  // Gaussian elimination with partial pivoting.
  double det = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::fabs(m[r * d + col]) > std::fabs(m[piv * d + col])) piv = r;
    if (m[piv * d + col] == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < d; ++c) std::swap(m[piv * d + c], m[col * d + c]);
      det = -det;
    }
    const double p = m[col * d + col];
    det *= p;
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = m[r * d + col] / p;
      for (std::size_t c = col; c < d; ++c) m[r * d + c] -= f * m[col * d + c];
    }
  }
  double fact = 1.0;
  for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<double>(i);
  return std::fabs(det) / fact;
}

bool point_in_open_simplex(Coords p, std::span<const Coords> simplex) {
  check_simplex_dims(simplex);
  if (p.size() != simplex[0].size()) throw DimensionMismatch("point and simplex differ in dimension");
  const int s = orientation(simplex);
  if (s == 0) throw DegenerateInput("degenerate simplex");
  std::vector<Coords> work(simplex.begin(), simplex.end());
  for (std::size_t i = 0; i < work.size(); ++i) {
    work[i] = p;
    const int si = orientation(work);
    work[i] = simplex[i];
    if (si != s) return false;
  }
  return true;
}

bool point_in_open_simplex(const PointSet& X, std::uint32_t p, std::span<const std::uint32_t> simplex,
                           int simplex_sign) {
  const int d = X.dim();
  const double* q = X.data(p);
  if (d == 2) {
    const double* a = X.data(simplex[0]);
    const double* b = X.data(simplex[1]);
    const double* c = X.data(simplex[2]);
    return orient2d(q, b, c) == simplex_sign && orient2d(a, q, c) == simplex_sign &&
           orient2d(a, b, q) == simplex_sign;
  }
  std::array<const double*, 16> buf{};
  std::vector<const double*> heap;
  std::span<const double*> ptrs;
  if (simplex.size() <= buf.size()) {
    ptrs = std::span<const double*>(buf.data(), simplex.size());
  } else {
    heap.resize(simplex.size());
    ptrs = heap;
  }
  for (std::size_t i = 0; i < simplex.size(); ++i) ptrs[i] = X.data(simplex[i]);
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    const double* saved = ptrs[i];
    ptrs[i] = q;
    const int si = orientation_raw(ptrs, d);
    ptrs[i] = saved;
    if (si != simplex_sign) return false;
  }
  return true;
}

double max_edge_length(std::span<const Coords> points) {
  if (points.size() < 2) throw std::invalid_argument("max_edge_length needs at least 2 points");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].size() != points[j].size()) throw DimensionMismatch("points differ in dimension");
      double s = 0.0;
      for (std::size_t c = 0; c < points[i].size(); ++c) {
        const double t = points[i][c] - points[j][c];
        s += t * t;
      }
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

std::optional<std::vector<std::uint32_t>> find_degenerate_subset(const PointSet& X) {
  const std::size_t n = X.size();
  const int d = X.dim();
  if (n < 2) return std::nullopt;
  if (d == 2) return planar_collinear_triple(X);

  if (n >= static_cast<std::size_t>(d) + 1) {
    // Any k+2 points in a k-flat extend to d+1 points in a hyperplane.
    std::vector<std::uint32_t> c(static_cast<std::size_t>(d) + 1);
    std::iota(c.begin(), c.end(), 0u);
    do {
      if (orientation(X, c) == 0) return c;
    } while (next_combination(c, static_cast<std::uint32_t>(n)));
    return std::nullopt;
  }

  // Fewer than d+1 points: they must be affinely independent, i.e. some
  // (n-1)-coordinate projection has a nonzero orientation.
  const std::size_t k = n - 1;
  std::vector<const double*> ptrs;
  for (std::size_t i = 0; i < n; ++i) ptrs.push_back(X.data(i));
  std::vector<std::uint32_t> colsel(k);
  std::iota(colsel.begin(), colsel.end(), 0u);
  std::vector<int> cols(k);
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = static_cast<int>(colsel[i]);
    if (projected_orientation(ptrs, cols) != 0) return std::nullopt;
  } while (next_combination(colsel, static_cast<std::uint32_t>(d)));
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  return all;
}

bool is_general_position(const PointSet& X) { return !find_degenerate_subset(X).has_value(); }

void require_general_position(const PointSet& X) {
  if (X.general_position_checked()) return;
  if (auto bad = find_degenerate_subset(X))
    throw DegenerateInput("points not in general position: subset " + format_subset(*bad), *bad);
}

std::vector<std::uint32_t> convex_hull_2d(const PointSet& X) {
  if (X.dim() != 2) throw DimensionMismatch("convex_hull_2d needs planar points");
  const std::size_t n = X.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const double* p = X.data(a);
    const double* q = X.data(b);
    return p[0] < q[0] || (p[0] == q[0] && p[1] < q[1]);
  });
  if (n < 3) return order;
  std::vector<std::uint32_t> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orient2d(X.data(hull[k - 2]), X.data(hull[k - 1]), X.data(order[i])) <= 0) --k;
    hull[k++] = order[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient2d(X.data(hull[k - 2]), X.data(hull[k - 1]), X.data(order[i])) <= 0) --k;
    hull[k++] = order[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Coords> gather(const PointSet& X, std::span<const std::uint32_t> indices) {
  std::vector<Coords> out;
  out.reserve(indices.size());
  for (auto i : indices) {
    if (i >= X.size()) throw std::out_of_range("point index out of range");
    out.push_back(X[i]);
  }
  return out;
}

}  // namespace emptystar
