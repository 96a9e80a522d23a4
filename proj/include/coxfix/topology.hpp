#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coxfix/errors.hpp"
#include "coxfix/gf2.hpp"
#include "coxfix/poset.hpp"

namespace coxfix {

struct TopologyLimits {
  /// Largest number of faces an order complex may have.
  std::size_t max_faces = 2'000'000;
};

/// Finite simplicial complex over GF(2). Faces of each dimension are stored
/// flat and sorted lexicographically, each face a strictly increasing vertex
/// list; the empty face is implicit (dimension -1).
class ComplexZ2 {
 public:
  ComplexZ2() = default;

  /// Closes the given facets under subsets.
  static ComplexZ2 from_facets(std::size_t vertices, const std::vector<std::vector<std::uint32_t>>& facets) {
    std::vector<std::vector<std::vector<std::uint32_t>>> by_dim;
    for (auto f : facets) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (f.empty()) continue;
      for (auto v : f)
        if (v >= vertices) throw InputError("facet vertex out of range");
      const std::size_t k = f.size();
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<std::uint32_t> sub;
        for (std::size_t b = 0; b < k; ++b)
          if (mask >> b & 1U) sub.push_back(f[b]);
        if (by_dim.size() < sub.size()) by_dim.resize(sub.size());
        by_dim[sub.size() - 1].push_back(std::move(sub));
      }
    }
    ComplexZ2 c;
    c.vertices_ = vertices;
    for (std::size_t d = 0; d < by_dim.size(); ++d) {
      auto& fs = by_dim[d];
      std::sort(fs.begin(), fs.end());
      fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
      c.faces_.emplace_back();
      for (const auto& f : fs) c.faces_.back().insert(c.faces_.back().end(), f.begin(), f.end());
    }
    return c;
  }

  /// Vertex count of the ambient vertex set (isolated vertices included
  /// only when they appear as 0-faces).
  std::size_t vertex_slots() const noexcept { return vertices_; }

  /// Dimension; -1 for the empty complex.
  int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }

  bool empty() const noexcept { return faces_.empty(); }

  std::size_t face_count(int dim) const {
    if (dim == -1) return 1;
    if (dim < -1 || dim > dimension()) return 0;
    return faces_[static_cast<std::size_t>(dim)].size() / static_cast<std::size_t>(dim + 1);
  }

  std::size_t total_faces() const {
    std::size_t t = 0;
    for (int d = 0; d <= dimension(); ++d) t += face_count(d);
    return t;
  }

  std::vector<std::uint32_t> face(int dim, std::size_t i) const {
    const auto k = static_cast<std::size_t>(dim + 1);
    const auto& flat = faces_[static_cast<std::size_t>(dim)];
    return {flat.begin() + static_cast<std::ptrdiff_t>(i * k), flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * k)};
  }

  /// Index of a sorted face of the given dimension, if present.
  std::optional<std::size_t> find(int dim, const std::uint32_t* f) const {
    if (dim < 0 || dim > dimension()) return std::nullopt;
    const auto k = static_cast<std::size_t>(dim + 1);
    const auto& flat = faces_[static_cast<std::size_t>(dim)];
    std::size_t lo = 0, hi = flat.size() / k;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const std::uint32_t* m = flat.data() + mid * k;
      if (std::lexicographical_compare(m, m + k, f, f + k)) lo = mid + 1;
      else hi = mid;
    }
    if (lo < flat.size() / k && std::equal(f, f + k, flat.data() + lo * k)) return lo;
    return std::nullopt;
  }

  /// Column j of the boundary map from dim-faces to (dim-1)-faces, as
  /// ascending row indices. Dimension 0 maps onto the single empty face.
  void boundary_column(int dim, std::size_t j, gf2::Column& out) const {
    out.clear();
    if (dim == 0) {
      out.push_back(0);
      return;
    }
    const auto k = static_cast<std::size_t>(dim + 1);
    const std::uint32_t* f = faces_[static_cast<std::size_t>(dim)].data() + j * k;
    std::vector<std::uint32_t> sub(k - 1);
    for (std::size_t drop = 0; drop < k; ++drop) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (i != drop) sub[w++] = f[i];
      const auto idx = find(dim - 1, sub.data());
      if (!idx) throw InternalError("face set is not closed under subsets");
      out.push_back(static_cast<std::uint32_t>(*idx));
    }
    std::sort(out.begin(), out.end());
  }

 private:
  friend ComplexZ2 order_complex(const Poset&, const TopologyLimits&);

  std::size_t vertices_ = 0;
  std::vector<std::vector<std::uint32_t>> faces_;
};

/// Order complex: vertices are poset elements (by index), faces are chains.
/// Chains are enumerated depth-first along strict up-sets in ascending
/// index order; preorder then lists every dimension lexicographically, which
/// is the order ComplexZ2::find relies on.
inline ComplexZ2 order_complex(const Poset& p, const TopologyLimits& limits = {}) {
  ComplexZ2 c;
  c.vertices_ = p.size();
  std::size_t total = 0;
  std::vector<std::uint32_t> chain;
  auto dfs = [&](auto&& self, std::size_t last) -> void {
    const std::size_t dim = chain.size() - 1;
    if (c.faces_.size() <= dim) c.faces_.resize(dim + 1);
    c.faces_[dim].insert(c.faces_[dim].end(), chain.begin(), chain.end());
    if (++total > limits.max_faces)
      throw ResourceError("order complex exceeds the face cap of " + std::to_string(limits.max_faces));
    const auto& up = p.strict_up(last);
    for (std::size_t j = up.first(); j < p.size(); j = up.next(j + 1)) {
      chain.push_back(static_cast<std::uint32_t>(j));
      self(self, j);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    chain.assign(1, static_cast<std::uint32_t>(i));
    dfs(dfs, i);
  }
  return c;
}

/// Reduced Z2 Betti numbers b~_{-1}, b~_0, ..., b~_dim.
class HomologyProfile {
 public:
  HomologyProfile() = default;
  explicit HomologyProfile(std::vector<std::int64_t> betti) : betti_(std::move(betti)) {}

  /// b~_i for i >= -1; zero above the stored range.
  std::int64_t operator[](int i) const {
    const int k = i + 1;
    if (k < 0 || k >= static_cast<int>(betti_.size())) return 0;
    return betti_[static_cast<std::size_t>(k)];
  }

  int top_index() const noexcept { return static_cast<int>(betti_.size()) - 2; }
  const std::vector<std::int64_t>& values() const noexcept { return betti_; }

  /// Comma-separated values from index -1 upward.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < betti_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(betti_[i]);
    }
    return s;
  }

  bool operator==(const HomologyProfile&) const = default;

 private:
  std::vector<std::int64_t> betti_;
};

/// Reduced Betti numbers over Z2 of the augmented chain complex:
/// b~_i = dim C_i - rank d_i - rank d_{i+1}, with C_{-1} spanned by the empty face.
inline HomologyProfile betti_z2(const ComplexZ2& c) {
  const int top = c.dimension();
  // rank_of[d + 1] = rank of the boundary map out of dimension d.
  std::vector<std::int64_t> rank_of(static_cast<std::size_t>(top + 2), 0);
  std::vector<char> cleared;  // faces of the current dimension paired as pivots from above
  for (int d = top; d >= 0; --d) {
    std::vector<char> next_cleared(c.face_count(d - 1), 0);
    gf2::Reducer red(c.face_count(d - 1));
    const auto r = red.rank(
        c.face_count(d), [&](std::size_t j, gf2::Column& out) { c.boundary_column(d, j, out); },
        [&](std::size_t j) { return !cleared.empty() && cleared[j]; },
        [&](std::size_t, std::uint32_t row) { next_cleared[row] = 1; });
    rank_of[static_cast<std::size_t>(d + 1)] = static_cast<std::int64_t>(r);
    cleared.swap(next_cleared);
  }
  std::vector<std::int64_t> betti(static_cast<std::size_t>(top + 2), 0);
  for (int i = -1; i <= top; ++i) {
    const std::int64_t dim_c = static_cast<std::int64_t>(c.face_count(i));
    const std::int64_t rk_out = i >= 0 ? rank_of[static_cast<std::size_t>(i + 1)] : 0;
    const std::int64_t rk_in = i + 1 <= top ? rank_of[static_cast<std::size_t>(i + 2)] : 0;
    betti[static_cast<std::size_t>(i + 1)] = dim_c - rk_out - rk_in;
  }
  return HomologyProfile(std::move(betti));
}

/// Reduced Euler characteristic from face counts: sum_{i >= -1} (-1)^i f_i.
inline std::int64_t reduced_euler_characteristic(const ComplexZ2& c) {
  std::int64_t chi = -1;
  for (int d = 0; d <= c.dimension(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.face_count(d));
  return chi;
}

struct SphereResult {
  bool sphere = false;
  int r = -2;  // dimension of the sphere when `sphere`
  HomologyProfile profile;
};

/// True iff the Z2 homology is that of S^r: a single 1 at index r. With
/// `expected` set, r must equal it.
inline SphereResult is_homology_sphere_z2(const ComplexZ2& c, std::optional<int> expected = std::nullopt) {
  SphereResult out;
  out.profile = betti_z2(c);
  int where = -2;
  std::int64_t total = 0;
  for (int i = -1; i <= c.dimension(); ++i) {
    total += out.profile[i];
    if (out.profile[i] == 1) where = i;
  }
  if (total == 1 && where >= -1) {
    out.r = where;
    out.sphere = !expected || *expected == where;
  }
  return out;
}

struct PseudomanifoldResult {
  bool ok = false;
  std::string failure;                  // "pure", "thin" or "strongly-connected"
  std::vector<std::uint32_t> witness;   // offending face
};

/// Pure, thin (every codimension-one face in exactly two facets) and
/// strongly connected.
inline PseudomanifoldResult is_pseudomanifold(const ComplexZ2& c) {
  PseudomanifoldResult out;
  if (c.empty()) throw PreconditionError("pseudomanifold test needs a nonempty complex");
  const int n = c.dimension();
  // Pure: no maximal face below the top dimension.
  for (int d = 0; d < n; ++d) {
    std::vector<char> covered(c.face_count(d), 0);
    gf2::Column col;
    for (std::size_t j = 0; j < c.face_count(d + 1); ++j) {
      c.boundary_column(d + 1, j, col);
      for (auto r : col) covered[r] = 1;
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
      if (!covered[i]) {
        out.failure = "pure";
        out.witness = c.face(d, i);
        return out;
      }
  }
  // Thin, and collect facet adjacency through ridges.
  const std::size_t facets = c.face_count(n);
  const std::size_t ridges = c.face_count(n - 1);
  std::vector<std::vector<std::size_t>> incident(ridges);
  gf2::Column col;
  for (std::size_t j = 0; j < facets; ++j) {
    c.boundary_column(n, j, col);
    for (auto r : col) incident[r].push_back(j);
  }
  for (std::size_t r = 0; r < ridges; ++r)
    if (incident[r].size() != 2) {
      out.failure = "thin";
      if (n > 0) out.witness = c.face(n - 1, r);
      return out;
    }
  std::vector<std::size_t> parent(facets);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& inc : incident) parent[root(inc[0])] = root(inc[1]);
  for (std::size_t j = 1; j < facets; ++j)
    if (root(j) != root(0)) {
      out.failure = "strongly-connected";
      out.witness = c.face(n, j);
      return out;
    }
  out.ok = true;
  return out;
}

struct GorensteinResult {
  bool ok = false;
  std::string failure;           // "not-graded" or "not-sphere"
  std::size_t lower = 0, upper = 0;  // failing subinterval (poset indices)
};

/// Gorenstein* over Z2: graded, and for every p < q the open interval (p,q)
/// has the Z2 homology of the sphere of dimension rho(q) - rho(p) - 2.
inline GorensteinResult is_gorenstein_star_z2(const Interval& iv, const TopologyLimits& limits = {}) {
  GorensteinResult out;
  const auto g = is_graded(iv.poset);
  if (!g.graded) {
    out.failure = "not-graded";
    return out;
  }
  const Poset& p = iv.poset;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (!p.less(i, j)) continue;
      const int want = g.rank[j] - g.rank[i] - 2;
      if (!is_homology_sphere_z2(order_complex(p.open_interval(i, j), limits), want).sphere) {
        out.failure = "not-sphere";
        out.lower = i;
        out.upper = j;
        return out;
      }
    }
  out.ok = true;
  return out;
}

struct SmithResult {
  bool sphere = false;  // fixed open part is a Z2 homology r-sphere, -1 <= r <= n
  int r = -2;
  int n = -2;  // dimension of the ambient open-interval complex
  std::vector<std::size_t> fixed;  // fixed poset indices, bottom and top included
  HomologyProfile profile;
};

/// Fixed-point check for an involutive automorphism `nu` of a bounded
/// interval (nu given on poset indices). Verifies the fixed subposet's open
/// part is a Z2 homology r-sphere with -1 <= r <= n.
///
/// The action on the order complex fixes every setwise-fixed chain
/// pointwise: an order automorphism of a finite chain is the identity. The
/// only way to break that is to swap a comparable pair, which is checked
/// explicitly and reported.
inline SmithResult smith_fixed_check(const Interval& iv, const std::vector<std::size_t>& nu,
                                     const TopologyLimits& limits = {}) {
  const Poset& p = iv.poset;
  const std::size_t n = p.size();
  if (nu.size() != n) throw PreconditionError("involution must be defined on every element");
  for (std::size_t i = 0; i < n; ++i) {
    if (nu[i] >= n) throw PreconditionError("involution maps outside the interval");
    if (nu[nu[i]] != i)
      throw PreconditionError("map is not involutive at element " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(i, j) != p.leq(nu[i], nu[j]))
        throw PreconditionError("map is not an automorphism: pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  for (std::size_t i = 0; i < n; ++i)
    if (nu[i] != i && p.less(i, nu[i]))
      throw PreconditionError("setwise-fixed chain not fixed pointwise: pair (" + std::to_string(i) + "," +
                              std::to_string(nu[i]) + ")");

  SmithResult out;
  // Longest chain bottom..top minus two is the ambient complex dimension.
  std::vector<int> height(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (auto i : p.covered_by(j)) height[j] = std::max(height[j], height[i] + 1);
  out.n = height[iv.top] - 2;

  for (std::size_t i = 0; i < n; ++i)
    if (nu[i] == i) out.fixed.push_back(i);
  const Poset fixed = p.induced(out.fixed);
  const ComplexZ2 cx = order_complex(fixed.proper_part(), limits);
  auto sr = is_homology_sphere_z2(cx);
  out.profile = sr.profile;
  out.r = sr.r;
  out.sphere = sr.sphere && sr.r >= -1 && sr.r <= out.n;
  return out;
}

/// `interval <u> <v> dim <n> betti <b~_-1,b~_0,...>` report line.
inline std::string homology_report_line(const std::string& u, const std::string& v, const ComplexZ2& c,
                                        const HomologyProfile& h) {
  std::ostringstream os;
  os << "interval " << u << ' ' << v << " dim " << c.dimension() << " betti " << h.to_string();
  return os.str();
}

}  // namespace coxfix
