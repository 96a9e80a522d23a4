#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxfix/bitset.hpp"
#include "coxfix/errors.hpp"

namespace coxfix {

/// Finite poset over opaque 32-bit keys (Element ids for Coxeter posets).
///
/// Elements are stored in a linear extension: x_i < x_j implies i < j. The
/// order is a dense strict-upset bitset per element; covers are the Hasse
/// diagram edges.
class Poset {
 public:
  using Key = std::uint32_t;

  Poset() = default;

  /// Builds the poset on `keys` ordered by `leq`. Reflexivity, antisymmetry
  /// and transitivity are checked; a violation throws PreconditionError.
  /// When `grade` is given, covers are taken as the relations x < y with
  /// grade(y) = grade(x) + 1 (valid only for posets graded by `grade`).
  template <class Leq>
  static Poset from_relation(std::vector<Key> keys, Leq&& leq,
                             std::function<int(Key)> grade = nullptr) {
    const std::size_t n = keys.size();
    std::vector<DynBitset> le(n, DynBitset(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i == j || leq(keys[i], keys[j])) le[i].set(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq(keys[i], keys[i])) throw PreconditionError("relation is not reflexive");
      for (std::size_t j = i + 1; j < n; ++j)
        if (le[i].test(j) && le[j].test(i)) throw PreconditionError("relation is not antisymmetric");
    }
    // Sort into a linear extension by down-set size.
    std::vector<std::size_t> below(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i].test(j)) ++below[j];
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });

    Poset p;
    p.keys_.resize(n);
    p.up_.assign(n, DynBitset(n));
    for (std::size_t a = 0; a < n; ++a) p.keys_[a] = keys[order[a]];
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && le[order[a]].test(order[b])) p.up_[a].set(b);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = p.up_[a].first(); b < n; b = p.up_[a].next(b + 1)) {
        DynBitset tmp = p.up_[b];
        tmp.and_not(p.up_[a]);
        if (tmp.any()) throw PreconditionError("relation is not transitive");
      }
    p.finish(grade);
    return p;
  }

  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  Key key(std::size_t i) const { return keys_[i]; }
  const std::vector<Key>& keys() const noexcept { return keys_; }

  std::optional<std::size_t> index_of(Key k) const {
    auto it = where_.find(k);
    if (it == where_.end()) return std::nullopt;
    return it->second;
  }

  bool less(std::size_t i, std::size_t j) const { return up_[i].test(j); }
  bool leq(std::size_t i, std::size_t j) const { return i == j || less(i, j); }

  /// Strict up-set of i as a bitset over indices.
  const DynBitset& strict_up(std::size_t i) const { return up_[i]; }

  /// Upper covers of i.
  const std::vector<std::size_t>& covers_of(std::size_t i) const { return covers_[i]; }
  const std::vector<std::size_t>& covered_by(std::size_t i) const { return lower_covers_[i]; }

  std::size_t cover_count() const {
    std::size_t c = 0;
    for (const auto& v : covers_) c += v.size();
    return c;
  }

  std::optional<std::size_t> bottom() const {
    if (empty()) return std::nullopt;
    return up_[0].count() + 1 == size() ? std::optional<std::size_t>(0) : std::nullopt;
  }

  std::optional<std::size_t> top() const {
    if (empty()) return std::nullopt;
    const std::size_t t = size() - 1;
    for (std::size_t i = 0; i < t; ++i)
      if (!less(i, t)) return std::nullopt;
    return t;
  }

  bool bounded() const { return bottom().has_value() && top().has_value(); }

  /// Subposet on the given indices, order restricted.
  Poset induced(const std::vector<std::size_t>& idx) const {
    std::vector<Key> ks;
    ks.reserve(idx.size());
    for (auto i : idx) ks.push_back(keys_[i]);
    return from_relation(std::move(ks), [&](Key a, Key b) {
      return leq(*index_of(a), *index_of(b));
    });
  }

  /// Closed interval [i, j] as its own poset.
  Poset closed_interval(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> idx;
    for (std::size_t k = i; k <= j && k < size(); ++k)
      if (leq(i, k) && leq(k, j)) idx.push_back(k);
    return induced(idx);
  }

  /// Open interval (i, j).
  Poset open_interval(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> idx;
    for (std::size_t k = i + 1; k < j; ++k)
      if (less(i, k) && less(k, j)) idx.push_back(k);
    return induced(idx);
  }

  /// Proper part of a bounded poset (bottom and top removed).
  Poset proper_part() const {
    if (!bounded()) throw PreconditionError("proper part needs a bounded poset");
    if (size() == 1) return Poset{};
    return open_interval(0, size() - 1);
  }

 private:
  void finish(const std::function<int(Key)>& grade) {
    const std::size_t n = size();
    where_.clear();
    for (std::size_t i = 0; i < n; ++i) where_.emplace(keys_[i], i);
    covers_.assign(n, {});
    lower_covers_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      if (grade) {
        const int gi = grade(keys_[i]);
        for (std::size_t j = up_[i].first(); j < n; j = up_[i].next(j + 1))
          if (grade(keys_[j]) == gi + 1) covers_[i].push_back(j);
      } else {
        DynBitset c = up_[i];
        for (std::size_t k = up_[i].first(); k < n; k = up_[i].next(k + 1)) c.and_not(up_[k]);
        for (auto j : c.indices()) covers_[i].push_back(j);
      }
      for (auto j : covers_[i]) lower_covers_[j].push_back(i);
    }
  }

  std::vector<Key> keys_;
  std::vector<DynBitset> up_;
  std::vector<std::vector<std::size_t>> covers_, lower_covers_;
  std::unordered_map<Key, std::size_t> where_;
};

/// Bounded poset [bottom, top]; in the linear extension bottom is index 0
/// and top the last index.
struct Interval {
  Poset poset;
  std::size_t bottom = 0;
  std::size_t top = 0;

  std::size_t size() const noexcept { return poset.size(); }
};

/// Wraps a bounded poset as an Interval; throws PreconditionError otherwise.
inline Interval as_interval(Poset p) {
  if (!p.bounded()) throw PreconditionError("poset is not bounded");
  Interval out;
  out.bottom = 0;
  out.top = p.size() - 1;
  out.poset = std::move(p);
  return out;
}

/// Moebius function on all pairs: value(i, j) = mu(x_i, x_j), 0 when i is not <= j.
class MobiusTable {
 public:
  explicit MobiusTable(const Poset& p) : n_(p.size()), mu_(n_ * n_, 0) {
    for (std::size_t i = 0; i < n_; ++i) {
      at(i, i) = 1;
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (!p.less(i, j)) continue;
        std::int64_t sum = 0;
        for (std::size_t k = i; k < j; ++k)
          if (p.leq(i, k) && p.less(k, j)) sum += at(i, k);
        at(i, j) = -sum;
      }
    }
  }

  std::int64_t operator()(std::size_t i, std::size_t j) const { return mu_[i * n_ + j]; }

 private:
  std::int64_t& at(std::size_t i, std::size_t j) { return mu_[i * n_ + j]; }
  std::size_t n_;
  std::vector<std::int64_t> mu_;
};

inline MobiusTable mobius(const Poset& p) { return MobiusTable(p); }
inline MobiusTable mobius(const Interval& iv) { return MobiusTable(iv.poset); }

/// Outcome of a gradedness test. On success `rank` holds rho with
/// rho(bottom) = 0; on failure `short_chain`/`long_chain` are two saturated
/// chains from the bottom to the same element with different lengths.
struct GradedResult {
  bool graded = false;
  std::vector<int> rank;
  std::vector<std::size_t> short_chain, long_chain;
};

/// Tests whether all maximal chains of a bounded poset have equal length.
inline GradedResult is_graded(const Poset& p) {
  if (!p.bounded()) throw PreconditionError("gradedness test needs a bounded poset");
  const std::size_t n = p.size();
  std::vector<int> lo(n, 0), hi(n, 0);
  std::vector<std::size_t> lo_pred(n, n), hi_pred(n, n);
  for (std::size_t j = 1; j < n; ++j) {
    bool first = true;
    for (auto i : p.covered_by(j)) {
      if (first || lo[i] + 1 < lo[j]) {
        lo[j] = lo[i] + 1;
        lo_pred[j] = i;
      }
      if (first || hi[i] + 1 > hi[j]) {
        hi[j] = hi[i] + 1;
        hi_pred[j] = i;
      }
      first = false;
    }
  }
  GradedResult out;
  for (std::size_t j = 0; j < n; ++j) {
    if (lo[j] == hi[j]) continue;
    auto chain = [&](const std::vector<std::size_t>& pred) {
      std::vector<std::size_t> c{j};
      while (pred[c.back()] != n) c.push_back(pred[c.back()]);
      std::reverse(c.begin(), c.end());
      return c;
    };
    out.short_chain = chain(lo_pred);
    out.long_chain = chain(hi_pred);
    return out;
  }
  out.graded = true;
  out.rank = std::move(lo);
  return out;
}

inline GradedResult is_graded(const Interval& iv) { return is_graded(iv.poset); }

/// mu(p,q) = (-1)^(rho(q)-rho(p)) for all p <= q. Requires a graded poset.
inline bool is_eulerian(const Poset& p) {
  const auto g = is_graded(p);
  if (!g.graded) throw PreconditionError("Eulerian test needs a graded poset");
  const MobiusTable mu(p);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i; j < p.size(); ++j) {
      if (!p.leq(i, j)) continue;
      const std::int64_t want = ((g.rank[j] - g.rank[i]) % 2 == 0) ? 1 : -1;
      if (mu(i, j) != want) return false;
    }
  return true;
}

inline bool is_eulerian(const Interval& iv) { return is_eulerian(iv.poset); }

/// Subposet of elements whose key satisfies the predicate.
template <class Pred>
Poset induced_subposet(const Poset& p, Pred&& keep) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (keep(p.key(i))) idx.push_back(i);
  return p.induced(idx);
}

}  // namespace coxfix
