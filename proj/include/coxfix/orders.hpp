#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "coxfix/coxeter_system.hpp"
#include "coxfix/poset.hpp"

namespace coxfix {

/// Bruhat comparison by descent lifting. With s a left descent of v:
///   s a left descent of u  =>  (u <= v  iff  su <= sv)
///   otherwise              =>  (u <= v  iff  u <= sv)
/// Both cases follow from the characterisation of Bruhat order as the unique
/// order with e minimal and, for s descending on w1 and w2,
/// w1 <= w2 <=> s w1 <= w2 <=> s w1 <= s w2. Each step shortens v, so the
/// comparison costs l(v) multiplications.
inline bool bruhat_leq(CoxeterSystem& w, Element u, Element v) {
  for (;;) {
    const int lu = w.length(u), lv = w.length(v);
    if (lu > lv) return false;
    if (lu == lv) return u == v;
    if (lu == 0) return true;
    const int s = w.word(v).front();
    if (w.descents(u, Side::left) >> s & 1U) u = w.left_multiply(s, u);
    v = w.left_multiply(s, v);
  }
}

/// Bruhat comparison straight from the subword definition: u <= v iff some
/// subword of the canonical word of v multiplies to u. Products of subwords
/// are accumulated prefix by prefix as a set, so the cost is bounded by
/// l(v) times the size of the lower interval rather than 2^l(v).
inline bool bruhat_leq_subword(CoxeterSystem& w, Element u, Element v) {
  if (w.length(u) > w.length(v)) return false;
  std::unordered_set<Element, ElementHash> reach{CoxeterSystem::identity()};
  for (int s : w.word(v)) {
    std::vector<Element> add;
    for (Element x : reach) add.push_back(w.right_multiply(x, s));
    reach.insert(add.begin(), add.end());
  }
  return reach.count(u) > 0;
}

/// Right weak order: u <= v iff l(u) + l(u^{-1} v) = l(v).
inline bool weak_leq(CoxeterSystem& w, Element u, Element v) {
  return w.length(u) + w.length(w.multiply(w.invert(u), v)) == w.length(v);
}

enum class OrderKind { bruhat, weak };

/// Comparison predicate over Element ids for the given order.
inline std::function<bool(Poset::Key, Poset::Key)> order_predicate(CoxeterSystem& w, OrderKind kind) {
  if (kind == OrderKind::bruhat)
    return [&w](Poset::Key a, Poset::Key b) { return bruhat_leq(w, Element{a}, Element{b}); };
  return [&w](Poset::Key a, Poset::Key b) { return weak_leq(w, Element{a}, Element{b}); };
}

/// [u, v] inside `universe` for an arbitrary order predicate. Throws
/// PreconditionError when u is not <= v.
template <class Leq>
Interval build_interval(std::span<const Element> universe, Element u, Element v, Leq&& leq,
                        std::function<int(Poset::Key)> grade = nullptr) {
  if (!leq(u.id, v.id)) throw PreconditionError("empty interval: lower end is not below upper end");
  std::vector<Poset::Key> keys;
  for (Element x : universe)
    if (leq(u.id, x.id) && leq(x.id, v.id)) keys.push_back(x.id);
  return as_interval(Poset::from_relation(std::move(keys), leq, std::move(grade)));
}

/// Bruhat or weak interval [u, v]. Both orders are graded by length, so
/// covers are read off length layers. For Bruhat, the ball of radius l(v)
/// is a sufficient universe.
inline Interval build_interval(CoxeterSystem& w, OrderKind kind, std::span<const Element> universe, Element u,
                               Element v) {
  auto grade = [&w](Poset::Key k) { return w.length(Element{k}); };
  return build_interval(universe, u, v, order_predicate(w, kind), grade);
}

/// Golden-file dump: one `u < v` line per cover, canonical words, sorted.
inline std::vector<std::string> dump_covers(CoxeterSystem& w, const Poset& p) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto j : p.covers_of(i))
      lines.push_back(format_word(w.word(Element{p.key(i)})) + " < " + format_word(w.word(Element{p.key(j)})));
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace coxfix
