#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coxfix/coxeter_system.hpp"
#include "coxfix/orders.hpp"
#include "coxfix/poset.hpp"
#include "coxfix/topology.hpp"

namespace coxfix {

/// Parses `3,2,1` (1-based images of generators 1..n) into a 0-based perm.
inline std::vector<int> parse_perm(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InputError("bad permutation `" + text + "`");
    }
    if (used != tok.size() || v < 1) throw InputError("bad permutation `" + text + "`");
    out.push_back(v - 1);
  }
  return out;
}

/// Permutation of the generators preserving the Coxeter matrix; induces a
/// group automorphism of W that maps S to S.
class GraphAutomorphism {
 public:
  GraphAutomorphism() = default;

  GraphAutomorphism(const CoxeterMatrix& m, std::vector<int> perm) : perm_(std::move(perm)) {
    const int n = m.rank();
    if (static_cast<int>(perm_.size()) != n)
      throw InputError("permutation has " + std::to_string(perm_.size()) + " entries, rank is " + std::to_string(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : perm_) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) throw InputError("not a permutation of the generators");
      seen[static_cast<std::size_t>(v)] = 1;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m(i, j) != m((*this)(i), (*this)(j)))
          throw InputError("permutation does not preserve the Coxeter matrix at (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ")");
  }

  static GraphAutomorphism identity(const CoxeterMatrix& m) {
    std::vector<int> p(static_cast<std::size_t>(m.rank()));
    std::iota(p.begin(), p.end(), 0);
    return GraphAutomorphism(m, std::move(p));
  }

  int operator()(int s) const { return perm_[static_cast<std::size_t>(s)]; }
  const std::vector<int>& perm() const noexcept { return perm_; }
  int rank() const noexcept { return static_cast<int>(perm_.size()); }

  bool is_identity() const {
    for (std::size_t i = 0; i < perm_.size(); ++i)
      if (perm_[i] != static_cast<int>(i)) return false;
    return true;
  }

  bool is_involution() const {
    for (std::size_t i = 0; i < perm_.size(); ++i)
      if (perm_[static_cast<std::size_t>(perm_[i])] != static_cast<int>(i)) return false;
    return true;
  }

  /// (this o other)(s) = this(other(s)).
  GraphAutomorphism after(const GraphAutomorphism& other) const {
    GraphAutomorphism out;
    out.perm_.resize(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) out.perm_[i] = (*this)(other(static_cast<int>(i)));
    return out;
  }

  /// `id` or the 1-based image list, e.g. `3,2,1`.
  std::string to_string() const {
    if (is_identity()) return "id";
    std::string s;
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(perm_[i] + 1);
    }
    return s;
  }

  friend bool operator==(const GraphAutomorphism&, const GraphAutomorphism&) = default;
  friend auto operator<=>(const GraphAutomorphism&, const GraphAutomorphism&) = default;

 private:
  std::vector<int> perm_;
};

/// theta(x): letterwise image of the canonical word, re-canonicalized.
inline Element apply_auto(CoxeterSystem& w, const GraphAutomorphism& theta, Element x) {
  Word img = w.word(x);
  for (int& s : img) s = theta(s);
  return w.canonicalize(img);
}

/// Twisted involutions and twisted identities inside a ball.
struct TwistedSet {
  GraphAutomorphism theta;
  int radius = 0;
  /// True when W is finite and was enumerated in full, so identities of
  /// length <= radius are known to be complete without further argument.
  bool exhaustive = false;
  std::vector<Element> involutions;  // I(theta), length <= radius
  std::vector<Element> identities;   // iota(theta), length <= radius
  std::unordered_set<Element, ElementHash> identity_set, involution_set;

  bool is_identity(Element x) const { return identity_set.count(x) > 0; }
  bool is_involution(Element x) const { return involution_set.count(x) > 0; }
};

/// {w : l(w) <= radius, theta(w) = w^{-1}}.
inline std::vector<Element> twisted_involutions(CoxeterSystem& w, const GraphAutomorphism& theta, int radius) {
  std::vector<Element> out;
  for (Element x : w.enumerate_ball(radius))
    if (apply_auto(w, theta, x) == w.invert(x)) out.push_back(x);
  return out;
}

/// {x theta(x^{-1})} restricted to length <= radius. For a finite W the
/// generating x run over all of W; otherwise over the ball of the same radius.
inline std::vector<Element> twisted_identities(CoxeterSystem& w, const GraphAutomorphism& theta, int radius,
                                               bool* exhaustive = nullptr) {
  const bool finite = w.is_finite();
  if (exhaustive) *exhaustive = finite;
  const auto source = finite ? w.enumerate_all() : w.enumerate_ball(radius);
  std::unordered_set<Element, ElementHash> seen;
  std::vector<Element> out;
  for (Element x : source) {
    const Element y = w.multiply(x, apply_auto(w, theta, w.invert(x)));
    if (w.length(y) <= radius && seen.insert(y).second) out.push_back(y);
  }
  std::sort(out.begin(), out.end(), [&](Element a, Element b) {
    return std::pair(w.length(a), w.word(a)) < std::pair(w.length(b), w.word(b));
  });
  return out;
}

inline TwistedSet twisted_set(CoxeterSystem& w, const GraphAutomorphism& theta, int radius) {
  TwistedSet t;
  t.theta = theta;
  t.radius = radius;
  t.involutions = twisted_involutions(w, theta, radius);
  t.identities = twisted_identities(w, theta, radius, &t.exhaustive);
  t.identity_set.insert(t.identities.begin(), t.identities.end());
  t.involution_set.insert(t.involutions.begin(), t.involutions.end());
  return t;
}

/// Least number of letters to delete from `letters` so that the remaining
/// subword (reduced or not) multiplies to a twisted identity.
///
/// Dynamic programming over prefixes: for every element reachable as a
/// subword product of the prefix, keep the fewest deletions reaching it.
inline int deletion_distance(CoxeterSystem& w, std::span<const int> letters, const TwistedSet& iota) {
  if (static_cast<int>(letters.size()) > iota.radius && !iota.exhaustive)
    throw ResourceError("twisted identities not materialized to length " + std::to_string(letters.size()));
  std::unordered_map<Element, int, ElementHash> best{{CoxeterSystem::identity(), 0}};
  for (int s : letters) {
    std::unordered_map<Element, int, ElementHash> next;
    next.reserve(best.size() * 2);
    for (const auto& [x, d] : best) {
      auto keep = next.try_emplace(w.right_multiply(x, s), d).first;
      keep->second = std::min(keep->second, d);
      auto drop = next.try_emplace(x, d + 1).first;
      drop->second = std::min(drop->second, d + 1);
    }
    best = std::move(next);
  }
  int out = std::numeric_limits<int>::max();
  for (const auto& [x, d] : best)
    if (iota.is_identity(x)) out = std::min(out, d);
  if (out == std::numeric_limits<int>::max()) throw InternalError("identity element missing from twisted identities");
  return out;
}

/// Twisted absolute length, computed on the canonical reduced word.
inline int twisted_absolute_length(CoxeterSystem& w, Element x, const TwistedSet& iota) {
  return deletion_distance(w, w.word(x), iota);
}

/// Outcome of a sweep: `ok`, how many instances were checked, and the
/// first counterexample in readable form.
struct SweepResult {
  bool ok = true;
  std::size_t checked = 0;
  std::string witness;

  void fail(std::string why) {
    if (ok) witness = std::move(why);
    ok = false;
  }
};

/// The deletion minimum agrees across every reduced word of x.
inline bool verify_welldefined_ltheta(CoxeterSystem& w, Element x, const TwistedSet& iota) {
  const int ref = twisted_absolute_length(w, x, iota);
  for (const Word& r : w.reduced_expressions(x))
    if (deletion_distance(w, r, iota) != ref) return false;
  return true;
}

inline SweepResult verify_welldefined_sweep(CoxeterSystem& w, const TwistedSet& iota, int max_length) {
  SweepResult res;
  for (Element x : w.enumerate_ball(max_length)) {
    ++res.checked;
    if (!verify_welldefined_ltheta(w, x, iota)) res.fail("w=" + format_word(w.word(x)));
  }
  return res;
}

/// If s1...sk is a twisted identity then so is s2...sk theta(s1), for every
/// reduced word of every twisted identity of length <= max_length.
inline SweepResult verify_rotation_lemma(CoxeterSystem& w, const TwistedSet& iota, int max_length) {
  SweepResult res;
  for (Element x : iota.identities) {
    if (w.length(x) > max_length || w.length(x) == 0) continue;
    for (const Word& r : w.reduced_expressions(x)) {
      ++res.checked;
      Word rot(r.begin() + 1, r.end());
      rot.push_back(iota.theta(r.front()));
      const Element y = w.canonicalize(rot);
      if (w.length(y) > iota.radius && !iota.exhaustive) throw ResourceError("rotation leaves materialized identities");
      if (!iota.is_identity(y)) res.fail("word=" + format_word(r) + " rotated=" + format_word(rot));
    }
  }
  return res;
}

/// Every twisted identity w of length <= max_length equals x theta(x^{-1})
/// for some x with l(w) = 2 l(x).
inline SweepResult verify_halving_lemma(CoxeterSystem& w, const TwistedSet& iota, int max_length) {
  SweepResult res;
  const auto ball = w.enumerate_ball(max_length / 2);
  for (Element x : iota.identities) {
    const int lw = w.length(x);
    if (lw > max_length) continue;
    ++res.checked;
    bool found = false;
    if (lw % 2 == 0)
      for (Element y : ball) {
        if (w.length(y) != lw / 2) continue;
        if (w.multiply(y, apply_auto(w, iota.theta, w.invert(y))) == x) {
          found = true;
          break;
        }
      }
    if (!found) res.fail("w=" + format_word(w.word(x)));
  }
  return res;
}

/// For w in I(theta) with a reduced word s1 ... s_{k-1} theta(s1), the
/// element s2 ... s_{k-1} = s1 w theta(s1) has the same twisted absolute length.
inline SweepResult verify_length_lemma(CoxeterSystem& w, const TwistedSet& iota, int max_length) {
  SweepResult res;
  for (Element x : iota.involutions) {
    const int lx = w.length(x);
    if (lx > max_length || lx < 2) continue;
    const int lt = twisted_absolute_length(w, x, iota);
    for (int s = 0; s < w.rank(); ++s) {
      if (!(w.descents(x, Side::left) >> s & 1U)) continue;
      const Element v = w.right_multiply(w.left_multiply(s, x), iota.theta(s));
      if (w.length(v) != lx - 2) continue;
      ++res.checked;
      if (twisted_absolute_length(w, v, iota) != lt)
        res.fail("w=" + format_word(w.word(x)) + " s=" + std::to_string(s + 1));
    }
  }
  return res;
}

/// Interval [u, v] of Br(I(theta)): twisted involutions Bruhat-between u and
/// v with the induced order. Covers are computed from the order itself since
/// they need not change length by one.
inline Interval build_twisted_bruhat(CoxeterSystem& w, const GraphAutomorphism& theta, Element u, Element v) {
  const auto is_twisted = [&](Element x) { return apply_auto(w, theta, x) == w.invert(x); };
  if (!is_twisted(u) || !is_twisted(v)) throw PreconditionError("interval ends must be twisted involutions");
  const auto universe = twisted_involutions(w, theta, w.length(v));
  return build_interval(universe, u, v, order_predicate(w, OrderKind::bruhat));
}

/// Same, reusing a precomputed universe of twisted involutions.
inline Interval build_twisted_bruhat(CoxeterSystem& w, std::span<const Element> universe, Element u, Element v) {
  return build_interval(universe, u, v, order_predicate(w, OrderKind::bruhat));
}

/// Graded, and rho(x) - rho(bottom) = [(l + l^theta)(x) - (l + l^theta)(bottom)] / 2
/// for every element.
inline SweepResult verify_rank_theorem(CoxeterSystem& w, const Interval& iv, const TwistedSet& iota) {
  SweepResult res;
  const auto g = is_graded(iv.poset);
  if (!g.graded) {
    std::string a, b;
    for (auto i : g.short_chain) a += (a.empty() ? "" : "<") + format_word(w.word(Element{iv.poset.key(i)}));
    for (auto i : g.long_chain) b += (b.empty() ? "" : "<") + format_word(w.word(Element{iv.poset.key(i)}));
    res.fail("not graded: " + a + " vs " + b);
    return res;
  }
  auto weight = [&](std::size_t i) {
    const Element x{iv.poset.key(i)};
    return w.length(x) + twisted_absolute_length(w, x, iota);
  };
  const int base = weight(iv.bottom);
  for (std::size_t i = 0; i < iv.size(); ++i) {
    ++res.checked;
    const int diff = weight(i) - base;
    if (diff % 2 != 0 || diff / 2 != g.rank[i])
      res.fail("w=" + format_word(w.word(Element{iv.poset.key(i)})) + " rank=" + std::to_string(g.rank[i]) +
               " (l+l^theta)/2 offset=" + std::to_string(diff) + "/2");
  }
  return res;
}

/// Every interval is Gorenstein* over Z2.
inline SweepResult verify_gorenstein_theorem(const std::vector<Interval>& intervals, const TopologyLimits& limits = {}) {
  SweepResult res;
  for (const auto& iv : intervals) {
    ++res.checked;
    const auto g = is_gorenstein_star_z2(iv, limits);
    if (!g.ok) res.fail(g.failure + " at interval #" + std::to_string(res.checked - 1));
  }
  return res;
}

}  // namespace coxfix
