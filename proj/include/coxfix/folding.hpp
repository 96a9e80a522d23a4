#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coxfix/catalog.hpp"
#include "coxfix/coxeter_system.hpp"
#include "coxfix/orders.hpp"
#include "coxfix/twisted.hpp"

namespace coxfix {

/// Finite group of graph automorphisms, closed under composition.
class AutomorphismGroup {
 public:
  AutomorphismGroup(const CoxeterMatrix& m, std::vector<GraphAutomorphism> generators)
      : generators_(std::move(generators)) {
    std::set<GraphAutomorphism> seen{GraphAutomorphism::identity(m)};
    std::vector<GraphAutomorphism> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<GraphAutomorphism> next;
      for (const auto& a : frontier)
        for (const auto& g : generators_) {
          auto c = g.after(a);
          if (seen.insert(c).second) next.push_back(std::move(c));
        }
      frontier = std::move(next);
    }
    elements_.assign(seen.begin(), seen.end());
  }

  const std::vector<GraphAutomorphism>& generators() const noexcept { return generators_; }
  const std::vector<GraphAutomorphism>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }

 private:
  std::vector<GraphAutomorphism> generators_;
  std::vector<GraphAutomorphism> elements_;
};

/// G-orbits on the generators, each sorted, listed by least member.
inline std::vector<std::vector<int>> orbits(const AutomorphismGroup& g, int rank) {
  std::vector<int> owner(static_cast<std::size_t>(rank), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < rank; ++s) {
    if (owner[static_cast<std::size_t>(s)] >= 0) continue;
    std::set<int> orb;
    for (const auto& a : g.elements()) orb.insert(a(s));
    for (int t : orb) owner[static_cast<std::size_t>(t)] = static_cast<int>(out.size());
    out.emplace_back(orb.begin(), orb.end());
  }
  return out;
}

/// The folded Coxeter system: one generator per G-orbit J with W_J finite,
/// sent to w0(J).
struct FoldedSystem {
  std::vector<std::vector<int>> orbits;          // orbits kept, in generator order
  std::vector<std::vector<int>> dropped_orbits;  // orbits with infinite W_J
  CoxeterMatrix tilde_matrix;
  std::vector<Element> phi_gen;
};

/// Order of x, or kInfinity if x^k != e for all k <= cap.
inline BondOrder element_order(CoxeterSystem& w, Element x, int cap) {
  Element p = x;
  for (int k = 1; k <= cap; ++k) {
    if (p == CoxeterSystem::identity()) return k;
    p = w.multiply(p, x);
  }
  return kInfinity;
}

/// m~(J, K) is the order of w0(J) w0(K). When W_{J u K} is finite the
/// powers are followed until they return to e; otherwise up to `order_cap`,
/// after which the bond is recorded as infinite.
inline FoldedSystem fold(CoxeterSystem& w, const AutomorphismGroup& g, int order_cap = 64) {
  FoldedSystem out;
  for (auto& orb : orbits(g, w.rank())) {
    if (w.is_parabolic_finite(orb)) {
      out.phi_gen.push_back(w.longest_element(orb));
      out.orbits.push_back(std::move(orb));
    } else {
      out.dropped_orbits.push_back(std::move(orb));
    }
  }
  const int n = static_cast<int>(out.orbits.size());
  if (n == 0) throw PreconditionError("every orbit generates an infinite parabolic; nothing to fold");
  out.tilde_matrix = CoxeterMatrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto iu = static_cast<std::size_t>(i), ju = static_cast<std::size_t>(j);
      std::vector<int> both = out.orbits[iu];
      both.insert(both.end(), out.orbits[ju].begin(), out.orbits[ju].end());
      const int cap = w.is_parabolic_finite(both) ? std::numeric_limits<int>::max() : order_cap;
      out.tilde_matrix.set_bond(i, j, element_order(w, w.multiply(out.phi_gen[iu], out.phi_gen[ju]), cap));
    }
  return out;
}

/// phi: W~ -> W, product of generator images along the canonical word.
inline Element phi(CoxeterSystem& w, const FoldedSystem& f, CoxeterSystem& wt, Element x) {
  Element out = CoxeterSystem::identity();
  for (int s : wt.word(x)) out = w.multiply(out, f.phi_gen[static_cast<std::size_t>(s)]);
  return out;
}

/// Elements of a finite W fixed by every member of G.
inline std::vector<Element> fixed_subgroup(CoxeterSystem& w, const AutomorphismGroup& g) {
  std::vector<Element> out;
  for (Element x : w.enumerate_all()) {
    bool fixed = true;
    for (const auto& a : g.generators())
      if (apply_auto(w, a, x) != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

/// phi injective on W~ and phi(W~) = W^G. Requires W finite.
inline SweepResult verify_fixed_subgroup(CoxeterSystem& w, const AutomorphismGroup& g, const FoldedSystem& f,
                                         CoxeterSystem& wt) {
  SweepResult res;
  std::unordered_set<Element, ElementHash> image;
  for (Element x : wt.enumerate_all()) {
    ++res.checked;
    if (!image.insert(phi(w, f, wt, x)).second) res.fail("phi not injective at " + format_word(wt.word(x)));
  }
  const auto fixed = fixed_subgroup(w, g);
  if (fixed.size() != image.size())
    res.fail("|image| = " + std::to_string(image.size()) + ", |W^G| = " + std::to_string(fixed.size()));
  for (Element x : fixed)
    if (!image.count(x)) {
      res.fail("fixed element outside image: " + format_word(w.word(x)));
      break;
    }
  return res;
}

namespace detail {

template <class LeqTilde, class LeqW>
SweepResult order_iso(CoxeterSystem& w, const FoldedSystem& f, CoxeterSystem& wt, LeqTilde&& lt, LeqW&& lw) {
  SweepResult res;
  const auto all = wt.enumerate_all();
  std::vector<Element> img;
  img.reserve(all.size());
  for (Element x : all) img.push_back(phi(w, f, wt, x));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      ++res.checked;
      if (lt(wt, all[i], all[j]) != lw(w, img[i], img[j]))
        res.fail("u=" + format_word(wt.word(all[i])) + " v=" + format_word(wt.word(all[j])));
    }
  return res;
}

}  // namespace detail

/// u <= v in weak order on W~ iff phi(u) <= phi(v) in weak order on W.
inline SweepResult verify_weak_iso(CoxeterSystem& w, const FoldedSystem& f, CoxeterSystem& wt) {
  return detail::order_iso(w, f, wt, weak_leq, weak_leq);
}

/// Same for Bruhat order.
inline SweepResult verify_bruhat_iso(CoxeterSystem& w, const FoldedSystem& f, CoxeterSystem& wt) {
  return detail::order_iso(w, f, wt, bruhat_leq, bruhat_leq);
}

/// Reduced words of W~ map to reduced words of W (concatenating canonical
/// words of the w0(J)), over every reduced word of every element of W~.
inline SweepResult verify_crisp(CoxeterSystem& w, const FoldedSystem& f, CoxeterSystem& wt) {
  SweepResult res;
  for (Element x : wt.enumerate_all())
    for (const Word& r : wt.reduced_expressions(x)) {
      ++res.checked;
      Word big;
      for (int s : r) {
        const Word& piece = w.word(f.phi_gen[static_cast<std::size_t>(s)]);
        big.insert(big.end(), piece.begin(), piece.end());
      }
      if (!w.is_reduced(big)) res.fail("word " + format_word(r));
    }
  return res;
}

/// phi(uv) = phi(u) phi(v) over all pairs.
inline SweepResult verify_homomorphism(CoxeterSystem& w, const FoldedSystem& f, CoxeterSystem& wt) {
  SweepResult res;
  const auto all = wt.enumerate_all();
  for (Element u : all)
    for (Element v : all) {
      ++res.checked;
      if (phi(w, f, wt, wt.multiply(u, v)) != w.multiply(phi(w, f, wt, u), phi(w, f, wt, v)))
        res.fail("u=" + format_word(wt.word(u)) + " v=" + format_word(wt.word(v)));
    }
  return res;
}

/// l(phi(s~) w) = l(w) +- l(phi(s~)) for every fixed w and folded generator.
inline SweepResult verify_length_bookkeeping(CoxeterSystem& w, const AutomorphismGroup& g, const FoldedSystem& f) {
  SweepResult res;
  for (Element x : fixed_subgroup(w, g))
    for (std::size_t j = 0; j < f.phi_gen.size(); ++j) {
      ++res.checked;
      const int lg = w.length(f.phi_gen[j]), lx = w.length(x);
      const int l = w.length(w.multiply(f.phi_gen[j], x));
      if (l != lx + lg && l != lx - lg) res.fail("w=" + format_word(w.word(x)) + " J#" + std::to_string(j + 1));
    }
  return res;
}

/// Saturated chains of W~ in weak order go to saturated chains of the weak
/// order induced on W^G: every cover of W~ maps to a cover of W^G.
inline SweepResult verify_chain_transport(CoxeterSystem& w, const AutomorphismGroup& g, const FoldedSystem& f,
                                          CoxeterSystem& wt) {
  SweepResult res;
  const auto fixed = fixed_subgroup(w, g);
  const auto covers_in_fixed = [&](Element a, Element b) {
    if (a == b || !weak_leq(w, a, b)) return false;
    for (Element c : fixed)
      if (c != a && c != b && weak_leq(w, a, c) && weak_leq(w, c, b)) return false;
    return true;
  };
  for (Element x : wt.enumerate_all())
    for (int s = 0; s < wt.rank(); ++s) {
      const Element y = wt.right_multiply(x, s);
      if (wt.length(y) < wt.length(x)) continue;
      ++res.checked;
      if (!covers_in_fixed(phi(w, f, wt, x), phi(w, f, wt, y)))
        res.fail("cover " + format_word(wt.word(x)) + " < " + format_word(wt.word(y)));
    }
  return res;
}

/// Poincare polynomial sum_w q^l(w) of a finite W, coefficients by degree.
inline std::vector<std::int64_t> poincare_polynomial(CoxeterSystem& w) {
  std::vector<std::int64_t> p;
  for (Element x : w.enumerate_all()) {
    const auto l = static_cast<std::size_t>(w.length(x));
    if (p.size() <= l) p.resize(l + 1, 0);
    ++p[l];
  }
  return p;
}

/// Exponents d_i - 1 from P(q) = prod [d_i]_q, [d]_q = 1 + q + ... + q^{d-1}.
/// Divides greedily by the largest [d]_q that divides exactly; the largest
/// such d is always the largest degree, so the greedy choice is safe.
inline std::vector<int> exponents(CoxeterSystem& w) {
  auto p = poincare_polynomial(w);
  // Long division by [d]_q; true iff exact.
  auto try_divide = [](std::vector<std::int64_t> rem, int d, std::vector<std::int64_t>& quot) {
    const auto du = static_cast<std::size_t>(d);
    if (rem.size() < du) return false;
    quot.assign(rem.size() - du + 1, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
      quot[k] = rem[k + du - 1];
      for (std::size_t j = 0; j < du; ++j) rem[k + j] -= quot[k];
    }
    return std::all_of(rem.begin(), rem.end(), [](std::int64_t c) { return c == 0; });
  };
  std::vector<int> out;
  while (p.size() > 1) {
    bool done = false;
    std::vector<std::int64_t> q;
    for (int d = static_cast<int>(p.size()); d >= 2; --d)
      if (try_divide(p, d, q)) {
        out.push_back(d - 1);
        p = q;
        done = true;
        break;
      }
    if (!done) throw InternalError("Poincare polynomial does not factor into q-integers");
  }
  if (p.size() != 1 || p[0] != 1) throw InternalError("Poincare polynomial does not factor into q-integers");
  std::sort(out.begin(), out.end());
  return out;
}

/// s -> w0 s w0 as a generator permutation.
inline GraphAutomorphism w0_conjugation(CoxeterSystem& w) {
  const Element w0 = w.longest_element();
  std::vector<int> perm;
  for (int s = 0; s < w.rank(); ++s) {
    const Element t = w.multiply(w.multiply(w0, w.generator(s)), w0);
    if (w.length(t) != 1) throw InternalError("w0 s w0 is not a generator");
    perm.push_back(w.word(t).front());
  }
  return GraphAutomorphism(w.matrix(), std::move(perm));
}

struct W0TheoremResult {
  bool ok = false;
  std::vector<int> exponents;
  std::string w_minus;           // catalog name of the type with the odd exponents
  GraphAutomorphism conjugation;
  bool matrix_matches = false;   // folded matrix isomorphic to catalog(w_minus)
  bool centralizer_matches = false;  // {x : x w0 = w0 x} = phi(W~)
  SweepResult weak, bruhat;
  std::string witness;
};

/// Graph of W connected (W irreducible).
inline bool is_irreducible(const CoxeterMatrix& m) {
  const int n = m.rank();
  if (n == 0) return false;
  std::vector<int> stack{0};
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[0] = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j)
      if (!seen[static_cast<std::size_t>(j)] && m(i, j) != 2) {
        seen[static_cast<std::size_t>(j)] = 1;
        stack.push_back(j);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

/// The w0-conjugation theorem: the centralizer of w0 with induced Bruhat
/// (and weak) order is Br(W^-), W^- having the odd exponents of W.
inline W0TheoremResult verify_w0_theorem(CoxeterSystem& w) {
  if (!is_irreducible(w.matrix())) throw PreconditionError("w0 theorem needs an irreducible group");
  if (!w.is_finite()) throw PreconditionError("w0 theorem needs a finite group");
  W0TheoremResult out;
  out.exponents = exponents(w);
  std::vector<int> odd;
  for (int e : out.exponents)
    if (e % 2 == 1) odd.push_back(e);
  const auto hits = match_exponents(odd);
  if (hits.empty()) throw UnsupportedTypeError("no catalog type has exponents of the odd part");
  if (hits.size() > 1) throw UnsupportedTypeError("odd exponents match several types: " + hits[0].name + ", " + hits[1].name);
  out.w_minus = hits.front().name;
  out.conjugation = w0_conjugation(w);

  const AutomorphismGroup g(w.matrix(), {out.conjugation});
  const FoldedSystem f = fold(w, g);
  CoxeterSystem wt(f.tilde_matrix);
  out.matrix_matches = f.tilde_matrix.isomorphic_to(catalog(out.w_minus));
  if (!out.matrix_matches) out.witness = "folded matrix differs from " + out.w_minus;

  const Element w0 = w.longest_element();
  std::unordered_set<Element, ElementHash> image;
  for (Element x : wt.enumerate_all()) image.insert(phi(w, f, wt, x));
  std::size_t central = 0;
  out.centralizer_matches = true;
  for (Element x : w.enumerate_all()) {
    if (w.multiply(x, w0) != w.multiply(w0, x)) continue;
    ++central;
    if (!image.count(x)) out.centralizer_matches = false;
  }
  if (central != image.size()) out.centralizer_matches = false;
  if (!out.centralizer_matches && out.witness.empty()) out.witness = "centralizer of w0 differs from phi(W~)";

  out.weak = verify_weak_iso(w, f, wt);
  out.bruhat = verify_bruhat_iso(w, f, wt);
  if (out.witness.empty() && !out.weak.ok) out.witness = "weak: " + out.weak.witness;
  if (out.witness.empty() && !out.bruhat.ok) out.witness = "bruhat: " + out.bruhat.witness;
  out.ok = out.matrix_matches && out.centralizer_matches && out.weak.ok && out.bruhat.ok;
  return out;
}

}  // namespace coxfix
