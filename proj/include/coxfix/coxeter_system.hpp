#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coxfix/coxeter_matrix.hpp"
#include "coxfix/cyclotomic.hpp"
#include "coxfix/errors.hpp"

namespace coxfix {

/// A word in the generators, 0-based letters.
using Word = std::vector<int>;

/// Bitmask of generators; bit s set when generator s is a member.
using GeneratorSet = std::uint64_t;

/// Interned group element. Two handles from the same system are equal iff
/// the group elements are equal.
struct Element {
  std::uint32_t id = 0;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(Element e) const noexcept { return std::hash<std::uint32_t>{}(e.id); }
};

enum class Side { left, right };

struct SystemLimits {
  /// Walk-length cap when deciding finiteness of a parabolic subgroup.
  std::size_t finiteness_cap = 1'000'000;
  /// Maximum number of elements enumerate_ball may return.
  std::size_t ball_cap = 5'000'000;
  /// Maximum braid-class size reduced_expressions may build.
  std::size_t braid_class_cap = 2'000'000;
};

/// Hyphen-joined 1-based letters; the empty word prints as `e`.
inline std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

/// Parses the format_word notation (1-based, hyphen- or comma-separated).
inline Word parse_word(const std::string& text) {
  Word w;
  if (text == "e" || text.empty()) return w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find_first_of("-,", pos);
    const std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InputError("bad word `" + text + "`");
    }
    if (used != tok.size() || v < 1) throw InputError("bad word `" + text + "`");
    w.push_back(v - 1);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return w;
}

/// A Coxeter system (W,S) given by its matrix. Elements are interned: each is
/// stored once with its lexicographically least reduced word.
///
/// Group arithmetic runs in the faithful reflection representation over
/// Z[exp(i*pi/M)], M the lcm of the finite bond orders above 3, so the word
/// problem is decided exactly for any matrix, infinite bonds included.
/// Descents come from root signs: s is a left descent of w iff w^{-1}(a_s) < 0.
///
/// All public members lock an internal mutex, so one system may be queried
/// from several threads.
class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix, SystemLimits limits = {})
      : matrix_(std::move(matrix)), limits_(limits), rank_(matrix_.rank()) {
    matrix_.validate();
    int lcm = 1;
    for (int i = 0; i < rank_; ++i)
      for (int j = i + 1; j < rank_; ++j) {
        const int m = matrix_(i, j);
        if (m != kInfinity && m > 3) lcm = std::lcm(lcm, m);
      }
    ring_ = CyclotomicRing(lcm);
    d_ = ring_.degree();
    // c(s,t) = 2B(a_s, a_t) = -2cos(pi/m); 2 on the diagonal, -2 for m = inf.
    bonds_.resize(static_cast<std::size_t>(rank_ * rank_));
    for (int s = 0; s < rank_; ++s)
      for (int t = 0; t < rank_; ++t) {
        Bond& b = bonds_[static_cast<std::size_t>(s * rank_ + t)];
        const int m = matrix_(s, t);
        if (s == t) {
          b.kind = Bond::Kind::scalar;
          b.scalar = 2;
        } else if (m == 2) {
          b.kind = Bond::Kind::zero;
        } else if (m == 3) {
          b.kind = Bond::Kind::scalar;
          b.scalar = -1;
        } else if (m == kInfinity) {
          b.kind = Bond::Kind::scalar;
          b.scalar = -2;
        } else {
          b.kind = Bond::Kind::general;
          auto c = ring_.two_cos(lcm / m);
          for (auto& x : c) x = -x;
          b.mul = ring_.multiplication_matrix(c);
        }
      }
    // Identity element.
    Node id;
    id.inv = identity_matrix();
    id.fwd = id.inv;
    id.right.assign(static_cast<std::size_t>(rank_), -1);
    id.left.assign(static_cast<std::size_t>(rank_), -1);
    id.inverse = 0;
    nodes_.push_back(std::move(id));
    index_.emplace(hash_matrix(nodes_[0].inv), 0);
  }

  CoxeterSystem(const CoxeterSystem&) = delete;
  CoxeterSystem& operator=(const CoxeterSystem&) = delete;

  const CoxeterMatrix& matrix() const noexcept { return matrix_; }
  int rank() const noexcept { return rank_; }
  const SystemLimits& limits() const noexcept { return limits_; }

  static constexpr Element identity() noexcept { return Element{0}; }

  /// Number of elements interned so far.
  std::size_t interned() const {
    std::lock_guard lock(mu_);
    return nodes_.size();
  }

  Element generator(int s) {
    check_letter(s);
    std::lock_guard lock(mu_);
    return Element{static_cast<std::uint32_t>(right_mul_locked(0, s))};
  }

  /// Canonical (lex-least reduced) word. The reference stays valid for the
  /// lifetime of the system.
  const Word& word(Element x) const {
    std::lock_guard lock(mu_);
    return node(x).word;
  }

  int length(Element x) const {
    std::lock_guard lock(mu_);
    return static_cast<int>(node(x).word.size());
  }

  Element canonicalize(std::span<const int> letters) {
    for (int s : letters) check_letter(s);
    std::lock_guard lock(mu_);
    std::uint32_t cur = 0;
    for (int s : letters) cur = right_mul_locked(cur, s);
    return Element{cur};
  }

  bool is_reduced(std::span<const int> letters) {
    const Element x = canonicalize(letters);
    return static_cast<std::size_t>(length(x)) == letters.size();
  }

  Element right_multiply(Element x, int s) {
    check_letter(s);
    std::lock_guard lock(mu_);
    return Element{right_mul_locked(x.id, s)};
  }

  Element left_multiply(int s, Element x) {
    check_letter(s);
    std::lock_guard lock(mu_);
    return Element{left_mul_locked(s, x.id)};
  }

  Element multiply(Element x, Element y) {
    std::lock_guard lock(mu_);
    std::uint32_t cur = x.id;
    // nodes_ is a deque, so this reference survives interning.
    const Word& w = node(y).word;
    for (int s : w) cur = right_mul_locked(cur, s);
    return Element{cur};
  }

  Element invert(Element x) {
    std::lock_guard lock(mu_);
    return Element{inverse_locked(x.id)};
  }

  /// Descent set as a bitmask: s is a right descent iff l(xs) < l(x).
  GeneratorSet descents(Element x, Side side) const {
    std::lock_guard lock(mu_);
    const Node& n = node(x);
    return side == Side::left ? n.left_descents : n.right_descents;
  }

  std::vector<int> descent_list(Element x, Side side) const {
    std::vector<int> out;
    const GeneratorSet mask = descents(x, side);
    for (int s = 0; s < rank_; ++s)
      if (mask >> s & 1U) out.push_back(s);
    return out;
  }

  /// The full braid class of the canonical word (all reduced words of x),
  /// sorted lexicographically.
  std::vector<Word> reduced_expressions(Element x) {
    const Word start = word(x);
    std::set<Word> seen{start};
    std::vector<Word> queue{start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Word cur = queue[head];
      for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
        const int s = cur[i], t = cur[i + 1];
        if (s == t) continue;
        const int m = matrix_(s, t);
        if (m == kInfinity || i + static_cast<std::size_t>(m) > cur.size()) continue;
        bool alternating = true;
        for (int k = 0; k < m && alternating; ++k) alternating = cur[i + static_cast<std::size_t>(k)] == (k % 2 ? t : s);
        if (!alternating) continue;
        Word next = cur;
        for (int k = 0; k < m; ++k) next[i + static_cast<std::size_t>(k)] = (k % 2 ? s : t);
        if (seen.insert(next).second) {
          if (seen.size() > limits_.braid_class_cap) throw ResourceError("braid class exceeds cap");
          queue.push_back(std::move(next));
        }
      }
    }
    return {seen.begin(), seen.end()};
  }

  /// All elements of length <= radius, ordered by length then canonical word.
  std::vector<Element> enumerate_ball(int radius) {
    if (radius < 0) throw InputError("ball radius must be nonnegative");
    std::lock_guard lock(mu_);
    std::vector<std::uint32_t> all{0};
    std::vector<std::uint32_t> layer{0};
    for (int len = 0; len < radius && !layer.empty(); ++len) {
      std::vector<std::uint32_t> next;
      std::unordered_set<std::uint32_t> seen;
      for (std::uint32_t x : layer)
        for (int s = 0; s < rank_; ++s) {
          if (nodes_[x].right_descents >> s & 1U) continue;
          const std::uint32_t y = right_mul_locked(x, s);
          if (seen.insert(y).second) next.push_back(y);
        }
      if (all.size() + next.size() > limits_.ball_cap)
        throw ResourceError("ball of radius " + std::to_string(radius) + " exceeds cap of " +
                            std::to_string(limits_.ball_cap) + " elements");
      std::sort(next.begin(), next.end(), [&](std::uint32_t a, std::uint32_t b) { return nodes_[a].word < nodes_[b].word; });
      all.insert(all.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    std::vector<Element> out;
    out.reserve(all.size());
    for (auto id : all) out.push_back(Element{id});
    return out;
  }

  /// Every element of a finite group; throws InfiniteParabolicError otherwise.
  std::vector<Element> enumerate_all() {
    std::vector<int> all(static_cast<std::size_t>(rank_));
    std::iota(all.begin(), all.end(), 0);
    const Element top = longest_element(all);
    return enumerate_ball(length(top));
  }

  bool is_finite() {
    std::vector<int> all(static_cast<std::size_t>(rank_));
    std::iota(all.begin(), all.end(), 0);
    return is_parabolic_finite(all);
  }

  bool is_parabolic_finite(std::span<const int> subset) {
    try {
      (void)longest_element(subset);
      return true;
    } catch (const InfiniteParabolicError&) {
      return false;
    }
  }

  /// w0 of the whole group; throws InfiniteParabolicError when W is infinite.
  Element longest_element() {
    std::vector<int> all(static_cast<std::size_t>(rank_));
    std::iota(all.begin(), all.end(), 0);
    return longest_element(all);
  }

  /// w0(J), the longest element of the parabolic subgroup W_J.
  ///
  /// Walks upward along ascents inside J: in a finite W_J the walk stops at
  /// the unique element with every s in J a right descent; in an infinite
  /// W_J no such element exists, so the walk is cut off at the finiteness cap.
  Element longest_element(std::span<const int> subset) {
    GeneratorSet mask = 0;
    for (int s : subset) {
      check_letter(s);
      mask |= GeneratorSet{1} << s;
    }
    std::lock_guard lock(mu_);
    if (auto it = longest_cache_.find(mask); it != longest_cache_.end()) return Element{it->second};
    Matrix fwd = identity_matrix();
    Word walk;
    for (;;) {
      int ascent = -1;
      for (int s = 0; s < rank_ && ascent < 0; ++s)
        if ((mask >> s & 1U) && !column_negative(fwd, s)) ascent = s;
      if (ascent < 0) break;
      if (walk.size() >= limits_.finiteness_cap)
        throw InfiniteParabolicError("parabolic subgroup is infinite or exceeds the finiteness cap");
      try {
        column_op(fwd, ascent);
      } catch (const ResourceError&) {
        throw InfiniteParabolicError("parabolic subgroup is infinite (root coefficients overflow)");
      }
      walk.push_back(ascent);
    }
    std::uint32_t cur = 0;
    for (int s : walk) cur = right_mul_locked(cur, s);
    longest_cache_.emplace(mask, cur);
    return Element{cur};
  }

  /// Reflections (conjugates of generators) of length <= max_length.
  std::vector<Element> reflections(int max_length) {
    const auto ball = enumerate_ball(std::max(max_length, 0));
    std::set<std::pair<std::pair<int, Word>, std::uint32_t>> found;
    for (Element u : ball)
      for (int s = 0; s < rank_; ++s) {
        const Element t = multiply(multiply(u, generator(s)), invert(u));
        if (length(t) <= max_length) found.insert({{length(t), word(t)}, t.id});
      }
    std::vector<Element> out;
    for (const auto& f : found) out.push_back(Element{f.second});
    return out;
  }

  /// Absolute length: least number of reflections with product x, found by
  /// breadth-first search over reflection products inside `ball`.
  int absolute_length(Element x, std::span<const Element> ball) {
    const int lx = length(x);
    if (lx == 0) return 0;
    int max_len = 0;
    bool closed = false;
    for (Element b : ball) {
      max_len = std::max(max_len, length(b));
      if (descents(b, Side::right) == full_mask()) closed = true;  // contains w0: whole finite group
    }
    if (!closed && max_len < 2 * lx) throw ResourceError("ball too small for absolute length");
    std::unordered_set<Element, ElementHash> in_ball(ball.begin(), ball.end());
    std::vector<Element> refl;
    for (Element b : ball)
      if (length(b) % 2 == 1 && length(b) <= 2 * lx - 1 && is_reflection(b)) refl.push_back(b);
    std::unordered_set<Element, ElementHash> seen{identity()};
    std::vector<Element> frontier{identity()};
    for (int k = 1; !frontier.empty(); ++k) {
      std::vector<Element> next;
      for (Element y : frontier)
        for (Element t : refl) {
          const Element z = multiply(y, t);
          if (!in_ball.count(z) || !seen.insert(z).second) continue;
          if (z == x) return k;
          next.push_back(z);
        }
      frontier = std::move(next);
    }
    throw ResourceError("element not reachable by reflection products inside the ball");
  }

  /// t is a reflection iff conjugating by left descents walks it down to a
  /// generator: for a reflection every left descent s gives l(sts) = l(t) - 2.
  bool is_reflection(Element t) {
    if (length(t) % 2 == 0) return false;
    Element cur = t;
    while (length(cur) > 1) {
      const GeneratorSet dl = descents(cur, Side::left);
      const int s = std::countr_zero(dl);
      const Element c = right_multiply(left_multiply(s, cur), s);
      if (length(c) != length(cur) - 2) return false;
      cur = c;
    }
    return true;
  }

  GeneratorSet full_mask() const noexcept {
    return rank_ == 64 ? ~GeneratorSet{0} : (GeneratorSet{1} << rank_) - 1;
  }

 private:
  using Matrix = std::vector<std::int64_t>;

  struct Bond {
    enum class Kind { zero, scalar, general } kind = Kind::zero;
    std::int64_t scalar = 0;
    std::vector<std::int64_t> mul;  // d x d, row-major
  };

  struct Node {
    Word word;
    Matrix inv;  // columns w^{-1}(a_t)
    Matrix fwd;  // columns w(a_t)
    std::vector<std::int32_t> right, left;
    std::int64_t inverse = -1;
    GeneratorSet left_descents = 0, right_descents = 0;
  };

  static constexpr std::int64_t kCoefficientBound = std::int64_t{1} << 48;

  void check_letter(int s) const {
    if (s < 0 || s >= rank_) throw InputError("generator index " + std::to_string(s + 1) + " out of range 1.." + std::to_string(rank_));
  }

  const Node& node(Element x) const {
    if (x.id >= nodes_.size()) throw InputError("element handle does not belong to this system");
    return nodes_[x.id];
  }

  std::size_t entry(int row, int col) const noexcept {
    return (static_cast<std::size_t>(col) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(row)) * static_cast<std::size_t>(d_);
  }

  Matrix identity_matrix() const {
    Matrix m(static_cast<std::size_t>(rank_ * rank_ * d_), 0);
    for (int i = 0; i < rank_; ++i) m[entry(i, i)] = 1;
    return m;
  }

  // out += c(s,t) * x, all ring elements of length d_.
  void add_scaled(std::int64_t* out, const Bond& b, const std::int64_t* x, std::int64_t sign) const {
    switch (b.kind) {
      case Bond::Kind::zero:
        return;
      case Bond::Kind::scalar:
        for (int k = 0; k < d_; ++k) out[k] += sign * b.scalar * x[k];
        return;
      case Bond::Kind::general:
        for (int i = 0; i < d_; ++i) {
          std::int64_t acc = 0;
          for (int j = 0; j < d_; ++j) acc += b.mul[static_cast<std::size_t>(i * d_ + j)] * x[j];
          out[i] += sign * acc;
        }
        return;
    }
  }

  const Bond& bond(int s, int t) const { return bonds_[static_cast<std::size_t>(s * rank_ + t)]; }

  // A <- A * s : column u becomes col_u - c(s,u) col_s.
  void column_op(Matrix& a, int s) const {
    const std::size_t col_len = static_cast<std::size_t>(rank_ * d_);
    std::vector<std::int64_t> cs(a.begin() + static_cast<std::ptrdiff_t>(entry(0, s)),
                                 a.begin() + static_cast<std::ptrdiff_t>(entry(0, s) + col_len));
    for (int u = 0; u < rank_; ++u) {
      std::int64_t* col = a.data() + entry(0, u);
      for (int r = 0; r < rank_; ++r) add_scaled(col + r * d_, bond(s, u), cs.data() + r * d_, -1);
    }
    check_bound(a);
  }

  // A <- s * A : coordinate s of every column becomes v_s - sum_t c(s,t) v_t.
  void row_op(Matrix& a, int s) const {
    std::vector<std::int64_t> delta(static_cast<std::size_t>(d_));
    for (int u = 0; u < rank_; ++u) {
      std::fill(delta.begin(), delta.end(), 0);
      const std::int64_t* col = a.data() + entry(0, u);
      for (int t = 0; t < rank_; ++t) add_scaled(delta.data(), bond(s, t), col + t * d_, 1);
      std::int64_t* vs = a.data() + entry(s, u);
      for (int k = 0; k < d_; ++k) vs[k] -= delta[static_cast<std::size_t>(k)];
    }
    check_bound(a);
  }

  static void check_bound(const Matrix& a) {
    for (std::int64_t v : a)
      if (v > kCoefficientBound || v < -kCoefficientBound)
        throw ResourceError("root coefficients exceed the exact-arithmetic bound");
  }

  // Roots are positive or negative; read the sign off the largest coordinate.
  bool column_negative(const Matrix& a, int col) const {
    long double best = 0;
    for (int r = 0; r < rank_; ++r) {
      const std::int64_t* x = a.data() + entry(r, col);
      bool zero = true;
      for (int k = 0; k < d_ && zero; ++k) zero = x[k] == 0;
      if (zero) continue;
      const long double v = ring_.evaluate(std::span<const std::int64_t>(x, static_cast<std::size_t>(d_)));
      if (v * v > best * best) best = v;
    }
    if (best == 0) throw InternalError("zero root vector in reflection representation");
    return best < 0;
  }

  GeneratorSet negative_columns(const Matrix& a) const {
    GeneratorSet out = 0;
    for (int s = 0; s < rank_; ++s)
      if (column_negative(a, s)) out |= GeneratorSet{1} << s;
    return out;
  }

  static std::uint64_t hash_matrix(const Matrix& m) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t v : m) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return h;
  }

  std::int64_t find_locked(const Matrix& inv) const {
    auto [lo, hi] = index_.equal_range(hash_matrix(inv));
    for (auto it = lo; it != hi; ++it)
      if (nodes_[it->second].inv == inv) return it->second;
    return -1;
  }

  // Interns the element with the given matrices, computing its canonical
  // word by peeling the least left descent: lex-least(w) = s . lex-least(sw).
  std::uint32_t intern_locked(Matrix inv, Matrix fwd) {
    if (auto hit = find_locked(inv); hit >= 0) return static_cast<std::uint32_t>(hit);
    struct Pending {
      Matrix inv, fwd;
      int peeled;
    };
    std::vector<Pending> chain;
    std::int64_t base = -1;
    for (;;) {
      const GeneratorSet dl = negative_columns(inv);
      if (dl == 0) throw InternalError("non-identity element without left descents");
      const int s = std::countr_zero(dl);
      Matrix inv2 = inv, fwd2 = fwd;
      column_op(inv2, s);  // (sw)^{-1} = w^{-1} s
      row_op(fwd2, s);     // sw
      chain.push_back({std::move(inv), std::move(fwd), s});
      base = find_locked(inv2);
      if (base >= 0) break;
      inv = std::move(inv2);
      fwd = std::move(fwd2);
    }
    std::uint32_t below = static_cast<std::uint32_t>(base);
    for (std::size_t i = chain.size(); i-- > 0;) {
      Pending& p = chain[i];
      Node n;
      n.word.reserve(nodes_[below].word.size() + 1);
      n.word.push_back(p.peeled);
      n.word.insert(n.word.end(), nodes_[below].word.begin(), nodes_[below].word.end());
      n.left_descents = negative_columns(p.inv);
      n.right_descents = negative_columns(p.fwd);
      n.inv = std::move(p.inv);
      n.fwd = std::move(p.fwd);
      n.right.assign(static_cast<std::size_t>(rank_), -1);
      n.left.assign(static_cast<std::size_t>(rank_), -1);
      const auto id = static_cast<std::uint32_t>(nodes_.size());
      n.left[static_cast<std::size_t>(p.peeled)] = static_cast<std::int32_t>(below);
      index_.emplace(hash_matrix(n.inv), id);
      nodes_.push_back(std::move(n));
      nodes_[below].left[static_cast<std::size_t>(p.peeled)] = static_cast<std::int32_t>(id);
      below = id;
    }
    return below;
  }

  std::uint32_t right_mul_locked(std::uint32_t x, int s) {
    if (auto y = nodes_[x].right[static_cast<std::size_t>(s)]; y >= 0) return static_cast<std::uint32_t>(y);
    Matrix inv = nodes_[x].inv, fwd = nodes_[x].fwd;
    row_op(inv, s);     // (ws)^{-1} = s w^{-1}
    column_op(fwd, s);  // ws
    const std::uint32_t y = intern_locked(std::move(inv), std::move(fwd));
    nodes_[x].right[static_cast<std::size_t>(s)] = static_cast<std::int32_t>(y);
    nodes_[y].right[static_cast<std::size_t>(s)] = static_cast<std::int32_t>(x);
    return y;
  }

  std::uint32_t left_mul_locked(int s, std::uint32_t x) {
    if (auto y = nodes_[x].left[static_cast<std::size_t>(s)]; y >= 0) return static_cast<std::uint32_t>(y);
    Matrix inv = nodes_[x].inv, fwd = nodes_[x].fwd;
    column_op(inv, s);
    row_op(fwd, s);
    const std::uint32_t y = intern_locked(std::move(inv), std::move(fwd));
    nodes_[x].left[static_cast<std::size_t>(s)] = static_cast<std::int32_t>(y);
    nodes_[y].left[static_cast<std::size_t>(s)] = static_cast<std::int32_t>(x);
    return y;
  }

  std::uint32_t inverse_locked(std::uint32_t x) {
    if (nodes_[x].inverse >= 0) return static_cast<std::uint32_t>(nodes_[x].inverse);
    // Swapping the two matrices of w gives those of w^{-1}.
    const std::uint32_t y = intern_locked(nodes_[x].fwd, nodes_[x].inv);
    nodes_[x].inverse = y;
    nodes_[y].inverse = x;
    return y;
  }

  CoxeterMatrix matrix_;
  SystemLimits limits_;
  int rank_;
  CyclotomicRing ring_;
  int d_ = 1;
  std::vector<Bond> bonds_;

  mutable std::recursive_mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> index_;
  std::unordered_map<GeneratorSet, std::uint32_t> longest_cache_;
};

}  // namespace coxfix
