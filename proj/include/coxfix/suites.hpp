#pragma once

// Named verification suites and their reports, shared by the CLI and the
// acceptance binary.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxfix/catalog.hpp"
#include "coxfix/coxeter_matrix.hpp"
#include "coxfix/coxeter_system.hpp"
#include "coxfix/folding.hpp"
#include "coxfix/orders.hpp"
#include "coxfix/poset.hpp"
#include "coxfix/topology.hpp"
#include "coxfix/twisted.hpp"

namespace coxfix {

struct SuiteConfig {
  std::string group = "A3";            // catalog name or matrix file
  std::vector<std::string> perms;      // automorphism group generators (fold suites)
  std::string theta = "id";            // `id` or a permutation
  std::optional<int> radius;           // ball radius L; default: l(w0) if finite, else 8
  std::optional<int> top_length;       // longest top element considered; default: radius
  int max_interval = 5;                // interval length cap
  std::size_t max_faces = 2'000'000;   // order complex size cap
  std::size_t samples = 0;             // 0 = exhaustive
  std::uint64_t seed = 1;
  std::string expect;                  // fold-matrix: expected catalog type
  bool extended = false;
};

struct CheckLine {
  std::string check_id;
  std::string params;
  bool pass = true;
  std::string witness;
};

struct Report {
  std::string suite, group, theta;
  std::string config_echo;
  std::vector<CheckLine> checks;
  std::vector<std::string> notes;  // informational lines, e.g. computed matrices
  double seconds = 0;

  void add(std::string id, std::string params, bool pass, std::string witness = {}) {
    checks.push_back({std::move(id), std::move(params), pass, std::move(witness)});
  }
  void add(std::string id, std::string params, const SweepResult& r) {
    if (!params.empty()) params += ' ';
    add(std::move(id), params + "n=" + std::to_string(r.checked), r.ok, r.witness);
  }

  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& c : checks) f += c.pass ? 0 : 1;
    return f;
  }
  bool all_pass() const { return failures() == 0; }

  /// `PASS|FAIL <suite> <group> <theta> <params> [witness]` lines.
  void write_text(std::ostream& os) const {
    os << "# " << config_echo << '\n';
    for (const auto& n : notes) os << "# " << n << '\n';
    for (const auto& c : checks) {
      os << (c.pass ? "PASS " : "FAIL ") << suite << ' ' << group << ' ' << theta << ' ' << c.check_id;
      if (!c.params.empty()) os << ' ' << c.params;
      if (!c.witness.empty()) os << ' ' << c.witness;
      os << '\n';
    }
    os << "# " << checks.size() << " checks, " << failures() << " failed\n";
  }

  /// Tab-separated: suite, group, params, check-id, status, witness.
  /// Contains no timings, so it is identical across runs.
  void write_tsv(std::ostream& os) const {
    os << "suite\tgroup\tparams\tcheck-id\tstatus\twitness\n";
    for (const auto& c : checks) {
      std::string params = "theta=" + theta;
      if (!c.params.empty()) params += ' ' + c.params;
      os << suite << '\t' << group << '\t' << params << '\t' << c.check_id << '\t' << (c.pass ? "PASS" : "FAIL")
         << '\t' << c.witness << '\n';
    }
  }
};

/// Catalog name, or the path of a matrix file.
inline CoxeterMatrix resolve_group(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return parse_matrix_file(spec);
  return catalog(spec);
}

/// `id`, `perm=3,2,1` or `3,2,1`.
inline GraphAutomorphism resolve_automorphism(const CoxeterMatrix& m, std::string spec) {
  if (spec == "id") return GraphAutomorphism::identity(m);
  if (spec.rfind("perm=", 0) == 0) spec = spec.substr(5);
  return GraphAutomorphism(m, parse_perm(spec));
}

namespace suite_detail {

struct Context {
  const SuiteConfig& cfg;
  CoxeterMatrix matrix;
  CoxeterSystem w;
  bool finite;
  int radius;
  int top_length;
  TopologyLimits limits;

  explicit Context(const SuiteConfig& c)
      : cfg(c), matrix(resolve_group(c.group)), w(matrix), finite(w.is_finite()) {
    radius = c.radius ? *c.radius : (finite ? w.length(w.longest_element()) : 8);
    top_length = c.top_length ? std::min(*c.top_length, radius) : radius;
    if (radius < 0 || top_length < 0 || c.max_interval <= 0 || c.max_faces == 0)
      throw InputError("caps must be positive");
    limits.max_faces = c.max_faces;
  }

  std::string word(Element x) const { return format_word(w.word(x)); }

  std::vector<Element> ball() { return w.enumerate_ball(radius); }

  void require_finite(const char* what) const {
    if (!finite) throw PreconditionError(std::string(what) + " needs a finite group");
  }
};

/// Deterministic sample of `k` indices out of `n` (all of them if k == 0 or
/// k >= n), returned sorted.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (k == 0 || k >= n) return idx;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng() % (n - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Pairs (i, j), i < j in the poset, passing `keep`, in index order.
template <class Keep>
std::vector<std::pair<std::size_t, std::size_t>> comparable_pairs(const Poset& p, Keep&& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto j : p.strict_up(i).indices())
      if (keep(i, j)) out.emplace_back(i, j);
  return out;
}

/// Length of a longest chain from bottom to top.
inline int height(const Poset& p) {
  std::vector<int> h(p.size(), 0);
  for (std::size_t j = 0; j < p.size(); ++j)
    for (auto i : p.covered_by(j)) h[j] = std::max(h[j], h[i] + 1);
  return p.empty() ? 0 : h.back();
}

inline Poset bruhat_poset(CoxeterSystem& w, const std::vector<Element>& universe) {
  std::vector<Poset::Key> keys;
  for (Element x : universe) keys.push_back(x.id);
  return Poset::from_relation(
      std::move(keys), [&](Poset::Key a, Poset::Key b) { return bruhat_leq(w, Element{a}, Element{b}); },
      [&](Poset::Key k) { return w.length(Element{k}); });
}

/// Br(I(theta)) on the given twisted involutions; covers by transitive reduction.
inline Poset twisted_poset(CoxeterSystem& w, const std::vector<Element>& universe) {
  std::vector<Poset::Key> keys;
  for (Element x : universe) keys.push_back(x.id);
  return Poset::from_relation(std::move(keys), [&](Poset::Key a, Poset::Key b) {
    return bruhat_leq(w, Element{a}, Element{b});
  });
}

inline std::string uv(const Context& c, const Poset& p, std::size_t i, std::size_t j) {
  return "u=" + c.word(Element{p.key(i)}) + " v=" + c.word(Element{p.key(j)});
}

// ---------------------------------------------------------------- suites

inline void bruhat_sphere(Context& c, Report& r) {
  const Poset p = bruhat_poset(c.w, c.ball());
  const auto pairs = comparable_pairs(p, [&](std::size_t i, std::size_t j) {
    const Element u{p.key(i)}, v{p.key(j)};
    return c.w.length(v) <= c.top_length && c.w.length(v) - c.w.length(u) <= c.cfg.max_interval;
  });
  for (auto k : sample_indices(pairs.size(), c.cfg.samples, c.cfg.seed)) {
    const auto [i, j] = pairs[k];
    const Element u{p.key(i)}, v{p.key(j)};
    const ComplexZ2 cx = order_complex(p.open_interval(i, j), c.limits);
    const int want = c.w.length(v) - c.w.length(u) - 2;
    const auto s = is_homology_sphere_z2(cx, want);
    r.add("sphere", uv(c, p, i, j), s.sphere,
          s.sphere ? "" : homology_report_line(c.word(u), c.word(v), cx, s.profile) + " want S^" + std::to_string(want));
  }
}

struct TwistedData {
  GraphAutomorphism theta;
  TwistedSet iota;
  Poset poset;
  std::unordered_map<Element, int, ElementHash> ltheta;
};

inline TwistedData twisted_data(Context& c, bool involutive = true) {
  TwistedData d;
  d.theta = resolve_automorphism(c.matrix, c.cfg.theta);
  if (involutive && !d.theta.is_involution()) throw InputError("theta must be an involution");
  d.iota = twisted_set(c.w, d.theta, c.radius);
  std::vector<Element> tops;
  for (Element x : d.iota.involutions)
    if (c.w.length(x) <= c.top_length) tops.push_back(x);
  d.poset = twisted_poset(c.w, tops);
  return d;
}

inline int ltheta(Context& c, TwistedData& d, Element x) {
  auto it = d.ltheta.find(x);
  if (it != d.ltheta.end()) return it->second;
  return d.ltheta[x] = twisted_absolute_length(c.w, x, d.iota);
}

/// Intervals of Br(I(theta)) with longest chain <= max_interval.
inline std::vector<std::pair<std::size_t, std::size_t>> twisted_intervals(Context& c, const TwistedData& d) {
  const Poset& p = d.poset;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [i, j] : comparable_pairs(p, [&](std::size_t i, std::size_t j) {
         // A cover raises length by at least one.
         return c.w.length(Element{p.key(j)}) - c.w.length(Element{p.key(i)}) <= 2 * c.cfg.max_interval;
       }))
    if (height(p.closed_interval(i, j)) <= c.cfg.max_interval) out.emplace_back(i, j);
  return out;
}

inline void twisted_gorenstein(Context& c, Report& r) {
  auto d = twisted_data(c);
  const auto ivs = twisted_intervals(c, d);
  for (auto k : sample_indices(ivs.size(), c.cfg.samples, c.cfg.seed)) {
    const auto [i, j] = ivs[k];
    const Interval iv = as_interval(d.poset.closed_interval(i, j));
    const std::string params = uv(c, d.poset, i, j);
    const auto g = is_graded(iv);
    r.add("graded", params, g.graded);
    if (!g.graded) continue;
    r.add("eulerian", params, is_eulerian(iv));
    const auto gs = is_gorenstein_star_z2(iv, c.limits);
    r.add("gorenstein", params, gs.ok,
          gs.ok ? "" : gs.failure + " at " + uv(c, iv.poset, gs.lower, gs.upper));
  }
}

inline void rank_formula(Context& c, Report& r) {
  auto d = twisted_data(c);
  const auto ivs = twisted_intervals(c, d);
  for (auto k : sample_indices(ivs.size(), c.cfg.samples, c.cfg.seed)) {
    const auto [i, j] = ivs[k];
    const Interval iv = as_interval(d.poset.closed_interval(i, j));
    r.add("rank", uv(c, d.poset, i, j), verify_rank_theorem(c.w, iv, d.iota));
  }
}

inline void smith(Context& c, Report& r) {
  auto d = twisted_data(c);
  for (Element top : d.iota.involutions) {
    // [e, e] has no open part.
    if (c.w.length(top) > c.top_length || c.w.length(top) == 0) continue;
    const auto ball = c.w.enumerate_ball(c.w.length(top));
    const Interval amb = build_interval(c.w, OrderKind::bruhat, ball, CoxeterSystem::identity(), top);
    std::vector<std::size_t> nu(amb.size());
    for (std::size_t i = 0; i < amb.size(); ++i) {
      const Element img = c.w.invert(apply_auto(c.w, d.theta, Element{amb.poset.key(i)}));
      nu[i] = *amb.poset.index_of(img.id);
    }
    const auto s = smith_fixed_check(amb, nu, c.limits);
    const std::string params = "w=" + c.word(top);
    r.add("smith", params, s.sphere,
          s.sphere ? "r=" + std::to_string(s.r) + " n=" + std::to_string(s.n)
                   : "betti " + s.profile.to_string() + " n=" + std::to_string(s.n));
    // The fixed points are exactly the twisted involutions below top.
    std::vector<Poset::Key> fixed, twisted;
    for (auto i : s.fixed) fixed.push_back(amb.poset.key(i));
    for (std::size_t i = 0; i < amb.size(); ++i)
      if (d.iota.is_involution(Element{amb.poset.key(i)})) twisted.push_back(amb.poset.key(i));
    r.add("fixed-equals-twisted", params, fixed == twisted);
  }
}

inline void deodhar_oracle(Context& c, Report& r) {
  const auto ball = c.ball();
  SweepResult res;
  auto check = [&](Element u, Element v) {
    ++res.checked;
    if (bruhat_leq(c.w, u, v) != bruhat_leq_subword(c.w, u, v)) res.fail("u=" + c.word(u) + " v=" + c.word(v));
  };
  if (c.cfg.samples == 0) {
    for (Element u : ball)
      for (Element v : ball) check(u, v);
  } else {
    std::mt19937_64 rng(c.cfg.seed);
    for (std::size_t k = 0; k < c.cfg.samples; ++k) check(ball[rng() % ball.size()], ball[rng() % ball.size()]);
  }
  r.add("deodhar-vs-subword", "L=" + std::to_string(c.radius), res);
}

inline void ltheta_dyer(Context& c, Report& r) {
  if (c.cfg.theta != "id") throw InputError("ltheta-dyer compares l^id with absolute length; use --theta id");
  auto d = twisted_data(c);
  const auto ball = c.ball();
  SweepResult res;
  for (Element x : ball) {
    ++res.checked;
    const int a = ltheta(c, d, x), b = c.w.absolute_length(x, ball);
    if (a != b) res.fail("w=" + c.word(x) + " l^id=" + std::to_string(a) + " l'=" + std::to_string(b));
  }
  r.add("ltheta-equals-absolute", "L=" + std::to_string(c.radius), res);
}

inline void lemmas(Context& c, Report& r, const std::string& which) {
  auto d = twisted_data(c);
  const std::string params = "L=" + std::to_string(c.radius);
  const bool all = which == "lemmas";
  if (all || which == "lemma-rotation") r.add("rotation", params, verify_rotation_lemma(c.w, d.iota, c.radius));
  if (all || which == "lemma-halving") r.add("halving", params, verify_halving_lemma(c.w, d.iota, c.radius));
  if (all || which == "lemma-length") r.add("length", params, verify_length_lemma(c.w, d.iota, c.radius));
  if (all || which == "ltheta-welldefined")
    r.add("welldefined", params, verify_welldefined_sweep(c.w, d.iota, c.radius));
  if (!all) return;

  SweepResult closure, subset, parity;
  for (Element x : d.iota.involutions) {
    ++closure.checked;
    if (!d.iota.is_involution(c.w.invert(x)) || !d.iota.is_involution(apply_auto(c.w, d.theta, x)))
      closure.fail("w=" + c.word(x));
    ++parity.checked;
    if ((ltheta(c, d, x) - c.w.length(x)) % 2 != 0) parity.fail("w=" + c.word(x));
  }
  for (Element x : d.iota.identities) {
    ++subset.checked;
    if (!d.iota.is_involution(x)) subset.fail("w=" + c.word(x));
  }
  r.add("involutions-closed", params, closure);
  r.add("identities-are-involutions", params, subset);
  r.add("ltheta-parity", params, parity);
}

/// Fold suites refuse groups whose longest element exceeds this length
/// unless `extended` is set (E6 and larger).
inline constexpr int kFoldLengthGate = 30;

struct FoldData {
  AutomorphismGroup g;
  FoldedSystem f;
  std::unique_ptr<CoxeterSystem> wt;
};

inline FoldData fold_data(Context& c) {
  c.require_finite("folding verification");
  if (!c.cfg.extended && c.w.length(c.w.longest_element()) > kFoldLengthGate)
    throw ResourceError("group too large for the default run; pass --extended");
  std::vector<GraphAutomorphism> gens;
  for (const auto& p : c.cfg.perms) gens.push_back(resolve_automorphism(c.matrix, p));
  FoldData d{AutomorphismGroup(c.matrix, gens), {}, nullptr};
  d.f = fold(c.w, d.g);
  d.wt = std::make_unique<CoxeterSystem>(d.f.tilde_matrix);
  return d;
}

inline std::string orbit_text(const std::vector<std::vector<int>>& orbs) {
  std::string s;
  for (const auto& o : orbs) {
    s += '{';
    for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + std::to_string(o[i] + 1);
    s += '}';
  }
  return s;
}

/// `[1 4;4 1]`, `inf` for infinite bonds.
inline std::string matrix_inline(const CoxeterMatrix& m) {
  std::string s = "[";
  for (int i = 0; i < m.rank(); ++i) {
    if (i) s += ';';
    for (int j = 0; j < m.rank(); ++j) {
      if (j) s += ' ';
      s += m(i, j) == kInfinity ? "inf" : std::to_string(m(i, j));
    }
  }
  return s + "]";
}

inline void fold_common(Context& c, Report& r, FoldData& d) {
  r.notes.push_back("|G|=" + std::to_string(d.g.order()) + " orbits " + orbit_text(d.f.orbits) + " matrix " +
                    matrix_inline(d.f.tilde_matrix));
  r.add("fixed-subgroup", "", verify_fixed_subgroup(c.w, d.g, d.f, *d.wt));
}

inline void fold_matrix(Context& c, Report& r) {
  auto d = fold_data(c);
  r.notes.push_back("|G|=" + std::to_string(d.g.order()) + " orbits " + orbit_text(d.f.orbits));
  bool valid = true;
  try {
    d.f.tilde_matrix.validate();
  } catch (const Error&) {
    valid = false;
  }
  r.add("matrix", matrix_inline(d.f.tilde_matrix), valid);
  if (!c.cfg.expect.empty())
    r.add("matches", "expect=" + c.cfg.expect, d.f.tilde_matrix.isomorphic_to(catalog(c.cfg.expect)));
}

inline void fold_weak(Context& c, Report& r) {
  auto d = fold_data(c);
  fold_common(c, r, d);
  r.add("weak-iso", "", verify_weak_iso(c.w, d.f, *d.wt));
  r.add("chain-transport", "", verify_chain_transport(c.w, d.g, d.f, *d.wt));
}

inline void fold_bruhat(Context& c, Report& r) {
  auto d = fold_data(c);
  fold_common(c, r, d);
  r.add("bruhat-iso", "", verify_bruhat_iso(c.w, d.f, *d.wt));
}

inline void fold_properties(Context& c, Report& r) {
  auto d = fold_data(c);
  fold_common(c, r, d);
  r.add("crisp", "", verify_crisp(c.w, d.f, *d.wt));
  r.add("homomorphism", "", verify_homomorphism(c.w, d.f, *d.wt));
  r.add("length-bookkeeping", "", verify_length_bookkeeping(c.w, d.g, d.f));
}

inline void w0_theorem(Context& c, Report& r) {
  c.require_finite("w0 theorem");
  if (!c.cfg.extended && c.w.length(c.w.longest_element()) > kFoldLengthGate)
    throw ResourceError("group too large for the default run; pass --extended");
  const auto res = verify_w0_theorem(c.w);
  std::string ex;
  for (int e : res.exponents) ex += (ex.empty() ? "" : ",") + std::to_string(e);
  r.notes.push_back("exponents " + ex + " W- " + res.w_minus + " conjugation " + res.conjugation.to_string());
  const std::string params = "W-=" + res.w_minus;
  r.add("folded-matrix", params, res.matrix_matches);
  r.add("centralizer", params, res.centralizer_matches);
  r.add("weak-iso", params, res.weak);
  r.add("bruhat-iso", params, res.bruhat);
  // x -> w0 x w0 is trivial exactly when every exponent is odd.
  const bool all_odd = std::all_of(res.exponents.begin(), res.exponents.end(), [](int e) { return e % 2 == 1; });
  r.add("trivial-iff-odd", "conjugation=" + res.conjugation.to_string(), all_odd == res.conjugation.is_identity());
}

}  // namespace suite_detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "bruhat-sphere", "bw-spheres",   "twisted-gorenstein", "rank-formula",   "smith",
      "deodhar-oracle", "ltheta-dyer", "lemmas",             "lemma-rotation", "lemma-halving",
      "lemma-length",  "ltheta-welldefined", "fold-matrix",  "fold-weak",      "fold-bruhat",
      "fold-properties", "w0-theorem"};
  return names;
}

/// Runs one suite. Configuration and resource problems propagate as
/// exceptions (InputError, ResourceError, PreconditionError, ...).
inline Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  using namespace suite_detail;
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw InputError("unknown suite `" + name + "`");
  const auto start = std::chrono::steady_clock::now();
  Context c(cfg);
  Report r;
  r.suite = name;
  r.group = cfg.group;
  const bool fold_suite = name.rfind("fold-", 0) == 0;
  if (fold_suite) {
    std::string t;
    for (const auto& p : cfg.perms) t += (t.empty() ? "" : ";") + resolve_automorphism(c.matrix, p).to_string();
    r.theta = t.empty() ? "id" : t;
  } else {
    r.theta = resolve_automorphism(c.matrix, cfg.theta).to_string();
  }
  r.config_echo = "suite=" + name + " group=" + cfg.group + " theta=" + r.theta + " L=" + std::to_string(c.radius) +
                  " top-length=" + std::to_string(c.top_length) + " max-interval=" + std::to_string(cfg.max_interval) +
                  " max-faces=" + std::to_string(cfg.max_faces) + " samples=" + std::to_string(cfg.samples) +
                  " seed=" + std::to_string(cfg.seed) + (cfg.extended ? " extended" : "");

  if (name == "bruhat-sphere" || name == "bw-spheres") bruhat_sphere(c, r);
  else if (name == "twisted-gorenstein") twisted_gorenstein(c, r);
  else if (name == "rank-formula") rank_formula(c, r);
  else if (name == "smith") smith(c, r);
  else if (name == "deodhar-oracle") deodhar_oracle(c, r);
  else if (name == "ltheta-dyer") ltheta_dyer(c, r);
  else if (name == "lemmas" || name.rfind("lemma-", 0) == 0 || name == "ltheta-welldefined") lemmas(c, r, name);
  else if (name == "fold-matrix") fold_matrix(c, r);
  else if (name == "fold-weak") fold_weak(c, r);
  else if (name == "fold-bruhat") fold_bruhat(c, r);
  else if (name == "fold-properties") fold_properties(c, r);
  else if (name == "w0-theorem") w0_theorem(c, r);

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace coxfix
