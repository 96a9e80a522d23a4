#pragma once

// Built-in Coxeter types with fixed generator numbering (1-based in text).
//
//   A<n>    path 1-2-...-n
//   B<n>    path 1=2-3-...-n, the 4-bond between 1 and 2
//   D<n>    path 1-2-...-(n-2), branch node n-2 joined to n-1 and n
//   E6..E8  Bourbaki: path 1-3-4-5-6(-7-8), node 2 hanging off 4
//   F4      1-2=3-4, the 4-bond between 2 and 3
//   G2      1≡2 with m = 6 (same matrix as I2(6))
//   H3, H4  1-2 is the 5-bond, then a path
//   I2(m)   two generators, m(1,2) = m; I2(inf) is the infinite dihedral group
//   affA<n> affine A: n+1 generators on a cycle; affA1 has m(1,2) = inf

#include <algorithm>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "coxfix/coxeter_matrix.hpp"
#include "coxfix/errors.hpp"

namespace coxfix {

namespace detail {

inline CoxeterMatrix path_matrix(int n) {
  CoxeterMatrix m(n);
  for (int i = 0; i + 1 < n; ++i) m.set_bond(i, i + 1, 3);
  return m;
}

}  // namespace detail

/// Standard Coxeter matrix for a catalog name; throws InputError when unknown.
inline CoxeterMatrix catalog(const std::string& name) {
  static const std::regex family_re(R"(^(A|B|D|E|F|H|affA)([0-9]+)$)");
  static const std::regex dihedral_re(R"(^I2\(([0-9]+|inf)\)$)");
  std::smatch mt;
  if (std::regex_match(name, mt, dihedral_re)) {
    CoxeterMatrix m(2);
    if (mt[1] == "inf") {
      m.set_bond(0, 1, kInfinity);
    } else {
      const int order = std::stoi(mt[1]);
      if (order < 2) throw InputError("I2(m) needs m >= 2");
      m.set_bond(0, 1, order);
    }
    return m;
  }
  if (name == "G2") return catalog("I2(6)");
  if (!std::regex_match(name, mt, family_re)) throw InputError("unknown Coxeter type `" + name + "`");
  const std::string fam = mt[1];
  const int n = std::stoi(mt[2]);
  auto bad = [&] { return InputError("unsupported rank in `" + name + "`"); };

  if (fam == "A") {
    if (n < 1 || n > 64) throw bad();
    return detail::path_matrix(n);
  }
  if (fam == "B") {
    if (n < 2 || n > 64) throw bad();
    auto m = detail::path_matrix(n);
    m.set_bond(0, 1, 4);
    return m;
  }
  if (fam == "D") {
    if (n < 4 || n > 64) throw bad();
    CoxeterMatrix m(n);
    for (int i = 0; i + 1 < n - 1; ++i) m.set_bond(i, i + 1, 3);
    m.set_bond(n - 3, n - 1, 3);
    return m;
  }
  if (fam == "E") {
    if (n < 6 || n > 8) throw bad();
    CoxeterMatrix m(n);
    m.set_bond(0, 2, 3);
    m.set_bond(1, 3, 3);
    for (int i = 2; i + 1 < n; ++i) m.set_bond(i, i + 1, 3);
    return m;
  }
  if (fam == "F") {
    if (n != 4) throw bad();
    auto m = detail::path_matrix(4);
    m.set_bond(1, 2, 4);
    return m;
  }
  if (fam == "H") {
    if (n != 3 && n != 4) throw bad();
    auto m = detail::path_matrix(n);
    m.set_bond(0, 1, 5);
    return m;
  }
  // affA
  if (n < 1 || n > 63) throw bad();
  if (n == 1) {
    CoxeterMatrix m(2);
    m.set_bond(0, 1, kInfinity);
    return m;
  }
  auto m = detail::path_matrix(n + 1);
  m.set_bond(n, 0, 3);
  return m;
}

/// Rows printed by `coxfix catalog`.
inline std::vector<std::string> catalog_listing() {
  return {
      "A<n>     n>=1  path 1-2-...-n",
      "B<n>     n>=2  path 1=2-3-...-n (m(1,2)=4)",
      "D<n>     n>=4  path 1-2-...-(n-2); node n-2 joined to n-1 and n",
      "E6 E7 E8       path 1-3-4-5-6(-7-8); node 2 joined to 4",
      "F4             1-2=3-4 (m(2,3)=4)",
      "G2             m(1,2)=6",
      "H3 H4          1-2 has m=5, then path 2-3(-4)",
      "I2(<m>)        m(1,2)=m; I2(inf) infinite dihedral",
      "affA<n>  n>=1  n+1 generators on a cycle; affA1 has m(1,2)=inf",
  };
}

/// A finite irreducible type recognised by its exponent multiset.
struct FiniteType {
  std::string name;
  std::vector<int> exponents;  // sorted ascending
};

/// Exponents of the finite irreducible type named `name`, if it is one.
inline std::optional<std::vector<int>> standard_exponents(const std::string& name) {
  static const std::regex fam_re(R"(^(A|B|D|E|F|H)([0-9]+)$)");
  static const std::regex dihedral_re(R"(^I2\(([0-9]+)\)$)");
  std::smatch mt;
  std::vector<int> ex;
  if (name == "G2") return std::vector<int>{1, 5};
  if (std::regex_match(name, mt, dihedral_re)) {
    const int m = std::stoi(mt[1]);
    if (m < 3) return std::nullopt;  // I2(2) = A1 x A1 is reducible
    return std::vector<int>{1, m - 1};
  }
  if (!std::regex_match(name, mt, fam_re)) return std::nullopt;
  const std::string fam = mt[1];
  const int n = std::stoi(mt[2]);
  if (fam == "A" && n >= 1) {
    for (int i = 1; i <= n; ++i) ex.push_back(i);
  } else if (fam == "B" && n >= 2) {
    for (int i = 1; i <= n; ++i) ex.push_back(2 * i - 1);
  } else if (fam == "D" && n >= 4) {
    for (int i = 1; i < n; ++i) ex.push_back(2 * i - 1);
    ex.push_back(n - 1);
  } else if (fam == "E" && n == 6) {
    ex = {1, 4, 5, 7, 8, 11};
  } else if (fam == "E" && n == 7) {
    ex = {1, 5, 7, 9, 11, 13, 17};
  } else if (fam == "E" && n == 8) {
    ex = {1, 7, 11, 13, 17, 19, 23, 29};
  } else if (fam == "F" && n == 4) {
    ex = {1, 5, 7, 11};
  } else if (fam == "H" && n == 3) {
    ex = {1, 5, 9};
  } else if (fam == "H" && n == 4) {
    ex = {1, 11, 19, 29};
  } else {
    return std::nullopt;
  }
  std::sort(ex.begin(), ex.end());
  return ex;
}

/// All finite irreducible types whose exponent multiset equals `exponents`.
/// Rank-2 groups are named by their common alias (A2, B2, G2) where one
/// exists; I2(3), I2(4), I2(6) are not listed separately.
inline std::vector<FiniteType> match_exponents(std::vector<int> exponents) {
  std::sort(exponents.begin(), exponents.end());
  std::vector<FiniteType> hits;
  const int rank = static_cast<int>(exponents.size());
  auto consider = [&](const std::string& name) {
    auto ex = standard_exponents(name);
    if (ex && *ex == exponents) hits.push_back({name, *ex});
  };
  if (rank == 0) return hits;
  consider("A" + std::to_string(rank));
  if (rank >= 3) consider("B" + std::to_string(rank));
  if (rank >= 4) consider("D" + std::to_string(rank));
  for (const char* nm : {"E6", "E7", "E8", "F4", "H3", "H4"}) consider(nm);
  if (rank == 2) {
    const int m = exponents.back() + 1;
    if (m == 4) consider("B2");
    else if (m == 6) consider("G2");
    else if (m != 3) consider("I2(" + std::to_string(m) + ")");
  }
  return hits;
}

}  // namespace coxfix
