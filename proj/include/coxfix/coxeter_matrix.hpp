#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "coxfix/errors.hpp"

namespace coxfix {

/// Bond order m(s,t); kInfinity marks a pair with no braid relation.
using BondOrder = int;
inline constexpr BondOrder kInfinity = 0;

/// Symmetric Coxeter matrix with unit diagonal. Generators are 0-based
/// internally; every text format in the project is 1-based.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  explicit CoxeterMatrix(int rank) : rank_(rank), m_(static_cast<std::size_t>(rank * rank), 2) {
    if (rank <= 0) throw InputError("Coxeter matrix rank must be positive");
    if (rank > 64) throw InputError("Coxeter matrix rank above 64 is not supported");
    for (int i = 0; i < rank; ++i) at(i, i) = 1;
  }

  /// Builds from a full table and validates symmetry and diagonal.
  static CoxeterMatrix from_rows(const std::vector<std::vector<BondOrder>>& rows) {
    CoxeterMatrix out(static_cast<int>(rows.size()));
    for (int i = 0; i < out.rank_; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != out.rank_)
        throw InputError("Coxeter matrix row " + std::to_string(i + 1) + " has wrong length");
      for (int j = 0; j < out.rank_; ++j) out.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    out.validate();
    return out;
  }

  int rank() const noexcept { return rank_; }

  BondOrder operator()(int i, int j) const { return m_[static_cast<std::size_t>(i * rank_ + j)]; }

  /// Sets m(i,j) = m(j,i) = order.
  void set_bond(int i, int j, BondOrder order) {
    if (i == j) throw InputError("cannot set a diagonal bond");
    if (order != kInfinity && order < 2) throw InputError("bond order must be >= 2 or inf");
    at(i, j) = order;
    at(j, i) = order;
  }

  bool operator==(const CoxeterMatrix&) const = default;

  void validate() const {
    for (int i = 0; i < rank_; ++i) {
      if ((*this)(i, i) != 1) throw InputError("diagonal entry m(" + std::to_string(i + 1) + "," + std::to_string(i + 1) + ") must be 1");
      for (int j = 0; j < rank_; ++j) {
        if (i == j) continue;
        if ((*this)(i, j) != (*this)(j, i)) throw InputError("matrix is not symmetric");
        if ((*this)(i, j) != kInfinity && (*this)(i, j) < 2) throw InputError("off-diagonal entries must be >= 2 or inf");
      }
    }
  }

  /// Restriction to the generators in `subset` (in the given order).
  CoxeterMatrix restrict_to(const std::vector<int>& subset) const {
    CoxeterMatrix out(static_cast<int>(subset.size()));
    for (std::size_t a = 0; a < subset.size(); ++a)
      for (std::size_t b = 0; b < subset.size(); ++b)
        if (a != b) out.at(static_cast<int>(a), static_cast<int>(b)) = (*this)(subset[a], subset[b]);
    return out;
  }

  /// True when some relabelling of generators carries this matrix onto `other`.
  bool isomorphic_to(const CoxeterMatrix& other, std::vector<int>* relabel = nullptr) const {
    if (rank_ != other.rank_) return false;
    std::vector<int> perm(static_cast<std::size_t>(rank_));
    std::iota(perm.begin(), perm.end(), 0);
    // Ranks stay small (<= 8 for every use in the project).
    do {
      bool ok = true;
      for (int i = 0; i < rank_ && ok; ++i)
        for (int j = 0; j < rank_ && ok; ++j)
          ok = (*this)(i, j) == other(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      if (ok) {
        if (relabel) *relabel = perm;
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }

  /// Text form: `rank n` then n rows, `inf` for unbounded bonds.
  std::string to_text() const {
    std::ostringstream os;
    os << "rank " << rank_ << '\n';
    for (int i = 0; i < rank_; ++i) {
      for (int j = 0; j < rank_; ++j) {
        if (j) os << ' ';
        if ((*this)(i, j) == kInfinity) os << "inf";
        else os << (*this)(i, j);
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  BondOrder& at(int i, int j) { return m_[static_cast<std::size_t>(i * rank_ + j)]; }

  int rank_ = 0;
  std::vector<BondOrder> m_;
};

/// Parses the matrix text format. Errors carry the offending line number.
inline CoxeterMatrix parse_matrix_text(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      const auto hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_content_line(line)) throw ParseError(line_no + 1, "missing `rank n` header");
  int rank = 0;
  {
    std::istringstream hs(line);
    std::string kw, extra;
    if (!(hs >> kw) || kw != "rank" || !(hs >> rank) || (hs >> extra))
      throw ParseError(line_no, "expected `rank n`");
    if (rank <= 0 || rank > 64) throw ParseError(line_no, "rank must be in 1..64");
  }

  std::vector<std::vector<BondOrder>> rows;
  std::vector<int> row_lines;
  for (int i = 0; i < rank; ++i) {
    if (!next_content_line(line)) throw ParseError(line_no + 1, "expected " + std::to_string(rank) + " matrix rows");
    std::istringstream rs(line);
    std::vector<BondOrder> row;
    std::string tok;
    while (rs >> tok) {
      if (tok == "inf") {
        row.push_back(kInfinity);
        continue;
      }
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad token `" + tok + "`");
      }
      if (used != tok.size()) throw ParseError(line_no, "bad token `" + tok + "`");
      row.push_back(v);
    }
    if (static_cast<int>(row.size()) != rank)
      throw ParseError(line_no, "expected " + std::to_string(rank) + " entries, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
    row_lines.push_back(line_no);
  }
  if (next_content_line(line)) throw ParseError(line_no, "trailing content after matrix");

  for (int i = 0; i < rank; ++i) {
    const int ln = row_lines[static_cast<std::size_t>(i)];
    for (int j = 0; j < rank; ++j) {
      const BondOrder v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (i == j && v != 1) throw ParseError(ln, "diagonal entry must be 1");
      if (i != j && v != kInfinity && v < 2) throw ParseError(ln, "off-diagonal entry must be >= 2 or inf");
      if (i != j && v != rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw ParseError(ln, "matrix is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  return CoxeterMatrix::from_rows(rows);
}

inline CoxeterMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file `" + path + "`");
  return parse_matrix_text(in);
}

}  // namespace coxfix
