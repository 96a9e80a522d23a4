#pragma once

// Exact arithmetic in Z[zeta], zeta = exp(i*pi/M), used to run the geometric
// representation of a Coxeter group without rounding. Numbers are coefficient
// vectors in the power basis 1, zeta, ..., zeta^(d-1), d = phi(2M).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "coxfix/errors.hpp"

namespace coxfix {

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
inline std::vector<std::int64_t> cyclotomic_polynomial(int n) {
  // x^n - 1 = prod_{d | n} Phi_d(x); divide out every proper divisor.
  std::vector<std::int64_t> num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<std::int64_t> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const std::int64_t c = num[i];  // den is monic
      quot[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

/// The ring Z[zeta_{2M}] restricted to the operations the reflection
/// representation needs: addition and multiplication by fixed constants.
class CyclotomicRing {
 public:
  explicit CyclotomicRing(int m = 1) : m_(m), modulus_(cyclotomic_polynomial(2 * m)) {
    if (m < 1) throw InputError("cyclotomic ring order must be positive");
    degree_ = static_cast<int>(modulus_.size()) - 1;
    cosines_.resize(static_cast<std::size_t>(degree_));
    for (int k = 0; k < degree_; ++k)
      cosines_[static_cast<std::size_t>(k)] =
          std::cos(static_cast<long double>(k) * std::numbers::pi_v<long double> /
                   static_cast<long double>(m_));
  }

  int order() const noexcept { return m_; }
  int degree() const noexcept { return degree_; }

  /// zeta^k + zeta^(-k) = 2cos(k*pi/M) as a reduced coefficient vector.
  std::vector<std::int64_t> two_cos(int k) const {
    std::vector<std::int64_t> poly(static_cast<std::size_t>(2 * m_), 0);
    const int a = ((k % (2 * m_)) + 2 * m_) % (2 * m_);
    const int b = (2 * m_ - a) % (2 * m_);
    poly[static_cast<std::size_t>(a)] += 1;
    poly[static_cast<std::size_t>(b)] += 1;
    return reduce(std::move(poly));
  }

  /// Integer constant embedded in the ring.
  std::vector<std::int64_t> integer(std::int64_t v) const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(degree_), 0);
    out[0] = v;
    return out;
  }

  /// d x d matrix (row-major) of multiplication by c in the power basis.
  std::vector<std::int64_t> multiplication_matrix(std::span<const std::int64_t> c) const {
    const auto d = static_cast<std::size_t>(degree_);
    std::vector<std::int64_t> mat(d * d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<std::int64_t> prod(2 * d, 0);
      for (std::size_t i = 0; i < d; ++i) prod[i + j] += c[i];
      const auto col = reduce(std::move(prod));
      for (std::size_t i = 0; i < d; ++i) mat[i * d + j] = col[i];
    }
    return mat;
  }

  /// Real value of a ring element whose imaginary part vanishes.
  long double evaluate(std::span<const std::int64_t> x) const {
    long double v = 0;
    for (std::size_t k = 0; k < x.size(); ++k) v += static_cast<long double>(x[k]) * cosines_[k];
    return v;
  }

 private:
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> poly) const {
    const auto d = static_cast<std::size_t>(degree_);
    for (std::size_t i = poly.size(); i-- > d;) {
      const std::int64_t c = poly[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= d; ++j) poly[i - d + j] -= c * modulus_[j];
    }
    poly.resize(d);
    return poly;
  }

  int m_;
  int degree_ = 1;
  std::vector<std::int64_t> modulus_;
  std::vector<long double> cosines_;
};

}  // namespace coxfix
