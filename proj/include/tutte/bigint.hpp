#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tutte {

/// Exact arbitrary-precision integer. Coefficients and tuple counts are
/// never rounded or truncated anywhere in this library.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned e) { return BigInt{1} << e; }

inline BigInt ipow(const BigInt& base, unsigned e) {
  BigInt r{1};
  BigInt b = base;
  while (e != 0) {
    if (e & 1u) r *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return r;
}

/// Pascal-triangle table of exact binomial coefficients for 0 <= n <= max_n.
class BinomialTable {
 public:
  explicit BinomialTable(unsigned max_n) : max_n_(max_n), rows_(max_n + 1) {
    for (unsigned n = 0; n <= max_n; ++n) {
      rows_[n].resize(n + 1);
      rows_[n][0] = 1;
      rows_[n][n] = 1;
      for (unsigned k = 1; k < n; ++k) {
        rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
      }
    }
  }

  /// C(n, k); zero when k > n.
  const BigInt& operator()(unsigned n, unsigned k) const {
    return k <= n ? rows_[n][k] : zero_;
  }

  unsigned max_n() const { return max_n_; }

 private:
  unsigned max_n_;
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_{0};
};

/// One-off exact binomial coefficient.
inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r{1};
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace tutte
