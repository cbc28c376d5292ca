#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tutte/bigint.hpp"
#include "tutte/errors.hpp"

namespace tutte {

enum class VarKind : std::uint8_t { x, y, xcap, ycap, xcup, ycup };

/// One variable of the genus-g ring: x_i / y_i for i in 1..g, or a pair
/// variable (intersection/union flavor) for a pair 1 <= i < j <= g.
struct VarId {
  VarKind kind = VarKind::x;
  std::uint8_t i = 1;
  std::uint8_t j = 0;  // 0 for x/y; second pair index otherwise

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

constexpr bool is_pair_kind(VarKind k) {
  return k != VarKind::x && k != VarKind::y;
}

/// "x1", "y2", "xcap{1,2}", "ycup{2,3}", ...
std::string var_name(const VarId& v);

constexpr unsigned canonical_var_count(unsigned genus) {
  return 2 * genus * genus;
}

/// x1,y1,...,xg,yg, then per pair (i,j) in lexicographic order:
/// xcap{i,j}, ycap{i,j}, xcup{i,j}, ycup{i,j}. 2g^2 variables total.
std::vector<VarId> canonical_var_order(unsigned genus);

/// Exponents of one monomial, slot k matching the k-th variable of the
/// owning polynomial's variable list.
using ExponentVector = std::vector<std::uint8_t>;

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint8_t b : e) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Sparse exact polynomial over a declared ordered variable list (canonical
/// for the genus unless produced by substitution). Immutable in spirit: all
/// operations return new values. No zero coefficients are ever stored.
class Polynomial {
 public:
  using TermMap = std::unordered_map<ExponentVector, BigInt, ExponentVectorHash>;

  /// Zero polynomial over canonical_var_order(genus).
  explicit Polynomial(unsigned genus);
  Polynomial(unsigned genus, std::vector<VarId> vars);

  unsigned genus() const { return genus_; }
  const std::vector<VarId>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Merges a term; drops the entry when the sum cancels to zero.
  void add_term(const ExponentVector& exps, const BigInt& coeff);

  /// Coefficient of a monomial, zero when absent.
  const BigInt& coeff(const ExponentVector& exps) const;

  static Polynomial constant(unsigned genus, const BigInt& c);
  static Polynomial variable(unsigned genus, const VarId& v);

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);

  /// Equality of genus, variable list and term maps.
  bool operator==(const Polynomial& other) const;

  Polynomial pow(unsigned e) const;
  Polynomial scaled(const BigInt& c) const;

  /// Exact evaluation; the assignment must cover every variable.
  BigInt evaluate(const std::map<VarId, BigInt>& assignment) const;
  BigInt evaluate_all(const BigInt& value) const;

  /// Exact partial evaluation. Substituted variables disappear from the
  /// result's variable list; surviving variables keep their order.
  Polynomial substitute(const std::map<VarId, BigInt>& partial) const;

  /// Terms sorted by descending lexicographic order on exponent vectors —
  /// the canonical output order.
  std::vector<const TermMap::value_type*> sorted_terms() const;

  /// Canonical text: terms in sorted order, coefficients as signed decimals,
  /// "^k" only for k >= 2, factors joined by "*", terms by " + " / " - ".
  std::string canonical_text() const;

  /// {"genus":g,"terms":[{"coeff":"...","exps":[...]},...]} in canonical term
  /// order. Requires the canonical variable layout.
  std::string to_json() const;
  static Polynomial from_json(const std::string& text);

 private:
  void require_compatible(const Polynomial& other) const;

  unsigned genus_;
  std::vector<VarId> vars_;
  TermMap terms_;
};

/// "x1^2*y1" style rendering of one monomial; empty string for the constant.
std::string monomial_text(const std::vector<VarId>& vars,
                          const ExponentVector& exps);

}  // namespace tutte
