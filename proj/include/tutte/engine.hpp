#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tutte/kernels.hpp"
#include "tutte/matroid.hpp"
#include "tutte/poly.hpp"

namespace tutte {

/// Exponent vector of one tuple's summand: slot k holds the exponent of
/// canonical_var_order(g)[k]. Tuples sharing a profile contribute identical
/// monomial products, so the engine counts profiles instead of expanding
/// per tuple.
using Profile = ExponentVector;

/// Aggregated tuple counts per profile. Counts are exact; they sum to
/// 2^(g*n) over a complete enumeration.
using ProfileCounter = std::map<Profile, BigInt>;

inline constexpr unsigned kDefaultBudgetLog2 = 26;
/// Per-thread counters are uint64, so runs beyond 2^62 tuples are refused
/// outright regardless of the configured budget.
inline constexpr unsigned kHardCostLog2 = 62;

struct GenusOptions {
  unsigned threads = 1;
  unsigned budget_log2 = kDefaultBudgetLog2;

  enum class Path {
    automatic,  // kernel for genus 2, generic otherwise
    generic,    // portable recursive enumerator (any genus)
    kernel,     // blocked kernel enumerator (genus 2 only)
  };
  Path path = Path::automatic;

  /// Kernel variant override; null picks the best available at runtime.
  const KernelOps* kernels = nullptr;
};

struct GenusStats {
  BigInt tuple_count;  // sum of profile counts; 2^(g*n) after a full run
  std::size_t distinct_profiles = 0;
  unsigned threads_used = 1;
};

/// Profile of one ordered tuple (A_1,...,A_g).
Profile tuple_profile(const RankTable& rt, const std::vector<SubsetMask>& subsets);

/// Enumerates all 2^(g*n) tuples and aggregates profile counts.
/// Deterministic: the result is identical for any thread count.
ProfileCounter genus_profile_counts(const RankTable& rt, unsigned genus,
                                    const GenusOptions& opt = {});

/// Expands sum_p count_p * prod_v (v-1)^(e_v(p)) into the canonical
/// polynomial, one binomial-shift pass per variable, all arithmetic exact.
Polynomial expand_profile_counter(const ProfileCounter& counts, unsigned genus);

/// The genus-g Tutte polynomial via profile-aggregated enumeration.
/// Refuses with BudgetError when g*n exceeds opt.budget_log2.
Polynomial tutte_genus(const Matroid& m, unsigned genus,
                       const GenusOptions& opt = {}, GenusStats* stats = nullptr);

/// Classic Tutte polynomial by corank-nullity aggregation over all subsets.
Polynomial tutte_sum(const Matroid& m);

/// Closed form for uniform matroids:
/// sum_{i=0..r} C(n,i)(x-1)^(r-i) + sum_{i=r+1..n} C(n,i)(y-1)^(i-r).
Polynomial tutte_closed_uniform(unsigned r, unsigned n);

/// Independent oracle: the deletion-contraction recurrence
/// T = T(M\e) + T(M/e), with x*T(M/e) for coloops and y*T(M\e) for loops.
/// Capped at 18 elements.
Polynomial tutte_delete_contract(const Matroid& m);

/// Substitutes 2 into x_g, y_g and every pair variable involving index g,
/// checks every coefficient is divisible by 2^n, divides, and re-indexes to
/// genus g-1. Inverse direction of the specialization identity
/// T^(g)(M; ..., 2) = 2^n * T^(g-1)(M).
Polynomial specialize_down(const Polynomial& p, unsigned n);

struct SpecializeCheckResult {
  bool pass = false;
  std::string detail;  // empty on pass; names the first bad coefficient else
};

/// Checks specialize_down(genus_g, n) == genus_gm1 and reports the first
/// discrepancy (non-divisible or mismatched coefficient) on failure.
SpecializeCheckResult specialize_check(const Polynomial& genus_g,
                                       const Polynomial& genus_gm1, unsigned n);

/// Largest m with m(m+1)/2 <= n. Requires n >= 3.
unsigned m1_bound(unsigned n);
/// 2 * ceil(sqrt(n)). Requires n >= 3.
unsigned m2_bound(unsigned n);

struct CompareResult {
  bool equal = true;
  unsigned genus = 0;
  ExponentVector witness_exps;  // first differing monomial, descending lex
  BigInt coeff_a;
  BigInt coeff_b;

  /// Monomial text of the witness (canonical genus variables).
  std::string witness_text() const;
};

/// EQUAL / DIFFER verdict for T^(g)(a) vs T^(g)(b) with a witness monomial.
CompareResult compare_invariants(const Matroid& a, const Matroid& b,
                                 unsigned genus, const GenusOptions& opt = {},
                                 GenusStats* stats_a = nullptr,
                                 GenusStats* stats_b = nullptr);

}  // namespace tutte
