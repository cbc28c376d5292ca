#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tutte/errors.hpp"
#include "tutte/subset.hpp"

namespace tutte {

/// Bijection on {1..n}; images()[k-1] is the image of element k.
class Permutation {
 public:
  /// Validates that `images` (1-based) is a bijection on {1..images.size()}.
  explicit Permutation(std::vector<unsigned> images);

  static Permutation identity(unsigned n);

  unsigned size() const { return static_cast<unsigned>(images_.size()); }
  unsigned apply(unsigned element) const { return images_[element - 1]; }
  unsigned preimage(unsigned element) const { return inverse_[element - 1]; }
  SubsetMask apply_mask(SubsetMask a) const;
  SubsetMask preimage_mask(SubsetMask a) const;
  Permutation inverted() const;

  const std::vector<unsigned>& images() const { return images_; }
  bool operator==(const Permutation& other) const {
    return images_ == other.images_;
  }

 private:
  std::vector<unsigned> images_;
  std::vector<unsigned> inverse_;
};

/// Precomputed ranks of every subset of the ground set.
/// ranks[m] is the rank of the subset whose mask is m.
struct RankTable {
  unsigned n = 0;
  std::vector<std::uint8_t> ranks;

  std::uint8_t operator[](SubsetMask a) const { return ranks[a]; }
  std::uint8_t full_rank() const { return ranks.back(); }
  std::size_t size() const { return ranks.size(); }
  bool operator==(const RankTable& other) const {
    return n == other.n && ranks == other.ranks;
  }
};

/// An immutable matroid on {1..n} with a rank oracle. Copies are cheap
/// (shared immutable state); all queries are const and thread-safe.
class Matroid {
 public:
  enum class Kind { uniform, explicit_bases, vector, relabeled, deleted, contracted };

  /// U_{r,n}: every r-subset of {1..n} is a basis.
  static Matroid uniform(unsigned r, unsigned n);

  /// Explicit-basis matroid. Validates non-emptiness, equal cardinality and
  /// the basis-exchange property; throws ValidationError with a witness.
  static Matroid from_bases(unsigned n, std::vector<SubsetMask> bases);

  /// Vector matroid of a k x n matrix over GF(p), p prime; matrix[i] is row i
  /// with entries in 0..p-1. Rank of A = rank of the columns indexed by A.
  static Matroid vector_matroid(unsigned p,
                                const std::vector<std::vector<unsigned>>& matrix);

  /// U_{r,n} minus the two disjoint bases {1..r} and {r+1..2r}.
  /// Requires r >= 3 and 2r <= n.
  static Matroid r_construction(unsigned r, unsigned n);

  /// U_{r,n} minus the two overlapping bases {1..r} and {r..2r-1}.
  /// Requires r >= 3 and 2r <= n.
  static Matroid q_construction(unsigned r, unsigned n);

  /// U_{3,4n} minus Y1: two triple-cycles {2i-1,2i,2i+1} (closing at 1 and at
  /// 2n+1) of n triples each. Requires n >= 3 and 4n <= 24.
  static Matroid s_construction(unsigned n);

  /// U_{3,4n} minus Y2: one triple-cycle through all 4n elements.
  static Matroid s_prime_construction(unsigned n);

  /// Minor M\e on {1..n-1}; surviving elements are relabeled preserving order.
  Matroid deleted(unsigned element) const;
  /// Minor M/e on {1..n-1}; rank rule rho(A) = rho_base(A u {e}) - rho_base({e}).
  Matroid contracted(unsigned element) const;
  /// Matroid with rank rule rho'(A) = rho(phi^-1(A)).
  Matroid relabeled(Permutation phi) const;

  unsigned ground_size() const;
  unsigned full_rank() const;

  /// rho(A). Throws ValidationError when A has bits outside the ground set.
  unsigned rank(SubsetMask a) const;

  /// rho of every subset, 2^n entries.
  RankTable rank_table() const;

  /// All subsets A with |A| = rho(A) = rho(E), ascending mask order.
  std::vector<SubsetMask> bases() const;

  Kind kind() const;

  // Introspection for serialization (throws ValidationError on kind mismatch).
  unsigned uniform_rank() const;
  const std::vector<SubsetMask>& basis_list() const;
  unsigned field_prime() const;
  std::vector<std::vector<unsigned>> matrix_rows() const;

  struct Impl;  // opaque

 private:
  explicit Matroid(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Throws ValidationError (with a witness) unless `bases` is a non-empty,
/// duplicate-free, equicardinal family satisfying basis exchange.
void validate_bases(unsigned n, const std::vector<SubsetMask>& bases);

/// Downward closure of a set family, ascending mask order.
std::vector<SubsetMask> downward_closure(const std::vector<SubsetMask>& family);

struct AxiomReport {
  enum class Status {
    pass,
    empty_family,
    invalid_member,          // member has bits outside {1..n}
    subset_violation,        // axiom (i): witness_other missing, subset of witness_set
    augmentation_violation,  // axiom (ii): I1 = witness_set, I2 = witness_other
  };

  Status status = Status::pass;
  SubsetMask witness_set = 0;
  SubsetMask witness_other = 0;

  bool ok() const { return status == Status::pass; }
  std::string describe() const;
};

/// Exhaustive independence-axiom check of a family over {1..n}, n <= 16.
/// Reports the first violation (deterministic witness order) or pass.
AxiomReport check_independence_axioms(const std::vector<SubsetMask>& family,
                                      unsigned n);

struct IsoResult {
  bool isomorphic = false;
  std::optional<Permutation> witness;
  std::uint64_t permutations_tried = 0;
};

/// Searches all n! bijections for one mapping bases(a) onto bases(b).
/// Requires equal ground sizes and n <= 8.
IsoResult are_isomorphic_bruteforce(const Matroid& a, const Matroid& b);

}  // namespace tutte
