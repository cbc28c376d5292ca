#include "tutte/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <variant>

#include "tutte/kernels.hpp"

namespace tutte {

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<unsigned> images)
    : images_(std::move(images)), inverse_(images_.size(), 0) {
  const unsigned n = static_cast<unsigned>(images_.size());
  std::vector<bool> seen(n, false);
  for (unsigned k = 0; k < n; ++k) {
    const unsigned img = images_[k];
    if (img < 1 || img > n || seen[img - 1]) {
      throw ValidationError("not a permutation of {1.." + std::to_string(n) +
                            "}: image list " + [&] {
                              std::string s;
                              for (unsigned v : images_)
                                s += (s.empty() ? "" : ",") + std::to_string(v);
                              return s;
                            }());
    }
    seen[img - 1] = true;
    inverse_[img - 1] = k + 1;
  }
}

Permutation Permutation::identity(unsigned n) {
  std::vector<unsigned> im(n);
  std::iota(im.begin(), im.end(), 1u);
  return Permutation(std::move(im));
}

SubsetMask Permutation::apply_mask(SubsetMask a) const {
  SubsetMask out = 0;
  while (a != 0) {
    const unsigned e = static_cast<unsigned>(std::countr_zero(a)) + 1;
    out |= element_bit(images_[e - 1]);
    a &= a - 1;
  }
  return out;
}

SubsetMask Permutation::preimage_mask(SubsetMask a) const {
  SubsetMask out = 0;
  while (a != 0) {
    const unsigned e = static_cast<unsigned>(std::countr_zero(a)) + 1;
    out |= element_bit(inverse_[e - 1]);
    a &= a - 1;
  }
  return out;
}

Permutation Permutation::inverted() const { return Permutation(inverse_); }

// ---------------------------------------------------------------------------
// Matroid implementation
// ---------------------------------------------------------------------------

namespace {

struct UniformKind {
  unsigned r;
};

struct ExplicitKind {
  std::vector<SubsetMask> bases;  // sorted ascending, validated
};

struct VectorKind {
  unsigned prime;
  unsigned rows;
  std::vector<std::vector<std::uint8_t>> cols;  // cols[j][i] = entry (i, j)
};

}  // namespace

struct Matroid::Impl {
  unsigned n = 0;
  unsigned full_rank = 0;
  Kind kind = Kind::uniform;

  UniformKind uni{0};
  ExplicitKind expl;
  VectorKind vec{0, 0, {}};

  std::shared_ptr<const Impl> base;  // relabeled / deleted / contracted
  std::optional<Permutation> phi;    // relabeled
  unsigned element = 0;              // deleted / contracted (base numbering)
};

namespace {

void check_ground_size(unsigned n) {
  if (n < 1) throw ValidationError("ground set must have at least one element");
  if (n > kMaxGroundSize) {
    throw CapacityError("ground set of " + std::to_string(n) +
                        " elements exceeds the capacity of " +
                        std::to_string(kMaxGroundSize));
  }
}

// Re-embeds a minor mask into the base ground set: elements >= e shift up.
SubsetMask embed_minor_mask(SubsetMask a, unsigned element) {
  const SubsetMask low = element_bit(element) - 1;  // bits of elements < e
  return (a & low) | ((a & ~low) << 1);
}

unsigned gf_inverse(unsigned a, unsigned p) {
  // Fermat; p is prime and a != 0 mod p.
  unsigned result = 1, b = a % p, e = p - 2;
  while (e != 0) {
    if (e & 1u) result = result * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return result;
}

unsigned gf_column_rank(const VectorKind& vk, SubsetMask a) {
  // Incremental elimination over the selected columns.
  std::vector<std::vector<unsigned>> pivots;  // echelonized, leading entry 1
  std::vector<unsigned> pivot_row;
  const unsigned p = vk.prime;
  unsigned rank = 0;
  SubsetMask rest = a;
  while (rest != 0) {
    const unsigned col = static_cast<unsigned>(std::countr_zero(rest));
    rest &= rest - 1;
    std::vector<unsigned> v(vk.cols[col].begin(), vk.cols[col].end());
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const unsigned f = v[pivot_row[k]];
      if (f == 0) continue;
      for (unsigned i = 0; i < vk.rows; ++i) {
        v[i] = (v[i] + (p - f) * pivots[k][i]) % p;
      }
    }
    unsigned lead = vk.rows;
    for (unsigned i = 0; i < vk.rows; ++i) {
      if (v[i] != 0) {
        lead = i;
        break;
      }
    }
    if (lead == vk.rows) continue;  // dependent column
    const unsigned inv = gf_inverse(v[lead], p);
    for (unsigned i = 0; i < vk.rows; ++i) v[i] = v[i] * inv % p;
    pivots.push_back(std::move(v));
    pivot_row.push_back(lead);
    ++rank;
  }
  return rank;
}

unsigned rank_of(const Matroid::Impl& im, SubsetMask a);

unsigned wrapped_rank(const Matroid::Impl& im, SubsetMask a) {
  switch (im.kind) {
    case Matroid::Kind::relabeled:
      return rank_of(*im.base, im.phi->preimage_mask(a));
    case Matroid::Kind::deleted:
      return rank_of(*im.base, embed_minor_mask(a, im.element));
    case Matroid::Kind::contracted: {
      const SubsetMask ebit = element_bit(im.element);
      return rank_of(*im.base, embed_minor_mask(a, im.element) | ebit) -
             rank_of(*im.base, ebit);
    }
    default:
      throw ValidationError("internal: unexpected matroid kind");
  }
}

unsigned rank_of(const Matroid::Impl& im, SubsetMask a) {
  switch (im.kind) {
    case Matroid::Kind::uniform:
      return std::min(popcount(a), im.uni.r);
    case Matroid::Kind::explicit_bases: {
      unsigned best = 0;
      for (SubsetMask b : im.expl.bases) best = std::max(best, popcount(a & b));
      return best;
    }
    case Matroid::Kind::vector:
      return gf_column_rank(im.vec, a);
    default:
      return wrapped_rank(im, a);
  }
}

RankTable rank_table_of(const Matroid::Impl& im) {
  RankTable t;
  t.n = im.n;
  const std::size_t size = std::size_t{1} << im.n;
  t.ranks.resize(size);
  switch (im.kind) {
    case Matroid::Kind::uniform:
      for (std::size_t m = 0; m < size; ++m) {
        t.ranks[m] = static_cast<std::uint8_t>(
            std::min(popcount(static_cast<SubsetMask>(m)), im.uni.r));
      }
      break;
    case Matroid::Kind::explicit_bases:
      best_kernels().max_overlap(im.expl.bases.data(), im.expl.bases.size(), 0,
                                 static_cast<std::uint32_t>(size),
                                 t.ranks.data());
      break;
    case Matroid::Kind::vector:
      for (std::size_t m = 0; m < size; ++m) {
        t.ranks[m] = static_cast<std::uint8_t>(
            gf_column_rank(im.vec, static_cast<SubsetMask>(m)));
      }
      break;
    case Matroid::Kind::relabeled: {
      const RankTable base = rank_table_of(*im.base);
      for (std::size_t m = 0; m < size; ++m) {
        t.ranks[m] = base[im.phi->preimage_mask(static_cast<SubsetMask>(m))];
      }
      break;
    }
    case Matroid::Kind::deleted: {
      const RankTable base = rank_table_of(*im.base);
      for (std::size_t m = 0; m < size; ++m) {
        t.ranks[m] = base[embed_minor_mask(static_cast<SubsetMask>(m), im.element)];
      }
      break;
    }
    case Matroid::Kind::contracted: {
      const RankTable base = rank_table_of(*im.base);
      const SubsetMask ebit = element_bit(im.element);
      const std::uint8_t re = base[ebit];
      for (std::size_t m = 0; m < size; ++m) {
        t.ranks[m] = static_cast<std::uint8_t>(
            base[embed_minor_mask(static_cast<SubsetMask>(m), im.element) | ebit] -
            re);
      }
      break;
    }
  }
  return t;
}

}  // namespace

Matroid::Matroid(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Matroid Matroid::uniform(unsigned r, unsigned n) {
  check_ground_size(n);
  if (r > n) {
    throw ValidationError("uniform matroid needs r <= n, got r=" +
                          std::to_string(r) + ", n=" + std::to_string(n));
  }
  auto im = std::make_shared<Impl>();
  im->n = n;
  im->kind = Kind::uniform;
  im->uni.r = r;
  im->full_rank = r;
  return Matroid(std::move(im));
}

void validate_bases(unsigned n, const std::vector<SubsetMask>& bases) {
  if (bases.empty()) throw ValidationError("basis list is empty");
  const SubsetMask full = full_mask(n);
  for (SubsetMask b : bases) {
    if (b & ~full) {
      throw ValidationError("basis " + mask_to_string(b) +
                            " has elements outside {1.." + std::to_string(n) +
                            "}");
    }
  }
  for (std::size_t k = 1; k < bases.size(); ++k) {
    if (bases[k] == bases[k - 1]) {
      throw ValidationError("duplicate basis " + mask_to_string(bases[k]));
    }
  }
  const unsigned card = popcount(bases[0]);
  for (SubsetMask b : bases) {
    if (popcount(b) != card) {
      throw ValidationError("bases of unequal cardinality: " +
                            mask_to_string(bases[0]) + " vs " +
                            mask_to_string(b));
    }
  }
  std::unordered_set<SubsetMask> present(bases.begin(), bases.end());
  for (SubsetMask b1 : bases) {
    for (SubsetMask b2 : bases) {
      SubsetMask only1 = b1 & ~b2;
      while (only1 != 0) {
        const SubsetMask ebit = only1 & (0u - only1);
        only1 &= only1 - 1;
        bool found = false;
        SubsetMask only2 = b2 & ~b1;
        while (only2 != 0) {
          const SubsetMask fbit = only2 & (0u - only2);
          only2 &= only2 - 1;
          if (present.count((b1 & ~ebit) | fbit)) {
            found = true;
            break;
          }
        }
        if (!found) {
          throw ValidationError(
              "basis exchange fails: B1=" + mask_to_string(b1) +
              ", B2=" + mask_to_string(b2) + ", e=" +
              std::to_string(static_cast<unsigned>(std::countr_zero(ebit)) + 1) +
              " has no replacement in B2\\B1");
        }
      }
    }
  }
}

Matroid Matroid::from_bases(unsigned n, std::vector<SubsetMask> bases) {
  check_ground_size(n);
  std::sort(bases.begin(), bases.end());
  validate_bases(n, bases);
  auto im = std::make_shared<Impl>();
  im->n = n;
  im->kind = Kind::explicit_bases;
  im->full_rank = popcount(bases[0]);
  im->expl.bases = std::move(bases);
  return Matroid(std::move(im));
}

Matroid Matroid::vector_matroid(unsigned p,
                                const std::vector<std::vector<unsigned>>& matrix) {
  if (p < 2) throw ValidationError("field characteristic must be at least 2");
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) {
      throw ValidationError(std::to_string(p) +
                            " is not prime; only prime fields are supported");
    }
  }
  if (matrix.empty()) throw ValidationError("matrix has no rows");
  const unsigned rows = static_cast<unsigned>(matrix.size());
  const unsigned n = static_cast<unsigned>(matrix[0].size());
  check_ground_size(n);
  for (const auto& row : matrix) {
    if (row.size() != n) throw ValidationError("matrix rows have unequal length");
    for (unsigned v : row) {
      if (v >= p) {
        throw ValidationError("matrix entry " + std::to_string(v) +
                              " is outside GF(" + std::to_string(p) + ")");
      }
    }
  }
  auto im = std::make_shared<Impl>();
  im->n = n;
  im->kind = Kind::vector;
  im->vec.prime = p;
  im->vec.rows = rows;
  im->vec.cols.assign(n, std::vector<std::uint8_t>(rows));
  for (unsigned i = 0; i < rows; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      im->vec.cols[j][i] = static_cast<std::uint8_t>(matrix[i][j]);
    }
  }
  im->full_rank = gf_column_rank(im->vec, full_mask(n));
  return Matroid(std::move(im));
}

namespace {

std::vector<SubsetMask> uniform_bases_minus(unsigned r, unsigned n,
                                            const std::vector<SubsetMask>& removed) {
  std::unordered_set<SubsetMask> drop(removed.begin(), removed.end());
  if (drop.size() != removed.size()) {
    throw ValidationError("removed basis list contains duplicates");
  }
  std::vector<SubsetMask> bases;
  std::size_t dropped = 0;
  for (SubsetMask b : all_ksubsets(n, r)) {
    if (drop.count(b)) {
      ++dropped;
    } else {
      bases.push_back(b);
    }
  }
  if (dropped != removed.size()) {
    throw ValidationError("a removed set is not an r-subset of the ground set");
  }
  return bases;
}

SubsetMask triple(unsigned a, unsigned b, unsigned c) {
  return element_bit(a) | element_bit(b) | element_bit(c);
}

}  // namespace

Matroid Matroid::r_construction(unsigned r, unsigned n) {
  if (r < 3 || 2 * r > n) {
    throw ValidationError("R construction needs r >= 3 and 2r <= n, got r=" +
                          std::to_string(r) + ", n=" + std::to_string(n));
  }
  check_ground_size(n);
  const SubsetMask x1 = full_mask(r);
  const SubsetMask x2 = full_mask(2 * r) ^ full_mask(r);
  return from_bases(n, uniform_bases_minus(r, n, {x1, x2}));
}

Matroid Matroid::q_construction(unsigned r, unsigned n) {
  if (r < 3 || 2 * r > n) {
    throw ValidationError("Q construction needs r >= 3 and 2r <= n, got r=" +
                          std::to_string(r) + ", n=" + std::to_string(n));
  }
  check_ground_size(n);
  const SubsetMask x1 = full_mask(r);
  const SubsetMask x3 = full_mask(2 * r - 1) ^ full_mask(r - 1);  // {r..2r-1}
  return from_bases(n, uniform_bases_minus(r, n, {x1, x3}));
}

Matroid Matroid::s_construction(unsigned n) {
  if (n < 3) throw ValidationError("S construction needs n >= 3");
  check_ground_size(4 * n);
  std::vector<SubsetMask> y1;
  for (unsigned i = 1; i < n; ++i) y1.push_back(triple(2 * i - 1, 2 * i, 2 * i + 1));
  y1.push_back(triple(2 * n - 1, 2 * n, 1));
  for (unsigned i = 1; i < n; ++i) {
    y1.push_back(triple(2 * n + 2 * i - 1, 2 * n + 2 * i, 2 * n + 2 * i + 1));
  }
  y1.push_back(triple(4 * n - 1, 4 * n, 2 * n + 1));
  return from_bases(4 * n, uniform_bases_minus(3, 4 * n, y1));
}

Matroid Matroid::s_prime_construction(unsigned n) {
  if (n < 3) throw ValidationError("S' construction needs n >= 3");
  check_ground_size(4 * n);
  std::vector<SubsetMask> y2;
  for (unsigned i = 1; i < 2 * n; ++i) {
    y2.push_back(triple(2 * i - 1, 2 * i, 2 * i + 1));
  }
  y2.push_back(triple(4 * n - 1, 4 * n, 1));
  return from_bases(4 * n, uniform_bases_minus(3, 4 * n, y2));
}

Matroid Matroid::deleted(unsigned element) const {
  const unsigned n = impl_->n;
  if (element < 1 || element > n) {
    throw ValidationError("element " + std::to_string(element) +
                          " is outside the ground set {1.." + std::to_string(n) +
                          "}");
  }
  if (n == 1) throw ValidationError("minor would have an empty ground set");
  auto im = std::make_shared<Impl>();
  im->n = n - 1;
  im->kind = Kind::deleted;
  im->base = impl_;
  im->element = element;
  im->full_rank = rank_of(*impl_, full_mask(n) & ~element_bit(element));
  return Matroid(std::move(im));
}

Matroid Matroid::contracted(unsigned element) const {
  const unsigned n = impl_->n;
  if (element < 1 || element > n) {
    throw ValidationError("element " + std::to_string(element) +
                          " is outside the ground set {1.." + std::to_string(n) +
                          "}");
  }
  if (n == 1) throw ValidationError("minor would have an empty ground set");
  auto im = std::make_shared<Impl>();
  im->n = n - 1;
  im->kind = Kind::contracted;
  im->base = impl_;
  im->element = element;
  im->full_rank =
      rank_of(*impl_, full_mask(n)) - rank_of(*impl_, element_bit(element));
  return Matroid(std::move(im));
}

Matroid Matroid::relabeled(Permutation phi) const {
  if (phi.size() != impl_->n) {
    throw ValidationError("permutation acts on " + std::to_string(phi.size()) +
                          " elements, matroid has " + std::to_string(impl_->n));
  }
  auto im = std::make_shared<Impl>();
  im->n = impl_->n;
  im->kind = Kind::relabeled;
  im->base = impl_;
  im->full_rank = impl_->full_rank;
  im->phi = std::move(phi);
  return Matroid(std::move(im));
}

unsigned Matroid::ground_size() const { return impl_->n; }
unsigned Matroid::full_rank() const { return impl_->full_rank; }
Matroid::Kind Matroid::kind() const { return impl_->kind; }

unsigned Matroid::rank(SubsetMask a) const {
  if (a & ~full_mask(impl_->n)) {
    throw ValidationError("subset " + mask_to_string(a) +
                          " has elements outside the ground set {1.." +
                          std::to_string(impl_->n) + "}");
  }
  return rank_of(*impl_, a);
}

RankTable Matroid::rank_table() const { return rank_table_of(*impl_); }

std::vector<SubsetMask> Matroid::bases() const {
  if (impl_->kind == Kind::explicit_bases) return impl_->expl.bases;
  const unsigned r = impl_->full_rank;
  std::vector<SubsetMask> out;
  for (SubsetMask a : all_ksubsets(impl_->n, r)) {
    if (rank_of(*impl_, a) == r) out.push_back(a);
  }
  return out;
}

unsigned Matroid::uniform_rank() const {
  if (impl_->kind != Kind::uniform) {
    throw ValidationError("matroid is not uniform");
  }
  return impl_->uni.r;
}

const std::vector<SubsetMask>& Matroid::basis_list() const {
  if (impl_->kind != Kind::explicit_bases) {
    throw ValidationError("matroid has no stored basis list");
  }
  return impl_->expl.bases;
}

unsigned Matroid::field_prime() const {
  if (impl_->kind != Kind::vector) {
    throw ValidationError("matroid is not a vector matroid");
  }
  return impl_->vec.prime;
}

std::vector<std::vector<unsigned>> Matroid::matrix_rows() const {
  if (impl_->kind != Kind::vector) {
    throw ValidationError("matroid is not a vector matroid");
  }
  std::vector<std::vector<unsigned>> rows(impl_->vec.rows,
                                          std::vector<unsigned>(impl_->n));
  for (unsigned i = 0; i < impl_->vec.rows; ++i) {
    for (unsigned j = 0; j < impl_->n; ++j) {
      rows[i][j] = impl_->vec.cols[j][i];
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Axiom checking and isomorphism
// ---------------------------------------------------------------------------

std::vector<SubsetMask> downward_closure(const std::vector<SubsetMask>& family) {
  std::unordered_set<SubsetMask> seen;
  for (SubsetMask m : family) {
    SubsetMask s = m;
    while (true) {
      seen.insert(s);
      if (s == 0) break;
      s = (s - 1) & m;
    }
  }
  std::vector<SubsetMask> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string AxiomReport::describe() const {
  switch (status) {
    case Status::pass:
      return "pass";
    case Status::empty_family:
      return "axiom violation: the family of independent sets is empty";
    case Status::invalid_member:
      return "invalid member " + mask_to_string(witness_set) +
             ": elements outside the ground set";
    case Status::subset_violation:
      return "axiom (i) violated: " + mask_to_string(witness_other) +
             " (a subset of " + mask_to_string(witness_set) + ") is missing";
    case Status::augmentation_violation:
      return "axiom (ii) violated: I1=" + mask_to_string(witness_set) +
             ", I2=" + mask_to_string(witness_other) +
             " admit no augmenting element";
  }
  return "unknown";
}

AxiomReport check_independence_axioms(const std::vector<SubsetMask>& family,
                                      unsigned n) {
  if (n > 16) {
    throw CapacityError("exhaustive axiom check is capped at 16 elements");
  }
  AxiomReport rep;
  if (family.empty()) {
    rep.status = AxiomReport::Status::empty_family;
    return rep;
  }
  const SubsetMask full = full_mask(n);
  std::vector<SubsetMask> members(family.begin(), family.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  std::vector<bool> present(std::size_t{1} << n, false);
  for (SubsetMask m : members) {
    if (m & ~full) {
      rep.status = AxiomReport::Status::invalid_member;
      rep.witness_set = m;
      return rep;
    }
    present[m] = true;
  }

  // Axiom (i): every subset of a member is a member. Witness order: proper
  // submasks ascending.
  for (SubsetMask m : members) {
    std::vector<SubsetMask> subs;
    SubsetMask s = m;
    while (true) {
      if (s == 0) break;
      s = (s - 1) & m;
      subs.push_back(s);
      if (s == 0) break;
    }
    std::sort(subs.begin(), subs.end());
    for (SubsetMask j : subs) {
      if (!present[j]) {
        rep.status = AxiomReport::Status::subset_violation;
        rep.witness_set = m;
        rep.witness_other = j;
        return rep;
      }
    }
  }

  // Axiom (ii): augmentation for every |I1| < |I2| pair, ascending order.
  for (SubsetMask i1 : members) {
    const unsigned c1 = popcount(i1);
    for (SubsetMask i2 : members) {
      if (c1 >= popcount(i2)) continue;
      bool augmented = false;
      SubsetMask candidates = i2 & ~i1;
      while (candidates != 0) {
        const SubsetMask ebit = candidates & (0u - candidates);
        candidates &= candidates - 1;
        if (present[i1 | ebit]) {
          augmented = true;
          break;
        }
      }
      if (!augmented) {
        rep.status = AxiomReport::Status::augmentation_violation;
        rep.witness_set = i1;
        rep.witness_other = i2;
        return rep;
      }
    }
  }
  return rep;
}

IsoResult are_isomorphic_bruteforce(const Matroid& a, const Matroid& b) {
  const unsigned n = a.ground_size();
  if (n != b.ground_size()) {
    throw ValidationError("ground-set sizes differ: " + std::to_string(n) +
                          " vs " + std::to_string(b.ground_size()));
  }
  if (n > 8) {
    throw CapacityError("brute-force isomorphism search is capped at 8 elements");
  }
  IsoResult res;
  const std::vector<SubsetMask> ba = a.bases();
  std::vector<SubsetMask> bb = b.bases();
  std::sort(bb.begin(), bb.end());
  if (ba.size() != bb.size()) {
    res.isomorphic = false;
    return res;
  }
  std::vector<unsigned> images(n);
  std::iota(images.begin(), images.end(), 1u);
  std::vector<SubsetMask> mapped(ba.size());
  do {
    ++res.permutations_tried;
    for (std::size_t k = 0; k < ba.size(); ++k) {
      SubsetMask m = ba[k], out = 0;
      while (m != 0) {
        const unsigned e = static_cast<unsigned>(std::countr_zero(m));
        out |= element_bit(images[e]);
        m &= m - 1;
      }
      mapped[k] = out;
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped == bb) {
      res.isomorphic = true;
      res.witness = Permutation(images);
      return res;
    }
  } while (std::next_permutation(images.begin(), images.end()));
  return res;
}

}  // namespace tutte
