#include "tutte/engine.hpp"

#include <algorithm>
#include <functional>
#include <thread>
#include <unordered_map>
#include <utility>

namespace tutte {

namespace {

// Slot of the first of the four (xcap,ycap,xcup,ycup) exponents of the pair
// (i,j), 0-based i < j < g, within the canonical profile layout.
unsigned pair_slot_base(unsigned i, unsigned j, unsigned g) {
  const unsigned pair_rank = i * g - i * (i + 1) / 2 + (j - i - 1);
  return 2 * g + 4 * pair_rank;
}

struct ChunkRange {
  std::uint32_t begin;
  std::uint32_t end;
};

std::vector<ChunkRange> split_range(std::uint32_t total, unsigned parts) {
  std::vector<ChunkRange> out;
  const std::uint32_t quot = total / parts;
  const std::uint32_t rem = total % parts;
  std::uint32_t at = 0;
  for (unsigned k = 0; k < parts; ++k) {
    const std::uint32_t len = quot + (k < rem ? 1 : 0);
    out.push_back({at, at + len});
    at += len;
  }
  return out;
}

using PackedCounter = std::unordered_map<std::uint64_t, std::uint64_t>;
using VectorCounter =
    std::unordered_map<ExponentVector, std::uint64_t, ExponentVectorHash>;

// Genus-2 fast path: per fixed A1 the kernel emits packed profile keys for a
// block of A2 values; this loop folds them into a per-thread counter.
void run_genus2_chunk(const std::uint8_t* rt, unsigned n, unsigned full_rank,
                      const KernelOps& ops, std::uint32_t a1_begin,
                      std::uint32_t a1_end, PackedCounter& out) {
  const std::uint32_t masks = std::uint32_t{1} << n;
  constexpr std::uint32_t kBlock = 4096;
  std::vector<std::uint64_t> keys(std::min(kBlock, masks));
  out.reserve(1024);
  for (std::uint32_t a1 = a1_begin; a1 < a1_end; ++a1) {
    const std::uint64_t r1 = rt[a1];
    const std::uint64_t low =
        (full_rank - r1) | ((popcount(a1) - r1) << 8);
    for (std::uint32_t start = 0; start < masks; start += kBlock) {
      const std::uint32_t count = std::min(kBlock, masks - start);
      ops.genus2_keys(rt, n, full_rank, a1, start, count, keys.data());
      for (std::uint32_t k = 0; k < count; ++k) {
        ++out[keys[k] | low];
      }
    }
  }
}

// Portable enumerator for any genus: depth-first over (A_1,...,A_g),
// maintaining the partial profile of the fixed prefix.
struct GenericEnumerator {
  const RankTable& rt;
  unsigned g;
  unsigned full_rank;
  std::uint32_t masks;
  VectorCounter& out;
  Profile prof;
  std::vector<SubsetMask> tup;

  GenericEnumerator(const RankTable& table, unsigned genus, VectorCounter& sink)
      : rt(table),
        g(genus),
        full_rank(table.full_rank()),
        masks(std::uint32_t{1} << table.n),
        out(sink),
        prof(canonical_var_count(genus), 0),
        tup(genus, 0) {}

  void fill(unsigned level, SubsetMask a) {
    tup[level] = a;
    const unsigned ra = rt[a];
    prof[2 * level] = static_cast<std::uint8_t>(full_rank - ra);
    prof[2 * level + 1] = static_cast<std::uint8_t>(popcount(a) - ra);
    for (unsigned i = 0; i < level; ++i) {
      const SubsetMask both = a & tup[i];
      const SubsetMask either = a | tup[i];
      const unsigned ri = rt[both];
      const unsigned ru = rt[either];
      const unsigned s = pair_slot_base(i, level, g);
      prof[s] = static_cast<std::uint8_t>(full_rank - ri);
      prof[s + 1] = static_cast<std::uint8_t>(popcount(both) - ri);
      prof[s + 2] = static_cast<std::uint8_t>(full_rank - ru);
      prof[s + 3] = static_cast<std::uint8_t>(popcount(either) - ru);
    }
  }

  void bump() {
    const auto it = out.find(prof);
    if (it == out.end()) {
      out.emplace(prof, 1);
    } else {
      ++it->second;
    }
  }

  void descend(unsigned level) {
    for (std::uint32_t a = 0; a < masks; ++a) {
      fill(level, a);
      if (level + 1 == g) {
        bump();
      } else {
        descend(level + 1);
      }
    }
  }

  void run_chunk(std::uint32_t a1_begin, std::uint32_t a1_end) {
    for (std::uint32_t a = a1_begin; a < a1_end; ++a) {
      fill(0, a);
      if (g == 1) {
        bump();
      } else {
        descend(1);
      }
    }
  }
};

Profile unpack_genus2_key(std::uint64_t key) {
  Profile p(8);
  for (unsigned k = 0; k < 8; ++k) {
    p[k] = static_cast<std::uint8_t>((key >> (8 * k)) & 0xff);
  }
  return p;
}

void run_threaded(std::vector<std::function<void()>> jobs) {
  if (jobs.size() == 1) {
    jobs.front()();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs.size());
  for (auto& job : jobs) pool.emplace_back(std::move(job));
  for (auto& t : pool) t.join();
}

}  // namespace

Profile tuple_profile(const RankTable& rt,
                      const std::vector<SubsetMask>& subsets) {
  const unsigned g = static_cast<unsigned>(subsets.size());
  if (g == 0) throw ValidationError("tuple must contain at least one subset");
  const SubsetMask full = full_mask(rt.n);
  for (SubsetMask a : subsets) {
    if (a & ~full) {
      throw ValidationError("subset " + mask_to_string(a) +
                            " is outside the ground set");
    }
  }
  const unsigned rank = rt.full_rank();
  Profile prof(canonical_var_count(g), 0);
  for (unsigned i = 0; i < g; ++i) {
    const unsigned ra = rt[subsets[i]];
    prof[2 * i] = static_cast<std::uint8_t>(rank - ra);
    prof[2 * i + 1] = static_cast<std::uint8_t>(popcount(subsets[i]) - ra);
  }
  for (unsigned i = 0; i < g; ++i) {
    for (unsigned j = i + 1; j < g; ++j) {
      const SubsetMask both = subsets[i] & subsets[j];
      const SubsetMask either = subsets[i] | subsets[j];
      const unsigned ri = rt[both];
      const unsigned ru = rt[either];
      const unsigned s = pair_slot_base(i, j, g);
      prof[s] = static_cast<std::uint8_t>(rank - ri);
      prof[s + 1] = static_cast<std::uint8_t>(popcount(both) - ri);
      prof[s + 2] = static_cast<std::uint8_t>(rank - ru);
      prof[s + 3] = static_cast<std::uint8_t>(popcount(either) - ru);
    }
  }
  return prof;
}

ProfileCounter genus_profile_counts(const RankTable& rt, unsigned genus,
                                    const GenusOptions& opt) {
  if (genus == 0) throw ValidationError("genus must be at least 1");
  const std::uint32_t masks = std::uint32_t{1} << rt.n;
  const unsigned threads =
      std::min<std::uint32_t>(std::max(1u, opt.threads), masks);

  GenusOptions::Path path = opt.path;
  if (path == GenusOptions::Path::automatic) {
    path = genus == 2 ? GenusOptions::Path::kernel : GenusOptions::Path::generic;
  }
  if (path == GenusOptions::Path::kernel && genus != 2) {
    throw ValidationError("the kernel path implements genus 2 only");
  }

  const std::vector<ChunkRange> chunks = split_range(masks, threads);
  ProfileCounter result;

  if (path == GenusOptions::Path::kernel) {
    const KernelOps& ops = opt.kernels != nullptr ? *opt.kernels : best_kernels();
    // Gather kernels read 4 bytes per lookup; give them slack past the end.
    std::vector<std::uint8_t> padded(rt.ranks);
    padded.resize(padded.size() + 8, 0);
    std::vector<PackedCounter> locals(chunks.size());
    std::vector<std::function<void()>> jobs;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      jobs.push_back([&, k] {
        run_genus2_chunk(padded.data(), rt.n, rt.full_rank(), ops,
                         chunks[k].begin, chunks[k].end, locals[k]);
      });
    }
    run_threaded(std::move(jobs));
    for (const PackedCounter& local : locals) {
      for (const auto& [key, count] : local) {
        result[unpack_genus2_key(key)] += count;
      }
    }
  } else {
    std::vector<VectorCounter> locals(chunks.size());
    std::vector<std::function<void()>> jobs;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      jobs.push_back([&, k] {
        GenericEnumerator e(rt, genus, locals[k]);
        e.run_chunk(chunks[k].begin, chunks[k].end);
      });
    }
    run_threaded(std::move(jobs));
    for (const VectorCounter& local : locals) {
      for (const auto& [prof, count] : local) {
        result[prof] += count;
      }
    }
  }
  return result;
}

namespace {

// One binomial-shift pass per variable: rewrites a polynomial in the shifted
// variables w_v = v - 1 into the plain variables, exactly.
template <typename Map, typename GetSlot, typename SetSlot>
Map shift_passes(Map cur, unsigned width, unsigned max_exp, GetSlot get,
                 SetSlot set) {
  const BinomialTable binom(max_exp);
  for (unsigned s = 0; s < width; ++s) {
    bool used = false;
    for (const auto& [key, value] : cur) {
      (void)value;
      if (get(key, s) != 0) {
        used = true;
        break;
      }
    }
    if (!used) continue;
    Map next;
    next.reserve(cur.size() * 2);
    for (const auto& [key, value] : cur) {
      const unsigned k = get(key, s);
      for (unsigned j = 0; j <= k; ++j) {
        BigInt term = value * binom(k, j);
        if ((k - j) & 1u) term = -term;
        next[set(key, s, j)] += term;
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      it = it->second == 0 ? next.erase(it) : std::next(it);
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Polynomial expand_profile_counter(const ProfileCounter& counts, unsigned genus) {
  const unsigned width = canonical_var_count(genus);
  unsigned max_exp = 0;
  for (const auto& [prof, count] : counts) {
    if (prof.size() != width) {
      throw ValidationError("profile has " + std::to_string(prof.size()) +
                            " slots, expected " + std::to_string(width));
    }
    if (count < 0) throw ValidationError("negative profile count");
    for (std::uint8_t e : prof) max_exp = std::max<unsigned>(max_exp, e);
  }

  Polynomial poly(genus);
  if (counts.empty()) return poly;

  if (width <= 8) {
    // Profiles fit a packed 64-bit key; passes stay allocation-light.
    std::unordered_map<std::uint64_t, BigInt> cur;
    cur.reserve(counts.size());
    for (const auto& [prof, count] : counts) {
      std::uint64_t key = 0;
      for (unsigned k = 0; k < width; ++k) {
        key |= std::uint64_t{prof[k]} << (8 * k);
      }
      cur[key] += count;
    }
    cur = shift_passes(
        std::move(cur), width, max_exp,
        [](std::uint64_t key, unsigned s) {
          return static_cast<unsigned>((key >> (8 * s)) & 0xff);
        },
        [](std::uint64_t key, unsigned s, unsigned j) {
          return (key & ~(std::uint64_t{0xff} << (8 * s))) |
                 (std::uint64_t{j} << (8 * s));
        });
    ExponentVector e(width);
    for (const auto& [key, c] : cur) {
      for (unsigned k = 0; k < width; ++k) {
        e[k] = static_cast<std::uint8_t>((key >> (8 * k)) & 0xff);
      }
      poly.add_term(e, c);
    }
  } else {
    std::unordered_map<ExponentVector, BigInt, ExponentVectorHash> cur;
    cur.reserve(counts.size());
    for (const auto& [prof, count] : counts) cur[prof] += count;
    cur = shift_passes(
        std::move(cur), width, max_exp,
        [](const ExponentVector& key, unsigned s) {
          return static_cast<unsigned>(key[s]);
        },
        [](const ExponentVector& key, unsigned s, unsigned j) {
          ExponentVector out = key;
          out[s] = static_cast<std::uint8_t>(j);
          return out;
        });
    for (const auto& [e, c] : cur) poly.add_term(e, c);
  }
  return poly;
}

Polynomial tutte_genus(const Matroid& m, unsigned genus,
                       const GenusOptions& opt, GenusStats* stats) {
  if (genus == 0) throw ValidationError("genus must be at least 1");
  const unsigned n = m.ground_size();
  const unsigned cost = genus * n;
  if (cost > opt.budget_log2) {
    throw BudgetError("refusing genus-" + std::to_string(genus) + " run on " +
                          std::to_string(n) + " elements: 2^" +
                          std::to_string(cost) +
                          " tuples exceed the budget of 2^" +
                          std::to_string(opt.budget_log2) +
                          " (raise the tuple budget to override)",
                      cost, opt.budget_log2);
  }
  if (cost > kHardCostLog2) {
    throw CapacityError("2^" + std::to_string(cost) +
                        " tuples exceed the engine's 2^" +
                        std::to_string(kHardCostLog2) + " counting capacity");
  }
  const RankTable rt = m.rank_table();
  const ProfileCounter counts = genus_profile_counts(rt, genus, opt);

  BigInt total{0};
  for (const auto& [prof, count] : counts) total += count;
  if (total != pow2(cost)) {
    throw Error("internal: profile counts sum to " + total.str() +
                ", expected 2^" + std::to_string(cost));
  }
  if (stats != nullptr) {
    stats->tuple_count = total;
    stats->distinct_profiles = counts.size();
    stats->threads_used =
        std::min<std::uint32_t>(std::max(1u, opt.threads), std::uint32_t{1} << n);
  }
  return expand_profile_counter(counts, genus);
}

Polynomial tutte_sum(const Matroid& m) {
  const RankTable rt = m.rank_table();
  const unsigned n = rt.n;
  const unsigned rank = rt.full_rank();
  std::vector<std::uint64_t> counts((n + 1) * (n + 1), 0);
  const std::uint32_t masks = std::uint32_t{1} << n;
  for (std::uint32_t a = 0; a < masks; ++a) {
    const unsigned r = rt[a];
    ++counts[(rank - r) * (n + 1) + (popcount(a) - r)];
  }
  ProfileCounter pc;
  for (unsigned c = 0; c <= n; ++c) {
    for (unsigned v = 0; v <= n; ++v) {
      const std::uint64_t count = counts[c * (n + 1) + v];
      if (count != 0) {
        pc[{static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(v)}] = count;
      }
    }
  }
  return expand_profile_counter(pc, 1);
}

Polynomial tutte_closed_uniform(unsigned r, unsigned n) {
  if (r > n) {
    throw ValidationError("uniform matroid needs r <= n, got r=" +
                          std::to_string(r) + ", n=" + std::to_string(n));
  }
  const Polynomial xm1 = Polynomial::variable(1, {VarKind::x, 1, 0}) -
                         Polynomial::constant(1, 1);
  const Polynomial ym1 = Polynomial::variable(1, {VarKind::y, 1, 0}) -
                         Polynomial::constant(1, 1);
  Polynomial total(1);
  for (unsigned i = 0; i <= r; ++i) {
    total += xm1.pow(r - i).scaled(binomial(n, i));
  }
  for (unsigned i = r + 1; i <= n; ++i) {
    total += ym1.pow(i - r).scaled(binomial(n, i));
  }
  return total;
}

namespace {

Polynomial dc_recurse(const std::vector<std::uint8_t>& ranks, unsigned n,
                      const Polynomial& x, const Polynomial& y) {
  if (n == 0) return Polynomial::constant(1, 1);
  const std::uint32_t half = std::uint32_t{1} << (n - 1);
  const bool is_loop = ranks[half] == 0;
  const bool is_coloop = ranks[half - 1] + 1 == ranks[2 * half - 1];

  const std::vector<std::uint8_t> del(ranks.begin(), ranks.begin() + half);
  if (is_loop) return y * dc_recurse(del, n - 1, x, y);

  std::vector<std::uint8_t> con(half);
  const std::uint8_t re = ranks[half];
  for (std::uint32_t a = 0; a < half; ++a) {
    con[a] = static_cast<std::uint8_t>(ranks[a | half] - re);
  }
  if (is_coloop) return x * dc_recurse(con, n - 1, x, y);
  return dc_recurse(del, n - 1, x, y) + dc_recurse(con, n - 1, x, y);
}

}  // namespace

Polynomial tutte_delete_contract(const Matroid& m) {
  const unsigned n = m.ground_size();
  if (n > 18) {
    throw CapacityError(
        "the deletion-contraction oracle is capped at 18 elements, got " +
        std::to_string(n));
  }
  const RankTable rt = m.rank_table();
  const Polynomial x = Polynomial::variable(1, {VarKind::x, 1, 0});
  const Polynomial y = Polynomial::variable(1, {VarKind::y, 1, 0});
  return dc_recurse(rt.ranks, n, x, y);
}

Polynomial specialize_down(const Polynomial& p, unsigned n) {
  const unsigned g = p.genus();
  if (g < 2) throw ValidationError("specialize_down requires genus >= 2");
  if (p.vars() != canonical_var_order(g)) {
    throw ValidationError(
        "specialize_down requires the canonical variable layout");
  }
  std::map<VarId, BigInt> subs;
  for (const VarId& v : p.vars()) {
    const bool involves_top = is_pair_kind(v.kind) ? v.j == g : v.i == g;
    if (involves_top) subs.emplace(v, 2);
  }
  const Polynomial substituted = p.substitute(subs);
  const BigInt scale = pow2(n);
  Polynomial out(g - 1);
  if (substituted.vars() != out.vars()) {
    throw ValidationError("internal: surviving variables do not form genus " +
                          std::to_string(g - 1));
  }
  for (const auto* kv : substituted.sorted_terms()) {
    const BigInt& c = kv->second;
    if (c % scale != 0) {
      std::string mono = monomial_text(out.vars(), kv->first);
      if (mono.empty()) mono = "1";
      throw ValidationError("coefficient " + c.str() + " of monomial " + mono +
                            " is not divisible by 2^" + std::to_string(n));
    }
    out.add_term(kv->first, c / scale);
  }
  return out;
}

SpecializeCheckResult specialize_check(const Polynomial& genus_g,
                                       const Polynomial& genus_gm1, unsigned n) {
  SpecializeCheckResult res;
  if (genus_g.genus() < 2 || genus_gm1.genus() + 1 != genus_g.genus()) {
    res.detail = "genus mismatch: " + std::to_string(genus_g.genus()) +
                 " does not specialize to " + std::to_string(genus_gm1.genus());
    return res;
  }
  Polynomial down(1);
  try {
    down = specialize_down(genus_g, n);
  } catch (const Error& e) {
    res.detail = e.what();
    return res;
  }
  if (down == genus_gm1) {
    res.pass = true;
    return res;
  }
  std::vector<ExponentVector> keys;
  keys.reserve(down.term_count() + genus_gm1.term_count());
  for (const auto& [e, c] : down.terms()) keys.push_back(e);
  for (const auto& [e, c] : genus_gm1.terms()) keys.push_back(e);
  std::sort(keys.begin(), keys.end(), std::greater<>());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const ExponentVector& e : keys) {
    const BigInt& got = down.coeff(e);
    const BigInt& expected = genus_gm1.coeff(e);
    if (got != expected) {
      std::string mono = monomial_text(genus_gm1.vars(), e);
      if (mono.empty()) mono = "1";
      res.detail = "coefficient mismatch at " + mono + ": specialized " +
                   got.str() + ", expected " + expected.str();
      break;
    }
  }
  return res;
}

unsigned m1_bound(unsigned n) {
  if (n < 3) throw ValidationError("m bounds require n >= 3");
  unsigned m = 1;
  while ((m + 1) * (m + 2) / 2 <= n) ++m;
  return m;
}

unsigned m2_bound(unsigned n) {
  if (n < 3) throw ValidationError("m bounds require n >= 3");
  unsigned k = 1;
  while (k * k < n) ++k;
  return 2 * k;
}

std::string CompareResult::witness_text() const {
  if (equal) return "";
  std::string mono = monomial_text(canonical_var_order(genus), witness_exps);
  if (mono.empty()) mono = "1";
  return mono;
}

CompareResult compare_invariants(const Matroid& a, const Matroid& b,
                                 unsigned genus, const GenusOptions& opt,
                                 GenusStats* stats_a, GenusStats* stats_b) {
  if (a.ground_size() != b.ground_size()) {
    throw ValidationError("cannot compare matroids on ground sets of size " +
                          std::to_string(a.ground_size()) + " and " +
                          std::to_string(b.ground_size()));
  }
  CompareResult res;
  res.genus = genus;
  const Polynomial pa = tutte_genus(a, genus, opt, stats_a);
  const Polynomial pb = tutte_genus(b, genus, opt, stats_b);
  if (pa == pb) return res;

  res.equal = false;
  std::vector<ExponentVector> keys;
  keys.reserve(pa.term_count() + pb.term_count());
  for (const auto& [e, c] : pa.terms()) keys.push_back(e);
  for (const auto& [e, c] : pb.terms()) keys.push_back(e);
  std::sort(keys.begin(), keys.end(), std::greater<>());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const ExponentVector& e : keys) {
    if (pa.coeff(e) != pb.coeff(e)) {
      res.witness_exps = e;
      res.coeff_a = pa.coeff(e);
      res.coeff_b = pb.coeff(e);
      break;
    }
  }
  return res;
}

}  // namespace tutte
