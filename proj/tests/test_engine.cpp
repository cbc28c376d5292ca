#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "tutte/engine.hpp"

using namespace tutte;

namespace {

SubsetMask mk(std::initializer_list<unsigned> elements) {
  SubsetMask a = 0;
  for (unsigned e : elements) a |= element_bit(e);
  return a;
}

// Brute-force oracle straight from the defining sum: one polynomial product
// of (v-1)^exponent factors per tuple, summed with plain ring arithmetic.
// Independent of the profile-aggregation and binomial-shift engine path.
Polynomial naive_tutte_genus(const Matroid& m, unsigned g) {
  const RankTable rt = m.rank_table();
  const unsigned rank = rt.full_rank();
  const Polynomial one = Polynomial::constant(g, 1);
  const auto factor_pow = [&](VarKind kind, unsigned i, unsigned j,
                              unsigned e) {
    const VarId v{kind, static_cast<std::uint8_t>(i),
                  static_cast<std::uint8_t>(j)};
    return (Polynomial::variable(g, v) - one).pow(e);
  };

  Polynomial total(g);
  std::vector<SubsetMask> tup(g, 0);
  const std::uint32_t masks = 1u << m.ground_size();
  std::function<void(unsigned)> rec = [&](unsigned level) {
    if (level == g) {
      Polynomial term = one;
      for (unsigned i = 0; i < g; ++i) {
        const SubsetMask a = tup[i];
        term = term * factor_pow(VarKind::x, i + 1, 0, rank - rt[a]);
        term = term * factor_pow(VarKind::y, i + 1, 0, popcount(a) - rt[a]);
      }
      for (unsigned i = 0; i < g; ++i) {
        for (unsigned j = i + 1; j < g; ++j) {
          const SubsetMask cap = tup[i] & tup[j];
          const SubsetMask cup = tup[i] | tup[j];
          term = term * factor_pow(VarKind::xcap, i + 1, j + 1, rank - rt[cap]);
          term = term *
                 factor_pow(VarKind::ycap, i + 1, j + 1, popcount(cap) - rt[cap]);
          term = term * factor_pow(VarKind::xcup, i + 1, j + 1, rank - rt[cup]);
          term = term *
                 factor_pow(VarKind::ycup, i + 1, j + 1, popcount(cup) - rt[cup]);
        }
      }
      total += term;
      return;
    }
    for (std::uint32_t a = 0; a < masks; ++a) {
      tup[level] = a;
      rec(level + 1);
    }
  };
  rec(0);
  return total;
}

GenusOptions forced(GenusOptions::Path path, unsigned threads = 1,
                    const KernelOps* kernels = nullptr) {
  GenusOptions opt;
  opt.path = path;
  opt.threads = threads;
  opt.kernels = kernels;
  return opt;
}

}  // namespace

TEST_CASE("classic Tutte polynomial by subset sum") {
  CHECK(tutte_sum(Matroid::uniform(1, 2)).canonical_text() == "x1 + y1");
  CHECK(tutte_sum(Matroid::uniform(2, 4)).canonical_text() ==
        "x1^2 + 2*x1 + y1^2 + 2*y1");

  // Against the defining sum, term by term.
  for (const auto& m : {Matroid::uniform(2, 4), Matroid::r_construction(3, 6),
                        Matroid::q_construction(3, 6),
                        Matroid::vector_matroid(2, {{1, 0, 1}, {0, 1, 1}})}) {
    CHECK(tutte_sum(m) == naive_tutte_genus(m, 1));
  }

  // Every summand is 1 at x = y = 2.
  for (const auto& m : {Matroid::uniform(3, 7), Matroid::s_construction(3)}) {
    CHECK(tutte_sum(m).evaluate_all(2) == pow2(m.ground_size()));
  }
}

TEST_CASE("closed uniform formula") {
  CHECK(tutte_closed_uniform(2, 4).canonical_text() ==
        "x1^2 + 2*x1 + y1^2 + 2*y1");
  CHECK(tutte_closed_uniform(1, 2).canonical_text() == "x1 + y1");
  for (unsigned n = 0; n <= 6; ++n) {
    for (unsigned r = 0; r <= n; ++r) {
      if (n == 0) continue;  // matroids need a non-empty ground set
      CAPTURE(r);
      CAPTURE(n);
      CHECK(tutte_closed_uniform(r, n) == tutte_sum(Matroid::uniform(r, n)));
    }
  }
  CHECK_THROWS_AS(tutte_closed_uniform(3, 2), ValidationError);
}

TEST_CASE("deletion-contraction oracle") {
  CHECK(tutte_delete_contract(Matroid::uniform(1, 1)).canonical_text() == "x1");
  CHECK(tutte_delete_contract(Matroid::uniform(0, 1)).canonical_text() == "y1");

  for (const auto& m : {Matroid::uniform(2, 4), Matroid::r_construction(3, 6),
                        Matroid::q_construction(3, 6),
                        Matroid::uniform(0, 3), Matroid::uniform(4, 4)}) {
    CHECK(tutte_delete_contract(m) == tutte_sum(m));
  }

  // Random explicit-bases matroids derived from GF(2) matrices.
  std::mt19937 rng(321);
  for (int trial = 0; trial < 8; ++trial) {
    const unsigned n = 4 + rng() % 4;
    const unsigned k = 2 + rng() % 3;
    std::vector<std::vector<unsigned>> matrix(k, std::vector<unsigned>(n));
    for (auto& row : matrix) {
      for (auto& v : row) v = rng() % 2;
    }
    const Matroid vec = Matroid::vector_matroid(2, matrix);
    const Matroid m = Matroid::from_bases(n, vec.bases());
    CHECK(tutte_delete_contract(m) == tutte_sum(m));
  }
}

TEST_CASE("tuple profiles") {
  const RankTable rt = Matroid::uniform(1, 1).rank_table();
  CHECK(tuple_profile(rt, {0, 0}) == Profile{1, 0, 1, 0, 1, 0, 1, 0});
  CHECK(tuple_profile(rt, {1, 1}) == Profile{0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(tuple_profile(rt, {0, 1}) == Profile{1, 0, 0, 0, 1, 0, 0, 0});

  const RankTable rt24 = Matroid::uniform(2, 4).rank_table();
  const SubsetMask a = mk({1, 2, 3});
  CHECK(tuple_profile(rt24, {a}) == Profile{0, 1});  // corank 0, nullity 1

  CHECK_THROWS_AS(tuple_profile(rt24, {}), ValidationError);
  CHECK_THROWS_AS(tuple_profile(rt24, {mk({5})}), ValidationError);
}

TEST_CASE("genus-2 polynomial of the single-coloop matroid") {
  // (x1-1)(x2-1)(xcap-1)(xcup-1) + (x1-1)(xcap-1) + (x2-1)(xcap-1) + 1,
  // assembled term by term from the four subset pairs of U(1,1).
  const unsigned g = 2;
  const Polynomial one = Polynomial::constant(g, 1);
  const auto v = [&](VarKind kind, unsigned i, unsigned j) {
    return Polynomial::variable(
        g, {kind, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
  };
  const Polynomial x1 = v(VarKind::x, 1, 0) - one;
  const Polynomial x2 = v(VarKind::x, 2, 0) - one;
  const Polynomial xcap = v(VarKind::xcap, 1, 2) - one;
  const Polynomial xcup = v(VarKind::xcup, 1, 2) - one;
  const Polynomial expected = x1 * x2 * xcap * xcup + x1 * xcap + x2 * xcap + one;

  const Matroid u11 = Matroid::uniform(1, 1);
  CHECK(tutte_genus(u11, 2) == expected);
  CHECK(naive_tutte_genus(u11, 2) == expected);
  CHECK(expected.evaluate_all(2) == 4);  // 2^(g*n)
}

TEST_CASE("genus engine agrees with the naive oracle") {
  for (const auto& m : {Matroid::uniform(1, 2), Matroid::uniform(1, 3),
                        Matroid::uniform(2, 3), Matroid::uniform(2, 4),
                        Matroid::vector_matroid(2, {{1, 0, 1}, {0, 1, 1}})}) {
    CHECK(tutte_genus(m, 1) == naive_tutte_genus(m, 1));
    CHECK(tutte_genus(m, 2) == naive_tutte_genus(m, 2));
  }
  // Genus 3 exercises the generic path's pair layout.
  for (const auto& m : {Matroid::uniform(1, 2), Matroid::uniform(2, 3)}) {
    CHECK(tutte_genus(m, 3) == naive_tutte_genus(m, 3));
  }
}

TEST_CASE("genus 1 reduces to the classic polynomial") {
  for (const auto& m :
       {Matroid::uniform(2, 4), Matroid::r_construction(3, 6),
        Matroid::q_construction(3, 6), Matroid::uniform(3, 6).deleted(2),
        Matroid::uniform(2, 4).contracted(1), Matroid::s_construction(3)}) {
    CHECK(tutte_genus(m, 1) == tutte_sum(m));
  }
}

TEST_CASE("kernel and generic paths are bit-identical") {
  for (const auto& m : {Matroid::uniform(2, 4), Matroid::r_construction(3, 6),
                        Matroid::q_construction(3, 6)}) {
    const Polynomial generic =
        tutte_genus(m, 2, forced(GenusOptions::Path::generic));
    for (const KernelOps* k : available_kernels()) {
      CAPTURE(k->name);
      const Polynomial kernel =
          tutte_genus(m, 2, forced(GenusOptions::Path::kernel, 1, k));
      CHECK(kernel == generic);
      CHECK(kernel.canonical_text() == generic.canonical_text());
    }
  }
  CHECK_THROWS_AS(
      tutte_genus(Matroid::uniform(1, 2), 3, forced(GenusOptions::Path::kernel)),
      ValidationError);
}

TEST_CASE("profile counts are conserved and all-2s evaluation is 2^(gn)") {
  for (const auto& m : {Matroid::uniform(2, 4), Matroid::r_construction(3, 6)}) {
    for (unsigned g = 1; g <= 2; ++g) {
      GenusStats stats;
      const Polynomial p = tutte_genus(m, g, {}, &stats);
      CHECK(stats.tuple_count == pow2(g * m.ground_size()));
      CHECK(p.evaluate_all(2) == pow2(g * m.ground_size()));
    }
  }
}

TEST_CASE("budget refusal and capacity") {
  GenusStats stats;
  CHECK_THROWS_WITH_AS(tutte_genus(Matroid::s_construction(3), 4),
                       doctest::Contains("2^48"), BudgetError);
  try {
    tutte_genus(Matroid::s_construction(3), 4);
  } catch (const BudgetError& e) {
    CHECK(e.cost_log2() == 48);
    CHECK(e.budget_log2() == kDefaultBudgetLog2);
  }
  CHECK_THROWS_AS(tutte_genus(Matroid::uniform(1, 2), 0), ValidationError);

  // The bound is exact: cost == budget runs, cost == budget + 1 refuses.
  GenusOptions tight;
  tight.budget_log2 = 12;
  CHECK_NOTHROW(tutte_genus(Matroid::uniform(2, 4), 3, tight));  // 2^12
  tight.budget_log2 = 11;
  CHECK_THROWS_AS(tutte_genus(Matroid::uniform(2, 4), 3, tight), BudgetError);
}

TEST_CASE("specialization identity") {
  const Matroid u12 = Matroid::uniform(1, 2);
  CHECK(specialize_down(tutte_genus(u12, 2), 2) == tutte_sum(u12));
  CHECK(specialize_down(tutte_genus(u12, 2), 2).canonical_text() == "x1 + y1");

  // Hand-checked single-coloop case: substitution gives 2*x1, halved to x1.
  const Matroid u11 = Matroid::uniform(1, 1);
  CHECK(specialize_down(tutte_genus(u11, 2), 1).canonical_text() == "x1");

  // Chain from genus 3 down to 1. (T^(3) grows fast: at n=6 it already has
  // millions of monomials, so the genus-3 leg stays at n <= 5.)
  for (const auto& m : {Matroid::uniform(1, 2), Matroid::uniform(2, 4),
                        Matroid::uniform(2, 5)}) {
    GenusOptions wide;
    wide.budget_log2 = 30;
    const Polynomial t3 = tutte_genus(m, 3, wide);
    const Polynomial t2 = tutte_genus(m, 2, wide);
    const Polynomial t1 = tutte_genus(m, 1, wide);
    CHECK(specialize_down(t3, m.ground_size()) == t2);
    CHECK(specialize_down(t2, m.ground_size()) == t1);
  }

  CHECK_THROWS_AS(specialize_down(tutte_sum(u12), 2), ValidationError);
}

TEST_CASE("specialize_check reports the first bad coefficient") {
  const Matroid u12 = Matroid::uniform(1, 2);
  const Polynomial t2 = tutte_genus(u12, 2);
  const Polynomial t1 = tutte_genus(u12, 1);
  CHECK(specialize_check(t2, t1, 2).pass);

  // An odd perturbation breaks 2^n divisibility.
  Polynomial broken = t2;
  broken.add_term(ExponentVector(8, 0), 1);
  const SpecializeCheckResult div = specialize_check(broken, t1, 2);
  CHECK_FALSE(div.pass);
  CHECK(div.detail.find("not divisible") != std::string::npos);

  // A 2^n-multiple perturbation passes division but mismatches a coefficient.
  Polynomial shifted = t2;
  shifted.add_term(ExponentVector(8, 0), 4);
  const SpecializeCheckResult mismatch = specialize_check(shifted, t1, 2);
  CHECK_FALSE(mismatch.pass);
  CHECK(mismatch.detail.find("mismatch") != std::string::npos);

  CHECK_FALSE(specialize_check(t2, t2, 2).pass);  // genus mismatch
}

TEST_CASE("m bounds") {
  CHECK(m1_bound(3) == 2);
  CHECK(m2_bound(3) == 4);
  CHECK(m1_bound(6) == 3);
  CHECK(m2_bound(6) == 6);
  CHECK(m1_bound(10) == 4);
  CHECK(m2_bound(10) == 8);
  CHECK_THROWS_AS(m1_bound(2), ValidationError);
  CHECK_THROWS_AS(m2_bound(0), ValidationError);
}

TEST_CASE("invariant comparison") {
  const Matroid r = Matroid::r_construction(3, 6);
  const Matroid q = Matroid::q_construction(3, 6);

  const CompareResult equal = compare_invariants(r, q, 1);
  CHECK(equal.equal);
  CHECK(equal.witness_text().empty());

  GenusStats sa, sb;
  const CompareResult differ = compare_invariants(r, q, 2, {}, &sa, &sb);
  CHECK_FALSE(differ.equal);
  CHECK(differ.witness_exps.size() == 8);
  CHECK(differ.coeff_a != differ.coeff_b);
  CHECK_FALSE(differ.witness_text().empty());
  CHECK(sa.tuple_count == pow2(12));
  CHECK(sb.tuple_count == pow2(12));

  std::mt19937 rng(17);
  std::vector<unsigned> images{1, 2, 3, 4, 5, 6};
  std::shuffle(images.begin(), images.end(), rng);
  CHECK(compare_invariants(r, r.relabeled(Permutation(images)), 2).equal);

  CHECK_THROWS_AS(
      compare_invariants(Matroid::uniform(2, 4), Matroid::uniform(2, 5), 1),
      ValidationError);
}

TEST_CASE("genus-2 polynomial is symmetric in the two subset roles") {
  const Polynomial t2 = tutte_genus(Matroid::r_construction(3, 6), 2);
  Polynomial swapped(2);
  for (const auto& [e, c] : t2.terms()) {
    // x1<->x2, y1<->y2; pair variables are fixed.
    const ExponentVector se{e[2], e[3], e[0], e[1], e[4], e[5], e[6], e[7]};
    swapped.add_term(se, c);
  }
  CHECK(swapped == t2);
}

TEST_CASE("results are identical across thread counts") {
  const Matroid r37 = Matroid::r_construction(3, 7);
  GenusOptions opt1, opt2, opt3;
  opt1.threads = 1;
  opt2.threads = 2;
  opt3.threads = 5;
  const std::string base = tutte_genus(r37, 2, opt1).canonical_text();
  CHECK(tutte_genus(r37, 2, opt2).canonical_text() == base);
  CHECK(tutte_genus(r37, 2, opt3).canonical_text() == base);

  // Generic path too.
  opt2.path = opt3.path = GenusOptions::Path::generic;
  CHECK(tutte_genus(r37, 2, opt2).canonical_text() == base);
  CHECK(tutte_genus(r37, 2, opt3).canonical_text() == base);
}

TEST_CASE("expand_profile_counter rejects malformed input") {
  ProfileCounter bad;
  bad[{1, 0, 0}] = 1;  // three slots is not a genus-1 layout
  CHECK_THROWS_AS(expand_profile_counter(bad, 1), ValidationError);
}
