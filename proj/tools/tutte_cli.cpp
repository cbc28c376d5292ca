// Command-line front end: matroid constructors, rank queries, classic and
// genus-g Tutte polynomials, invariant comparison, axiom verification.
//
// Exit codes: 0 success / EQUAL / ISO / pass, 1 DIFFER / NONISO / FAIL,
// 2 usage or parse error, 3 tuple-budget refusal.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tutte/engine.hpp"
#include "tutte/matroid_json.hpp"

namespace {

using namespace tutte;

struct CommonArgs {
  std::vector<std::string> files;
  std::vector<std::string> builtins;
  unsigned genus = 1;
  unsigned threads = 1;
  unsigned budget_log2 = kDefaultBudgetLog2;
  std::string format = "text";
  std::string method = "sum";
  std::string set_list;
};

void add_matroid_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-m,--matroid", args.files,
                  "matroid JSON file (repeatable)");
  cmd->add_option("--builtin", args.builtins,
                  "builtin matroid: U:r,n | R:r,n | Q:r,n | S:n | Sprime:n");
}

void add_format_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

void add_engine_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--threads", args.threads, "worker thread count")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  cmd->add_option("--budget-log2", args.budget_log2,
                  "refuse runs beyond 2^N tuples")
      ->check(CLI::Range(0u, 62u))
      ->capture_default_str();
}

std::vector<Matroid> load_matroids(const CommonArgs& args, std::size_t expected) {
  std::vector<Matroid> out;
  for (const auto& path : args.files) {
    out.push_back(matroid_from_json_file(path));
  }
  for (const auto& spec : args.builtins) {
    out.push_back(matroid_from_builtin(spec));
  }
  if (out.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) +
                     " matroid(s) via -m/--builtin, got " +
                     std::to_string(out.size()));
  }
  return out;
}

SubsetMask parse_set(const std::string& list, unsigned n) {
  std::vector<unsigned> elements;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      if (list.find_first_not_of(" \t") == std::string::npos) break;
      throw ParseError("empty element in set list '" + list + "'");
    }
    item = item.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      elements.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw ParseError("bad element '" + item + "' in set list");
    }
  }
  return mask_from_elements(elements, n);
}

void print_poly(const Polynomial& p, const std::string& format) {
  if (format == "json") {
    std::cout << p.to_json() << "\n";
  } else {
    std::cout << p.canonical_text() << "\n";
  }
}

GenusOptions engine_options(const CommonArgs& args) {
  GenusOptions opt;
  opt.threads = args.threads;
  opt.budget_log2 = args.budget_log2;
  return opt;
}

int run_rank(const CommonArgs& args) {
  const Matroid m = load_matroids(args, 1).front();
  const SubsetMask a = parse_set(args.set_list, m.ground_size());
  const unsigned r = m.rank(a);
  if (args.format == "json") {
    std::cout << nlohmann::json{{"rank", r}}.dump() << "\n";
  } else {
    std::cout << r << "\n";
  }
  return 0;
}

int run_tutte(const CommonArgs& args) {
  const Matroid m = load_matroids(args, 1).front();
  Polynomial p(1);
  if (args.method == "sum") {
    p = tutte_sum(m);
  } else if (args.method == "dc") {
    p = tutte_delete_contract(m);
  } else {
    if (m.kind() != Matroid::Kind::uniform) {
      throw ParseError("--method closed requires a uniform matroid");
    }
    p = tutte_closed_uniform(m.uniform_rank(), m.ground_size());
  }
  print_poly(p, args.format);
  return 0;
}

int run_genus(const CommonArgs& args) {
  const Matroid m = load_matroids(args, 1).front();
  GenusStats stats;
  const auto start = std::chrono::steady_clock::now();
  const Polynomial p = tutte_genus(m, args.genus, engine_options(args), &stats);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  std::cerr << "genus " << args.genus << ": 2^"
            << args.genus * m.ground_size() << " tuples, "
            << stats.distinct_profiles << " profiles, " << p.term_count()
            << " monomials, " << elapsed.count() << " s\n";
  print_poly(p, args.format);
  return 0;
}

int run_compare(const CommonArgs& args) {
  const std::vector<Matroid> ms = load_matroids(args, 2);
  const CompareResult res =
      compare_invariants(ms[0], ms[1], args.genus, engine_options(args));
  if (args.format == "json") {
    nlohmann::ordered_json j;
    j["verdict"] = res.equal ? "EQUAL" : "DIFFER";
    if (!res.equal) {
      j["witness"] = {{"monomial", res.witness_text()},
                      {"exps", res.witness_exps},
                      {"coeffA", res.coeff_a.str()},
                      {"coeffB", res.coeff_b.str()}};
    }
    std::cout << j.dump() << "\n";
  } else if (res.equal) {
    std::cout << "EQUAL\n";
  } else {
    std::cout << "DIFFER\n"
              << "witness " << res.witness_text() << ": " << res.coeff_a.str()
              << " vs " << res.coeff_b.str() << "\n";
  }
  return res.equal ? 0 : 1;
}

int run_verify(const CommonArgs& args) {
  const Matroid m = load_matroids(args, 1).front();
  const unsigned n = m.ground_size();
  std::string failure;
  try {
    validate_bases(n, m.bases());
  } catch (const ValidationError& e) {
    failure = e.what();
  }
  if (failure.empty() && n <= 16) {
    const AxiomReport rep =
        check_independence_axioms(downward_closure(m.bases()), n);
    if (!rep.ok()) failure = rep.describe();
  } else if (failure.empty()) {
    std::cerr << "note: independence-axiom check skipped (n > 16); "
                 "basis exchange verified\n";
  }
  if (args.format == "json") {
    nlohmann::ordered_json j;
    j["status"] = failure.empty() ? "pass" : "fail";
    if (!failure.empty()) j["detail"] = failure;
    std::cout << j.dump() << "\n";
  } else if (failure.empty()) {
    std::cout << "pass\n";
  } else {
    std::cout << "FAIL: " << failure << "\n";
  }
  return failure.empty() ? 0 : 1;
}

int run_iso(const CommonArgs& args) {
  const std::vector<Matroid> ms = load_matroids(args, 2);
  const IsoResult res = are_isomorphic_bruteforce(ms[0], ms[1]);
  std::string witness;
  if (res.witness) {
    for (unsigned v : res.witness->images()) {
      witness += (witness.empty() ? "" : ",") + std::to_string(v);
    }
  }
  if (args.format == "json") {
    nlohmann::ordered_json j;
    j["isomorphic"] = res.isomorphic;
    j["permutations_tried"] = res.permutations_tried;
    if (res.witness) j["witness"] = res.witness->images();
    std::cout << j.dump() << "\n";
  } else if (res.isomorphic) {
    std::cout << "ISO witness=" << witness << "\n";
  } else {
    std::cout << "NONISO after " << res.permutations_tried
              << " permutations\n";
  }
  return res.isomorphic ? 0 : 1;
}

int run_specialize_check(const CommonArgs& args) {
  const Matroid m = load_matroids(args, 1).front();
  if (args.genus < 2) {
    throw ParseError("specialize-check needs --genus >= 2");
  }
  const GenusOptions opt = engine_options(args);
  const Polynomial tg = tutte_genus(m, args.genus, opt);
  const Polynomial tg1 = tutte_genus(m, args.genus - 1, opt);
  const SpecializeCheckResult res =
      specialize_check(tg, tg1, m.ground_size());
  if (args.format == "json") {
    nlohmann::ordered_json j;
    j["status"] = res.pass ? "PASS" : "FAIL";
    if (!res.pass) j["detail"] = res.detail;
    std::cout << j.dump() << "\n";
  } else if (res.pass) {
    std::cout << "PASS\n";
  } else {
    std::cout << "FAIL: " << res.detail << "\n";
  }
  return res.pass ? 0 : 1;
}

int run_mbounds(unsigned n, const std::string& format) {
  const unsigned m1 = m1_bound(n);
  const unsigned m2 = m2_bound(n);
  if (format == "json") {
    std::cout << nlohmann::ordered_json{{"m1", m1}, {"m2", m2}}.dump() << "\n";
  } else {
    std::cout << "m1=" << m1 << " m2=" << m2 << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classic and genus-g Tutte polynomials of matroids"};
  app.require_subcommand(1);

  CommonArgs args;
  unsigned mbounds_n = 0;

  CLI::App* rank = app.add_subcommand("rank", "rank of a subset");
  add_matroid_options(rank, args);
  add_format_option(rank, args);
  rank->add_option("-s,--set", args.set_list,
                   "comma-separated 1-based elements; empty for the empty set");

  CLI::App* tutte_cmd =
      app.add_subcommand("tutte", "classic Tutte polynomial T(M;x,y)");
  add_matroid_options(tutte_cmd, args);
  add_format_option(tutte_cmd, args);
  tutte_cmd->add_option("--method", args.method, "computation method")
      ->check(CLI::IsMember({"sum", "dc", "closed"}))
      ->capture_default_str();

  CLI::App* genus_cmd =
      app.add_subcommand("genus", "genus-g Tutte polynomial T^(g)(M)");
  add_matroid_options(genus_cmd, args);
  add_format_option(genus_cmd, args);
  add_engine_options(genus_cmd, args);
  genus_cmd->add_option("-g,--genus", args.genus, "genus (>= 1)")
      ->required()
      ->check(CLI::Range(1u, 62u));

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "compare T^(g) of two matroids");
  add_matroid_options(compare_cmd, args);
  add_format_option(compare_cmd, args);
  add_engine_options(compare_cmd, args);
  compare_cmd->add_option("-g,--genus", args.genus, "genus (>= 1)")
      ->required()
      ->check(CLI::Range(1u, 62u));

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check matroid axioms and basis exchange");
  add_matroid_options(verify_cmd, args);
  add_format_option(verify_cmd, args);

  CLI::App* iso_cmd =
      app.add_subcommand("iso", "brute-force isomorphism test (n <= 8)");
  add_matroid_options(iso_cmd, args);
  add_format_option(iso_cmd, args);

  CLI::App* spec_cmd = app.add_subcommand(
      "specialize-check", "verify T^(g) specializes to 2^n * T^(g-1)");
  add_matroid_options(spec_cmd, args);
  add_format_option(spec_cmd, args);
  add_engine_options(spec_cmd, args);
  spec_cmd->add_option("-g,--genus", args.genus, "genus (>= 2)")
      ->required()
      ->check(CLI::Range(2u, 62u));

  CLI::App* mbounds_cmd = app.add_subcommand(
      "mbounds", "equality/inequality genus bounds m1, m2 for S_{4n}");
  mbounds_cmd->add_option("n", mbounds_n, "construction parameter n (>= 3)")
      ->required();
  add_format_option(mbounds_cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (rank->parsed()) return run_rank(args);
    if (tutte_cmd->parsed()) return run_tutte(args);
    if (genus_cmd->parsed()) return run_genus(args);
    if (compare_cmd->parsed()) return run_compare(args);
    if (verify_cmd->parsed()) return run_verify(args);
    if (iso_cmd->parsed()) return run_iso(args);
    if (spec_cmd->parsed()) return run_specialize_check(args);
    if (mbounds_cmd->parsed()) return run_mbounds(mbounds_n, args.format);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
