#include "tutte/poly.hpp"

#include <algorithm>
#include <utility>

#include <json.hpp>

namespace tutte {

std::string var_name(const VarId& v) {
  switch (v.kind) {
    case VarKind::x:
      return "x" + std::to_string(v.i);
    case VarKind::y:
      return "y" + std::to_string(v.i);
    case VarKind::xcap:
      return "xcap{" + std::to_string(v.i) + "," + std::to_string(v.j) + "}";
    case VarKind::ycap:
      return "ycap{" + std::to_string(v.i) + "," + std::to_string(v.j) + "}";
    case VarKind::xcup:
      return "xcup{" + std::to_string(v.i) + "," + std::to_string(v.j) + "}";
    case VarKind::ycup:
      return "ycup{" + std::to_string(v.i) + "," + std::to_string(v.j) + "}";
  }
  return "?";
}

std::vector<VarId> canonical_var_order(unsigned genus) {
  if (genus == 0) throw ValidationError("genus must be at least 1");
  if (genus > 127) throw CapacityError("genus exceeds the representable range");
  std::vector<VarId> vars;
  vars.reserve(canonical_var_count(genus));
  for (unsigned i = 1; i <= genus; ++i) {
    vars.push_back({VarKind::x, static_cast<std::uint8_t>(i), 0});
    vars.push_back({VarKind::y, static_cast<std::uint8_t>(i), 0});
  }
  for (unsigned i = 1; i <= genus; ++i) {
    for (unsigned j = i + 1; j <= genus; ++j) {
      const auto bi = static_cast<std::uint8_t>(i);
      const auto bj = static_cast<std::uint8_t>(j);
      vars.push_back({VarKind::xcap, bi, bj});
      vars.push_back({VarKind::ycap, bi, bj});
      vars.push_back({VarKind::xcup, bi, bj});
      vars.push_back({VarKind::ycup, bi, bj});
    }
  }
  return vars;
}

Polynomial::Polynomial(unsigned genus)
    : genus_(genus), vars_(canonical_var_order(genus)) {}

Polynomial::Polynomial(unsigned genus, std::vector<VarId> vars)
    : genus_(genus), vars_(std::move(vars)) {
  if (genus == 0) throw ValidationError("genus must be at least 1");
}

void Polynomial::add_term(const ExponentVector& exps, const BigInt& coeff) {
  if (exps.size() != vars_.size()) {
    throw ValidationError("exponent vector has " + std::to_string(exps.size()) +
                          " slots, expected " + std::to_string(vars_.size()));
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

const BigInt& Polynomial::coeff(const ExponentVector& exps) const {
  static const BigInt zero{0};
  const auto it = terms_.find(exps);
  return it == terms_.end() ? zero : it->second;
}

Polynomial Polynomial::constant(unsigned genus, const BigInt& c) {
  Polynomial p(genus);
  p.add_term(ExponentVector(p.vars_.size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(unsigned genus, const VarId& v) {
  Polynomial p(genus);
  const auto it = std::find(p.vars_.begin(), p.vars_.end(), v);
  if (it == p.vars_.end()) {
    throw ValidationError("variable " + var_name(v) +
                          " does not exist at genus " + std::to_string(genus));
  }
  ExponentVector e(p.vars_.size(), 0);
  e[static_cast<std::size_t>(it - p.vars_.begin())] = 1;
  p.add_term(e, 1);
  return p;
}

void Polynomial::require_compatible(const Polynomial& other) const {
  if (genus_ != other.genus_ || vars_ != other.vars_) {
    throw ValidationError("polynomial genus/variable mismatch (" +
                          std::to_string(genus_) + " vs " +
                          std::to_string(other.genus_) + ")");
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  a.require_compatible(b);
  Polynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + (-b);
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const BigInt& c) const {
  Polynomial r(genus_, vars_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_compatible(b);
  Polynomial r(a.genus_, a.vars_);
  ExponentVector e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) {
        const unsigned sum = unsigned{ea[k]} + unsigned{eb[k]};
        if (sum > 255) throw CapacityError("monomial exponent exceeds 255");
        e[k] = static_cast<std::uint8_t>(sum);
      }
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return genus_ == other.genus_ && vars_ == other.vars_ &&
         terms_ == other.terms_;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(genus_, vars_);
  result.add_term(ExponentVector(vars_.size(), 0), 1);
  Polynomial base = *this;
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

BigInt Polynomial::evaluate(const std::map<VarId, BigInt>& assignment) const {
  std::vector<const BigInt*> values(vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    const auto it = assignment.find(vars_[k]);
    if (it == assignment.end()) {
      throw ValidationError("missing variable " + var_name(vars_[k]) +
                            " in evaluation assignment");
    }
    values[k] = &it->second;
  }
  BigInt total{0};
  for (const auto& [e, c] : terms_) {
    BigInt term = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] != 0) term *= ipow(*values[k], e[k]);
    }
    total += term;
  }
  return total;
}

BigInt Polynomial::evaluate_all(const BigInt& value) const {
  std::map<VarId, BigInt> assignment;
  for (const VarId& v : vars_) assignment.emplace(v, value);
  return evaluate(assignment);
}

Polynomial Polynomial::substitute(const std::map<VarId, BigInt>& partial) const {
  for (const auto& [v, unused] : partial) {
    (void)unused;
    if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) {
      throw ValidationError("substituting unknown variable " + var_name(v));
    }
  }
  std::vector<VarId> kept_vars;
  std::vector<std::size_t> kept_idx;
  std::vector<std::pair<std::size_t, const BigInt*>> subs;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    const auto it = partial.find(vars_[k]);
    if (it == partial.end()) {
      kept_vars.push_back(vars_[k]);
      kept_idx.push_back(k);
    } else {
      subs.emplace_back(k, &it->second);
    }
  }
  Polynomial out(genus_, std::move(kept_vars));
  ExponentVector ke(kept_idx.size());
  for (const auto& [e, c] : terms_) {
    BigInt factor = c;
    for (const auto& [k, value] : subs) {
      if (e[k] != 0) factor *= ipow(*value, e[k]);
    }
    if (factor == 0) continue;
    for (std::size_t k = 0; k < kept_idx.size(); ++k) ke[k] = e[kept_idx[k]];
    out.add_term(ke, factor);
  }
  return out;
}

std::vector<const Polynomial::TermMap::value_type*> Polynomial::sorted_terms()
    const {
  std::vector<const TermMap::value_type*> out;
  out.reserve(terms_.size());
  for (const auto& kv : terms_) out.push_back(&kv);
  std::sort(out.begin(), out.end(),
            [](const auto* a, const auto* b) { return a->first > b->first; });
  return out;
}

std::string monomial_text(const std::vector<VarId>& vars,
                          const ExponentVector& exps) {
  std::string s;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (exps[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += var_name(vars[k]);
    if (exps[k] >= 2) s += "^" + std::to_string(exps[k]);
  }
  return s;
}

std::string Polynomial::canonical_text() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto* kv : sorted_terms()) {
    const BigInt& c = kv->second;
    const bool negative = c < 0;
    const BigInt magnitude = boost::multiprecision::abs(c);
    if (first) {
      if (negative) s += "-";
      first = false;
    } else {
      s += negative ? " - " : " + ";
    }
    const std::string mono = monomial_text(vars_, kv->first);
    if (mono.empty()) {
      s += magnitude.str();
    } else {
      if (magnitude != 1) {
        s += magnitude.str();
        s += "*";
      }
      s += mono;
    }
  }
  return s;
}

std::string Polynomial::to_json() const {
  if (vars_ != canonical_var_order(genus_)) {
    throw ValidationError(
        "JSON serialization requires the canonical variable layout");
  }
  nlohmann::ordered_json j;
  j["genus"] = genus_;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto* kv : sorted_terms()) {
    nlohmann::ordered_json t;
    t["coeff"] = kv->second.str();
    t["exps"] = kv->first;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

Polynomial Polynomial::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed polynomial JSON: ") + e.what());
  }
  try {
    const unsigned genus = j.at("genus").get<unsigned>();
    if (genus == 0 || genus > 64) {
      throw ParseError("polynomial genus out of range");
    }
    Polynomial p(genus);
    const unsigned width = canonical_var_count(genus);
    for (const auto& t : j.at("terms")) {
      BigInt c;
      const auto& coeff = t.at("coeff");
      if (coeff.is_string()) {
        try {
          c = BigInt(coeff.get<std::string>());
        } catch (const std::exception&) {
          throw ParseError("invalid coefficient '" + coeff.get<std::string>() +
                           "'");
        }
      } else if (coeff.is_number_integer()) {
        c = BigInt(coeff.get<long long>());
      } else {
        throw ParseError("coefficient must be a decimal string");
      }
      const auto& exps = t.at("exps");
      if (!exps.is_array() || exps.size() != width) {
        throw ParseError("exponent list length != " + std::to_string(width));
      }
      ExponentVector e(width);
      for (std::size_t k = 0; k < width; ++k) {
        const auto v = exps[k].get<long long>();
        if (v < 0 || v > 255) throw ParseError("exponent out of range");
        e[k] = static_cast<std::uint8_t>(v);
      }
      p.add_term(e, c);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace tutte
