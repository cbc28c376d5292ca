#include "tutte/matroid_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tutte {

namespace {

using nlohmann::json;

unsigned get_count(const json& j, const char* field) {
  const auto& v = j.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string("field '") + field +
                     "' must be a non-negative integer");
  }
  return v.get<unsigned>();
}

Matroid parse(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") {
    return Matroid::uniform(get_count(j, "r"), get_count(j, "n"));
  }
  if (type == "bases") {
    const unsigned n = get_count(j, "n");
    std::vector<SubsetMask> bases;
    for (const auto& list : j.at("bases")) {
      std::vector<unsigned> elements;
      for (const auto& e : list) {
        if (!e.is_number_integer() || e.get<long long>() < 1) {
          throw ParseError("basis elements must be positive integers");
        }
        elements.push_back(e.get<unsigned>());
      }
      bases.push_back(mask_from_elements(elements, n));
    }
    return Matroid::from_bases(n, std::move(bases));
  }
  if (type == "vector") {
    const unsigned p = get_count(j, "p");
    std::vector<std::vector<unsigned>> matrix;
    for (const auto& row : j.at("matrix")) {
      std::vector<unsigned> r;
      for (const auto& e : row) {
        if (!e.is_number_integer() || e.get<long long>() < 0) {
          throw ParseError("matrix entries must be non-negative integers");
        }
        r.push_back(e.get<unsigned>());
      }
      matrix.push_back(std::move(r));
    }
    return Matroid::vector_matroid(p, matrix);
  }
  if (type == "R") {
    return Matroid::r_construction(get_count(j, "r"), get_count(j, "n"));
  }
  if (type == "Q") {
    return Matroid::q_construction(get_count(j, "r"), get_count(j, "n"));
  }
  if (type == "S") {
    return Matroid::s_construction(get_count(j, "n"));
  }
  if (type == "S_prime") {
    return Matroid::s_prime_construction(get_count(j, "n"));
  }
  throw ParseError("unknown matroid type '" + type + "'");
}

}  // namespace

Matroid matroid_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matroid JSON: ") + e.what());
  }
  try {
    return parse(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matroid JSON: ") + e.what());
  }
}

Matroid matroid_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matroid file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return matroid_from_json(buf.str());
}

std::string matroid_to_json(const Matroid& m) {
  nlohmann::ordered_json j;
  switch (m.kind()) {
    case Matroid::Kind::uniform:
      j["type"] = "uniform";
      j["r"] = m.uniform_rank();
      j["n"] = m.ground_size();
      break;
    case Matroid::Kind::vector:
      j["type"] = "vector";
      j["p"] = m.field_prime();
      j["matrix"] = m.matrix_rows();
      break;
    default: {
      // Explicit bases; relabelings and minors have no native schema form.
      j["type"] = "bases";
      j["n"] = m.ground_size();
      auto lists = nlohmann::ordered_json::array();
      for (SubsetMask b : m.bases()) lists.push_back(mask_elements(b));
      j["bases"] = std::move(lists);
      break;
    }
  }
  return j.dump();
}

Matroid matroid_from_builtin(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  std::vector<unsigned> args;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(item, &used);
        if (used != item.size() || v > 1000000) throw std::invalid_argument(item);
        args.push_back(static_cast<unsigned>(v));
      } catch (const std::exception&) {
        throw ParseError("bad builtin argument '" + item + "' in '" + spec + "'");
      }
    }
  }
  const auto need = [&](std::size_t count) {
    if (args.size() != count) {
      throw ParseError("builtin '" + head + "' takes " + std::to_string(count) +
                       " argument(s), got " + std::to_string(args.size()));
    }
  };
  if (head == "U") {
    need(2);
    return Matroid::uniform(args[0], args[1]);
  }
  if (head == "R") {
    need(2);
    return Matroid::r_construction(args[0], args[1]);
  }
  if (head == "Q") {
    need(2);
    return Matroid::q_construction(args[0], args[1]);
  }
  if (head == "S") {
    need(1);
    return Matroid::s_construction(args[0]);
  }
  if (head == "Sprime") {
    need(1);
    return Matroid::s_prime_construction(args[0]);
  }
  throw ParseError("unknown builtin '" + head +
                   "' (expected U, R, Q, S or Sprime)");
}

}  // namespace tutte
