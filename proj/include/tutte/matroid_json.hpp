#pragma once

#include <string>

#include "tutte/matroid.hpp"

namespace tutte {

/// Parses the matroid JSON schema:
///   {"type":"uniform","r":R,"n":N}
///   {"type":"bases","n":N,"bases":[[e,...],...]}
///   {"type":"vector","p":P,"matrix":[[row],...]}
///   {"type":"R","r":R,"n":N} | {"type":"Q","r":R,"n":N}
///   {"type":"S","n":N} | {"type":"S_prime","n":N}
/// Elements are 1-based. Throws ParseError / ValidationError.
Matroid matroid_from_json(const std::string& text);
Matroid matroid_from_json_file(const std::string& path);

/// Serializes in the same schema. Relabelings and minors have no native
/// form and are emitted as explicit bases. Basis lists are sorted ascending
/// within each basis and across bases (ascending mask order).
std::string matroid_to_json(const Matroid& m);

/// Builtin specs: "U:r,n", "R:r,n", "Q:r,n", "S:n", "Sprime:n".
Matroid matroid_from_builtin(const std::string& spec);

}  // namespace tutte
