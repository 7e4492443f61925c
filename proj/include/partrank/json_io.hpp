#pragma once

#include <string>

#include <json.hpp>

#include "partrank/bridge.hpp"
#include "partrank/equations.hpp"
#include "partrank/nullcone.hpp"

namespace partrank {

/// Ordered JSON keeps key order stable so reports are byte-reproducible.
using Json = nlohmann::ordered_json;

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

/// {"order":d,"dims":[..],"field":..,"entries":[{"idx":[1-based],"val":"s"}]}
/// listing nonzero entries only.
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);

/// {"terms":[{"I":[1-based axes],"A":<tensor>,"B":<tensor>}]}
Json decomposition_to_json(const PartitionDecomposition& dec);
PartitionDecomposition decomposition_from_json(const Json& j);

/// {"vars":"tensor"|"point","dims":[..]|"n":n,"degree":m,
///  "terms":[{"exp":[[[i_1,..,i_d],power],..],"coef":"s"}]}
/// (point variables use [i,power] pairs); indices 1-based.
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json certificate_to_json(const RankCertificate& cert, const Tensor& queried);

Json triple_to_json(const SubspaceTriple& t);
SubspaceTriple triple_from_json(const Json& j);

Json hchain_to_json(const HChain& c);
HChain hchain_from_json(const Json& j);

/// FNV-1a 64-bit over the canonical serialization; 16 hex digits.
std::string fnv1a_hex(const std::string& data);
std::string tensor_hash(const Tensor& t);

std::string dump_canonical(const Json& j);
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace partrank
