#pragma once

#include <string_view>

#include <json.hpp>

#include "fsq/divisor.hpp"
#include "fsq/factorization.hpp"
#include "fsq/scan.hpp"

namespace fsq {

std::string_view to_string(HitKind kind);
std::string_view to_string(FactorizationStatus status);
std::string_view to_string(Squarefree verdict);

HitKind hit_kind_from_string(std::string_view s);
FactorizationStatus status_from_string(std::string_view s);

// Naturals are encoded as decimal strings; indices and word-size primes as
// JSON integers.
nlohmann::json to_json(const ScanHit& hit);
ScanHit scan_hit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Factorization& f);
Factorization factorization_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TableRow& row);
TableRow table_row_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Verdict& v);

}  // namespace fsq
