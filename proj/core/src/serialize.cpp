#include "fsq/serialize.hpp"

#include <stdexcept>
#include <string>

namespace fsq {

using nlohmann::json;

namespace {

json natural_or_null(const std::optional<Natural>& v) { return v ? json(v->get_str()) : json(nullptr); }

std::optional<Natural> natural_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Natural(j.get<std::string>());
}

}  // namespace

std::string_view to_string(HitKind kind) {
  switch (kind) {
    case HitKind::SquareDivisor:
      return "square-divisor";
    case HitKind::Wilson:
      return "wilson";
    case HitKind::Brocard:
      return "brocard";
  }
  return "?";
}

std::string_view to_string(FactorizationStatus status) {
  return status == FactorizationStatus::Complete ? "complete" : "partial";
}

std::string_view to_string(Squarefree verdict) {
  switch (verdict) {
    case Squarefree::SquareFree:
      return "square-free";
    case Squarefree::NotSquareFree:
      return "not-square-free";
    case Squarefree::Unknown:
      return "unknown";
  }
  return "?";
}

HitKind hit_kind_from_string(std::string_view s) {
  if (s == "square-divisor") return HitKind::SquareDivisor;
  if (s == "wilson") return HitKind::Wilson;
  if (s == "brocard") return HitKind::Brocard;
  throw std::invalid_argument("unknown hit kind: " + std::string(s));
}

FactorizationStatus status_from_string(std::string_view s) {
  if (s == "complete") return FactorizationStatus::Complete;
  if (s == "partial") return FactorizationStatus::Partial;
  throw std::invalid_argument("unknown factorization status: " + std::string(s));
}

json to_json(const ScanHit& hit) {
  json j = {{"kind", to_string(hit.kind)}, {"n", hit.n}, {"in_S", ExcludedSet::contains(hit.n)}};
  if (hit.kind == HitKind::Brocard) {
    j["root"] = natural_or_null(hit.root);
  } else {
    j["p"] = hit.p;
  }
  return j;
}

ScanHit scan_hit_from_json(const json& j) {
  ScanHit hit;
  hit.kind = hit_kind_from_string(j.at("kind").get<std::string>());
  hit.n = j.at("n").get<std::uint64_t>();
  if (hit.kind == HitKind::Brocard) {
    hit.root = natural_from(j.at("root"));
  } else {
    hit.p = j.at("p").get<std::uint64_t>();
  }
  return hit;
}

json to_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& e : f.entries) {
    factors.push_back({{"prime", e.prime.get_str()}, {"multiplicity", e.multiplicity}});
  }
  return {{"value", f.value.get_str()},
          {"status", to_string(f.status)},
          {"probabilistic", f.probabilistic},
          {"factors", std::move(factors)},
          {"cofactor", natural_or_null(f.cofactor)}};
}

Factorization factorization_from_json(const json& j) {
  Factorization f;
  f.value = Natural(j.at("value").get<std::string>());
  f.status = status_from_string(j.at("status").get<std::string>());
  f.probabilistic = j.at("probabilistic").get<bool>();
  for (const auto& e : j.at("factors")) {
    f.entries.push_back({Natural(e.at("prime").get<std::string>()), e.at("multiplicity").get<std::uint32_t>()});
  }
  f.cofactor = natural_from(j.at("cofactor"));
  return f;
}

json to_json(const TableRow& row) {
  json reference = nullptr;
  if (auto ref = reference_row(row.n)) {
    reference = {{"sigma0", ref->sigma0},
                 {"two_pow_omega", ref->two_pow_omega},
                 {"matches", row.matches_reference ? json(*row.matches_reference) : json(nullptr)}};
  }
  return {{"n", row.n},
          {"status", to_string(row.status)},
          {"sigma0", natural_or_null(row.sigma0)},
          {"two_pow_omega", natural_or_null(row.two_pow_omega)},
          {"probabilistic", row.probabilistic},
          {"in_S", row.in_excluded_set},
          {"reference", std::move(reference)},
          {"factorization", to_json(row.factorization)}};
}

TableRow table_row_from_json(const json& j) {
  TableRow row;
  row.n = j.at("n").get<std::uint64_t>();
  row.status = status_from_string(j.at("status").get<std::string>());
  row.sigma0 = natural_from(j.at("sigma0"));
  row.two_pow_omega = natural_from(j.at("two_pow_omega"));
  row.probabilistic = j.at("probabilistic").get<bool>();
  row.in_excluded_set = j.at("in_S").get<bool>();
  const auto& reference = j.at("reference");
  if (!reference.is_null() && !reference.at("matches").is_null()) {
    row.matches_reference = reference.at("matches").get<bool>();
  }
  row.factorization = factorization_from_json(j.at("factorization"));
  return row;
}

json to_json(const Verdict& v) {
  return {{"n", v.n},
          {"outcome", to_string(v.outcome)},
          {"witness", natural_or_null(v.witness)},
          {"in_S", v.in_excluded_set},
          {"consistent", v.consistent_with_conjecture},
          {"evidence", v.evidence},
          {"factorization", v.factorization ? to_json(*v.factorization) : json(nullptr)}};
}

}  // namespace fsq
