#include "fsq/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

namespace fsq {

namespace {

using nlohmann::json;

std::string checksum_hex(const std::string& payload) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

json body(const CheckpointRecord& r) {
  json j = json::object();
  j["schema"] = kCheckpointSchemaVersion;
  j["kind"] = r.kind;
  j["params"] = r.params;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j[std::string(results_key(r.kind))] = r.results;
  return j;
}

}  // namespace

std::string_view results_key(std::string_view kind) { return kind == "table" ? "rows" : "hits"; }

std::string encode_record(const CheckpointRecord& record) {
  json j = body(record);
  j["checksum"] = checksum_hex(body(record).dump());
  return j.dump();
}

std::optional<CheckpointRecord> decode_record(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    if (j.at("schema").get<int>() != kCheckpointSchemaVersion) return std::nullopt;
    CheckpointRecord r;
    r.kind = j.at("kind").get<std::string>();
    r.params = j.at("params");
    r.lo = j.at("lo").get<std::uint64_t>();
    r.hi = j.at("hi").get<std::uint64_t>();
    r.results = j.at(std::string(results_key(r.kind)));
    if (!r.results.is_array()) return std::nullopt;
    if (j.size() != 7 || j.at("checksum").get<std::string>() != checksum_hex(body(r).dump())) {
      return std::nullopt;
    }
    return r;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

CheckpointLog::CheckpointLog(std::filesystem::path path, std::string kind, json params)
    : path_(std::move(path)), kind_(std::move(kind)), params_(std::move(params)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::stringstream buffer;
  buffer << in.rdbuf();
  in.close();
  std::string contents = buffer.str();

  const auto last_newline = contents.rfind('\n');
  const std::size_t keep = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (keep < contents.size()) {
    // A record interrupted mid-write.
    ++discarded_;
    contents.resize(keep);
    std::filesystem::resize_file(path_, keep);
  }

  std::istringstream lines(contents);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto record = decode_record(line);
    if (!record) {
      ++discarded_;
      continue;
    }
    if (record->kind != kind_ || record->params != params_) continue;
    const auto key = std::make_pair(record->lo, record->hi);
    records_.insert_or_assign(key, std::move(*record));
  }
}

const CheckpointRecord* CheckpointLog::find(std::uint64_t lo, std::uint64_t hi) const {
  const auto it = records_.find({lo, hi});
  return it == records_.end() ? nullptr : &it->second;
}

void CheckpointLog::append(const CheckpointRecord& record) {
  const std::string line = encode_record(record) + "\n";
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path_.string() + " for append");
  out << line;
  out.flush();
  if (!out) throw std::runtime_error("checkpoint: write to " + path_.string() + " failed");
}

}  // namespace fsq
