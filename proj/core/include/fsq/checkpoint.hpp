#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

namespace fsq {

inline constexpr int kCheckpointSchemaVersion = 1;

/// One completed work item. Encoded as a single JSON line with keys in
/// sorted order:
///   {"checksum":"<crc32 hex>","hi":H,"hits"|"rows":[...],"kind":K,"lo":L,
///    "params":{...},"schema":1}
/// The checksum covers the same object serialized without its checksum key.
struct CheckpointRecord {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  nlohmann::json results = nlohmann::json::array();

  bool operator==(const CheckpointRecord&) const = default;
};

std::string_view results_key(std::string_view kind);

std::string encode_record(const CheckpointRecord& record);

/// Nothing on malformed JSON, wrong schema, missing fields or checksum
/// mismatch.
std::optional<CheckpointRecord> decode_record(std::string_view line);

/// Append-only log of completed work items for one scan configuration.
/// Opening it drops a trailing partial line and keeps the valid records
/// whose kind and params match; other lines are left untouched.
class CheckpointLog {
 public:
  CheckpointLog(std::filesystem::path path, std::string kind, nlohmann::json params);

  const CheckpointRecord* find(std::uint64_t lo, std::uint64_t hi) const;
  std::size_t loaded() const { return records_.size(); }
  std::size_t discarded() const { return discarded_; }

  /// Thread-safe; each record is flushed as soon as it is written.
  void append(const CheckpointRecord& record);

 private:
  std::filesystem::path path_;
  std::string kind_;
  nlohmann::json params_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, CheckpointRecord> records_;
  std::size_t discarded_ = 0;
  std::mutex mutex_;
};

}  // namespace fsq
