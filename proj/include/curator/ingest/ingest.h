#ifndef CURATOR_INGEST_INGEST_H_
#define CURATOR_INGEST_INGEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curator/types.h"

namespace curator::ingest {

// One activity row joined with its assay, molecule and target context.
struct RawActivityRecord {
  std::int64_t activity_id = 0;
  std::string assay_id;
  std::optional<std::string> smiles;
  std::string standard_type;
  std::optional<double> standard_value;
  std::optional<std::string> standard_units;
  std::optional<std::string> standard_relation;
  std::optional<int> confidence_score;
  std::optional<std::string> target_type;
  std::optional<std::string> target_id;
  std::optional<std::string> protein_sequence;
  // Root first; never an empty vector.
  std::optional<std::vector<std::string>> protein_class_path;

  bool operator==(const RawActivityRecord &) const = default;
};

// Field order of the flat-dump format.
extern const std::vector<std::string> kRecordFields;

nlohmann::ordered_json record_to_json(const RawActivityRecord &record);

enum class SourceKind {
  kRelationalExport,
  kFlatDump,
  kSynthetic,
};

std::string_view source_kind_name(SourceKind kind);
std::optional<SourceKind> parse_source_kind(std::string_view text);

struct SourceHandle {
  SourceKind kind;
  std::filesystem::path location;
};

// Checks the file exists and carries the expected schema; loads nothing.
// Throws Error(kMissingFile) or Error(kMalformedSchema).
SourceHandle open_source(const std::filesystem::path &location,
                         SourceKind kind);

struct IngestReport {
  std::int64_t rows_read = 0;
  std::int64_t rows_skipped = 0;
  std::map<std::string, std::int64_t> skip_reasons;

  struct Issue {
    std::optional<std::int64_t> activity_id;
    std::int64_t row;  // 1-based row/line number in the source
    std::string reason;
  };
  // First few decode problems, for diagnostics.
  std::vector<Issue> issues;

  void skip(std::optional<std::int64_t> activity_id, std::int64_t row,
            const std::string &reason);
  nlohmann::ordered_json to_json() const;
};

// Pull-based reader. One reader per handle; not shared across threads.
class RecordStream {
public:
  virtual ~RecordStream() = default;
  // Next decodable row in source order, or nullopt at the end. Rows that
  // fail to decode are skipped and counted in report().
  virtual std::optional<RawActivityRecord> next() = 0;
  const IngestReport &report() const { return report_; }

protected:
  IngestReport report_;
};

// Flat dumps stream in file order; relational exports stream in
// activity_id order. Protein fields are left absent for lbap.
std::unique_ptr<RecordStream> read_activity_records(const SourceHandle &source,
                                                    Task task);

struct IngestResult {
  std::vector<RawActivityRecord> records;  // activity_id ascending
  IngestReport report;
};

// Drains a stream and returns records sorted by activity_id. A repeated
// activity_id keeps the first occurrence and counts the rest as skipped.
IngestResult read_all(const SourceHandle &source, Task task);

// Writes records as a flat dump (JSON Lines, LF-terminated).
void write_flat_dump(const std::vector<RawActivityRecord> &records,
                     const std::filesystem::path &path);

// Thrown by row decoders; reason is the skip_reasons key.
class DecodeError: public std::runtime_error {
public:
  explicit DecodeError(const std::string &reason): std::runtime_error(reason) { }
};

RawActivityRecord record_from_json(const nlohmann::json &row);

}  // namespace curator::ingest

#endif  // CURATOR_INGEST_INGEST_H_
