#include <fstream>
#include <string>

#include "curator/error.h"
#include "internal.h"

namespace curator::ingest::internal {
namespace {

using nlohmann::json;

class FlatDumpStream: public RecordStream {
public:
  FlatDumpStream(const std::filesystem::path &path, Task task)
      : in_(path, std::ios::binary), task_(task) {
    if (!in_) {
      throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
    }
  }

  std::optional<RawActivityRecord> next() override {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      if (line.find_first_not_of(" \t") == std::string::npos) {
        continue;
      }
      ++report_.rows_read;
      json row = json::parse(line, nullptr, false);
      if (row.is_discarded()) {
        report_.skip(std::nullopt, line_no_, "malformed_json");
        continue;
      }
      try {
        RawActivityRecord r = record_from_json(row);
        if (task_ == Task::kLbap) {
          strip_protein_fields(r);
        }
        return r;
      } catch (const DecodeError &e) {
        std::optional<std::int64_t> id;
        if (row.is_object() && row.contains("activity_id")
            && row["activity_id"].is_number_integer()) {
          id = row["activity_id"].get<std::int64_t>();
        }
        report_.skip(id, line_no_, e.what());
      }
    }
    return std::nullopt;
  }

private:
  std::ifstream in_;
  Task task_;
  std::int64_t line_no_ = 0;
};

}  // namespace

void check_flat_dump_schema(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const json row = json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      throw Error(ErrorCode::kMalformedSchema,
                  path.string() + ": first row is not a JSON object");
    }
    for (const std::string &field: kRecordFields) {
      if (!row.contains(field)) {
        throw Error(ErrorCode::kMalformedSchema,
                    path.string() + ": missing column '" + field + "'");
      }
    }
    return;
  }
}

std::unique_ptr<RecordStream> open_flat_dump(const std::filesystem::path &path,
                                             Task task) {
  return std::make_unique<FlatDumpStream>(path, task);
}

void strip_protein_fields(RawActivityRecord &record) {
  record.protein_sequence.reset();
  record.protein_class_path.reset();
}

}  // namespace curator::ingest::internal
