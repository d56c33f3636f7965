#include <algorithm>

#include "curator/error.h"
#include "internal.h"

namespace curator::ingest {

std::string_view source_kind_name(SourceKind kind) {
  switch (kind) {
  case SourceKind::kRelationalExport:
    return "relational_export";
  case SourceKind::kFlatDump:
    return "flat_dump";
  case SourceKind::kSynthetic:
    return "synthetic";
  }
  return "";
}

std::optional<SourceKind> parse_source_kind(std::string_view text) {
  for (const SourceKind k: { SourceKind::kRelationalExport,
                             SourceKind::kFlatDump, SourceKind::kSynthetic }) {
    if (source_kind_name(k) == text) {
      return k;
    }
  }
  return std::nullopt;
}

SourceHandle open_source(const std::filesystem::path &location,
                         SourceKind kind) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(location, ec)) {
    throw Error(ErrorCode::kMissingFile,
                "source not found: " + location.string());
  }
  if (kind == SourceKind::kRelationalExport) {
    internal::check_relational_schema(location);
  } else {
    internal::check_flat_dump_schema(location);
  }
  return { kind, location };
}

std::unique_ptr<RecordStream> read_activity_records(const SourceHandle &source,
                                                    Task task) {
  if (source.kind == SourceKind::kRelationalExport) {
    return internal::open_relational_export(source.location, task);
  }
  return internal::open_flat_dump(source.location, task);
}

IngestResult read_all(const SourceHandle &source, Task task) {
  auto stream = read_activity_records(source, task);
  IngestResult out;
  while (auto r = stream->next()) {
    out.records.push_back(std::move(*r));
  }
  out.report = stream->report();
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const RawActivityRecord &a, const RawActivityRecord &b) {
                     return a.activity_id < b.activity_id;
                   });
  std::vector<RawActivityRecord> unique;
  unique.reserve(out.records.size());
  for (RawActivityRecord &r: out.records) {
    if (!unique.empty() && unique.back().activity_id == r.activity_id) {
      out.report.skip(r.activity_id, 0, "duplicate_activity_id");
      continue;
    }
    unique.push_back(std::move(r));
  }
  out.records = std::move(unique);
  return out;
}

}  // namespace curator::ingest
