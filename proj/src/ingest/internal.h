#ifndef CURATOR_SRC_INGEST_INTERNAL_H_
#define CURATOR_SRC_INGEST_INTERNAL_H_

#include <filesystem>
#include <memory>

#include "curator/ingest/ingest.h"

namespace curator::ingest::internal {

void check_flat_dump_schema(const std::filesystem::path &path);
std::unique_ptr<RecordStream> open_flat_dump(const std::filesystem::path &path,
                                             Task task);

void check_relational_schema(const std::filesystem::path &path);
std::unique_ptr<RecordStream>
open_relational_export(const std::filesystem::path &path, Task task);

void strip_protein_fields(RawActivityRecord &record);

}  // namespace curator::ingest::internal

#endif  // CURATOR_SRC_INGEST_INTERNAL_H_
